#ifndef BORNCOUNT_STATE_HPP
#define BORNCOUNT_STATE_HPP

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "borncount/grid.hpp"

// Complex wavefunctions over a SampleGrid in the continuum-normalized
// convention: inner products carry the cell weights, so a basis ket is the
// cell indicator divided by the cell weight and is never materialized.

namespace borncount {

using cplx = std::complex<double>;

struct Ket {
    std::string grid_id;
    std::vector<cplx> amplitudes;  // value of psi at each cell center
};

// exhaustive disjoint cell labeling; the induced projectors are diagonal in
// the cell basis and commute by construction
struct MacrostatePartition {
    std::string grid_id;
    std::vector<std::int32_t> cell_labels;       // label code per cell
    std::vector<std::string> label_names;        // code -> name
    std::map<std::string, double> eigenvalues;   // optional per-label metadata

    std::size_t label_count() const { return label_names.size(); }
    // -1 when the name is not a label of this partition
    std::int32_t label_code(const std::string& name) const;
};

// builds codes in order of first appearance of each name
MacrostatePartition make_partition(const SampleGrid& grid,
                                   const std::vector<std::string>& per_cell_labels);
// two labels split by the first coordinate: name_le where x <= cut, else name_gt
MacrostatePartition halfline_partition(const SampleGrid& grid, double cut,
                                       const std::string& name_le = "left",
                                       const std::string& name_gt = "right");
// cells carrying one label, in increasing cell order
MeasurableSubset label_subset(const SampleGrid& grid,
                              const MacrostatePartition& partition,
                              const std::string& label);

cplx inner_product(const SampleGrid& grid, const Ket& a, const Ket& b);
double norm2(const SampleGrid& grid, const Ket& psi);
bool is_unit(const SampleGrid& grid, const Ket& psi, double tol = 1e-10);
Ket normalized(const SampleGrid& grid, const Ket& psi);

// Gaussian amplitude exp(-(x-center)^2 / (2 width^2)), normalized on the
// grid; the probability density |psi|^2 then has standard deviation
// width/sqrt(2)
Ket gaussian_ket(const SampleGrid& grid, double center, double width);

// <psi|P_alpha|psi> = sum of |psi_c|^2 w_c over cells labeled alpha;
// requires a unit ket
double born_probability(const SampleGrid& grid, const Ket& psi,
                        const MacrostatePartition& partition,
                        const std::string& label);
// all labels at once, indexed by label code
std::vector<double> born_probabilities(const SampleGrid& grid, const Ket& psi,
                                       const MacrostatePartition& partition);
// the label of highest Born probability (ties resolved to the lowest code)
std::string argmax_label(const SampleGrid& grid, const Ket& psi,
                         const MacrostatePartition& partition);

// psi restricted to the cells labeled alpha, zero elsewhere
Ket project(const Ket& psi, const MacrostatePartition& partition,
            const std::string& label);

struct PolarForm {
    std::vector<double> r;      // modulus per cell
    std::vector<double> theta;  // phase per cell in (-pi, pi], 0 where r == 0
};

PolarForm polar_decompose(const Ket& psi);

// the absorbed per-configuration phase, interpreted as a global U(1) gauge
// assignment
struct GaugeRecord {
    std::vector<double> theta;
};

// rewrites psi = r e^{i theta} as a real non-negative ket plus the gauge
// record; all Born probabilities are unchanged
std::pair<Ket, GaugeRecord> gauge_absorb(const Ket& psi);

// Two routes to the same number: lhs is the squared norm of the ket whose
// amplitude equals r on the labeled cells (the uniformized-measure
// combination, evaluated through the inner product); rhs integrates the
// density r^2 over those cells. Both equal the Born probability.
std::pair<double, double> uniformized_identity_check(
    const SampleGrid& grid, const Ket& psi, const MacrostatePartition& partition,
    const std::string& label);

}  // namespace borncount

#endif
