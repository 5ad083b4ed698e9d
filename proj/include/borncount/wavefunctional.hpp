#ifndef BORNCOUNT_WAVEFUNCTIONAL_HPP
#define BORNCOUNT_WAVEFUNCTIONAL_HPP

#include <string>
#include <vector>

#include "borncount/grid.hpp"
#include "borncount/state.hpp"

// Configuration spaces of discretized classical fields: S lattice sites, V
// field values per site, every cell of the grid a full field configuration.
// States over such grids behave exactly like any other ket, so the
// refinement machinery applies unchanged.

namespace borncount {

struct FieldConfigSpace {
    int sites = 1;
    int levels = 2;        // discretized field values per site
    double lo = -1.0;
    double hi = 1.0;
    SampleGrid grid;       // V^S cells, lexicographic site order
};

// enumerates the V^S configurations in lexicographic site order; cell weight
// is the product of the per-site value spacings. Throws when V^S > 2^24.
FieldConfigSpace build_config_space(int sites, int levels, double lo, double hi);

// two labels by the sign of one site's field value relative to the range
// midpoint: "neg" where phi_site < mid, else "pos"
MacrostatePartition site_sign_partition(const FieldConfigSpace& space, int site);

struct DensityPhaseMap {
    int sites = 1;
    std::vector<double> phi;        // rows x sites, configuration coordinates
    std::vector<double> r;          // modulus per configuration
    std::vector<double> theta;      // recorded gauge phase per configuration
    std::vector<double> prob_mass;  // r^2 * weight, sums to 1
    std::size_t rows() const { return r.size(); }
};

// one row per configuration in lexicographic order: field values, modulus,
// recorded phase and probability mass; requires a unit wavefunctional
DensityPhaseMap emit_density_phase_map(const FieldConfigSpace& space,
                                       const Ket& Psi);

}  // namespace borncount

#endif
