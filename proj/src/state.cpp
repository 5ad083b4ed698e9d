#include "borncount/state.hpp"

#include <cmath>
#include <stdexcept>

#include "borncount/kernels.hpp"

namespace borncount {

namespace {

void check_same_grid(const std::string& what, const std::string& a,
                     const std::string& b) {
    if (a != b)
        throw std::invalid_argument(what + ": grid mismatch ('" + a + "' vs '" + b +
                                    "')");
}

void check_sizes(const std::string& what, const SampleGrid& grid, const Ket& psi) {
    check_same_grid(what, psi.grid_id, grid.id);
    if (psi.amplitudes.size() != grid.cell_count())
        throw std::invalid_argument(what + ": ket length != cell count");
}

void check_partition(const std::string& what, const SampleGrid& grid,
                     const MacrostatePartition& partition) {
    check_same_grid(what, partition.grid_id, grid.id);
    if (partition.cell_labels.size() != grid.cell_count())
        throw std::invalid_argument(what + ": partition length != cell count");
}

std::int32_t require_label(const std::string& what,
                           const MacrostatePartition& partition,
                           const std::string& label) {
    const std::int32_t code = partition.label_code(label);
    if (code < 0) throw std::invalid_argument(what + ": unknown label '" + label + "'");
    return code;
}

void require_unit(const std::string& what, const SampleGrid& grid, const Ket& psi) {
    if (!is_unit(grid, psi))
        throw std::invalid_argument(what + ": ket is not unit-normalized");
}

// |psi_c|^2 per cell; the shared engine behind Born sums and the state
// measure, so the two are the same floating-point sum
std::vector<double> norm_values(const Ket& psi) {
    std::vector<double> v(psi.amplitudes.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::norm(psi.amplitudes[i]);
    return v;
}

}  // namespace

std::int32_t MacrostatePartition::label_code(const std::string& name) const {
    for (std::size_t i = 0; i < label_names.size(); ++i)
        if (label_names[i] == name) return static_cast<std::int32_t>(i);
    return -1;
}

MacrostatePartition make_partition(const SampleGrid& grid,
                                   const std::vector<std::string>& per_cell_labels) {
    if (per_cell_labels.size() != grid.cell_count())
        throw std::invalid_argument("make_partition: one label per cell required");
    MacrostatePartition p;
    p.grid_id = grid.id;
    p.cell_labels.resize(per_cell_labels.size());
    for (std::size_t i = 0; i < per_cell_labels.size(); ++i) {
        std::int32_t code = p.label_code(per_cell_labels[i]);
        if (code < 0) {
            code = static_cast<std::int32_t>(p.label_names.size());
            p.label_names.push_back(per_cell_labels[i]);
        }
        p.cell_labels[i] = code;
    }
    return p;
}

MacrostatePartition halfline_partition(const SampleGrid& grid, double cut,
                                       const std::string& name_le,
                                       const std::string& name_gt) {
    std::vector<std::string> labels(grid.cell_count());
    for (std::uint32_t c = 0; c < grid.cell_count(); ++c)
        labels[c] = grid.center1(c) <= cut ? name_le : name_gt;
    return make_partition(grid, labels);
}

MeasurableSubset label_subset(const SampleGrid& grid,
                              const MacrostatePartition& partition,
                              const std::string& label) {
    check_partition("label_subset", grid, partition);
    const std::int32_t code = require_label("label_subset", partition, label);
    return subset_where(grid, [&](std::uint32_t c) {
        return partition.cell_labels[c] == code;
    });
}

cplx inner_product(const SampleGrid& grid, const Ket& a, const Ket& b) {
    check_sizes("inner_product", grid, a);
    check_sizes("inner_product", grid, b);
    return kernels::weighted_dot(a.amplitudes, b.amplitudes, grid.weights);
}

double norm2(const SampleGrid& grid, const Ket& psi) {
    check_sizes("norm2", grid, psi);
    return kernels::weighted_norm2(psi.amplitudes, grid.weights);
}

bool is_unit(const SampleGrid& grid, const Ket& psi, double tol) {
    return std::abs(norm2(grid, psi) - 1.0) <= tol;
}

Ket normalized(const SampleGrid& grid, const Ket& psi) {
    const double n2 = norm2(grid, psi);
    if (!(n2 > 0.0))
        throw std::invalid_argument("normalized: zero-norm ket");
    Ket out{psi.grid_id, psi.amplitudes};
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& z : out.amplitudes) z *= inv;
    return out;
}

Ket gaussian_ket(const SampleGrid& grid, double center, double width) {
    if (grid.dim != 1)
        throw std::invalid_argument("gaussian_ket: grid must be 1-D");
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_ket: width must be > 0");
    Ket psi{grid.id, std::vector<cplx>(grid.cell_count())};
    for (std::uint32_t c = 0; c < grid.cell_count(); ++c) {
        const double x = (grid.center1(c) - center) / width;
        psi.amplitudes[c] = std::exp(-0.5 * x * x);
    }
    return normalized(grid, psi);
}

double born_probability(const SampleGrid& grid, const Ket& psi,
                        const MacrostatePartition& partition,
                        const std::string& label) {
    check_sizes("born_probability", grid, psi);
    check_partition("born_probability", grid, partition);
    require_label("born_probability", partition, label);
    require_unit("born_probability", grid, psi);
    const MeasurableSubset cells = label_subset(grid, partition, label);
    return kernels::masked_weighted_sum(norm_values(psi), grid.weights,
                                        cells.members);
}

std::vector<double> born_probabilities(const SampleGrid& grid, const Ket& psi,
                                       const MacrostatePartition& partition) {
    std::vector<double> p;
    p.reserve(partition.label_count());
    for (const std::string& name : partition.label_names)
        p.push_back(born_probability(grid, psi, partition, name));
    return p;
}

std::string argmax_label(const SampleGrid& grid, const Ket& psi,
                         const MacrostatePartition& partition) {
    const std::vector<double> p = born_probabilities(grid, psi, partition);
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[best]) best = i;
    return partition.label_names[best];
}

Ket project(const Ket& psi, const MacrostatePartition& partition,
            const std::string& label) {
    check_same_grid("project", psi.grid_id, partition.grid_id);
    if (psi.amplitudes.size() != partition.cell_labels.size())
        throw std::invalid_argument("project: ket length != partition length");
    const std::int32_t code = require_label("project", partition, label);
    Ket out{psi.grid_id, std::vector<cplx>(psi.amplitudes.size())};
    for (std::size_t c = 0; c < out.amplitudes.size(); ++c)
        out.amplitudes[c] =
            partition.cell_labels[c] == code ? psi.amplitudes[c] : cplx{0.0, 0.0};
    return out;
}

PolarForm polar_decompose(const Ket& psi) {
    PolarForm pf;
    pf.r.resize(psi.amplitudes.size());
    pf.theta.resize(psi.amplitudes.size());
    for (std::size_t c = 0; c < psi.amplitudes.size(); ++c) {
        const cplx z = psi.amplitudes[c];
        const double r = std::abs(z);
        pf.r[c] = r;
        pf.theta[c] = r == 0.0 ? 0.0 : std::arg(z);
        if (pf.theta[c] <= -3.141592653589793238463)  // std::arg may return -pi
            pf.theta[c] = 3.141592653589793238463;
    }
    return pf;
}

std::pair<Ket, GaugeRecord> gauge_absorb(const Ket& psi) {
    PolarForm pf = polar_decompose(psi);
    Ket real_ket{psi.grid_id, std::vector<cplx>(psi.amplitudes.size())};
    for (std::size_t c = 0; c < pf.r.size(); ++c)
        real_ket.amplitudes[c] = cplx{pf.r[c], 0.0};
    return {std::move(real_ket), GaugeRecord{std::move(pf.theta)}};
}

std::pair<double, double> uniformized_identity_check(
    const SampleGrid& grid, const Ket& psi, const MacrostatePartition& partition,
    const std::string& label) {
    check_sizes("uniformized_identity_check", grid, psi);
    check_partition("uniformized_identity_check", grid, partition);
    require_label("uniformized_identity_check", partition, label);
    require_unit("uniformized_identity_check", grid, psi);
    auto [real_ket, gauge] = gauge_absorb(psi);

    // lhs: combine basis kets over the labeled cells with uniformized weight
    // r dmu; the reproducing inner-product convention turns that into the
    // ket with amplitude r there, whose squared norm is taken
    const Ket restricted = project(real_ket, partition, label);
    const double lhs = inner_product(grid, restricted, restricted).real();

    // rhs: integrate the probability density r^2 over the same cells
    DensityField r2{grid.id, std::vector<double>(grid.cell_count())};
    for (std::size_t c = 0; c < r2.values.size(); ++c) {
        const double r = real_ket.amplitudes[c].real();
        r2.values[c] = r * r;
    }
    const double rhs = integrate(grid, r2, label_subset(grid, partition, label));
    return {lhs, rhs};
}

}  // namespace borncount
