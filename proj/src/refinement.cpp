#include "borncount/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "borncount/kernels.hpp"

namespace borncount {

namespace {

void check_state(const std::string& what, const SampleGrid& grid, const Ket& psi) {
    if (psi.grid_id != grid.id)
        throw std::invalid_argument(what + ": grid mismatch ('" + psi.grid_id +
                                    "' vs '" + grid.id + "')");
    if (psi.amplitudes.size() != grid.cell_count())
        throw std::invalid_argument(what + ": ket length != cell count");
}

std::vector<double> cell_masses(const SampleGrid& grid, const Ket& psi) {
    std::vector<double> m(grid.cell_count());
    for (std::size_t c = 0; c < m.size(); ++c)
        m[c] = std::norm(psi.amplitudes[c]) * grid.weights[c];
    return m;
}

std::int32_t require_label(const std::string& what,
                           const MacrostatePartition& partition,
                           const std::string& label) {
    const std::int32_t code = partition.label_code(label);
    if (code < 0) throw std::invalid_argument(what + ": unknown label '" + label + "'");
    return code;
}

void check_level(const std::string& what, const RefinementSequence& seq, int n) {
    if (n < 0 || n > seq.n_max)
        throw std::invalid_argument(what + ": level " + std::to_string(n) +
                                    " out of range [0, " + std::to_string(seq.n_max) +
                                    "]");
}

}  // namespace

MeasurableSubset support(const SampleGrid& grid, const Ket& psi) {
    check_state("support", grid, psi);
    const std::vector<double> mass = cell_masses(grid, psi);
    const double peak = *std::max_element(mass.begin(), mass.end());
    return support(grid, psi, 1e-15 * peak);
}

MeasurableSubset support(const SampleGrid& grid, const Ket& psi, double threshold) {
    check_state("support", grid, psi);
    if (!(threshold >= 0.0))
        throw std::invalid_argument("support: threshold must be >= 0");
    const std::vector<double> mass = cell_masses(grid, psi);
    return subset_where(grid,
                        [&](std::uint32_t c) { return mass[c] > threshold; });
}

DensityField mu_prime(const SampleGrid& grid, const Ket& psi) {
    check_state("mu_prime", grid, psi);
    if (!is_unit(grid, psi))
        throw std::invalid_argument("mu_prime: ket is not unit-normalized");
    DensityField rho{grid.id, std::vector<double>(grid.cell_count())};
    for (std::size_t c = 0; c < rho.values.size(); ++c)
        rho.values[c] = std::norm(psi.amplitudes[c]);
    return rho;
}

int max_safe_depth(const SampleGrid& grid, const Ket& psi) {
    const std::vector<double> mass = cell_masses(grid, psi);
    const double total = kernels::sum(mass);
    if (!(total > 0.0)) throw std::invalid_argument("max_safe_depth: zero-mass state");
    const double eps = *std::max_element(mass.begin(), mass.end()) / total;
    int n = 0;
    while ((std::exp2(n + 1) * eps) <= 0.5) ++n;
    return n;
}

RefinementSequence build_refinement(const SampleGrid& grid, const Ket& psi,
                                    const MacrostatePartition& partition, int n_max,
                                    Ordering ordering) {
    check_state("build_refinement", grid, psi);
    if (partition.grid_id != grid.id)
        throw std::invalid_argument("build_refinement: partition grid mismatch");
    if (partition.cell_labels.size() != grid.cell_count())
        throw std::invalid_argument("build_refinement: partition length != cell count");
    if (n_max < 0) throw std::invalid_argument("build_refinement: n_max must be >= 0");
    if (!is_unit(grid, psi))
        throw std::invalid_argument("build_refinement: ket is not unit-normalized");

    RefinementSequence seq;
    seq.grid_id = grid.id;
    seq.psi = psi;
    seq.partition = partition;
    seq.ordering = ordering;
    seq.n_max = n_max;

    // support cells in refinement order: coordinate within each label block,
    // blocks by label code (macrostate-major), or coordinate only
    const MeasurableSubset supp = support(grid, psi);
    if (supp.members.empty())
        throw std::invalid_argument("build_refinement: state has zero-mass support");
    seq.cells = supp.members;
    std::stable_sort(seq.cells.begin(), seq.cells.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return grid.center1(a) < grid.center1(b);
                     });
    if (ordering == Ordering::MacrostateMajor)
        std::stable_sort(seq.cells.begin(), seq.cells.end(),
                         [&](std::uint32_t a, std::uint32_t b) {
                             return partition.cell_labels[a] < partition.cell_labels[b];
                         });

    const std::vector<double> mass = cell_masses(grid, psi);
    seq.cell_mass.resize(seq.cells.size());
    for (std::size_t i = 0; i < seq.cells.size(); ++i)
        seq.cell_mass[i] = mass[seq.cells[i]];

    const std::vector<double> cum_raw = kernels::inclusive_scan(seq.cell_mass);
    seq.support_mass = cum_raw.back();
    if (!(seq.support_mass > 0.0))
        throw std::invalid_argument("build_refinement: state has zero-mass support");
    seq.cum.resize(cum_raw.size());
    for (std::size_t i = 0; i < cum_raw.size(); ++i)
        seq.cum[i] = cum_raw[i] / seq.support_mass;
    seq.eps_grid =
        *std::max_element(seq.cell_mass.begin(), seq.cell_mass.end()) /
        seq.support_mass;

    if (std::exp2(n_max) * seq.eps_grid > 0.5) {
        int safe = 0;
        while ((std::exp2(safe + 1) * seq.eps_grid) <= 0.5) ++safe;
        throw std::invalid_argument(
            "build_refinement: depth " + std::to_string(n_max) +
            " exceeds the grid resolution (2^n * eps_grid > 0.5); maximum safe "
            "n is " + std::to_string(safe));
    }

    // dyadic cuts at u = k 2^-n; each cell joins the member containing its
    // mass midpoint, so every level refines the previous one
    seq.level_begin.resize(n_max + 1);
    seq.level_mass.resize(n_max + 1);
    const std::size_t ncells = seq.cells.size();
    for (int n = 0; n <= n_max; ++n) {
        const std::size_t nk = std::size_t{1} << n;
        auto& begin = seq.level_begin[n];
        begin.assign(nk + 1, 0);
        std::size_t i = 0;
        for (std::size_t k = 1; k <= nk; ++k) {
            const double cut = static_cast<double>(k) / static_cast<double>(nk);
            while (i < ncells) {
                const double mid = seq.cum[i] - 0.5 * seq.cell_mass[i] / seq.support_mass;
                if (mid <= cut)
                    ++i;
                else
                    break;
            }
            begin[k] = static_cast<std::uint32_t>(i);
        }
        begin[nk] = static_cast<std::uint32_t>(ncells);  // guard against fp dust
        auto& masses = seq.level_mass[n];
        masses.resize(nk);
        for (std::size_t k = 0; k < nk; ++k) {
            const double hi = begin[k + 1] == 0 ? 0.0 : seq.cum[begin[k + 1] - 1];
            const double lo = begin[k] == 0 ? 0.0 : seq.cum[begin[k] - 1];
            masses[k] = hi - lo;
            if (begin[k + 1] == begin[k])
                throw std::runtime_error(
                    "build_refinement: empty member at level " + std::to_string(n) +
                    " (grid too coarse)");
        }
    }

    seq.born_targets.resize(partition.label_count(), 0.0);
    for (const std::string& name : partition.label_names)
        seq.born_targets[partition.label_code(name)] =
            born_probability(grid, psi, partition, name);
    seq.label_block_count.assign(partition.label_count(), 0);
    for (std::size_t i = 0; i < seq.cells.size(); ++i) {
        const std::int32_t code = partition.cell_labels[seq.cells[i]];
        if (i == 0 || partition.cell_labels[seq.cells[i - 1]] != code)
            ++seq.label_block_count[code];
    }
    return seq;
}

BranchVector branch_vector(const RefinementSequence& seq, int n, int k) {
    check_level("branch_vector", seq, n);
    const std::size_t nk = seq.members_at(n);
    if (k < 1 || static_cast<std::size_t>(k) > nk)
        throw std::invalid_argument("branch_vector: index " + std::to_string(k) +
                                    " out of range [1, " + std::to_string(nk) + "]");
    BranchVector bv;
    bv.level = n;
    bv.index = k;
    bv.ket.grid_id = seq.grid_id;
    bv.ket.amplitudes.assign(seq.psi.amplitudes.size(), cplx{0.0, 0.0});
    const double scale = std::sqrt(std::exp2(n));
    const std::uint32_t b = seq.level_begin[n][k - 1];
    const std::uint32_t e = seq.level_begin[n][k];
    std::vector<std::uint32_t> member_cells(seq.cells.begin() + b,
                                            seq.cells.begin() + e);
    for (std::uint32_t c : member_cells)
        bv.ket.amplitudes[c] = scale * seq.psi.amplitudes[c];
    std::sort(member_cells.begin(), member_cells.end());
    bv.member = MeasurableSubset{seq.grid_id, std::move(member_cells)};
    return bv;
}

Ket reconstruct(const RefinementSequence& seq, int n) {
    check_level("reconstruct", seq, n);
    const double scale = 1.0 / std::sqrt(std::exp2(n));
    Ket out{seq.grid_id, std::vector<cplx>(seq.psi.amplitudes.size(), cplx{0.0, 0.0})};
    for (std::size_t k = 1; k <= seq.members_at(n); ++k) {
        const BranchVector bv = branch_vector(seq, n, static_cast<int>(k));
        for (std::uint32_t c : bv.member.members)
            out.amplitudes[c] += scale * bv.ket.amplitudes[c];
    }
    return out;
}

ConsistencyIndex consistency_index(const RefinementSequence& seq, int n,
                                   const std::string& label, double tau) {
    check_level("consistency_index", seq, n);
    const std::int32_t code = require_label("consistency_index", seq.partition, label);
    if (!(tau >= 0.0))
        throw std::invalid_argument("consistency_index: tau must be >= 0");
    // prefix sums of normalized mass lying outside the labeled cells make
    // each member's foreign mass an O(1) lookup
    std::vector<double> outside(seq.cells.size());
    for (std::size_t i = 0; i < seq.cells.size(); ++i)
        outside[i] = seq.partition.cell_labels[seq.cells[i]] == code
                         ? 0.0
                         : seq.cell_mass[i] / seq.support_mass;
    const std::vector<double> pre = kernels::inclusive_scan(outside);

    ConsistencyIndex idx;
    idx.level = n;
    idx.label = label;
    idx.tau = tau;
    const double allowance = tau * std::exp2(-n);
    const auto& begin = seq.level_begin[n];
    for (std::size_t k = 1; k <= seq.members_at(n); ++k) {
        const double hi = begin[k] == 0 ? 0.0 : pre[begin[k] - 1];
        const double lo = begin[k - 1] == 0 ? 0.0 : pre[begin[k - 1] - 1];
        if (hi - lo <= allowance) idx.members.push_back(static_cast<std::uint32_t>(k));
    }
    return idx;
}

double counting_probability(const RefinementSequence& seq, int n,
                            const std::string& label, double tau) {
    const ConsistencyIndex idx = consistency_index(seq, n, label, tau);
    return static_cast<double>(idx.members.size()) * std::exp2(-n);
}

ConvergenceReport convergence_study(const RefinementSequence& seq, double tau) {
    ConvergenceReport report;
    report.eps_grid = seq.eps_grid;
    report.all_within_bound = true;
    const std::size_t nlabels = seq.partition.label_count();
    for (int n = 0; n <= seq.n_max; ++n) {
        std::vector<double> counts(nlabels);
        for (std::size_t a = 0; a < nlabels; ++a)
            counts[a] =
                counting_probability(seq, n, seq.partition.label_names[a], tau);
        double covered = 0.0;
        for (double cp : counts) covered += cp;
        const double deficit = 1.0 - covered;
        for (std::size_t a = 0; a < nlabels; ++a) {
            ConvergenceRow row;
            row.n = n;
            row.alpha = seq.partition.label_names[a];
            row.count_prob = counts[a];
            row.born_prob = seq.born_targets[a];
            row.abs_error = std::abs(row.count_prob - row.born_prob);
            row.deficit = deficit;
            row.bound = (seq.label_block_count[a] + 1) * std::exp2(-n) +
                        std::exp2(n) * seq.eps_grid;
            row.within_bound = row.abs_error <= row.bound;
            if (!row.within_bound) report.all_within_bound = false;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace borncount
