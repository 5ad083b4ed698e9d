#ifndef BORNCOUNT_REFINEMENT_HPP
#define BORNCOUNT_REFINEMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "borncount/grid.hpp"
#include "borncount/state.hpp"

// Dyadic equal-mass refinements of a state's support under the state-induced
// measure (density |psi|^2), branch vectors, consistency sets and the
// convergence of micro-branch counting to the Born probabilities.

namespace borncount {

inline constexpr double kDefaultConsistencyTau = 1e-9;

// cells whose probability mass |psi_c|^2 w_c exceeds the threshold; the
// default threshold is 1e-15 times the largest cell mass
MeasurableSubset support(const SampleGrid& grid, const Ket& psi);
MeasurableSubset support(const SampleGrid& grid, const Ket& psi, double threshold);

// the density |psi_c|^2 of the state-induced probability measure; psi must
// be unit, so the total mass over the support is 1
DensityField mu_prime(const SampleGrid& grid, const Ket& psi);

enum class Ordering {
    MacrostateMajor,  // by label code, then by cell coordinate
    CoordinateMajor,  // by cell coordinate only
};

struct RefinementSequence {
    std::string grid_id;
    Ket psi;
    MacrostatePartition partition;
    Ordering ordering = Ordering::MacrostateMajor;

    std::vector<std::uint32_t> cells;  // support cells in refinement order
    std::vector<double> cell_mass;     // mass of each ordered cell
    std::vector<double> cum;           // normalized cumulative mass after each cell
    double support_mass = 0.0;         // total mass of the support (~1)
    double eps_grid = 0.0;             // max normalized single-cell mass

    int n_max = 0;
    // level n: 2^n + 1 fence posts into `cells`; member k covers
    // [begin[k-1], begin[k])
    std::vector<std::vector<std::uint32_t>> level_begin;
    // level n: normalized mass of each of the 2^n members
    std::vector<std::vector<double>> level_mass;

    std::vector<double> born_targets;     // per label code
    std::vector<int> label_block_count;   // contiguous blocks per label code

    std::size_t members_at(int n) const { return std::size_t{1} << n; }
};

// deepest level n with 2^n * eps_grid <= 0.5 for this state on this grid
int max_safe_depth(const SampleGrid& grid, const Ket& psi);

// Orders the support cells, computes cumulative masses, and cuts them at
// u = k 2^-n for every level, assigning each cell to the member containing
// its mass midpoint. Throws when 2^n_max * eps_grid > 0.5 (naming the
// deepest safe level) or when the support carries no mass.
RefinementSequence build_refinement(const SampleGrid& grid, const Ket& psi,
                                    const MacrostatePartition& partition, int n_max,
                                    Ordering ordering = Ordering::MacrostateMajor);

struct BranchVector {
    int level = 0;
    int index = 0;  // 1-based
    Ket ket;
    MeasurableSubset member;
};

// sqrt(2^n) times psi restricted to member (n, k); unit up to the grid's
// equal-mass imbalance, and exactly orthogonal across k at fixed n
BranchVector branch_vector(const RefinementSequence& seq, int n, int k);

// 2^{-n/2} sum of all level-n branch vectors: psi restricted to the support
Ket reconstruct(const RefinementSequence& seq, int n);

struct ConsistencyIndex {
    int level = 0;
    std::string label;
    double tau = kDefaultConsistencyTau;
    std::vector<std::uint32_t> members;  // 1-based k, ascending
};

// members carrying normalized mass at most tau * 2^-n outside the labeled
// cells
ConsistencyIndex consistency_index(const RefinementSequence& seq, int n,
                                   const std::string& label,
                                   double tau = kDefaultConsistencyTau);

// |M_{n,label}| * 2^-n
double counting_probability(const RefinementSequence& seq, int n,
                            const std::string& label,
                            double tau = kDefaultConsistencyTau);

struct ConvergenceRow {
    int n = 0;
    std::string alpha;
    double count_prob = 0.0;
    double born_prob = 0.0;
    double abs_error = 0.0;
    double deficit = 0.0;  // 1 - sum over labels of count_prob at this level
    double bound = 0.0;    // (blocks + 1) 2^-n + 2^n eps_grid
    bool within_bound = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  // level-major, label order within level
    double eps_grid = 0.0;
    bool all_within_bound = false;
};

ConvergenceReport convergence_study(const RefinementSequence& seq,
                                    double tau = kDefaultConsistencyTau);

}  // namespace borncount

#endif
