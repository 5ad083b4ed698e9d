#ifndef BORNCOUNT_SCENARIOS_HPP
#define BORNCOUNT_SCENARIOS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "borncount/grid.hpp"
#include "borncount/state.hpp"

// Concrete measurement scenarios: the finite uniform-superposition case, the
// Stern-Gerlach screen model, deliberately naive branch counting, and seeded
// random states for property tests.

namespace borncount {

struct FiniteCaseConfig {
    int n = 1;                              // equal-amplitude components
    std::vector<std::string> labels;        // macrostate label per component
};

struct FiniteCaseResult {
    SampleGrid grid;
    Ket psi;
    MacrostatePartition partition;
    std::map<std::string, double> probabilities;  // n_j / n per label
};

// psi = (1/sqrt(n)) sum of n orthogonal unit-cell components; the Born
// probability of each label is its component count over n
FiniteCaseResult finite_uniform_case(const FiniteCaseConfig& config);

struct SternGerlachConfig {
    cplx a{1.0, 0.0};             // spin-up amplitude
    cplx b{0.0, 0.0};             // spin-down amplitude
    double sigma = 1.0;           // packet width (std of |g|^2)
    double u_center = -3.0;       // spin-up packet center on the screen
    double d_center = 3.0;        // spin-down packet center
    double screen_lo = -10.0;
    double screen_hi = 10.0;
    std::size_t screen_cells = 65536;
};

struct SternGerlachState {
    SampleGrid grid;  // screen cells doubled across the two spin sheets
    Ket psi;
    MacrostatePartition partition;  // labels "up" / "down" by sheet
};

// The post-measurement state as two disjoint Gaussian packets: a g_U on the
// spin-up sheet and b g_D on the spin-down sheet, each packet unit-normalized
// on the grid, so the sheet Born masses are exactly |a|^2 and |b|^2. No
// dynamics: this is the kinematic endpoint of the measurement.
SternGerlachState stern_gerlach_state(const SternGerlachConfig& config);

// Basis-cardinality counting: support cells per label over total support
// cells. Deliberately ignores the measure weights, for contrast with the
// measure-weighted counting of the refinement module.
std::map<std::string, double> naive_branch_count(const SampleGrid& grid,
                                                 const Ket& psi,
                                                 const MacrostatePartition& partition);

// deterministic unit ket: seeded Gaussian amplitudes, `smoothness` low-pass
// passes, then grid normalization; the same (seed, grid, smoothness) always
// yields bitwise-identical amplitudes
Ket random_ket(std::uint64_t seed, const SampleGrid& grid, int smoothness = 0);

// seeded (a, b) with |a|^2 + |b|^2 = 1, uniform on the unit sphere in C^2
std::pair<cplx, cplx> random_spin_pair(std::uint64_t seed);

}  // namespace borncount

#endif
