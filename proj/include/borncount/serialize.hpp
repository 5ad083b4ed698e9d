#ifndef BORNCOUNT_SERIALIZE_HPP
#define BORNCOUNT_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "borncount/grid.hpp"
#include "borncount/refinement.hpp"
#include "borncount/scenarios.hpp"
#include "borncount/state.hpp"
#include "borncount/wavefunctional.hpp"

// Structured-text (JSON) forms of the core types, scenario-file loading and
// the CSV report writers. All writers are deterministic: fixed column order,
// fixed row order, round-trip-exact number formatting.

namespace borncount {

using json = nlohmann::json;

// grid = {dim, cells: [{center: [..], weight}]}, plus the id for reference
json to_json(const SampleGrid& grid);
SampleGrid grid_from_json(const json& j);

// density = {grid_id, values: [..]}
json to_json(const DensityField& density);
DensityField density_from_json(const json& j);

// subset = {grid_id, members: [..]}
json to_json(const MeasurableSubset& subset);
MeasurableSubset subset_from_json(const json& j);

// ket = {grid_id, amplitudes: [re0, im0, re1, im1, ..]}
json to_json(const Ket& psi);
Ket ket_from_json(const json& j);

// partition = {grid_id, labels: [..], eigenvalues: {label: value}}
json to_json(const MacrostatePartition& partition);
MacrostatePartition partition_from_json(const json& j);

// A scenario file describes a (grid, state, partition) triple:
//   {type: "finite_uniform", n, labels: [..]}
//   {type: "gaussian", mean, sigma, cut, grid: {lo, hi, cells}}
//   {type: "stern_gerlach", a_re, a_im, b_re, b_im, sigma, u_center,
//    d_center, grid: {lo, hi, cells}}
//   {type: "random", smoothness, cut_fraction, grid: {lo, hi, cells}}
// `resolution` (when nonzero) overrides the grid cell count; `seed` feeds the
// random scenario.
struct ScenarioState {
    std::string name;
    SampleGrid grid;
    Ket psi;
    MacrostatePartition partition;
};

ScenarioState build_scenario(const json& config, std::size_t resolution = 0,
                             std::uint64_t seed = 0);
ScenarioState load_scenario(const std::string& path, std::size_t resolution = 0,
                            std::uint64_t seed = 0);

// round-trip-exact decimal form of a double
std::string format_double(double x);

// columns: n,alpha,count_prob,born_prob,abs_error,deficit
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);
json convergence_to_json(const ConvergenceReport& report);

// columns: n,k,u_lo,u_hi,mass,x_first,x_last (coordinates of the first and
// last member cell centers)
void write_partition_csv(std::ostream& os, const SampleGrid& grid,
                         const RefinementSequence& seq);

// columns: phi_1..phi_S,r,theta,prob_mass
void write_density_phase_csv(std::ostream& os, const DensityPhaseMap& map);

}  // namespace borncount

#endif
