#ifndef BORNCOUNT_GRID_HPP
#define BORNCOUNT_GRID_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

// Discretized measure spaces: a configuration manifold chopped into finitely
// many cells with explicit measure weights, so every integral is a finite
// weighted sum. All types are immutable after construction and all operations
// are pure.

namespace borncount {

struct SampleGrid {
    int dim = 1;
    std::string id;
    std::vector<double> centers;  // cell-major, dim entries per cell
    std::vector<double> weights;  // measure of each cell, > 0
    double total_measure = 0.0;

    std::size_t cell_count() const { return weights.size(); }
    std::span<const double> center(std::uint32_t c) const {
        return {centers.data() + static_cast<std::size_t>(c) * dim,
                static_cast<std::size_t>(dim)};
    }
    // first coordinate; the ordering coordinate for 1-D grids
    double center1(std::uint32_t c) const {
        return centers[static_cast<std::size_t>(c) * dim];
    }
};

// throws std::invalid_argument on any violated grid invariant
void validate(const SampleGrid& grid);

// uniform 1-D grid over [lo, hi] with `cells` cells of weight (hi-lo)/cells;
// the 2^16 default suits the convergence studies
SampleGrid make_uniform_grid(double lo, double hi, std::size_t cells = 65536,
                             std::string id = {});

struct DensityField {
    std::string grid_id;
    std::vector<double> values;  // density w.r.t. the grid measure, >= 0
};

struct MeasurableSubset {
    std::string grid_id;
    std::vector<std::uint32_t> members;  // sorted, unique
};

// normalizes `cells` to sorted-unique set semantics
MeasurableSubset make_subset(const SampleGrid& grid,
                             std::vector<std::uint32_t> cells);
MeasurableSubset subset_where(const SampleGrid& grid,
                              const std::function<bool(std::uint32_t)>& pred);

// sum over the subset of density * cell weight
double integrate(const SampleGrid& grid, const DensityField& density,
                 const MeasurableSubset& subset);

// a permutation (or selection) of cell indices defining a linear cell order
using CellOrder = std::vector<std::uint32_t>;

CellOrder natural_order(const SampleGrid& grid);
// ascending first-coordinate order (stable in the cell index for ties)
CellOrder coordinate_order(const SampleGrid& grid);

struct CumulativeTable {
    CellOrder cells;        // positive-mass cells in the requested order
    std::vector<double> u;  // normalized cumulative mass after each cell, in (0, 1]
    double total_mass = 0.0;
};

// cumulative normalized masses along `order`; zero-mass cells are dropped so
// the table is a bijection on positive-mass cells and u is strictly increasing
CumulativeTable cumulative_order(const SampleGrid& grid,
                                 const DensityField& density,
                                 const CellOrder& order);

// strictly monotone 1-D reparametrization; a null derivative means the
// Jacobian is taken by central finite differences
struct MonotoneMap {
    std::string name;
    std::function<double(double)> forward;
    std::function<double(double)> derivative;
};

// "identity", "cubic" (x^3 + x) or "scale:<a>"
MonotoneMap named_map(const std::string& spec);

// central finite-difference derivative of f at x
double finite_difference(const std::function<double(double)>& f, double x);

// density r(x) = |f'(x)| at cell centers: the measure of the image of any
// subset under f equals the integral of r over the subset (up to quadrature)
DensityField pushforward_density(const SampleGrid& grid, const MonotoneMap& map);

}  // namespace borncount

#endif
