#include "borncount/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "borncount/kernels.hpp"

namespace borncount {

namespace {

std::string format_range_id(const char* tag, double lo, double hi, std::size_t n) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s(%.17g,%.17g)x%zu", tag, lo, hi, n);
    return buf;
}

void check_same_grid(const std::string& what, const std::string& a,
                     const std::string& b) {
    if (a != b)
        throw std::invalid_argument(what + ": grid mismatch ('" + a + "' vs '" + b +
                                    "')");
}

}  // namespace

void validate(const SampleGrid& grid) {
    if (grid.dim < 1) throw std::invalid_argument("SampleGrid: dim must be >= 1");
    if (grid.weights.empty())
        throw std::invalid_argument("SampleGrid: cell count must be >= 1");
    if (grid.centers.size() != grid.weights.size() * static_cast<std::size_t>(grid.dim))
        throw std::invalid_argument("SampleGrid: centers/weights size mismatch");
    for (double w : grid.weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("SampleGrid: all cell weights must be > 0");
    const double s = kernels::sum(grid.weights);
    if (std::abs(s - grid.total_measure) > 1e-12 * std::max(s, grid.total_measure))
        throw std::invalid_argument(
            "SampleGrid: total_measure inconsistent with cell weights");
}

SampleGrid make_uniform_grid(double lo, double hi, std::size_t cells,
                             std::string id) {
    if (!(hi > lo)) throw std::invalid_argument("make_uniform_grid: need hi > lo");
    if (cells == 0) throw std::invalid_argument("make_uniform_grid: need cells >= 1");
    SampleGrid g;
    g.dim = 1;
    g.id = id.empty() ? format_range_id("uniform", lo, hi, cells) : std::move(id);
    g.centers.resize(cells);
    g.weights.resize(cells);
    const double h = (hi - lo) / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        g.centers[i] = lo + (static_cast<double>(i) + 0.5) * h;
        g.weights[i] = h;
    }
    g.total_measure = kernels::sum(g.weights);
    return g;
}

MeasurableSubset make_subset(const SampleGrid& grid,
                             std::vector<std::uint32_t> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    if (!cells.empty() && cells.back() >= grid.cell_count())
        throw std::invalid_argument("make_subset: cell index out of range");
    return {grid.id, std::move(cells)};
}

MeasurableSubset subset_where(const SampleGrid& grid,
                              const std::function<bool(std::uint32_t)>& pred) {
    std::vector<std::uint32_t> cells;
    for (std::uint32_t c = 0; c < grid.cell_count(); ++c)
        if (pred(c)) cells.push_back(c);
    return {grid.id, std::move(cells)};
}

double integrate(const SampleGrid& grid, const DensityField& density,
                 const MeasurableSubset& subset) {
    check_same_grid("integrate", density.grid_id, grid.id);
    check_same_grid("integrate", subset.grid_id, grid.id);
    if (density.values.size() != grid.cell_count())
        throw std::invalid_argument("integrate: density length != cell count");
    for (double v : density.values)
        if (std::isnan(v)) throw std::invalid_argument("integrate: NaN in density");
    if (!subset.members.empty() && subset.members.back() >= grid.cell_count())
        throw std::invalid_argument("integrate: subset index out of range");
    return kernels::masked_weighted_sum(density.values, grid.weights,
                                        subset.members);
}

CellOrder natural_order(const SampleGrid& grid) {
    CellOrder order(grid.cell_count());
    std::iota(order.begin(), order.end(), 0u);
    return order;
}

CellOrder coordinate_order(const SampleGrid& grid) {
    CellOrder order = natural_order(grid);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return grid.center1(a) < grid.center1(b);
                     });
    return order;
}

CumulativeTable cumulative_order(const SampleGrid& grid,
                                 const DensityField& density,
                                 const CellOrder& order) {
    check_same_grid("cumulative_order", density.grid_id, grid.id);
    if (density.values.size() != grid.cell_count())
        throw std::invalid_argument("cumulative_order: density length != cell count");
    CumulativeTable table;
    std::vector<double> mass;
    mass.reserve(order.size());
    for (std::uint32_t c : order) {
        const double m = density.values[c] * grid.weights[c];
        if (m > 0.0) {
            table.cells.push_back(c);
            mass.push_back(m);
        }
    }
    std::vector<double> cum = kernels::inclusive_scan(mass);
    if (cum.empty() || !(cum.back() > 0.0))
        throw std::invalid_argument("cumulative_order: zero total mass");
    table.total_mass = cum.back();
    table.u.resize(cum.size());
    for (std::size_t i = 0; i < cum.size(); ++i) table.u[i] = cum[i] / table.total_mass;
    for (std::size_t i = 1; i < table.u.size(); ++i)
        if (!(table.u[i] > table.u[i - 1]))
            throw std::invalid_argument(
                "cumulative_order: cumulative mass not strictly increasing "
                "(mass ratio at the floating-point resolution limit)");
    return table;
}

MonotoneMap named_map(const std::string& spec) {
    if (spec == "identity")
        return {"identity", [](double x) { return x; }, [](double) { return 1.0; }};
    if (spec == "cubic")
        return {"cubic", [](double x) { return x * x * x + x; },
                [](double x) { return 3.0 * x * x + 1.0; }};
    if (spec.rfind("scale:", 0) == 0) {
        std::size_t pos = 0;
        double a = 0.0;
        try {
            a = std::stod(spec.substr(6), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("named_map: bad scale factor in '" + spec + "'");
        }
        if (pos != spec.size() - 6 || a == 0.0 || !std::isfinite(a))
            throw std::invalid_argument("named_map: bad scale factor in '" + spec + "'");
        return {spec, [a](double x) { return a * x; }, [a](double) { return a; }};
    }
    throw std::invalid_argument("named_map: unknown map '" + spec +
                                "' (expected identity, cubic or scale:<a>)");
}

double finite_difference(const std::function<double(double)>& f, double x) {
    // step ~ cbrt(eps) scaled to x keeps the truncation and rounding errors
    // both near 1e-11 for smooth f
    const double h = 6.0e-6 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

DensityField pushforward_density(const SampleGrid& grid, const MonotoneMap& map) {
    if (grid.dim != 1)
        throw std::invalid_argument("pushforward_density: grid must be 1-D");
    if (!map.forward)
        throw std::invalid_argument("pushforward_density: map has no forward function");
    const std::size_t n = grid.cell_count();
    // monotonicity check by sampling cell centers in coordinate order
    CellOrder order = coordinate_order(grid);
    int dir = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double prev = map.forward(grid.center1(order[i - 1]));
        const double cur = map.forward(grid.center1(order[i]));
        const int step = cur > prev ? 1 : cur < prev ? -1 : 0;
        if (step == 0 || (dir != 0 && step != dir))
            throw std::invalid_argument("pushforward_density: map '" + map.name +
                                        "' is not strictly monotone on the grid");
        dir = step;
    }
    DensityField r{grid.id, std::vector<double>(n)};
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= 16384)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n); ++c) {
        const double x = grid.center1(static_cast<std::uint32_t>(c));
        const double d = map.derivative ? map.derivative(x)
                                        : finite_difference(map.forward, x);
        r.values[static_cast<std::size_t>(c)] = std::abs(d);
    }
    return r;
}

}  // namespace borncount
