#include "borncount/wavefunctional.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "borncount/kernels.hpp"

namespace borncount {

FieldConfigSpace build_config_space(int sites, int levels, double lo, double hi) {
    if (sites < 1) throw std::invalid_argument("build_config_space: sites must be >= 1");
    if (levels < 2)
        throw std::invalid_argument("build_config_space: levels must be >= 2");
    if (!(hi > lo)) throw std::invalid_argument("build_config_space: need hi > lo");
    double count = 1.0;
    for (int s = 0; s < sites; ++s) {
        count *= levels;
        if (count > static_cast<double>(1 << 24))
            throw std::invalid_argument(
                "build_config_space: V^S exceeds 2^24 cells (S=" +
                std::to_string(sites) + ", V=" + std::to_string(levels) + ")");
    }
    const std::size_t cells = static_cast<std::size_t>(count);
    const double spacing = (hi - lo) / levels;
    double weight = 1.0;
    for (int s = 0; s < sites; ++s) weight *= spacing;

    FieldConfigSpace space;
    space.sites = sites;
    space.levels = levels;
    space.lo = lo;
    space.hi = hi;
    char id[128];
    std::snprintf(id, sizeof id, "fieldcfg-s%d-v%d(%.17g,%.17g)", sites, levels, lo,
                  hi);
    space.grid.dim = sites;
    space.grid.id = id;
    space.grid.centers.resize(cells * sites);
    space.grid.weights.assign(cells, weight);
    // lexicographic: the last site varies fastest
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rest = c;
        for (int s = sites - 1; s >= 0; --s) {
            const std::size_t v = rest % levels;
            rest /= levels;
            space.grid.centers[c * sites + s] =
                lo + (static_cast<double>(v) + 0.5) * spacing;
        }
    }
    space.grid.total_measure = kernels::sum(space.grid.weights);
    return space;
}

MacrostatePartition site_sign_partition(const FieldConfigSpace& space, int site) {
    if (site < 0 || site >= space.sites)
        throw std::invalid_argument("site_sign_partition: site out of range");
    const double mid = 0.5 * (space.lo + space.hi);
    std::vector<std::string> labels(space.grid.cell_count());
    for (std::size_t c = 0; c < labels.size(); ++c)
        labels[c] =
            space.grid.centers[c * space.sites + site] < mid ? "neg" : "pos";
    return make_partition(space.grid, labels);
}

DensityPhaseMap emit_density_phase_map(const FieldConfigSpace& space,
                                       const Ket& Psi) {
    if (Psi.grid_id != space.grid.id)
        throw std::invalid_argument("emit_density_phase_map: grid mismatch");
    if (Psi.amplitudes.size() != space.grid.cell_count())
        throw std::invalid_argument("emit_density_phase_map: ket length mismatch");
    if (!is_unit(space.grid, Psi))
        throw std::invalid_argument(
            "emit_density_phase_map: wavefunctional is not unit-normalized");

    const PolarForm pf = polar_decompose(Psi);
    DensityPhaseMap map;
    map.sites = space.sites;
    map.phi = space.grid.centers;
    map.r = pf.r;
    map.theta = pf.theta;
    map.prob_mass.resize(pf.r.size());
    for (std::size_t c = 0; c < pf.r.size(); ++c)
        map.prob_mass[c] = pf.r[c] * pf.r[c] * space.grid.weights[c];
    return map;
}

}  // namespace borncount
