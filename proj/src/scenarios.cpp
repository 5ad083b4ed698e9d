#include "borncount/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "borncount/refinement.hpp"

namespace borncount {

namespace {

// splitmix64: tiny, seedable, stable across platforms
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in (0, 1]
    double u01() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
    // standard normal pair via Box-Muller
    std::pair<double, double> normal2() {
        const double u1 = u01();
        const double u2 = u01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }
};

}  // namespace

FiniteCaseResult finite_uniform_case(const FiniteCaseConfig& config) {
    if (config.n < 1)
        throw std::invalid_argument("finite_uniform_case: n must be >= 1");
    if (config.labels.size() != static_cast<std::size_t>(config.n))
        throw std::invalid_argument(
            "finite_uniform_case: one label per component required");
    FiniteCaseResult result;
    char id[64];
    std::snprintf(id, sizeof id, "finite-n%d", config.n);
    result.grid.dim = 1;
    result.grid.id = id;
    result.grid.centers.resize(config.n);
    result.grid.weights.assign(config.n, 1.0);
    for (int k = 0; k < config.n; ++k)
        result.grid.centers[k] = static_cast<double>(k);
    result.grid.total_measure = static_cast<double>(config.n);

    const double amp = 1.0 / std::sqrt(static_cast<double>(config.n));
    result.psi = Ket{result.grid.id,
                     std::vector<cplx>(config.n, cplx{amp, 0.0})};
    result.partition = make_partition(result.grid, config.labels);
    for (const std::string& name : result.partition.label_names)
        result.probabilities[name] =
            born_probability(result.grid, result.psi, result.partition, name);
    return result;
}

SternGerlachState stern_gerlach_state(const SternGerlachConfig& config) {
    const double spin_norm = std::norm(config.a) + std::norm(config.b);
    if (std::abs(spin_norm - 1.0) > 1e-12)
        throw std::invalid_argument(
            "stern_gerlach_state: |a|^2 + |b|^2 must be 1");
    if (!(config.sigma > 0.0))
        throw std::invalid_argument("stern_gerlach_state: sigma must be > 0");
    if (std::abs(config.u_center - config.d_center) < 6.0 * config.sigma)
        throw std::invalid_argument(
            "stern_gerlach_state: regions overlap (centers closer than 6 sigma)");
    if (config.screen_cells == 0 || !(config.screen_hi > config.screen_lo))
        throw std::invalid_argument("stern_gerlach_state: bad screen grid");

    const std::size_t n = config.screen_cells;
    const double h = (config.screen_hi - config.screen_lo) / static_cast<double>(n);

    SternGerlachState st;
    char id[160];
    std::snprintf(id, sizeof id, "stern-gerlach(%.17g,%.17g)x%zu", config.screen_lo,
                  config.screen_hi, n);
    st.grid.dim = 2;  // (screen coordinate, spin sheet +1/-1)
    st.grid.id = id;
    st.grid.centers.resize(2 * n * 2);
    st.grid.weights.assign(2 * n, h);
    for (std::size_t c = 0; c < 2 * n; ++c) {
        const std::size_t screen = c < n ? c : c - n;
        st.grid.centers[2 * c] =
            config.screen_lo + (static_cast<double>(screen) + 0.5) * h;
        st.grid.centers[2 * c + 1] = c < n ? 1.0 : -1.0;
    }
    st.grid.total_measure = 2.0 * h * static_cast<double>(n);

    // per-packet grid normalization; |g|^2 has std sigma, so the amplitude
    // width is sigma * sqrt(2)
    const double width = config.sigma * std::numbers::sqrt2;
    std::vector<double> g_u(n), g_d(n);
    double nu = 0.0, nd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = st.grid.centers[2 * i];
        const double zu = (x - config.u_center) / width;
        const double zd = (x - config.d_center) / width;
        g_u[i] = std::exp(-0.5 * zu * zu);
        g_d[i] = std::exp(-0.5 * zd * zd);
        nu += g_u[i] * g_u[i] * h;
        nd += g_d[i] * g_d[i] * h;
    }
    const double su = 1.0 / std::sqrt(nu);
    const double sd = 1.0 / std::sqrt(nd);

    st.psi.grid_id = st.grid.id;
    st.psi.amplitudes.resize(2 * n);
    std::vector<std::string> labels(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        st.psi.amplitudes[i] = config.a * (g_u[i] * su);
        st.psi.amplitudes[n + i] = config.b * (g_d[i] * sd);
        labels[i] = "up";
        labels[n + i] = "down";
    }
    st.partition = make_partition(st.grid, labels);
    return st;
}

std::map<std::string, double> naive_branch_count(
    const SampleGrid& grid, const Ket& psi, const MacrostatePartition& partition) {
    if (partition.grid_id != grid.id || psi.grid_id != grid.id)
        throw std::invalid_argument("naive_branch_count: grid mismatch");
    if (!is_unit(grid, psi))
        throw std::invalid_argument("naive_branch_count: ket is not unit-normalized");
    const MeasurableSubset supp = support(grid, psi);
    if (supp.members.empty())
        throw std::invalid_argument("naive_branch_count: empty support");
    std::vector<std::size_t> counts(partition.label_count(), 0);
    for (std::uint32_t c : supp.members) ++counts[partition.cell_labels[c]];
    std::map<std::string, double> fractions;
    for (std::size_t a = 0; a < partition.label_count(); ++a)
        fractions[partition.label_names[a]] =
            static_cast<double>(counts[a]) / static_cast<double>(supp.members.size());
    return fractions;
}

Ket random_ket(std::uint64_t seed, const SampleGrid& grid, int smoothness) {
    if (smoothness < 0)
        throw std::invalid_argument("random_ket: smoothness must be >= 0");
    const std::size_t n = grid.cell_count();
    SplitMix64 rng(seed ^ 0x517cc1b727220a95ull);
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [x, y] = rng.normal2();
        re[i] = x;
        im[i] = y;
    }
    // [1 2 1]/4 passes damp the high-frequency components
    std::vector<double> tmp(n);
    for (int pass = 0; pass < smoothness; ++pass) {
        for (std::vector<double>* ch : {&re, &im}) {
            std::vector<double>& v = *ch;
            for (std::size_t i = 0; i < n; ++i) {
                const double prev = v[i == 0 ? 0 : i - 1];
                const double next = v[i + 1 == n ? n - 1 : i + 1];
                tmp[i] = 0.25 * (prev + 2.0 * v[i] + next);
            }
            v.swap(tmp);
        }
    }
    Ket psi{grid.id, std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i) psi.amplitudes[i] = cplx{re[i], im[i]};
    return normalized(grid, psi);
}

std::pair<cplx, cplx> random_spin_pair(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x2545f4914f6cdd1dull);
    auto [x1, y1] = rng.normal2();
    auto [x2, y2] = rng.normal2();
    const double norm = std::sqrt(x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2);
    return {cplx{x1 / norm, y1 / norm}, cplx{x2 / norm, y2 / norm}};
}

}  // namespace borncount
