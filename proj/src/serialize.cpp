#include "borncount/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace borncount {

namespace {

const json& require_field(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string(what) + ": missing field '" + key +
                                    "'");
    return *it;
}

SampleGrid uniform_grid_from_config(const json& grid_cfg, std::size_t resolution,
                                    const char* what) {
    const double lo = require_field(grid_cfg, "lo", what).get<double>();
    const double hi = require_field(grid_cfg, "hi", what).get<double>();
    std::size_t cells = require_field(grid_cfg, "cells", what).get<std::size_t>();
    if (resolution != 0) cells = resolution;
    return make_uniform_grid(lo, hi, cells);
}

}  // namespace

json to_json(const SampleGrid& grid) {
    json cells = json::array();
    for (std::uint32_t c = 0; c < grid.cell_count(); ++c) {
        json center = json::array();
        for (double x : grid.center(c)) center.push_back(x);
        cells.push_back({{"center", std::move(center)}, {"weight", grid.weights[c]}});
    }
    return {{"id", grid.id}, {"dim", grid.dim}, {"cells", std::move(cells)}};
}

SampleGrid grid_from_json(const json& j) {
    SampleGrid grid;
    grid.dim = require_field(j, "dim", "grid_from_json").get<int>();
    grid.id = j.value("id", std::string{});
    const json& cells = require_field(j, "cells", "grid_from_json");
    for (const json& cell : cells) {
        const json& center = require_field(cell, "center", "grid_from_json");
        if (center.size() != static_cast<std::size_t>(grid.dim))
            throw std::invalid_argument("grid_from_json: center length != dim");
        for (const json& x : center) grid.centers.push_back(x.get<double>());
        grid.weights.push_back(
            require_field(cell, "weight", "grid_from_json").get<double>());
    }
    grid.total_measure = 0.0;
    for (double w : grid.weights) grid.total_measure += w;
    validate(grid);
    return grid;
}

json to_json(const DensityField& density) {
    return {{"grid_id", density.grid_id}, {"values", density.values}};
}

DensityField density_from_json(const json& j) {
    DensityField d;
    d.grid_id = require_field(j, "grid_id", "density_from_json").get<std::string>();
    d.values =
        require_field(j, "values", "density_from_json").get<std::vector<double>>();
    return d;
}

json to_json(const MeasurableSubset& subset) {
    return {{"grid_id", subset.grid_id}, {"members", subset.members}};
}

MeasurableSubset subset_from_json(const json& j) {
    MeasurableSubset s;
    s.grid_id = require_field(j, "grid_id", "subset_from_json").get<std::string>();
    s.members = require_field(j, "members", "subset_from_json")
                    .get<std::vector<std::uint32_t>>();
    std::sort(s.members.begin(), s.members.end());
    s.members.erase(std::unique(s.members.begin(), s.members.end()),
                    s.members.end());
    return s;
}

json to_json(const Ket& psi) {
    std::vector<double> interleaved;
    interleaved.reserve(2 * psi.amplitudes.size());
    for (const cplx& z : psi.amplitudes) {
        interleaved.push_back(z.real());
        interleaved.push_back(z.imag());
    }
    return {{"grid_id", psi.grid_id}, {"amplitudes", std::move(interleaved)}};
}

Ket ket_from_json(const json& j) {
    Ket psi;
    psi.grid_id = require_field(j, "grid_id", "ket_from_json").get<std::string>();
    const std::vector<double> interleaved =
        require_field(j, "amplitudes", "ket_from_json").get<std::vector<double>>();
    if (interleaved.size() % 2 != 0)
        throw std::invalid_argument("ket_from_json: odd amplitude array length");
    psi.amplitudes.resize(interleaved.size() / 2);
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
        psi.amplitudes[i] = cplx{interleaved[2 * i], interleaved[2 * i + 1]};
    return psi;
}

json to_json(const MacrostatePartition& partition) {
    json labels = json::array();
    for (std::int32_t code : partition.cell_labels)
        labels.push_back(partition.label_names[code]);
    json eigenvalues = json::object();
    for (const auto& [name, value] : partition.eigenvalues) eigenvalues[name] = value;
    return {{"grid_id", partition.grid_id},
            {"labels", std::move(labels)},
            {"eigenvalues", std::move(eigenvalues)}};
}

MacrostatePartition partition_from_json(const json& j) {
    MacrostatePartition p;
    p.grid_id = require_field(j, "grid_id", "partition_from_json").get<std::string>();
    const json& labels = require_field(j, "labels", "partition_from_json");
    for (const json& name : labels) {
        const std::string label = name.get<std::string>();
        std::int32_t code = p.label_code(label);
        if (code < 0) {
            code = static_cast<std::int32_t>(p.label_names.size());
            p.label_names.push_back(label);
        }
        p.cell_labels.push_back(code);
    }
    if (j.contains("eigenvalues"))
        for (const auto& [name, value] : j.at("eigenvalues").items())
            p.eigenvalues[name] = value.get<double>();
    return p;
}

ScenarioState build_scenario(const json& config, std::size_t resolution,
                             std::uint64_t seed) {
    const std::string type =
        require_field(config, "type", "build_scenario").get<std::string>();
    ScenarioState st;
    st.name = type;
    if (type == "finite_uniform") {
        FiniteCaseConfig fc;
        fc.n = require_field(config, "n", "finite_uniform scenario").get<int>();
        fc.labels = require_field(config, "labels", "finite_uniform scenario")
                        .get<std::vector<std::string>>();
        FiniteCaseResult result = finite_uniform_case(fc);
        st.grid = std::move(result.grid);
        st.psi = std::move(result.psi);
        st.partition = std::move(result.partition);
        return st;
    }
    if (type == "gaussian") {
        const json& grid_cfg = require_field(config, "grid", "gaussian scenario");
        st.grid = uniform_grid_from_config(grid_cfg, resolution, "gaussian scenario");
        const double mean = config.value("mean", 0.0);
        const double sigma = config.value("sigma", 1.0);  // std of |psi|^2
        const double cut = config.value("cut", 1.0);
        st.psi = gaussian_ket(st.grid, mean, sigma * std::sqrt(2.0));
        st.partition = halfline_partition(st.grid, cut);
        return st;
    }
    if (type == "stern_gerlach") {
        SternGerlachConfig sg;
        sg.a = cplx{config.value("a_re", 1.0), config.value("a_im", 0.0)};
        sg.b = cplx{config.value("b_re", 0.0), config.value("b_im", 0.0)};
        sg.sigma = config.value("sigma", 1.0);
        sg.u_center = config.value("u_center", -3.0);
        sg.d_center = config.value("d_center", 3.0);
        if (config.contains("grid")) {
            const json& grid_cfg = config.at("grid");
            sg.screen_lo =
                require_field(grid_cfg, "lo", "stern_gerlach scenario").get<double>();
            sg.screen_hi =
                require_field(grid_cfg, "hi", "stern_gerlach scenario").get<double>();
            sg.screen_cells = require_field(grid_cfg, "cells", "stern_gerlach scenario")
                                  .get<std::size_t>();
        }
        if (resolution != 0) sg.screen_cells = resolution;
        SternGerlachState state = stern_gerlach_state(sg);
        st.grid = std::move(state.grid);
        st.psi = std::move(state.psi);
        st.partition = std::move(state.partition);
        return st;
    }
    if (type == "random") {
        const json& grid_cfg = require_field(config, "grid", "random scenario");
        st.grid = uniform_grid_from_config(grid_cfg, resolution, "random scenario");
        const int smoothness = config.value("smoothness", 2);
        st.psi = random_ket(seed, st.grid, smoothness);
        // two labels split at a mass-independent coordinate fraction
        const double frac = config.value("cut_fraction", 0.5);
        const double lo = st.grid.center1(0);
        const double hi = st.grid.center1(static_cast<std::uint32_t>(
            st.grid.cell_count() - 1));
        st.partition = halfline_partition(st.grid, lo + frac * (hi - lo));
        return st;
    }
    throw std::invalid_argument("build_scenario: unknown scenario type '" + type +
                                "'");
}

ScenarioState load_scenario(const std::string& path, std::size_t resolution,
                            std::uint64_t seed) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_scenario: cannot open '" + path + "'");
    json config;
    try {
        in >> config;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("load_scenario: parse error in '" + path +
                                    "': " + e.what());
    }
    return build_scenario(config, resolution, seed);
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "n,alpha,count_prob,born_prob,abs_error,deficit\n";
    for (const ConvergenceRow& row : report.rows)
        os << row.n << ',' << row.alpha << ',' << format_double(row.count_prob)
           << ',' << format_double(row.born_prob) << ','
           << format_double(row.abs_error) << ',' << format_double(row.deficit)
           << '\n';
}

json convergence_to_json(const ConvergenceReport& report) {
    json rows = json::array();
    for (const ConvergenceRow& row : report.rows)
        rows.push_back({{"n", row.n},
                        {"alpha", row.alpha},
                        {"count_prob", row.count_prob},
                        {"born_prob", row.born_prob},
                        {"abs_error", row.abs_error},
                        {"deficit", row.deficit},
                        {"bound", row.bound},
                        {"within_bound", row.within_bound}});
    return {{"eps_grid", report.eps_grid},
            {"all_within_bound", report.all_within_bound},
            {"rows", std::move(rows)}};
}

void write_partition_csv(std::ostream& os, const SampleGrid& grid,
                         const RefinementSequence& seq) {
    os << "n,k,u_lo,u_hi,mass,x_first,x_last\n";
    for (int n = 0; n <= seq.n_max; ++n) {
        const auto& begin = seq.level_begin[n];
        for (std::size_t k = 1; k <= seq.members_at(n); ++k) {
            const std::uint32_t b = begin[k - 1];
            const std::uint32_t e = begin[k];
            const double u_lo = b == 0 ? 0.0 : seq.cum[b - 1];
            const double u_hi = e == 0 ? 0.0 : seq.cum[e - 1];
            os << n << ',' << k << ',' << format_double(u_lo) << ','
               << format_double(u_hi) << ','
               << format_double(seq.level_mass[n][k - 1]) << ','
               << format_double(grid.center1(seq.cells[b])) << ','
               << format_double(grid.center1(seq.cells[e - 1])) << '\n';
        }
    }
}

void write_density_phase_csv(std::ostream& os, const DensityPhaseMap& map) {
    for (int s = 1; s <= map.sites; ++s) os << "phi_" << s << ',';
    os << "r,theta,prob_mass\n";
    for (std::size_t row = 0; row < map.rows(); ++row) {
        for (int s = 0; s < map.sites; ++s)
            os << format_double(map.phi[row * map.sites + s]) << ',';
        os << format_double(map.r[row]) << ',' << format_double(map.theta[row])
           << ',' << format_double(map.prob_mass[row]) << '\n';
    }
}

}  // namespace borncount
