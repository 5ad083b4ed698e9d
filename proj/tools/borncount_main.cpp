// borncount: build measurement scenarios, run dyadic equal-mass refinement
// studies and emit deterministic CSV/JSON reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "borncount/serialize.hpp"

namespace {

using namespace borncount;

// configuration problems exit with 2; numerical errors from the modules
// surface their own message and exit with 3
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string scenario;
    int n_max = 12;
    std::size_t resolution = 0;  // 0 keeps the scenario's grid
    std::uint64_t seed = 0;
    std::string out = ".";
    std::string format = "csv";
    double tau = kDefaultConsistencyTau;
    std::string ordering = "macro";
};

void add_common_options(CLI::App* cmd, CommonOpts& o, bool with_scenario = true) {
    if (with_scenario)
        cmd->add_option("--scenario", o.scenario, "scenario JSON file");
    cmd->add_option("--n-max", o.n_max, "deepest refinement level");
    cmd->add_option("--resolution", o.resolution,
                    "grid cells (power of two), overrides the scenario grid");
    cmd->add_option("--seed", o.seed, "seed for random scenarios");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--tau", o.tau, "consistency tolerance");
    cmd->add_option("--ordering", o.ordering, "macro or coordinate")
        ->check(CLI::IsMember({"macro", "coordinate"}));
}

void check_common(const CommonOpts& o) {
    if (o.resolution != 0 && (o.resolution & (o.resolution - 1)) != 0)
        throw ConfigError("--resolution must be a power of two");
    if (o.n_max < 0) throw ConfigError("--n-max must be >= 0");
    if (!(o.tau >= 0.0)) throw ConfigError("--tau must be >= 0");
}

Ordering parse_ordering(const CommonOpts& o) {
    return o.ordering == "coordinate" ? Ordering::CoordinateMajor
                                      : Ordering::MacrostateMajor;
}

std::filesystem::path output_dir(const CommonOpts& o) {
    const char* env = std::getenv("BORNCOUNT_OUT");
    std::filesystem::path dir = (env && *env) ? env : o.out;
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

void emit(const CommonOpts& o, const std::string& stem, const std::string& csv,
          const json& report) {
    const std::filesystem::path dir = output_dir(o);
    if (o.format == "csv" || o.format == "both")
        write_file(dir / (stem + ".csv"), csv);
    if (o.format == "json" || o.format == "both")
        write_file(dir / (stem + ".json"), report.dump(2) + "\n");
}

ScenarioState load_checked(const CommonOpts& o) {
    if (o.scenario.empty())
        throw ConfigError("a --scenario file is required");
    try {
        return load_scenario(o.scenario, o.resolution, o.seed);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

// ----------------------------------------------------------------- converge

int run_converge(const CommonOpts& o) {
    check_common(o);
    ScenarioState st = load_checked(o);
    const RefinementSequence seq =
        build_refinement(st.grid, st.psi, st.partition, o.n_max, parse_ordering(o));
    const ConvergenceReport report = convergence_study(seq, o.tau);
    std::ostringstream csv;
    write_convergence_csv(csv, report);
    emit(o, "converge", csv.str(), convergence_to_json(report));
    for (const ConvergenceRow& row : report.rows)
        if (row.n == o.n_max)
            std::cout << "n=" << row.n << " " << row.alpha
                      << " count=" << format_double(row.count_prob)
                      << " born=" << format_double(row.born_prob)
                      << " err=" << format_double(row.abs_error) << "\n";
    return 0;
}

// ------------------------------------------------------------ stern-gerlach

int run_stern_gerlach(const CommonOpts& o) {
    check_common(o);
    ScenarioState st;
    if (!o.scenario.empty()) {
        st = load_checked(o);
    } else {
        SternGerlachConfig config;
        if (o.resolution != 0) config.screen_cells = o.resolution;
        SternGerlachState state = stern_gerlach_state(config);
        st = ScenarioState{"stern_gerlach", std::move(state.grid),
                           std::move(state.psi), std::move(state.partition)};
    }
    const RefinementSequence seq =
        build_refinement(st.grid, st.psi, st.partition, o.n_max, parse_ordering(o));
    const ConvergenceReport report = convergence_study(seq, o.tau);
    json summary = {{"n_max", o.n_max}, {"born", json::object()},
                    {"counting", json::object()}};
    for (const std::string& name : st.partition.label_names) {
        summary["born"][name] = born_probability(st.grid, st.psi, st.partition, name);
        summary["counting"][name] = counting_probability(seq, o.n_max, name, o.tau);
    }
    summary["rows"] = convergence_to_json(report)["rows"];
    std::ostringstream csv;
    write_convergence_csv(csv, report);
    emit(o, "stern_gerlach", csv.str(), summary);
    std::cout << "born(up)=" << format_double(summary["born"]["up"].get<double>())
              << " counting(up)="
              << format_double(summary["counting"]["up"].get<double>()) << "\n";
    return 0;
}

// -------------------------------------------------------------------- finite

int run_finite(const CommonOpts& o, int n, const std::string& labels_csv) {
    check_common(o);
    FiniteCaseConfig config;
    if (!o.scenario.empty()) {
        std::ifstream in(o.scenario);
        if (!in) throw ConfigError("cannot open '" + o.scenario + "'");
        json j;
        try {
            in >> j;
            if (j.value("type", "") != "finite_uniform")
                throw std::invalid_argument("finite needs a finite_uniform scenario");
            config.n = j.at("n").get<int>();
            config.labels = j.at("labels").get<std::vector<std::string>>();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    } else {
        if (n < 1 || labels_csv.empty())
            throw ConfigError("finite needs --n and --labels (or a --scenario file)");
        config.n = n;
        std::stringstream ss(labels_csv);
        std::string item;
        while (std::getline(ss, item, ',')) config.labels.push_back(item);
    }
    FiniteCaseResult result;
    try {
        result = finite_uniform_case(config);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    json probs = json::object();
    std::ostringstream csv;
    csv << "label,probability\n";
    for (const auto& [name, p] : result.probabilities) {
        probs[name] = p;
        csv << name << ',' << format_double(p) << '\n';
    }
    emit(o, "finite", csv.str(), probs);
    std::cout << probs.dump() << "\n";
    return 0;
}

// --------------------------------------------------------------------- gauge

int run_gauge(const CommonOpts& o, int smoothness) {
    check_common(o);
    const std::size_t cells = o.resolution ? o.resolution : 1024;
    const SampleGrid grid = make_uniform_grid(-1.0, 1.0, cells);
    const Ket psi = random_ket(o.seed, grid, smoothness);
    const MacrostatePartition partition = halfline_partition(grid, 0.0);
    auto [real_ket, gauge] = gauge_absorb(psi);

    std::ostringstream csv;
    csv << "label,p_before,p_after,abs_delta\n";
    json rows = json::array();
    double max_delta = 0.0;
    for (const std::string& name : partition.label_names) {
        const double before = born_probability(grid, psi, partition, name);
        const double after = born_probability(grid, real_ket, partition, name);
        const double delta = std::abs(after - before);
        max_delta = std::max(max_delta, delta);
        csv << name << ',' << format_double(before) << ',' << format_double(after)
            << ',' << format_double(delta) << '\n';
        rows.push_back({{"label", name},
                        {"p_before", before},
                        {"p_after", after},
                        {"abs_delta", delta}});
    }
    emit(o, "gauge", csv.str(), json{{"rows", rows}, {"max_abs_delta", max_delta}});
    std::cout << "max |dP| = " << format_double(max_delta) << "\n";
    return 0;
}

// --------------------------------------------------------------------- dirac

int run_dirac(const CommonOpts& o, const std::string& map_spec, double lo,
              double hi) {
    check_common(o);
    MonotoneMap map;
    try {
        map = named_map(map_spec);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const std::size_t cells = o.resolution ? o.resolution : 4096;
    const SampleGrid grid = make_uniform_grid(lo, hi, cells);
    const DensityField r = pushforward_density(grid, map);
    std::ostringstream csv;
    csv << "x,r,fd_oracle,abs_error\n";
    json rows = json::array();
    double max_err = 0.0;
    for (std::uint32_t c = 0; c < grid.cell_count(); ++c) {
        const double x = grid.center1(c);
        const double oracle = std::abs(finite_difference(map.forward, x));
        const double err = std::abs(r.values[c] - oracle);
        max_err = std::max(max_err, err);
        csv << format_double(x) << ',' << format_double(r.values[c]) << ','
            << format_double(oracle) << ',' << format_double(err) << '\n';
    }
    emit(o, "dirac", csv.str(),
         json{{"map", map.name}, {"max_abs_error", max_err}});
    std::cout << "map " << map.name << ": max |r - fd| = " << format_double(max_err)
              << "\n";
    return 0;
}

// ------------------------------------------------------------ wavefunctional

int run_wavefunctional(const CommonOpts& o, int sites, int levels, double lo,
                       double hi, int smoothness) {
    check_common(o);
    FieldConfigSpace space;
    try {
        space = build_config_space(sites, levels, lo, hi);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const Ket Psi = random_ket(o.seed, space.grid, smoothness);
    const DensityPhaseMap map = emit_density_phase_map(space, Psi);
    std::ostringstream csv;
    write_density_phase_csv(csv, map);
    double total = 0.0;
    for (double p : map.prob_mass) total += p;
    emit(o, "wavefunctional", csv.str(),
         json{{"sites", sites},
              {"levels", levels},
              {"rows", map.rows()},
              {"prob_mass_total", total}});
    std::cout << "rows=" << map.rows() << " prob_mass_total=" << format_double(total)
              << "\n";
    return 0;
}

// ----------------------------------------------------------------- partition

int run_partition(const CommonOpts& o) {
    check_common(o);
    ScenarioState st = load_checked(o);
    const RefinementSequence seq =
        build_refinement(st.grid, st.psi, st.partition, o.n_max, parse_ordering(o));
    std::ostringstream csv;
    write_partition_csv(csv, st.grid, seq);
    json levels = json::array();
    for (int n = 0; n <= seq.n_max; ++n) {
        json cuts = json::array();
        for (std::size_t k = 1; k < seq.members_at(n); ++k) {
            const std::uint32_t b = seq.level_begin[n][k];
            cuts.push_back(b == 0 ? 0.0 : seq.cum[b - 1]);
        }
        levels.push_back({{"n", n}, {"u_cuts", cuts}});
    }
    emit(o, "partition", csv.str(),
         json{{"eps_grid", seq.eps_grid}, {"levels", levels}});
    std::cout << "levels=" << seq.n_max + 1
              << " eps_grid=" << format_double(seq.eps_grid) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equal-mass dyadic refinement and branch-counting toolkit"};
    app.require_subcommand(1);

    CommonOpts converge_opts;
    CLI::App* converge = app.add_subcommand(
        "converge", "refinement convergence study for a scenario");
    add_common_options(converge, converge_opts);

    CommonOpts sg_opts;
    CLI::App* stern = app.add_subcommand(
        "stern-gerlach", "two-packet screen measurement pipeline");
    add_common_options(stern, sg_opts);

    CommonOpts finite_opts;
    int finite_n = 0;
    std::string finite_labels;
    CLI::App* finite =
        app.add_subcommand("finite", "uniform superposition label probabilities");
    add_common_options(finite, finite_opts);
    finite->add_option("--n", finite_n, "number of equal-amplitude components");
    finite->add_option("--labels", finite_labels,
                       "comma-separated label per component");

    CommonOpts gauge_opts;
    int gauge_smoothness = 2;
    CLI::App* gauge = app.add_subcommand(
        "gauge", "phase absorption before/after probability table");
    add_common_options(gauge, gauge_opts, /*with_scenario=*/false);
    gauge->add_option("--smoothness", gauge_smoothness, "low-pass passes");

    CommonOpts dirac_opts;
    std::string dirac_map = "scale:2";
    double dirac_lo = -2.0, dirac_hi = 2.0;
    CLI::App* dirac = app.add_subcommand(
        "dirac", "pushforward density against the finite-difference Jacobian");
    add_common_options(dirac, dirac_opts, /*with_scenario=*/false);
    dirac->add_option("--map", dirac_map, "identity, cubic or scale:<a>");
    dirac->add_option("--lo", dirac_lo, "grid lower edge");
    dirac->add_option("--hi", dirac_hi, "grid upper edge");

    CommonOpts wf_opts;
    int wf_sites = 2, wf_levels = 8, wf_smoothness = 0;
    double wf_lo = -1.0, wf_hi = 1.0;
    CLI::App* wf = app.add_subcommand(
        "wavefunctional", "density/phase map of a seeded lattice wavefunctional");
    add_common_options(wf, wf_opts, /*with_scenario=*/false);
    wf->add_option("--sites", wf_sites, "lattice sites");
    wf->add_option("--levels", wf_levels, "field values per site");
    wf->add_option("--lo", wf_lo, "field range lower edge");
    wf->add_option("--hi", wf_hi, "field range upper edge");
    wf->add_option("--smoothness", wf_smoothness, "low-pass passes");

    CommonOpts part_opts;
    CLI::App* part = app.add_subcommand(
        "partition", "member boundaries of the refinement, per level");
    add_common_options(part, part_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (converge->parsed()) return run_converge(converge_opts);
        if (stern->parsed()) return run_stern_gerlach(sg_opts);
        if (finite->parsed()) return run_finite(finite_opts, finite_n, finite_labels);
        if (gauge->parsed()) return run_gauge(gauge_opts, gauge_smoothness);
        if (dirac->parsed())
            return run_dirac(dirac_opts, dirac_map, dirac_lo, dirac_hi);
        if (wf->parsed())
            return run_wavefunctional(wf_opts, wf_sites, wf_levels, wf_lo, wf_hi,
                                      wf_smoothness);
        if (part->parsed()) return run_partition(part_opts);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
