// Command-line driver for CDSA experiments: single Monte Carlo runs, sweeps
// over (topology, n), the canned figure reproductions, oracle validation, and
// spectral-gap tables.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "cdsa/emit.hpp"
#include "cdsa/harness.hpp"
#include "cdsa/logistic.hpp"
#include "cdsa/metrics.hpp"
#include "cdsa/validate.hpp"

namespace {

namespace fs = std::filesystem;

struct Overrides {
    long paths = -1;
    long kmax = -1;
    long long seed = -1;
    std::string out;
    bool svg = false;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--paths", ov.paths, "Override the Monte Carlo path count");
    cmd->add_option("--kmax", ov.kmax, "Override the iteration count");
    cmd->add_option("--seed", ov.seed, "Override the master seed");
    cmd->add_option("--out", ov.out, "Output directory (default: config, then $CDSA_OUT_DIR, then 'out')");
    cmd->add_flag("--svg", ov.svg, "Also emit SVG line plots");
}

void apply_overrides(cdsa::ExperimentConfig& cfg, const Overrides& ov) {
    if (ov.paths >= 1) cfg.paths = ov.paths;
    if (ov.kmax >= 1) cfg.k_max = ov.kmax;
    if (ov.seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(ov.seed);
    if (!ov.out.empty()) cfg.output.dir = ov.out;
    if (cfg.output.dir.empty()) {
        const char* env = std::getenv("CDSA_OUT_DIR");
        cfg.output.dir = env && *env ? env : "out";
    }
    if (ov.svg && cfg.output.svg.empty()) cfg.output.svg = "trace.svg";
}

// "path n=25" -> "path_n25", "mesh2d 5x5" -> "mesh2d_5x5"
std::string file_tag(std::string s) {
    auto pos = s.find(" n=");
    if (pos != std::string::npos) s.replace(pos, 3, "_n");
    for (char& c : s)
        if (c == ' ') c = '_';
    return s;
}

std::string stem_of(const std::string& name) {
    return fs::path(name).stem().string();
}

void print_summary(const cdsa::RunTrace& trace, const cdsa::ExperimentConfig& cfg) {
    std::cout << "topology " << trace.meta.topology << "  rho_w " << trace.meta.rho_w << "  paths "
              << trace.meta.paths << "  kmax " << trace.meta.k_max << "\n";
    if (!trace.size()) return;
    std::size_t last = trace.size() - 1;
    std::cout << "  final (k=" << trace.recorded_k[last] << "): U1 " << trace.u1[last] << "  V1 "
              << trace.v1[last] << "  U2 " << trace.u2[last] << "  V2 " << trace.v2[last]
              << "  mse_x " << trace.mse_x[last] << "\n";
    double k_lo = cfg.metrics.slope_k_lo > 0 ? cfg.metrics.slope_k_lo
                                             : std::max(500.0, 0.1 * static_cast<double>(cfg.k_max));
    double k_hi = cfg.metrics.slope_k_hi > 0 ? cfg.metrics.slope_k_hi : static_cast<double>(cfg.k_max);
    try {
        auto u1 = cdsa::loglog_slope(trace, cdsa::Metric::u1, k_lo, k_hi);
        auto v1 = cdsa::loglog_slope(trace, cdsa::Metric::v1, k_lo, k_hi);
        std::cout << "  slopes over k in [" << k_lo << ", " << k_hi << "]: U1 " << u1.slope
                  << " (r2 " << u1.r2 << "), V1 " << v1.slope << " (r2 " << v1.r2 << ")\n";
    } catch (const std::exception&) {
        // window too short on smoke runs; slopes are optional output
    }
}

int do_run(const std::string& config_path, const Overrides& ov) {
    auto cfg = cdsa::load_config(config_path);
    apply_overrides(cfg, ov);
    auto trace = cdsa::monte_carlo(cfg);
    fs::path dir(cfg.output.dir);
    fs::path csv = dir / cfg.output.csv;
    cdsa::write_csv(trace, csv);
    cdsa::write_meta(trace, cfg, fs::path(csv).replace_extension(".meta"));
    std::cout << "wrote " << csv.string() << "\n";
    if (!cfg.output.svg.empty()) {
        fs::path svg = dir / cfg.output.svg;
        cdsa::write_svg(std::span(&trace, 1), cdsa::Metric::mse_x, svg);
        std::cout << "wrote " << svg.string() << "\n";
    }
    print_summary(trace, cfg);
    return 0;
}

int emit_sweep(const std::vector<cdsa::RunTrace>& traces, const std::vector<std::string>& failures,
               const cdsa::ExperimentConfig& cfg, const std::string& base) {
    fs::path dir(cfg.output.dir);
    for (const auto& trace : traces) {
        std::string tag = file_tag(trace.meta.topology);
        fs::path csv = dir / (base + "_" + tag + ".csv");
        cdsa::write_csv(trace, csv);
        cdsa::write_meta(trace, cfg, fs::path(csv).replace_extension(".meta"));
        std::cout << "wrote " << csv.string() << "\n";
        print_summary(trace, cfg);
    }
    if (!cfg.output.svg.empty() && !traces.empty()) {
        fs::path svg = dir / (base + "_" + stem_of(cfg.output.svg) + ".svg");
        cdsa::write_svg(traces, cdsa::Metric::mse_x, svg);
        std::cout << "wrote " << svg.string() << "\n";
    }
    for (const auto& f : failures) std::cerr << "sweep point failed: " << f << "\n";
    return failures.empty() ? 0 : 2;
}

int do_sweep(const std::string& config_path, const std::string& axis_arg, const Overrides& ov) {
    auto cfg = cdsa::load_config(config_path);
    apply_overrides(cfg, ov);
    std::vector<cdsa::TopologySpec> axis = cfg.sweep_axis;
    if (!axis_arg.empty()) {
        axis.clear();
        std::stringstream ss(axis_arg);
        std::string token;
        while (std::getline(ss, token, ','))
            if (!token.empty()) axis.push_back(cdsa::parse_axis_point(token));
    }
    if (axis.empty())
        throw std::invalid_argument("sweep needs an axis: pass --axis or set [sweep] axis in the config");
    auto result = cdsa::sweep(cfg, axis);
    return emit_sweep(result.traces, result.failures, cfg, stem_of(cfg.output.csv));
}

// Canned figure reproduction: a sweep plus per-n panel plots for the n = 10
// traces (ridge) or the four-topology comparison (logistic).
int do_fig(const std::string& config_path, const Overrides& ov, const std::string& base,
           bool panel_n10) {
    auto cfg = cdsa::load_config(config_path);
    apply_overrides(cfg, ov);
    if (cfg.output.svg.empty()) cfg.output.svg = "all.svg";
    if (cfg.sweep_axis.empty())
        throw std::invalid_argument("figure config '" + config_path + "' has no [sweep] axis");
    auto result = cdsa::sweep(cfg, cfg.sweep_axis);

    // Group traces by topology kind so each panel compares sizes.
    std::vector<std::string> kinds;
    for (const auto& t : result.traces) {
        std::string kind = t.meta.topology.substr(0, t.meta.topology.find(' '));
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) kinds.push_back(kind);
    }
    fs::path dir(cfg.output.dir);
    int status = emit_sweep(result.traces, result.failures, cfg, base);
    if (kinds.size() > 1) {
        for (const auto& kind : kinds) {
            std::vector<cdsa::RunTrace> group;
            for (const auto& t : result.traces)
                if (t.meta.topology.rfind(kind, 0) == 0) group.push_back(t);
            if (group.size() > 1) {
                fs::path svg = dir / (base + "_" + kind + ".svg");
                cdsa::write_svg(group, cdsa::Metric::mse_x, svg);
                std::cout << "wrote " << svg.string() << "\n";
            }
            if (panel_n10) {
                for (const auto& t : group) {
                    if (t.meta.n != 10) continue;
                    const cdsa::Metric panel[] = {cdsa::Metric::u1, cdsa::Metric::v1,
                                                  cdsa::Metric::mse_x};
                    fs::path tsvg = dir / (base + "_" + kind + "_n10.svg");
                    cdsa::write_svg(t, panel, tsvg);
                    std::cout << "wrote " << tsvg.string() << "\n";
                }
            }
        }
    }
    return status;
}

int do_validate(const std::string& config_path, int points, int draws, long long seed_arg) {
    auto cfg = cdsa::load_config(config_path);
    std::uint64_t seed = seed_arg >= 0 ? static_cast<std::uint64_t>(seed_arg) : cfg.master_seed;
    // Validation needs the oracles only, not the reference optimum.
    std::unique_ptr<cdsa::CoupledProblem> problem;
    if (cfg.problem.kind == cdsa::ProblemSpec::Kind::logistic) {
        problem = std::make_unique<cdsa::LogisticProblem>(cdsa::LogisticProblem::Params{
            cfg.topology.n, cfg.problem.samples_per_agent, cfg.problem.data_seed});
    } else {
        problem = cdsa::make_problem(cfg.problem, cfg.topology.n);
    }
    auto report = cdsa::validate_assumptions(*problem, points, draws, seed);
    std::cout << cdsa::format_report(report);
    return report.any_flagged ? 2 : 0;
}

int do_spectra(const std::vector<std::string>& tokens, long ref_offset) {
    std::printf("%-12s %6s  %-12s  %-12s  %8s\n", "topology", "n", "rho_w", "gap", "K1");
    for (const auto& token : tokens) {
        auto spec = cdsa::parse_axis_point(token);
        auto topo = cdsa::make_topology(spec);
        auto w = cdsa::metropolis_weights(topo);
        long k1 = cdsa::consensus_onset(ref_offset, w.rho_w);
        std::printf("%-12s %6d  %-12.6g  %-12.6g  %8ld\n", cdsa::to_string(spec.kind).c_str(), topo.n,
                    w.rho_w, 1.0 - w.rho_w, k1);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CDSA: coupled distributed stochastic approximation experiments"};
    app.require_subcommand(1);

    std::string config_path, axis_arg;
    Overrides ov;

    auto* run_cmd = app.add_subcommand("run", "Run one Monte Carlo experiment from a config file");
    run_cmd->add_option("--config", config_path, "Experiment config file")->required();
    add_override_flags(run_cmd, ov);

    auto* sweep_cmd = app.add_subcommand("sweep", "Run the experiment across a (topology, n) axis");
    sweep_cmd->add_option("--config", config_path, "Experiment config file")->required();
    sweep_cmd->add_option("--axis", axis_arg,
                          "Comma-separated axis, e.g. path:5,path:25,mesh2d:5x5 "
                          "(default: [sweep] axis from the config)");
    add_override_flags(sweep_cmd, ov);

    auto* fig2_cmd = app.add_subcommand(
        "fig2", "Reproduce the ridge path-vs-complete comparison (per-n curves plus n=10 panels)");
    fig2_cmd->add_option("--config", config_path, "Figure config (default: configs/fig2.ini)");
    add_override_flags(fig2_cmd, ov);

    auto* fig3_cmd =
        app.add_subcommand("fig3", "Reproduce the logistic four-topology comparison at n = 25");
    fig3_cmd->add_option("--config", config_path, "Figure config (default: configs/fig3.ini)");
    add_override_flags(fig3_cmd, ov);

    int points = 10, draws = 100000;
    long long val_seed = -1;
    auto* validate_cmd =
        app.add_subcommand("validate", "Check oracle unbiasedness and variance bounds");
    validate_cmd->add_option("--config", config_path, "Experiment config file")->required();
    validate_cmd->add_option("--points", points, "Probe points")->capture_default_str();
    validate_cmd->add_option("--draws", draws, "Oracle draws per point")->capture_default_str();
    validate_cmd->add_option("--seed", val_seed, "Probe seed (default: master_seed from the config)");

    std::vector<std::string> spectra_tokens;
    long ref_offset = 18;
    auto* spectra_cmd =
        app.add_subcommand("spectra", "Print rho_w, spectral gap and K1 for topologies");
    spectra_cmd->add_option("topologies", spectra_tokens, "Topology list, e.g. path:8 complete:10")
        ->required();
    spectra_cmd->add_option("--ref-K", ref_offset, "Reference stepsize offset K for the K1 column")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        if (run_cmd->parsed()) return do_run(config_path, ov);
        if (sweep_cmd->parsed()) return do_sweep(config_path, axis_arg, ov);
        if (fig2_cmd->parsed())
            return do_fig(config_path.empty() ? "configs/fig2.ini" : config_path, ov, "fig2", true);
        if (fig3_cmd->parsed())
            return do_fig(config_path.empty() ? "configs/fig3.ini" : config_path, ov, "fig3", false);
        if (validate_cmd->parsed()) return do_validate(config_path, points, draws, val_seed);
        if (spectra_cmd->parsed()) return do_spectra(spectra_tokens, ref_offset);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;  // bad config or arguments
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;  // runtime failure
    }
    return 0;
}
