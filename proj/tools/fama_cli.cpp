// Command-line front end: experiment sweeps with CSV/plot/manifest output,
// a single-instance debug view and a quick self-check suite.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "fama/config.hpp"
#include "fama/io.hpp"
#include "fama/oracle.hpp"
#include "fama/verify.hpp"

namespace {

using namespace fama;

struct SweepArgs {
    std::string config_path;
    std::string out_dir = "results";
    bool force = false;
    int workers = 0;
    std::map<std::string, std::string> overrides;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "experiment config file")->required();
    cmd->add_option("-o,--out", args.out_dir, "output directory (default: results)");
    cmd->add_flag("--force", args.force, "overwrite existing result files");
    cmd->add_option("-w,--workers", args.workers, "parallel trial workers (default: all cores)");
    static const char* keys[] = {"seed", "trials", "strategies", "target_user"};
    for (const char* key : keys) {
        cmd->add_option_function<std::string>(
            std::string("--") + key,
            [&args, key](const std::string& v) { args.overrides[key] = v; },
            std::string("override config ") + key);
    }
}

int run_sweep(const SweepArgs& args, SweepAxis::Kind kind, const std::string& subcommand,
              const std::string& plot_name) {
    const auto t0 = std::chrono::steady_clock::now();
    const Config cfg = Config::parse_file(args.config_path);
    const ExperimentSpec spec = build_experiment_spec(cfg, kind, args.overrides);

    const SweepResult result = run_experiment(spec, args.workers);

    RunInfo info;
    info.subcommand = subcommand;
    info.config_path = args.config_path;
    info.config_echo = cfg.entries();
    for (const auto& [k, v] : args.overrides) info.config_echo.emplace_back("override:" + k, v);
    info.workers = args.workers;
    info.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_result_file(args.out_dir, "results.csv", results_csv(result), args.force);
    write_result_file(args.out_dir, plot_name, plot_data(result), args.force);
    write_result_file(args.out_dir, "manifest.json", manifest_json(result, info), args.force);

    if (result.spec.strategies.size() >= 2)
        std::cout << format_comparison(compare_strategies(result));
    std::cout << "wrote " << args.out_dir << "/results.csv (" << result.sweep_values.size()
              << " sweep points, " << spec.trials << " trials)\n";
    return 0;
}

struct SingleArgs {
    int ports = 8;
    double width = 0.5;
    int grid_n1 = 0, grid_n2 = 0;
    double width2 = 0;
    int users = 4;
    int active_ports = 2;
    double snr_db = 15.0;
    std::uint64_t seed = 1;
    std::string metric = "exact_drop";
};

int run_single(const SingleArgs& a) {
    PortTopology topo = a.grid_n1 > 0 ? PortTopology::grid(a.grid_n1, a.grid_n2, a.width, a.width2)
                                      : PortTopology::line(a.ports, a.width);
    SystemConfig cfg;
    cfg.users = a.users;
    cfg.active_ports = a.active_ports;
    cfg.snr = linear_snr(a.snr_db);
    cfg.topology = topo;
    cfg.validate();

    GeportOptions gopt;
    if (a.metric == "whitened")
        gopt.metric = GeportMetric::whitened;
    else if (a.metric == "raw_generalized")
        gopt.metric = GeportMetric::raw_generalized;
    else if (a.metric != "exact_drop")
        throw ConfigError("unknown geport metric '" + a.metric + "'");

    const CorrelationMatrix corr = correlation_matrix(topo);
    const ChannelRealization h = sample_channels(corr, cfg.users, cfg.users, {a.seed, 0});

    std::printf("single trial: %s, K=%d, L=%d, SNR %.6g dB, seed %llu\n",
                topo.describe().c_str(), cfg.users, cfg.active_ports, a.snr_db,
                (unsigned long long)a.seed);
    for (int k = 0; k < cfg.users; ++k) {
        const SignalMatrixPair pair = build_pair(h, k, cfg.snr);
        std::printf("user %d:\n", k + 1);

        auto show = [&](const char* name, const ReceiverDesign& d) {
            std::string ports;
            for (size_t i = 0; i < d.ports.size(); ++i)
                ports += (i ? "," : "") + std::to_string(d.ports[i] + 1);
            std::string w;
            char buf[64];
            for (const cd& z : d.w) {
                std::snprintf(buf, sizeof(buf), " %.6g%+.6gi", z.real(), z.imag());
                w += buf;
            }
            std::printf("  %-10s ports {%s}  sinr %.12g  SE %.12g  w%s%s\n", name, ports.c_str(),
                        d.achieved_sinr, spectral_efficiency(d.achieved_sinr), w.c_str(),
                        d.degenerate ? "  [degenerate]" : "");
        };

        show("slow_fama", design_slow_fama(pair, h, k, cfg.snr));
        show("mrc", design_mrc(pair, h, k, cfg.snr, cfg.active_ports));
        show("dc", design_dc(pair, h, k, cfg.snr, cfg.active_ports));
        GeportTrace trace;
        show("geport", design_geport(pair, cfg.active_ports, gopt, &trace));
        std::printf("  geport telemetry: full-array sinr %.12g\n", trace.full_eigenvalue);
        for (const GeportStep& s : trace.steps)
            std::printf("    drop port %3d  metric %.6g  sinr after %.12g  accumulated loss %.6g\n",
                        s.removed_port + 1, s.metric_value, s.eigenvalue_after, s.accumulated_loss);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiport fluid-antenna receiver simulations"};
    app.require_subcommand(1);

    SweepArgs snr_args, l_args, n_args;
    auto* snr_cmd = app.add_subcommand("sweep-snr", "average SE vs transmit SNR");
    add_sweep_options(snr_cmd, snr_args);
    auto* l_cmd = app.add_subcommand("sweep-l", "average SE vs number of active ports");
    add_sweep_options(l_cmd, l_args);
    auto* n_cmd = app.add_subcommand("sweep-n", "average SE vs number of available ports");
    add_sweep_options(n_cmd, n_args);

    SingleArgs single_args;
    auto* single_cmd = app.add_subcommand("single", "one trial at full verbosity");
    single_cmd->add_option("--ports", single_args.ports, "line ports N");
    single_cmd->add_option("--width", single_args.width, "aperture in wavelengths");
    single_cmd->add_option("--grid-n1", single_args.grid_n1, "grid rows (enables grid topology)");
    single_cmd->add_option("--grid-n2", single_args.grid_n2, "grid columns");
    single_cmd->add_option("--width2", single_args.width2, "grid second aperture");
    single_cmd->add_option("--users", single_args.users, "users K (= BS antennas)");
    single_cmd->add_option("--active-ports", single_args.active_ports, "RF chains L");
    single_cmd->add_option("--snr-db", single_args.snr_db, "transmit SNR in dB");
    single_cmd->add_option("--seed", single_args.seed, "channel seed");
    single_cmd->add_option("--geport-metric", single_args.metric,
                           "exact_drop|whitened|raw_generalized");

    std::uint64_t verify_seed = 20240916u;
    int verify_instances = 60;
    auto* verify_cmd = app.add_subcommand("verify", "run the quick property suite");
    verify_cmd->add_option("--seed", verify_seed, "suite seed");
    verify_cmd->add_option("--instances", verify_instances, "instances per section");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (snr_cmd->parsed()) return run_sweep(snr_args, fama::SweepAxis::Kind::snr_db,
                                                "sweep-snr", "se_vs_snr.dat");
        if (l_cmd->parsed()) return run_sweep(l_args, fama::SweepAxis::Kind::active_ports,
                                              "sweep-l", "se_vs_l.dat");
        if (n_cmd->parsed()) return run_sweep(n_args, fama::SweepAxis::Kind::total_ports,
                                              "sweep-n", "se_vs_n.dat");
        if (single_cmd->parsed()) return run_single(single_args);
        if (verify_cmd->parsed()) {
            const fama::VerifyReport report = fama::run_verification(verify_seed, verify_instances);
            std::cout << report.summary();
            return report.ok() ? 0 : 1;
        }
    } catch (const fama::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
