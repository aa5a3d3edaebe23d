#include <doctest.h>

#include "fama/config.hpp"
#include "fama/io.hpp"
#include "fama/verify.hpp"

using namespace fama;

namespace {

const char* kBaselineCfg = R"(# baseline experiment
topology = line
ports = 16
width = 0.6
users = 4
active_ports = 2
snr_db = 15
sweep_snr_db = -10:5:20
sweep_active_ports = 1,2,4
sweep_ports = 8,16,32
strategies = slow_fama,mrc,dc,geport
trials = 8
seed = 42
)";

}  // namespace

TEST_CASE("config parsing") {
    const Config cfg = Config::parse_text(kBaselineCfg, "baseline");
    CHECK(cfg.get_int("ports", 0) == 16);
    CHECK(cfg.get_real("width", 0) == doctest::Approx(0.6));
    CHECK(cfg.get_list("sweep_snr_db") ==
          std::vector<double>{-10, -5, 0, 5, 10, 15, 20});
    CHECK(cfg.get_list("sweep_active_ports") == std::vector<double>{1, 2, 4});
    CHECK(cfg.get_string("missing_key_is_fine", "x") == "x");
}

TEST_CASE("config errors carry line numbers") {
    CHECK_THROWS_WITH_AS(Config::parse_text("ports 16\n", "f"), doctest::Contains("f:1"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(Config::parse_text("nonsense_key = 3\n", "f"),
                         doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_WITH_AS(Config::parse_text("ports = 1\nports = 2\n", "f"),
                         doctest::Contains("duplicate"), ConfigError);
    CHECK_THROWS_WITH_AS(Config::parse_text("ports = twelve\n", "f").get_int("ports", 0),
                         doctest::Contains("not an integer"), ConfigError);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("experiment spec from config") {
    const Config cfg = Config::parse_text(kBaselineCfg, "baseline");
    const ExperimentSpec spec = build_experiment_spec(cfg, SweepAxis::Kind::snr_db);
    CHECK(spec.topology.ports() == 16);
    CHECK(spec.users == 4);
    CHECK(spec.trials == 8);
    CHECK(spec.master_seed == 42);
    CHECK(spec.axis.values.size() == 7);
    CHECK(spec.strategies.size() == 4);
    CHECK_FALSE(spec.target_user.has_value());

    const ExperimentSpec lspec = build_experiment_spec(cfg, SweepAxis::Kind::active_ports);
    CHECK(lspec.axis.values == std::vector<double>{1, 2, 4});

    const ExperimentSpec with_overrides = build_experiment_spec(
        cfg, SweepAxis::Kind::snr_db,
        {{"seed", "7"}, {"trials", "3"}, {"strategies", "dc,geport"}, {"target_user", "2"}});
    CHECK(with_overrides.master_seed == 7);
    CHECK(with_overrides.trials == 3);
    CHECK(with_overrides.strategies == std::vector<Strategy>{Strategy::dc, Strategy::geport});
    CHECK(with_overrides.target_user == 1);  // 1-based in config, 0-based in the spec
}

TEST_CASE("missing sweep axis is a config error") {
    const Config cfg = Config::parse_text("ports = 8\nwidth = 0.5\n", "f");
    CHECK_THROWS_WITH_AS(build_experiment_spec(cfg, SweepAxis::Kind::snr_db),
                         doctest::Contains("sweep_snr_db"), ConfigError);
}

TEST_CASE("csv and plot data formatting") {
    SweepResult r;
    r.spec.topology = PortTopology::line(4, 0.5);
    r.spec.users = 2;
    r.spec.active_ports = 2;
    r.spec.axis.kind = SweepAxis::Kind::snr_db;
    r.spec.axis.values = {0.0, 10.0};
    r.spec.strategies = {Strategy::dc, Strategy::geport};
    r.spec.trials = 2;
    r.spec.master_seed = 9;
    r.sweep_values = {0.0, 10.0};
    r.values = {{{1.0, 2.0}, {2.0, 3.0}}, {{2.5, 3.5}, {4.0, 5.0}}};

    const std::string csv = results_csv(r);
    CHECK(csv == "sweep_value,strategy,mean_se,std_se,trials,seed\n"
                 "0,dc,1.5,0.707106781187,2,9\n"
                 "0,geport,2.5,0.707106781187,2,9\n"
                 "10,dc,3,0.707106781187,2,9\n"
                 "10,geport,4.5,0.707106781187,2,9\n");

    const std::string dat = plot_data(r);
    CHECK(dat == "# sweep_value dc geport\n0 1.5 2.5\n10 3 4.5\n");

    RunInfo info;
    info.subcommand = "sweep-snr";
    info.workers = 2;
    const std::string manifest = manifest_json(r, info);
    CHECK(manifest.find("\"seed\": 9") != std::string::npos);
    CHECK(manifest.find("\"axis_kind\": \"snr_db\"") != std::string::npos);
    CHECK(manifest.find("\"trials\": 2") != std::string::npos);
}

TEST_CASE("result files refuse to overwrite without force") {
    const std::string dir = "io_test_out";
    std::remove((dir + "/results.csv").c_str());
    write_result_file(dir, "results.csv", "a\n", false);
    CHECK_THROWS_WITH_AS(write_result_file(dir, "results.csv", "b\n", false),
                         doctest::Contains("refusing"), ConfigError);
    CHECK_NOTHROW(write_result_file(dir, "results.csv", "b\n", true));
    std::remove((dir + "/results.csv").c_str());
}

TEST_CASE("verification suite passes on a clean build") {
    const VerifyReport report = run_verification(123, 20);
    CHECK(report.ok());
    CHECK(report.sections.size() == 4);
    for (const auto& s : report.sections) CHECK(s.checks > 0);
}
