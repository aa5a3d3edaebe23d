#include "fama/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace fama {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string version_string() { return "0.1.0"; }

std::string results_csv(const SweepResult& result) {
    std::string out = "sweep_value,strategy,mean_se,std_se,trials,seed\n";
    for (size_t pi = 0; pi < result.sweep_values.size(); ++pi) {
        for (size_t si = 0; si < result.spec.strategies.size(); ++si) {
            const CellStats st = result.stats(int(pi), int(si));
            out += fmt12(result.sweep_values[pi]);
            out += ',';
            out += strategy_name(result.spec.strategies[si]);
            out += ',';
            out += fmt12(st.mean);
            out += ',';
            out += fmt12(st.stddev);
            out += ',';
            out += std::to_string(st.count);
            out += ',';
            out += std::to_string(result.spec.master_seed);
            out += '\n';
        }
    }
    return out;
}

std::string plot_data(const SweepResult& result) {
    std::string out = "# sweep_value";
    for (Strategy s : result.spec.strategies) out += " " + strategy_name(s);
    out += '\n';
    for (size_t pi = 0; pi < result.sweep_values.size(); ++pi) {
        out += fmt12(result.sweep_values[pi]);
        for (size_t si = 0; si < result.spec.strategies.size(); ++si)
            out += " " + fmt12(result.stats(int(pi), int(si)).mean);
        out += '\n';
    }
    return out;
}

std::string manifest_json(const SweepResult& result, const RunInfo& info) {
    nlohmann::json j;
    j["tool"] = "fama";
    j["version"] = version_string();
    j["subcommand"] = info.subcommand;
    j["workers"] = info.workers;
    j["wall_seconds"] = info.wall_seconds;

    const ExperimentSpec& spec = result.spec;
    nlohmann::json s;
    s["topology"] = spec.topology.describe();
    s["topology_kind"] = spec.topology.kind == TopologyKind::line ? "line" : "grid";
    s["ports1"] = spec.topology.n1;
    s["ports2"] = spec.topology.n2;
    s["width1"] = spec.topology.w1;
    s["width2"] = spec.topology.w2;
    s["users"] = spec.users;
    s["active_ports"] = spec.active_ports;
    s["snr_db"] = spec.snr_db;
    s["axis_kind"] = spec.axis.kind == SweepAxis::Kind::snr_db ? "snr_db"
                     : spec.axis.kind == SweepAxis::Kind::active_ports ? "active_ports"
                                                                       : "total_ports";
    s["axis_values"] = spec.axis.values;
    std::vector<std::string> strat;
    for (Strategy st : spec.strategies) strat.push_back(strategy_name(st));
    s["strategies"] = strat;
    s["trials"] = spec.trials;
    s["seed"] = spec.master_seed;
    s["target_user"] = spec.target_user ? nlohmann::json(*spec.target_user + 1)
                                        : nlohmann::json("average");
    s["geport_metric"] = spec.geport.metric == GeportMetric::exact_drop ? "exact_drop"
                         : spec.geport.metric == GeportMetric::whitened ? "whitened"
                                                                        : "raw_generalized";
    if (spec.geport.loss_budget) s["geport_loss_budget"] = *spec.geport.loss_budget;
    j["spec"] = s;

    if (!info.config_path.empty()) j["config_path"] = info.config_path;
    nlohmann::json echo = nlohmann::json::object();
    for (const auto& [k, v] : info.config_echo) echo[k] = v;
    j["config"] = echo;
    return j.dump(2) + "\n";
}

void write_result_file(const std::string& dir, const std::string& name, const std::string& text,
                       bool force) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    if (!force && fs::exists(path))
        throw ConfigError("refusing to overwrite " + path.string() + " (use --force)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

}  // namespace fama
