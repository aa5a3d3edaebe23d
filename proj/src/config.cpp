#include "fama/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fama {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::vector<std::string> kKnownKeys = {
    "topology", "ports", "ports1", "ports2", "width", "width1", "width2",
    "users", "active_ports", "snr_db",
    "sweep_snr_db", "sweep_active_ports", "sweep_ports",
    "strategies", "trials", "seed", "target_user",
    "geport_metric", "geport_loss_budget",
};

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (cfg.values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.values_[key] = {value, lineno};
        cfg.entries_.emplace_back(key, value);
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& Config::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(origin_ + ": missing key '" + key + "'");
    return it->second.first;
}

long Config::line_of(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? 0 : it->second.second;
}

void Config::fail(const std::string& key, const std::string& why) const {
    throw ConfigError(origin_ + ":" + std::to_string(line_of(key)) + ": field '" + key + "': " + why);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

long Config::get_int(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    try {
        size_t pos = 0;
        const long v = std::stol(raw(key), &pos);
        if (pos != raw(key).size()) fail(key, "not an integer");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(key, "not an integer");
    }
}

double Config::get_real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(raw(key), &pos);
        if (pos != raw(key).size()) fail(key, "not a number");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(key, "not a number");
    }
}

std::vector<double> Config::get_list(const std::string& key) const {
    const std::string& s = raw(key);
    std::vector<double> out;
    auto parse_one = [&](const std::string& tok) {
        try {
            size_t pos = 0;
            const double v = std::stod(tok, &pos);
            if (pos != tok.size()) fail(key, "bad list element '" + tok + "'");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail(key, "bad list element '" + tok + "'");
        }
    };

    if (s.find(':') != std::string::npos) {
        // start:step:stop, inclusive.
        std::istringstream in(s);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
            fail(key, "range needs start:step:stop");
        const double start = parse_one(trim(a)), step = parse_one(trim(b)), stop = parse_one(trim(c));
        if (!(step > 0)) fail(key, "range step must be > 0");
        for (double v = start; v <= stop + 1e-9 * std::abs(step); v += step) out.push_back(v);
    } else {
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) fail(key, "empty list element");
            out.push_back(parse_one(tok));
        }
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

std::vector<Strategy> parse_strategy_list(const std::string& csv) {
    std::vector<Strategy> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(parse_strategy(tok));
    }
    if (out.empty()) throw ConfigError("strategy list is empty");
    return out;
}

ExperimentSpec build_experiment_spec(const Config& cfg, SweepAxis::Kind kind,
                                     const std::map<std::string, std::string>& overrides) {
    auto overridden = [&](const std::string& key) -> const std::string* {
        const auto it = overrides.find(key);
        return it == overrides.end() ? nullptr : &it->second;
    };

    ExperimentSpec spec;

    const std::string topo = cfg.get_string("topology", "line");
    if (topo == "line") {
        spec.topology = PortTopology::line(int(cfg.get_int("ports", 100)),
                                           cfg.get_real("width", 4.0));
    } else if (topo == "grid") {
        spec.topology = PortTopology::grid(int(cfg.get_int("ports1", 1)),
                                           int(cfg.get_int("ports2", 1)),
                                           cfg.get_real("width1", 0.0),
                                           cfg.get_real("width2", 0.0));
    } else {
        throw ConfigError("topology must be 'line' or 'grid', got '" + topo + "'");
    }

    spec.users = int(cfg.get_int("users", 4));
    spec.active_ports = int(cfg.get_int("active_ports", 2));
    spec.snr_db = cfg.get_real("snr_db", 15.0);
    spec.trials = int(cfg.get_int("trials", 2000));
    spec.master_seed = std::uint64_t(cfg.get_int("seed", 1));
    spec.strategies = parse_strategy_list(cfg.get_string("strategies", "slow_fama,mrc,dc,geport"));

    spec.axis.kind = kind;
    const char* axis_key = kind == SweepAxis::Kind::snr_db          ? "sweep_snr_db"
                           : kind == SweepAxis::Kind::active_ports ? "sweep_active_ports"
                                                                   : "sweep_ports";
    if (!cfg.has(axis_key)) throw ConfigError("config is missing '" + std::string(axis_key) + "'");
    spec.axis.values = cfg.get_list(axis_key);

    auto to_long = [](const std::string& s, const std::string& what) {
        try {
            size_t pos = 0;
            const long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(what + ": expected an integer, got '" + s + "'");
        }
    };

    const std::string target = cfg.get_string("target_user", "average");
    if (target != "average")
        spec.target_user = int(to_long(target, "target_user") - 1);  // 1-based in configs

    const std::string metric = cfg.get_string("geport_metric", "exact_drop");
    if (metric == "exact_drop")
        spec.geport.metric = GeportMetric::exact_drop;
    else if (metric == "whitened")
        spec.geport.metric = GeportMetric::whitened;
    else if (metric == "raw_generalized")
        spec.geport.metric = GeportMetric::raw_generalized;
    else
        throw ConfigError("geport_metric must be exact_drop|whitened|raw_generalized");
    if (cfg.has("geport_loss_budget"))
        spec.geport.loss_budget = cfg.get_real("geport_loss_budget", 0.0);

    // Overrides land after the file so the CLI can pin seed/trials/strategies.
    if (const auto* v = overridden("seed")) spec.master_seed = std::uint64_t(to_long(*v, "seed"));
    if (const auto* v = overridden("trials")) spec.trials = int(to_long(*v, "trials"));
    if (const auto* v = overridden("strategies")) spec.strategies = parse_strategy_list(*v);
    if (const auto* v = overridden("target_user")) {
        if (*v == "average")
            spec.target_user.reset();
        else
            spec.target_user = int(to_long(*v, "target_user") - 1);
    }

    spec.validate();
    return spec;
}

}  // namespace fama
