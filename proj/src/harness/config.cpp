#include "mpcbench/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "mpcbench/tscore/random.hpp"
#include "mpcbench/tscore/table.hpp"

namespace mpcbench::harness {

namespace {

using forecast::Architecture;

void check_keys(const toml::table& t, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, node] : t) {
        const std::string k(key.str());
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
    }
}

const toml::table* section(const toml::table& root, const char* name) {
    const toml::node* n = root.get(name);
    if (!n) return nullptr;
    if (!n->is_table()) throw ConfigError(std::string("'") + name + "' must be a table");
    return n->as_table();
}

double get_number(const toml::node& n, const std::string& key) {
    if (const auto d = n.value<double>()) return *d;
    throw ConfigError("'" + key + "' must be a number");
}

std::size_t get_count(const toml::node& n, const std::string& key) {
    const auto v = n.value<std::int64_t>();
    if (!v || *v < 0 || !n.is_integer()) throw ConfigError("'" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(*v);
}

std::string get_string(const toml::node& n, const std::string& key) {
    if (const auto s = n.value<std::string>()) return *s;
    throw ConfigError("'" + key + "' must be a string");
}

const toml::array& get_array(const toml::node& n, const std::string& key) {
    if (!n.is_array()) throw ConfigError("'" + key + "' must be an array");
    return *n.as_array();
}

template <typename F>
void if_set(const toml::table* t, const char* key, F&& f) {
    if (!t) return;
    if (const toml::node* n = t->get(key)) f(*n);
}

std::vector<std::size_t> count_list(const toml::node& n, const std::string& key) {
    std::vector<std::size_t> out;
    for (const auto& e : get_array(n, key)) out.push_back(get_count(e, key));
    return out;
}

std::vector<double> number_list(const toml::node& n, const std::string& key) {
    std::vector<double> out;
    for (const auto& e : get_array(n, key)) out.push_back(get_number(e, key));
    return out;
}

std::vector<std::string> string_list(const toml::node& n, const std::string& key) {
    std::vector<std::string> out;
    for (const auto& e : get_array(n, key)) out.push_back(get_string(e, key));
    return out;
}

tscore::IndexRange range_of(const toml::node& n, const std::string& key) {
    const auto v = count_list(n, key);
    if (v.size() != 2) throw ConfigError("'" + key + "' must be [begin, end]");
    return {v[0], v[1]};
}

void parse_scenario(const toml::table* t, ScenarioConfig& s) {
    if (!t) return;
    check_keys(*t, "[scenario]",
               {"source", "path", "n_buildings", "n_hours", "start", "base_load", "base_spread", "daily_amplitude",
                "weekly_amplitude", "annual_amplitude", "noise_sigma", "ar_coefficient", "level_shifts",
                "weekly_shifts", "ar_shifts"});
    auto& g = s.synthetic;
    if_set(t, "source", [&](const toml::node& n) {
        const std::string v = get_string(n, "source");
        if (v == "synthetic") {
            s.source = ScenarioConfig::Source::Synthetic;
        } else if (v == "csv") {
            s.source = ScenarioConfig::Source::Csv;
        } else {
            throw ConfigError("scenario source must be 'synthetic' or 'csv'");
        }
    });
    if_set(t, "path", [&](const toml::node& n) { s.csv_path = get_string(n, "path"); });
    if_set(t, "n_buildings", [&](const toml::node& n) { g.n_buildings = get_count(n, "n_buildings"); });
    if_set(t, "n_hours", [&](const toml::node& n) { g.n_hours = get_count(n, "n_hours"); });
    if_set(t, "start", [&](const toml::node& n) {
        try {
            g.start = tscore::parse_timestamp(get_string(n, "start"));
        } catch (const tscore::DataError& e) {
            throw ConfigError(std::string("scenario start: ") + e.what());
        }
    });
    if_set(t, "base_load", [&](const toml::node& n) { g.base_load = get_number(n, "base_load"); });
    if_set(t, "base_spread", [&](const toml::node& n) { g.base_spread = get_number(n, "base_spread"); });
    if_set(t, "daily_amplitude", [&](const toml::node& n) { g.daily_amplitude = get_number(n, "daily_amplitude"); });
    if_set(t, "weekly_amplitude", [&](const toml::node& n) { g.weekly_amplitude = get_number(n, "weekly_amplitude"); });
    if_set(t, "annual_amplitude", [&](const toml::node& n) { g.annual_amplitude = get_number(n, "annual_amplitude"); });
    if_set(t, "noise_sigma", [&](const toml::node& n) { g.noise_sigma = get_number(n, "noise_sigma"); });
    if_set(t, "ar_coefficient", [&](const toml::node& n) { g.ar_coefficient = get_number(n, "ar_coefficient"); });
    if_set(t, "level_shifts", [&](const toml::node& n) {
        g.level_shifts.clear();
        for (const auto& e : get_array(n, "level_shifts")) {
            const auto& pair = get_array(e, "level_shifts");
            if (pair.size() != 2) throw ConfigError("each level shift must be [hour, factor]");
            g.level_shifts.push_back({get_count(*pair.get(0), "level_shifts"), get_number(*pair.get(1), "level_shifts")});
        }
    });
    if_set(t, "weekly_shifts", [&](const toml::node& n) {
        g.weekly_shifts.clear();
        for (const auto& e : get_array(n, "weekly_shifts")) {
            const auto& pair = get_array(e, "weekly_shifts");
            if (pair.size() != 2) throw ConfigError("each weekly shift must be [hour, amplitude]");
            g.weekly_shifts.push_back(
                {get_count(*pair.get(0), "weekly_shifts"), get_number(*pair.get(1), "weekly_shifts")});
        }
    });
    if_set(t, "ar_shifts", [&](const toml::node& n) {
        g.ar_shifts.clear();
        for (const auto& e : get_array(n, "ar_shifts")) {
            const auto& pair = get_array(e, "ar_shifts");
            if (pair.size() != 2) throw ConfigError("each AR shift must be [hour, coefficient]");
            g.ar_shifts.push_back({get_count(*pair.get(0), "ar_shifts"), get_number(*pair.get(1), "ar_shifts")});
        }
    });
}

}  // namespace

void RunConfig::validate() const {
    if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    try {
        weights.validate();
        training.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (horizon < 1) throw ConfigError("horizon must be at least 1");
    if (training.horizon != horizon) throw ConfigError("forecaster horizon must equal the planning horizon");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (scenario.source == ScenarioConfig::Source::Csv && scenario.csv_path.empty()) {
        throw ConfigError("csv scenario needs a path");
    }
    if (models.empty()) throw ConfigError("at least one model is required");
    for (const std::size_t t : horizons) {
        if (t < 1) throw ConfigError("horizon values must be at least 1");
    }
    for (const double s : sigmas) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("noise levels must be finite and nonnegative");
    }
    for (const auto& s : noise_sets) {
        if (s != "all" && s != "load" && s != "solar" && s != "price" && s != "carbon") {
            throw ConfigError("unknown noise variable set '" + s + "'");
        }
    }
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    if (changepoint_min_segment < 2) throw ConfigError("changepoint min_segment must be at least 2");
    for (const std::size_t f : update_freqs) {
        // an update trains on the last f hours, which must hold one window
        if (f != 0 && f < training.input_window + horizon) {
            throw ConfigError("update frequency " + std::to_string(f) + " is shorter than window plus horizon");
        }
    }
    const std::set<std::string> sim = {"perfect", "persistence", "grw", "linear", "resmlp", "conv"};
    if (!sim.count(simulate_forecaster)) throw ConfigError("unknown simulate forecaster '" + simulate_forecaster + "'");
    if (!(simulate_sigma >= 0.0)) throw ConfigError("simulate sigma must be nonnegative");
    for (const auto* v : {&assets.power_kw, &assets.energy_kwh, &assets.pv_kwp}) {
        if (*v && !(**v >= 0.0)) throw ConfigError("asset capacities must be nonnegative");
    }
    if (assets.efficiency && !(*assets.efficiency > 0.0 && *assets.efficiency <= 1.0)) {
        throw ConfigError("efficiency must be in (0, 1]");
    }
    if (!(assets.pv_ratio >= 0.0)) throw ConfigError("pv_ratio must be nonnegative");
}

RunConfig parse_config(std::string_view text) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << "config parse error: " << e.description() << " at line " << e.source().begin.line;
        throw ConfigError(msg.str());
    }
    check_keys(root, "top level",
               {"experiment", "seed", "output", "threads", "horizon", "control_hours", "scenario", "split", "assets",
                "weights", "forecast", "sweep", "noise", "volume", "features", "online", "changepoint", "simulate"});
    RunConfig cfg;
    const toml::table* top = &root;
    if_set(top, "experiment", [&](const toml::node& n) { cfg.experiment = get_string(n, "experiment"); });
    if_set(top, "seed", [&](const toml::node& n) { cfg.seed = get_count(n, "seed"); });
    if_set(top, "output", [&](const toml::node& n) { cfg.output = get_string(n, "output"); });
    if_set(top, "threads", [&](const toml::node& n) { cfg.threads = get_count(n, "threads"); });
    if_set(top, "horizon", [&](const toml::node& n) { cfg.horizon = get_count(n, "horizon"); });
    if_set(top, "control_hours", [&](const toml::node& n) { cfg.control_hours = get_count(n, "control_hours"); });

    parse_scenario(section(root, "scenario"), cfg.scenario);

    if (const auto* t = section(root, "split")) {
        check_keys(*t, "[split]", {"train", "validate", "test"});
        tscore::SplitSpec s;
        if (!t->get("train") || !t->get("validate") || !t->get("test")) {
            throw ConfigError("[split] needs train, validate and test");
        }
        s.train = range_of(*t->get("train"), "train");
        s.validate = range_of(*t->get("validate"), "validate");
        s.test = range_of(*t->get("test"), "test");
        cfg.split = s;
    }
    if (const auto* t = section(root, "assets")) {
        check_keys(*t, "[assets]", {"power_kw", "energy_kwh", "efficiency", "pv_kwp", "pv_ratio"});
        if_set(t, "power_kw", [&](const toml::node& n) { cfg.assets.power_kw = get_number(n, "power_kw"); });
        if_set(t, "energy_kwh", [&](const toml::node& n) { cfg.assets.energy_kwh = get_number(n, "energy_kwh"); });
        if_set(t, "efficiency", [&](const toml::node& n) { cfg.assets.efficiency = get_number(n, "efficiency"); });
        if_set(t, "pv_kwp", [&](const toml::node& n) { cfg.assets.pv_kwp = get_number(n, "pv_kwp"); });
        if_set(t, "pv_ratio", [&](const toml::node& n) { cfg.assets.pv_ratio = get_number(n, "pv_ratio"); });
    }
    if (const auto* t = section(root, "weights")) {
        check_keys(*t, "[weights]", {"price", "carbon", "ramp"});
        if_set(t, "price", [&](const toml::node& n) { cfg.weights.gamma_p = get_number(n, "price"); });
        if_set(t, "carbon", [&](const toml::node& n) { cfg.weights.gamma_c = get_number(n, "carbon"); });
        if_set(t, "ramp", [&](const toml::node& n) { cfg.weights.gamma_r = get_number(n, "ramp"); });
    }
    if (const auto* t = section(root, "forecast")) {
        check_keys(*t, "[forecast]",
                   {"models", "window", "batch_size", "learning_rate", "max_epochs", "patience", "online_epochs",
                    "online_learning_rate", "features"});
        if_set(t, "models", [&](const toml::node& n) {
            cfg.models.clear();
            try {
                for (const auto& m : string_list(n, "models")) cfg.models.push_back(forecast::parse_architecture(m));
            } catch (const std::runtime_error& e) {
                throw ConfigError(e.what());
            }
        });
        if_set(t, "window", [&](const toml::node& n) { cfg.training.input_window = get_count(n, "window"); });
        if_set(t, "batch_size", [&](const toml::node& n) { cfg.training.batch_size = get_count(n, "batch_size"); });
        if_set(t, "learning_rate",
               [&](const toml::node& n) { cfg.training.learning_rate = get_number(n, "learning_rate"); });
        if_set(t, "max_epochs", [&](const toml::node& n) { cfg.training.max_epochs = get_count(n, "max_epochs"); });
        if_set(t, "patience", [&](const toml::node& n) { cfg.training.patience = get_count(n, "patience"); });
        if_set(t, "online_epochs",
               [&](const toml::node& n) { cfg.training.online_epochs = get_count(n, "online_epochs"); });
        if_set(t, "online_learning_rate", [&](const toml::node& n) {
            cfg.training.online_learning_rate = get_number(n, "online_learning_rate");
        });
        if_set(t, "features", [&](const toml::node& n) { cfg.n_features = get_count(n, "features"); });
    }
    if (const auto* t = section(root, "sweep")) {
        check_keys(*t, "[sweep]", {"horizons"});
        if_set(t, "horizons", [&](const toml::node& n) { cfg.horizons = count_list(n, "horizons"); });
    }
    if (const auto* t = section(root, "noise")) {
        check_keys(*t, "[noise]", {"sigmas", "sets", "replicates"});
        if_set(t, "sigmas", [&](const toml::node& n) { cfg.sigmas = number_list(n, "sigmas"); });
        if_set(t, "sets", [&](const toml::node& n) { cfg.noise_sets = string_list(n, "sets"); });
        if_set(t, "replicates", [&](const toml::node& n) { cfg.replicates = get_count(n, "replicates"); });
    }
    if (const auto* t = section(root, "volume")) {
        check_keys(*t, "[volume]", {"durations"});
        if_set(t, "durations", [&](const toml::node& n) { cfg.durations = count_list(n, "durations"); });
    }
    if (const auto* t = section(root, "features")) {
        check_keys(*t, "[features]", {"counts"});
        if_set(t, "counts", [&](const toml::node& n) { cfg.feature_counts = count_list(n, "counts"); });
    }
    if (const auto* t = section(root, "online")) {
        check_keys(*t, "[online]", {"freqs"});
        if_set(t, "freqs", [&](const toml::node& n) { cfg.update_freqs = count_list(n, "freqs"); });
    }
    if (const auto* t = section(root, "changepoint")) {
        check_keys(*t, "[changepoint]", {"min_segment"});
        if_set(t, "min_segment",
               [&](const toml::node& n) { cfg.changepoint_min_segment = get_count(n, "min_segment"); });
    }
    if (const auto* t = section(root, "simulate")) {
        check_keys(*t, "[simulate]", {"forecaster", "sigma"});
        if_set(t, "forecaster", [&](const toml::node& n) { cfg.simulate_forecaster = get_string(n, "forecaster"); });
        if_set(t, "sigma", [&](const toml::node& n) { cfg.simulate_sigma = get_number(n, "sigma"); });
    }
    cfg.training.horizon = cfg.horizon;
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) throw ConfigError("cannot read config '" + path.string() + "'");
    std::string text;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
    std::fclose(f);
    return parse_config(text);
}

std::string canonical_config(const RunConfig& c) {
    std::ostringstream o;
    auto num = [](double v) { return tscore::format_double(v); };
    auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string("default"); };
    auto list = [](const auto& v, auto fmt) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
        return s + "]";
    };
    auto count = [](std::size_t v) { return std::to_string(v); };
    const auto& g = c.scenario.synthetic;
    o << "experiment=" << c.experiment << '\n' << "seed=" << c.seed << '\n';
    o << "horizon=" << c.horizon << '\n' << "control_hours=" << c.control_hours << '\n';
    o << "scenario.source=" << (c.scenario.source == ScenarioConfig::Source::Csv ? "csv" : "synthetic") << '\n';
    o << "scenario.path=" << c.scenario.csv_path.generic_string() << '\n';
    o << "scenario.n_buildings=" << g.n_buildings << '\n' << "scenario.n_hours=" << g.n_hours << '\n';
    o << "scenario.start=" << tscore::format_timestamp(g.start) << '\n';
    o << "scenario.base_load=" << num(g.base_load) << '\n' << "scenario.base_spread=" << num(g.base_spread) << '\n';
    o << "scenario.amplitudes=" << num(g.daily_amplitude) << ',' << num(g.weekly_amplitude) << ','
      << num(g.annual_amplitude) << '\n';
    o << "scenario.noise=" << num(g.noise_sigma) << ',' << num(g.ar_coefficient) << '\n';
    o << "scenario.level_shifts="
      << list(g.level_shifts, [&](const tscore::LevelShift& s) { return std::to_string(s.at_hour) + ":" + num(s.factor); })
      << '\n';
    o << "scenario.weekly_shifts="
      << list(g.weekly_shifts,
              [&](const tscore::WeeklyShift& s) { return std::to_string(s.at_hour) + ":" + num(s.amplitude); })
      << '\n';
    o << "scenario.ar_shifts="
      << list(g.ar_shifts, [&](const tscore::ArShift& s) { return std::to_string(s.at_hour) + ":" + num(s.coefficient); })
      << '\n';
    if (c.split) {
        auto r = [](tscore::IndexRange x) { return std::to_string(x.begin) + "-" + std::to_string(x.end); };
        o << "split=" << r(c.split->train) << ',' << r(c.split->validate) << ',' << r(c.split->test) << '\n';
    } else {
        o << "split=default\n";
    }
    o << "assets=" << opt(c.assets.power_kw) << ',' << opt(c.assets.energy_kwh) << ',' << opt(c.assets.efficiency)
      << ',' << opt(c.assets.pv_kwp) << ',' << num(c.assets.pv_ratio) << '\n';
    o << "weights=" << num(c.weights.gamma_p) << ',' << num(c.weights.gamma_c) << ',' << num(c.weights.gamma_r) << '\n';
    o << "models=" << list(c.models, [](Architecture a) { return std::string(forecast::to_string(a)); }) << '\n';
    const auto& t = c.training;
    o << "training=" << t.input_window << ',' << t.batch_size << ',' << num(t.learning_rate) << ',' << t.max_epochs
      << ',' << t.patience << ',' << t.lr_patience << ',' << num(t.holdout_fraction) << ',' << t.online_epochs << ','
      << opt(t.online_learning_rate) << '\n';
    o << "features=" << c.n_features << '\n';
    o << "horizons=" << list(c.horizons, count) << '\n';
    o << "sigmas=" << list(c.sigmas, num) << '\n';
    o << "noise_sets=" << list(c.noise_sets, [](const std::string& s) { return s; }) << '\n';
    o << "replicates=" << c.replicates << '\n';
    o << "durations=" << list(c.durations, count) << '\n';
    o << "feature_counts=" << list(c.feature_counts, count) << '\n';
    o << "update_freqs=" << list(c.update_freqs, count) << '\n';
    o << "changepoint_min_segment=" << c.changepoint_min_segment << '\n';
    o << "simulate=" << c.simulate_forecaster << ',' << num(c.simulate_sigma) << '\n';
    return o.str();
}

std::string config_hash(const RunConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(canonical_config(cfg))));
    return buf;
}

}  // namespace mpcbench::harness
