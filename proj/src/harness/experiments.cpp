#include "mpcbench/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "mpcbench/cpdetect/changepoint.hpp"
#include "mpcbench/forecast/features.hpp"
#include "mpcbench/forecast/logging.hpp"
#include "mpcbench/forecast/reference_forecasters.hpp"
#include "mpcbench/fpcsim/fpca.hpp"
#include "mpcbench/harness/parallel.hpp"
#include "mpcbench/mpc/receding_horizon.hpp"
#include "mpcbench/tscore/csv_io.hpp"
#include "mpcbench/tscore/random.hpp"
#include "mpcbench/tscore/stats.hpp"

namespace mpcbench::harness {

namespace {

using forecast::Architecture;
using tscore::Cell;
using tscore::IndexRange;
using tscore::Table;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::string building_of(const std::string& variable) {
    return variable.rfind("load:", 0) == 0 ? variable.substr(5) : std::string();
}

std::string family_of(const std::string& variable) {
    return variable.rfind("load:", 0) == 0 ? std::string("load") : variable;
}

// Issue steps whose whole horizon lies inside `r`.
IndexRange issue_range(IndexRange r, std::size_t horizon) {
    if (r.size() < horizon) throw ConfigError("range shorter than the forecast horizon");
    return {r.begin, r.end - horizon + 1};
}

forecast::ForecasterConfig training_for(const Context& ctx, const std::string& label) {
    forecast::ForecasterConfig c = ctx.cfg.training;
    c.seed = derive_seed(ctx.cfg.seed, label);
    return c;
}

metrics::ForecastLog static_log(const Context& ctx, const forecast::VariableModel& m, const std::string& variable,
                                IndexRange scored) {
    metrics::ForecastLog log;
    forecast::set_truth(log, ctx.ds, {variable});
    for (std::size_t t = scored.begin; t < scored.end; ++t) {
        forecast::log_forecast(log, t, variable, forecast::forecast_with(m, ctx.ds, variable, t));
    }
    return log;
}

void add_mpc_columns(std::vector<Cell>& row, const sim::SimulationResult& r) {
    row.insert(row.end(), {r.performance_ratio, r.components.price, r.components.carbon, r.components.ramp,
                           r.baseline_components.price, r.baseline_components.carbon, r.baseline_components.ramp});
}

const std::vector<std::string> kMpcColumns = {"ratio",          "price",           "carbon",       "ramp",
                                              "baseline_price", "baseline_carbon", "baseline_ramp"};

std::vector<std::string> with_mpc_columns(std::vector<std::string> head, std::vector<std::string> tail = {}) {
    head.insert(head.end(), kMpcColumns.begin(), kMpcColumns.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

std::string arch_name(Architecture a) { return forecast::to_string(a); }

}  // namespace

tscore::SplitSpec default_split(std::size_t n) {
    const std::size_t train = n * 2 / 3;
    const std::size_t validate = train + n / 6;
    return {{0, train}, {train, validate}, {validate, n}};
}

Context prepare_context(const RunConfig& cfg) {
    cfg.validate();
    Context ctx{cfg, tscore::ScenarioDataset({}, tscore::TimeSeries({}, 1.0, {0.0}), tscore::TimeSeries({}, 1.0, {0.0}),
                                             tscore::TimeSeries({}, 1.0, {0.0})),
                {}, {}};
    try {
        if (cfg.scenario.source == ScenarioConfig::Source::Csv) {
            ctx.ds = tscore::load_dataset(cfg.scenario.csv_path);
        } else {
            tscore::SyntheticConfig s = cfg.scenario.synthetic;
            s.seed = derive_seed(cfg.seed, "scenario");
            ctx.ds = tscore::generate_synthetic_scenario(s);
        }
    } catch (const tscore::DataError& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    ctx.split = cfg.split.value_or(default_split(ctx.ds.size()));
    try {
        tscore::validate_split(ctx.split, ctx.ds.size());
    } catch (const tscore::DataError& e) {
        throw ConfigError(std::string("split: ") + e.what());
    }
    tscore::PvSizing pv;
    for (const auto& id : ctx.ds.building_ids()) {
        const double level = ctx.ds.load(id).mean({ctx.split.train.begin, ctx.split.train.end});
        pv.pv_kwp[id] = cfg.assets.pv_kwp.value_or(cfg.assets.pv_ratio * level);
    }
    ctx.assets = tscore::derive_asset_specs(ctx.ds, ctx.split.train, pv);
    for (auto& a : ctx.assets) {
        if (cfg.assets.power_kw) a.power_capacity_kw = *cfg.assets.power_kw;
        if (cfg.assets.energy_kwh) a.energy_capacity_kwh = *cfg.assets.energy_kwh;
        if (cfg.assets.efficiency) a.round_trip_efficiency = *cfg.assets.efficiency;
        a.validate();
    }
    return ctx;
}

std::size_t control_steps(const Context& ctx, std::size_t max_horizon) {
    const IndexRange test = ctx.split.test;
    std::size_t steps = ctx.cfg.control_hours != 0 ? std::min(ctx.cfg.control_hours, test.size()) : test.size();
    const std::size_t room = ctx.ds.size() - test.begin;
    if (room <= max_horizon) throw ConfigError("test range too short for the planning horizon");
    steps = std::min(steps, room - max_horizon);
    if (steps == 0) throw ConfigError("no control steps in the test range");
    return steps;
}

sim::SimulationResult run_mpc(const Context& ctx, forecast::Forecaster& f, std::size_t horizon, std::size_t steps) {
    sim::Plant plant(ctx.ds, ctx.assets);
    mpc::RecedingHorizonOptions o;
    o.begin = ctx.split.test.begin;
    o.end = o.begin + steps + horizon;
    return mpc::run_receding_horizon(plant, ctx.cfg.weights, horizon, f, o);
}

std::map<std::string, double> noise_levels(const Context& ctx, double sigma, const std::string& set) {
    std::map<std::string, double> out;
    const IndexRange train = ctx.split.train;
    for (const auto& var : forecast::control_variables(ctx.ds)) {
        const std::string fam = family_of(var);
        if (set != "all" && set != fam) continue;
        out[var] = sigma * std::abs(ctx.ds.variable(var).mean(train));
    }
    return out;
}

metrics::ForecastLog forecast_log(forecast::ModelForecaster& f, const tscore::ScenarioDataset& ds,
                                  const std::vector<std::string>& variables, std::size_t from, std::size_t to,
                                  tscore::IndexRange scored, std::size_t horizon) {
    metrics::ForecastLog log;
    forecast::set_truth(log, ds, variables);
    for (std::size_t t = from; t < to && t + horizon <= ds.size(); ++t) {
        for (const auto& var : variables) {
            std::vector<double> v = f.forecast_variable(ds, var, t, horizon);
            if (t >= scored.begin && t < scored.end) forecast::log_forecast(log, t, var, std::move(v));
        }
    }
    return log;
}

double test_nrmse(const Context& ctx, const forecast::VariableModel& m, const std::string& variable,
                  tscore::IndexRange scored) {
    return metrics::nrmse(static_log(ctx, m, variable, scored), variable);
}

ExperimentOutput exp_baseline(const Context& ctx) {
    const std::size_t T = ctx.cfg.horizon;
    const std::size_t steps = control_steps(ctx, T);
    std::vector<std::string> names = {"perfect", "persistence"};
    for (const Architecture a : ctx.cfg.models) names.push_back(arch_name(a));

    struct CellResult {
        std::vector<metrics::MetricRow> metrics;
        sim::SimulationResult sim;
    };
    const auto results = parallel_map<CellResult>(names.size(), ctx.cfg.threads, [&](std::size_t i) {
        std::unique_ptr<forecast::Forecaster> inner;
        if (names[i] == "perfect") {
            inner = std::make_unique<forecast::PerfectForecaster>();
        } else if (names[i] == "persistence") {
            inner = std::make_unique<forecast::PersistenceForecaster>();
        } else {
            const Architecture a = forecast::parse_architecture(names[i]);
            auto models = forecast::fit_models(ctx.ds, ctx.split.train, forecast::control_variables(ctx.ds), a,
                                               training_for(ctx, "baseline/" + names[i]), ctx.cfg.n_features);
            inner = std::make_unique<forecast::ModelForecaster>(names[i], std::move(models));
        }
        forecast::LoggingForecaster logged(*inner);
        CellResult r;
        r.sim = run_mpc(ctx, logged, T, steps);
        r.metrics = metrics::metric_rows(logged.log(), names[i]);
        return r;
    });

    Table metric_table({"model", "variable", "building", "nmae", "nrmse"});
    Table perf(with_mpc_columns({"model"}, {"lp_iterations", "steps"}));
    std::vector<std::pair<std::string, double>> timings;
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (const auto& m : results[i].metrics) metric_table.add_row({m.model, m.variable, m.building, m.nmae, m.nrmse});
        std::vector<Cell> row{names[i]};
        add_mpc_columns(row, results[i].sim);
        row.insert(row.end(), {as_int(results[i].sim.lp_iterations), as_int(results[i].sim.steps())});
        perf.add_row(std::move(row));
        timings.emplace_back("solve_seconds/" + names[i], results[i].sim.solve_seconds);
    }
    return {{{"metrics", metric_table, "x=model;y=nmae,nrmse;group=variable,building"},
             {"performance", perf, "x=model;y=ratio"}},
            timings};
}

ExperimentOutput exp_horizon_sweep(const Context& ctx) {
    const std::size_t max_t = *std::max_element(ctx.cfg.horizons.begin(), ctx.cfg.horizons.end());
    const std::size_t steps = control_steps(ctx, max_t);
    Table t(with_mpc_columns({"horizon"}, {"lp_iterations", "steps"}));
    std::vector<std::pair<std::string, double>> timings;
    // Sequential on purpose: solve times are part of the output.
    for (const std::size_t T : ctx.cfg.horizons) {
        forecast::PerfectForecaster f;
        const sim::SimulationResult r = run_mpc(ctx, f, T, steps);
        std::vector<Cell> row{as_int(T)};
        add_mpc_columns(row, r);
        row.insert(row.end(), {as_int(r.lp_iterations), as_int(r.steps())});
        t.add_row(std::move(row));
        timings.emplace_back("solve_seconds/T=" + std::to_string(T), r.solve_seconds);
    }
    return {{{"horizon", t, "x=horizon;y=ratio"}}, timings};
}

ExperimentOutput exp_generalisation(const Context& ctx) {
    const auto ids = ctx.ds.building_ids();
    const IndexRange scored = issue_range(ctx.split.test, ctx.cfg.horizon);
    Table matrix({"model", "train_building", "target_building", "nrmse", "relative_nrmse"});
    Table reuse({"model", "target_building", "selected_building", "similarity", "relative_nrmse",
                 "best_relative_nrmse", "mean_relative_nrmse"});

    // Similarity of daily load shapes on the train range, from a pooled fPCA.
    std::map<std::string, Eigen::MatrixXd> profiles;
    Eigen::MatrixXd pooled;
    for (const auto& id : ids) {
        profiles[id] = fpcsim::extract_daily_profiles(ctx.ds.load(id).slice(ctx.split.train));
        Eigen::MatrixXd next(pooled.rows() + profiles[id].rows(), fpcsim::kHoursPerDay);
        if (pooled.rows() > 0) next.topRows(pooled.rows()) = pooled;
        next.bottomRows(profiles[id].rows()) = profiles[id];
        pooled = std::move(next);
    }
    const fpcsim::FpcaModel fpca = fpcsim::fit_fpca(pooled, fpcsim::default_components(pooled));
    const std::vector<double> weights = fpca.weights();
    std::map<std::string, Eigen::MatrixXd> scores;
    for (const auto& id : ids) scores[id] = fpcsim::transform(fpca, profiles[id]);

    for (const Architecture a : ctx.cfg.models) {
        const std::string name = arch_name(a);
        const auto models = parallel_map<forecast::VariableModel>(ids.size(), ctx.cfg.threads, [&](std::size_t i) {
            const std::string var = tscore::load_variable(ids[i]);
            return forecast::fit_models(ctx.ds, ctx.split.train, {var}, a,
                                        training_for(ctx, "generalisation/" + name + "/" + ids[i]),
                                        ctx.cfg.n_features)
                .at(var);
        });
        // nrmse[train][target]
        std::vector<std::vector<double>> err(ids.size(), std::vector<double>(ids.size()));
        for (std::size_t s = 0; s < ids.size(); ++s) {
            for (std::size_t d = 0; d < ids.size(); ++d) {
                err[s][d] = test_nrmse(ctx, models[s], tscore::load_variable(ids[d]), scored);
            }
        }
        for (std::size_t s = 0; s < ids.size(); ++s) {
            for (std::size_t d = 0; d < ids.size(); ++d) {
                matrix.add_row({name, ids[s], ids[d], err[s][d], s == d ? 1.0 : err[s][d] / err[d][d]});
            }
        }
        if (ids.size() < 2) continue;
        for (std::size_t d = 0; d < ids.size(); ++d) {
            std::map<std::string, Eigen::MatrixXd> candidates;
            double best = std::numeric_limits<double>::infinity();
            double sum = 0.0;
            for (std::size_t s = 0; s < ids.size(); ++s) {
                if (s == d) continue;
                candidates[ids[s]] = scores[ids[s]];
                const double rel = err[s][d] / err[d][d];
                best = std::min(best, rel);
                sum += rel;
            }
            const std::string pick = fpcsim::select_reuse_model(scores[ids[d]], candidates, weights);
            const auto s = static_cast<std::size_t>(std::find(ids.begin(), ids.end(), pick) - ids.begin());
            reuse.add_row({name, ids[d], pick, fpcsim::similarity_metric(scores[ids[d]], scores[pick], weights),
                           err[s][d] / err[d][d], best, sum / static_cast<double>(ids.size() - 1)});
        }
    }
    ExperimentOutput out{{{"generalisation", matrix, "x=target_building;y=relative_nrmse;group=model,train_building"},
                          {"similarity", fpcsim::similarity_matrix(scores, weights), ""}},
                         {}};
    if (!reuse.empty()) out.tables.push_back({"reuse", reuse, "x=target_building;y=relative_nrmse;group=model"});
    return out;
}

ExperimentOutput exp_data_volume(const Context& ctx) {
    const IndexRange train = ctx.split.train;
    const std::size_t len = train.size();
    std::vector<std::size_t> durations = ctx.cfg.durations;
    if (durations.empty()) durations = {len, len / 2, len / 4, 720};
    std::sort(durations.begin(), durations.end(), std::greater<>());
    durations.erase(std::unique(durations.begin(), durations.end()), durations.end());
    if (durations.front() != len) durations.insert(durations.begin(), len);
    const Architecture arch = ctx.cfg.models.front();
    const auto vars = forecast::control_variables(ctx.ds);
    const IndexRange scored = issue_range(ctx.split.test, ctx.cfg.horizon);
    const std::size_t min_len = ctx.cfg.training.input_window + ctx.cfg.horizon;

    struct Cell2 {
        double nrmse = kNaN;
        double nmae = kNaN;
        std::string status = "ok";
    };
    const std::size_t n = durations.size() * vars.size();
    const auto cells = parallel_map<Cell2>(n, ctx.cfg.threads, [&](std::size_t k) {
        const std::size_t d = durations[k / vars.size()];
        const std::string& var = vars[k % vars.size()];
        Cell2 c;
        if (d > len || d < min_len) {
            c.status = "insufficient";
            return c;
        }
        const auto m = forecast::fit_models(ctx.ds, {train.end - d, train.end}, {var}, arch,
                                            training_for(ctx, "volume"), ctx.cfg.n_features)
                           .at(var);
        const auto log = static_log(ctx, m, var, scored);
        c.nrmse = metrics::nrmse(log, var);
        c.nmae = metrics::nmae(log, var);
        return c;
    });
    Table t({"duration_hours", "variable", "building", "nmae", "nrmse", "delta_nrmse", "status"});
    for (std::size_t k = 0; k < n; ++k) {
        const std::string& var = vars[k % vars.size()];
        const double full = cells[k % vars.size()].nrmse;
        const double delta = cells[k].status == "ok" ? (cells[k].nrmse - full) / full : kNaN;
        t.add_row({as_int(durations[k / vars.size()]), family_of(var), building_of(var), cells[k].nmae, cells[k].nrmse,
                   delta, cells[k].status});
    }
    return {{{"volume", t, "x=duration_hours;y=delta_nrmse;group=variable,building"}}, {}};
}

ExperimentOutput exp_changepoint_screen(const Context& ctx) {
    const IndexRange train = ctx.split.train;
    const Architecture arch = ctx.cfg.models.front();
    const std::size_t min_len = ctx.cfg.training.input_window + ctx.cfg.horizon;
    const IndexRange val_scored = issue_range(ctx.split.validate, ctx.cfg.horizon);
    const IndexRange test_scored = issue_range(ctx.split.test, ctx.cfg.horizon);
    Table cands({"building", "candidate", "begin", "begin_timestamp", "length", "short_history", "validate_nrmse",
                 "test_nrmse", "test_delta", "selected"});
    Table points({"building", "index", "timestamp", "score"});

    for (const auto& id : ctx.ds.building_ids()) {
        const std::string var = tscore::load_variable(id);
        const auto series = ctx.ds.load(id).values().subspan(train.begin, train.size());
        const cpdetect::Decomposition d = cpdetect::decompose(series);
        cpdetect::DetectOptions opts;
        opts.min_segment = ctx.cfg.changepoint_min_segment;
        const auto report = cpdetect::detect_changepoints(d.trend, cpdetect::default_penalty(d), opts);
        for (std::size_t k = 0; k < report.indices.size(); ++k) {
            const std::size_t at = train.begin + report.indices[k];
            points.add_row({id, as_int(at), tscore::format_timestamp(ctx.ds.start() + std::chrono::hours(at)),
                            report.scores[k]});
        }
        const auto candidates = cpdetect::screen_training_data(series.size(), report);
        struct Score {
            double validate = kNaN;
            double test = kNaN;
        };
        const auto scores = parallel_map<Score>(candidates.size(), ctx.cfg.threads, [&](std::size_t k) {
            Score s;
            if (candidates[k].length < min_len) return s;
            const IndexRange r{train.begin + candidates[k].begin, train.end};
            const auto m = forecast::fit_models(ctx.ds, r, {var}, arch, training_for(ctx, "changepoint/" + id),
                                                ctx.cfg.n_features)
                               .at(var);
            s.validate = test_nrmse(ctx, m, var, val_scored);
            s.test = test_nrmse(ctx, m, var, test_scored);
            return s;
        });
        std::size_t selected = 0;
        for (std::size_t k = 1; k < candidates.size(); ++k) {
            if (scores[k].validate < scores[selected].validate) selected = k;
        }
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const std::size_t begin = train.begin + candidates[k].begin;
            cands.add_row({id, as_int(k), as_int(begin),
                           tscore::format_timestamp(ctx.ds.start() + std::chrono::hours(begin)),
                           as_int(candidates[k].length), as_int(candidates[k].short_history ? 1 : 0), scores[k].validate,
                           scores[k].test, (scores[k].test - scores[0].test) / scores[0].test,
                           as_int(k == selected ? 1 : 0)});
        }
    }
    return {{{"candidates", cands, "x=length;y=test_delta;group=building"}, {"changepoints", points, ""}}, {}};
}

ExperimentOutput exp_feature_count(const Context& ctx) {
    const auto vars = forecast::control_variables(ctx.ds);
    const IndexRange scored = issue_range(ctx.split.test, ctx.cfg.horizon);
    for (const auto& var : vars) {
        const std::size_t available = forecast::rank_features(ctx.ds, var, ctx.split.train).size();
        for (const std::size_t n : ctx.cfg.feature_counts) {
            if (n > available) {
                throw ConfigError("feature count " + std::to_string(n) + " exceeds the " + std::to_string(available) +
                                  " candidates for " + var);
            }
        }
    }
    std::vector<std::size_t> counts = ctx.cfg.feature_counts;
    if (std::find(counts.begin(), counts.end(), 0) == counts.end()) counts.insert(counts.begin(), 0);
    struct Cell2 {
        std::vector<std::string> features;
        double nmae = 0.0;
        double nrmse = 0.0;
    };
    const std::size_t n = counts.size() * vars.size();
    const auto cells = parallel_map<Cell2>(n, ctx.cfg.threads, [&](std::size_t k) {
        const std::string& var = vars[k % vars.size()];
        const auto m = forecast::fit_models(ctx.ds, ctx.split.train, {var}, Architecture::Linear,
                                            training_for(ctx, "features"), counts[k / vars.size()])
                           .at(var);
        const auto log = static_log(ctx, m, var, scored);
        return Cell2{m.features, metrics::nmae(log, var), metrics::nrmse(log, var)};
    });
    const std::size_t zero = static_cast<std::size_t>(std::find(counts.begin(), counts.end(), 0) - counts.begin());
    Table t({"n_features", "variable", "building", "features", "nmae", "nrmse", "delta_nrmse"});
    for (std::size_t k = 0; k < n; ++k) {
        const std::string& var = vars[k % vars.size()];
        std::string joined;
        for (const auto& f : cells[k].features) joined += (joined.empty() ? "" : ";") + f;
        const double base = cells[zero * vars.size() + k % vars.size()].nrmse;
        t.add_row({as_int(counts[k / vars.size()]), family_of(var), building_of(var), joined, cells[k].nmae,
                   cells[k].nrmse, (cells[k].nrmse - base) / base});
    }
    return {{{"features", t, "x=n_features;y=nrmse;group=variable,building"}}, {}};
}

ExperimentOutput exp_online_update(const Context& ctx) {
    const auto vars = forecast::control_variables(ctx.ds);
    const Architecture arch = ctx.cfg.models.front();
    const auto base = forecast::fit_models(ctx.ds, ctx.split.train, vars, arch, training_for(ctx, "online"),
                                           ctx.cfg.n_features);
    std::vector<std::size_t> freqs = ctx.cfg.update_freqs;
    if (std::find(freqs.begin(), freqs.end(), 0) == freqs.end()) freqs.insert(freqs.begin(), 0);
    const IndexRange scored = issue_range(ctx.split.test, ctx.cfg.horizon);

    struct Cell2 {
        std::map<std::string, double> nrmse;
        std::size_t updates = 0;
    };
    const auto cells = parallel_map<Cell2>(freqs.size(), ctx.cfg.threads, [&](std::size_t k) {
        forecast::OnlineSchedule sched;
        sched.freq = freqs[k];
        sched.anchor = ctx.split.train.end;
        sched.cfg = training_for(ctx, "online/update");
        forecast::ModelForecaster f("online", base, sched);
        const auto log = forecast_log(f, ctx.ds, vars, ctx.split.train.end, scored.end, scored, ctx.cfg.horizon);
        Cell2 c;
        for (const auto& v : vars) c.nrmse[v] = metrics::nrmse(log, v);
        c.updates = f.updates();
        return c;
    });
    const std::size_t never = static_cast<std::size_t>(std::find(freqs.begin(), freqs.end(), 0) - freqs.begin());
    Table t({"freq_hours", "variable", "building", "nrmse", "improvement", "updates"});
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        for (const auto& v : vars) {
            const double b = cells[never].nrmse.at(v);
            t.add_row({as_int(freqs[k]), family_of(v), building_of(v), cells[k].nrmse.at(v),
                       (b - cells[k].nrmse.at(v)) / b, as_int(cells[k].updates)});
        }
    }
    return {{{"online", t, "x=freq_hours;y=improvement;group=variable,building"}}, {}};
}

ExperimentOutput exp_noise_sensitivity(const Context& ctx) {
    const std::size_t T = ctx.cfg.horizon;
    const std::size_t steps = control_steps(ctx, T);
    const auto& sets = ctx.cfg.noise_sets;
    const auto& sigmas = ctx.cfg.sigmas;
    const std::size_t reps = ctx.cfg.replicates;
    const std::size_t n = sets.size() * sigmas.size() * reps;
    const std::uint64_t noise_seed = derive_seed(ctx.cfg.seed, "noise");
    const auto runs = parallel_map<sim::SimulationResult>(n, ctx.cfg.threads, [&](std::size_t k) {
        const std::size_t r = k % reps;
        const std::size_t s = (k / reps) % sigmas.size();
        const std::string& set = sets[k / (reps * sigmas.size())];
        forecast::GrwForecaster f(noise_levels(ctx, sigmas[s], set),
                                  derive_seed(derive_seed(noise_seed, set), s * 1000003 + r));
        return run_mpc(ctx, f, T, steps);
    });
    Table t(with_mpc_columns({"variables", "sigma", "replicate"}));
    Table summary({"variables", "sigma", "mean_ratio", "min_ratio", "max_ratio"});
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = k % reps;
        const std::size_t s = (k / reps) % sigmas.size();
        const std::string& set = sets[k / (reps * sigmas.size())];
        std::vector<Cell> row{set, sigmas[s], as_int(r)};
        add_mpc_columns(row, runs[k]);
        t.add_row(std::move(row));
        if (r + 1 == reps) {
            double sum = 0.0;
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t j = k + 1 - reps; j <= k; ++j) {
                sum += runs[j].performance_ratio;
                lo = std::min(lo, runs[j].performance_ratio);
                hi = std::max(hi, runs[j].performance_ratio);
            }
            summary.add_row({set, sigmas[s], sum / static_cast<double>(reps), lo, hi});
        }
    }
    return {{{"runs", t, ""}, {"summary", summary, "x=sigma;y=mean_ratio;group=variables"}}, {}};
}

ExperimentOutput exp_simulate(const Context& ctx) {
    const std::size_t T = ctx.cfg.horizon;
    const std::size_t steps = control_steps(ctx, T);
    const std::string& which = ctx.cfg.simulate_forecaster;
    std::unique_ptr<forecast::Forecaster> f;
    if (which == "perfect") {
        f = std::make_unique<forecast::PerfectForecaster>();
    } else if (which == "persistence") {
        f = std::make_unique<forecast::PersistenceForecaster>();
    } else if (which == "grw") {
        f = std::make_unique<forecast::GrwForecaster>(noise_levels(ctx, ctx.cfg.simulate_sigma, "all"),
                                                      derive_seed(ctx.cfg.seed, "simulate/grw"));
    } else {
        const Architecture a = forecast::parse_architecture(which);
        f = std::make_unique<forecast::ModelForecaster>(
            which, forecast::fit_models(ctx.ds, ctx.split.train, forecast::control_variables(ctx.ds), a,
                                        training_for(ctx, "simulate/" + which), ctx.cfg.n_features));
    }
    const sim::SimulationResult r = run_mpc(ctx, *f, T, steps);
    Table traj({"step", "timestamp", "building", "load", "solar", "price", "carbon", "soc", "action", "net_demand",
                "baseline_net_demand"});
    for (std::size_t k = 0; k < r.steps(); ++k) {
        const std::size_t t = r.first_step + k;
        for (std::size_t i = 0; i < r.buildings.size(); ++i) {
            const std::string& id = r.buildings[i];
            traj.add_row({as_int(t), tscore::format_timestamp(ctx.ds.start() + std::chrono::hours(t)), id,
                          ctx.ds.load(id).values()[t], ctx.ds.solar().values()[t], ctx.ds.price().values()[t],
                          ctx.ds.carbon().values()[t], r.soc[i][k], r.action[i][k], r.net_demand[i][k],
                          r.baseline_net_demand[i][k]});
        }
    }
    Table summary(with_mpc_columns({"forecaster"}, {"lp_iterations", "steps"}));
    std::vector<Cell> row{which};
    add_mpc_columns(row, r);
    row.insert(row.end(), {as_int(r.lp_iterations), as_int(r.steps())});
    summary.add_row(std::move(row));
    return {{{"trajectories", traj, "x=step;y=soc,net_demand,baseline_net_demand;group=building"},
             {"summary", summary, ""}},
            {{"solve_seconds", r.solve_seconds}}};
}

ExperimentOutput run_experiment(const Context& ctx) {
    const std::string& e = ctx.cfg.experiment;
    if (e == "baseline") return exp_baseline(ctx);
    if (e == "horizon") return exp_horizon_sweep(ctx);
    if (e == "generalisation") return exp_generalisation(ctx);
    if (e == "volume") return exp_data_volume(ctx);
    if (e == "changepoint") return exp_changepoint_screen(ctx);
    if (e == "features") return exp_feature_count(ctx);
    if (e == "online") return exp_online_update(ctx);
    if (e == "noise") return exp_noise_sensitivity(ctx);
    if (e == "simulate") return exp_simulate(ctx);
    throw ConfigError("unknown experiment '" + e + "'");
}

}  // namespace mpcbench::harness
