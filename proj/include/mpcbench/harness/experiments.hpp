#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpcbench/forecast/forecaster.hpp"
#include "mpcbench/forecast/model_forecaster.hpp"
#include "mpcbench/harness/config.hpp"
#include "mpcbench/metrics/metrics.hpp"
#include "mpcbench/sim/result.hpp"
#include "mpcbench/tscore/assets.hpp"
#include "mpcbench/tscore/table.hpp"

namespace mpcbench::harness {

/// Scenario data, split and assets resolved from a RunConfig.
struct Context {
    RunConfig cfg;
    tscore::ScenarioDataset ds;
    tscore::SplitSpec split;
    std::vector<tscore::AssetSpec> assets;
};

/// Two thirds train, one sixth validate, one sixth test.
tscore::SplitSpec default_split(std::size_t n);

/// Builds or loads the dataset and sizes the assets on the train range.
/// Throws ConfigError for an inconsistent split or unreadable data source.
Context prepare_context(const RunConfig& cfg);

/// One output table; `plot` is a plot-data layout for emit_plotdata ("" for
/// none).
struct NamedTable {
    std::string name;
    tscore::Table table;
    std::string plot;
};

/// Tables hold deterministic values only; wall-clock measurements go to
/// `timings` (label -> seconds) so reruns reproduce every CSV byte for byte.
struct ExperimentOutput {
    std::vector<NamedTable> tables;
    std::vector<std::pair<std::string, double>> timings;
};

/// Number of MPC steps an episode of horizon `max_horizon` can run from the
/// start of the test range.
std::size_t control_steps(const Context& ctx, std::size_t max_horizon);

/// Receding-horizon run from the start of the test range for `steps` steps.
sim::SimulationResult run_mpc(const Context& ctx, forecast::Forecaster& f, std::size_t horizon, std::size_t steps);

/// Per-variable GRW noise levels: sigma times the variable's mean over the
/// train range, for the variables of `set` ("all", "load", "solar", "price",
/// "carbon").
std::map<std::string, double> noise_levels(const Context& ctx, double sigma, const std::string& set);

/// Forecasts of `variable` issued at each step of [from, to) with every
/// target inside the dataset; only issue steps in `scored` are logged. Steps
/// run in order so online updates fire on schedule.
metrics::ForecastLog forecast_log(forecast::ModelForecaster& f, const tscore::ScenarioDataset& ds,
                                  const std::vector<std::string>& variables, std::size_t from, std::size_t to,
                                  tscore::IndexRange scored, std::size_t horizon);

/// Test-range nRMSE of one model for one variable.
double test_nrmse(const Context& ctx, const forecast::VariableModel& m, const std::string& variable,
                  tscore::IndexRange scored);

ExperimentOutput exp_baseline(const Context& ctx);
ExperimentOutput exp_horizon_sweep(const Context& ctx);
ExperimentOutput exp_generalisation(const Context& ctx);
ExperimentOutput exp_data_volume(const Context& ctx);
ExperimentOutput exp_changepoint_screen(const Context& ctx);
ExperimentOutput exp_feature_count(const Context& ctx);
ExperimentOutput exp_online_update(const Context& ctx);
ExperimentOutput exp_noise_sensitivity(const Context& ctx);
ExperimentOutput exp_simulate(const Context& ctx);

/// Dispatches on ctx.cfg.experiment.
ExperimentOutput run_experiment(const Context& ctx);

}  // namespace mpcbench::harness
