#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpcbench/forecast/forecaster.hpp"
#include "mpcbench/forecast/training.hpp"

namespace mpcbench::forecast {

/// A fitted network for one variable together with its input covariates.
struct VariableModel {
    TrainedModel model;
    std::vector<std::string> features;
};

/// Keyed by variable name ("load:<id>", "solar", "price", "carbon").
using ModelSet = std::map<std::string, VariableModel>;

/// The variables the controller needs: every building load, then solar,
/// price and carbon.
std::vector<std::string> control_variables(const tscore::ScenarioDataset& ds);

/// Input channels of a variable model over `range`: the target, then each feature.
std::vector<std::span<const double>> model_channels(const tscore::ScenarioDataset& ds, const std::string& variable,
                                                    const std::vector<std::string>& features,
                                                    tscore::IndexRange range);

/// Fits one model of `arch` per variable on `train`, each with the n_features
/// best-correlated covariates. Variable seeds derive from cfg.seed and the name.
ModelSet fit_models(const tscore::ScenarioDataset& ds, tscore::IndexRange train,
                    const std::vector<std::string>& variables, Architecture arch, const ForecasterConfig& cfg,
                    std::size_t n_features = 0);

/// Forecast of steps t .. t+T-1 from the W values before t. Loads are
/// clipped at zero.
std::vector<double> forecast_with(const VariableModel& m, const tscore::ScenarioDataset& ds,
                                  const std::string& variable, std::size_t t);

struct OnlineSchedule {
    /// Hours between updates; 0 disables updating.
    std::size_t freq = 0;
    /// Step the schedule counts from; unset means the first forecast request.
    std::optional<std::size_t> anchor;
    ForecasterConfig cfg;
};

/// Forecaster backed by fitted networks, optionally fine-tuned every `freq`
/// hours on the preceding `freq` hours of data.
class ModelForecaster final : public Forecaster {
public:
    ModelForecaster(std::string name, ModelSet models, OnlineSchedule online = {});

    mpc::ForecastSet forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) override;
    [[nodiscard]] std::string name() const override { return name_; }

    /// Forecast for one variable, applying any due online update first.
    std::vector<double> forecast_variable(const tscore::ScenarioDataset& ds, const std::string& variable,
                                          std::size_t t, std::size_t horizon);

    [[nodiscard]] const ModelSet& models() const { return models_; }
    [[nodiscard]] std::size_t updates() const { return updates_; }

private:
    void maybe_update(const tscore::ScenarioDataset& ds, const std::string& variable, std::size_t t);

    std::string name_;
    ModelSet models_;
    OnlineSchedule online_;
    std::map<std::string, std::size_t> last_update_;
    std::size_t updates_ = 0;
};

}  // namespace mpcbench::forecast
