#include "mpcbench/forecast/model_forecaster.hpp"

#include <algorithm>

#include "mpcbench/forecast/features.hpp"
#include "mpcbench/forecast/reference_forecasters.hpp"

namespace mpcbench::forecast {

namespace {

bool is_load(const std::string& variable) { return variable.rfind("load:", 0) == 0; }

}  // namespace

std::vector<std::string> control_variables(const tscore::ScenarioDataset& ds) {
    std::vector<std::string> out;
    for (const auto& id : ds.building_ids()) out.push_back(tscore::load_variable(id));
    out.insert(out.end(), {"solar", "price", "carbon"});
    return out;
}

std::vector<std::span<const double>> model_channels(const tscore::ScenarioDataset& ds, const std::string& variable,
                                                    const std::vector<std::string>& features,
                                                    tscore::IndexRange range) {
    if (range.end > ds.size() || range.begin > range.end) throw ForecastError("channel range out of bounds");
    std::vector<std::span<const double>> out;
    out.push_back(ds.variable(variable).values().subspan(range.begin, range.size()));
    for (const auto& f : features) out.push_back(ds.variable(f).values().subspan(range.begin, range.size()));
    return out;
}

ModelSet fit_models(const tscore::ScenarioDataset& ds, tscore::IndexRange train,
                    const std::vector<std::string>& variables, Architecture arch, const ForecasterConfig& cfg,
                    std::size_t n_features) {
    ModelSet out;
    for (const auto& var : variables) {
        VariableModel m;
        m.features = select_features(ds, var, n_features, train);
        ForecasterConfig c = cfg;
        c.seed = derive_seed(cfg.seed, var);
        m.model = fit(arch, model_channels(ds, var, m.features, train), c);
        out.emplace(var, std::move(m));
    }
    return out;
}

std::vector<double> forecast_with(const VariableModel& m, const tscore::ScenarioDataset& ds,
                                  const std::string& variable, std::size_t t) {
    const std::size_t w = m.model.shape.window;
    if (t < w) throw ForecastError("forecast at step " + std::to_string(t) + " needs " + std::to_string(w) +
                                   " steps of history");
    std::vector<double> f = predict(m.model, model_channels(ds, variable, m.features, {t - w, t}));
    if (is_load(variable)) {
        for (double& v : f) v = std::max(v, 0.0);
    }
    return f;
}

ModelForecaster::ModelForecaster(std::string name, ModelSet models, OnlineSchedule online)
    : name_(std::move(name)), models_(std::move(models)), online_(std::move(online)) {
    if (online_.freq != 0) {
        online_.cfg.validate();
        for (const auto& [var, m] : models_) {
            if (online_.freq < m.model.shape.window + m.model.shape.horizon) {
                throw ForecastError("online update window is shorter than one training window");
            }
        }
    }
}

void ModelForecaster::maybe_update(const tscore::ScenarioDataset& ds, const std::string& variable, std::size_t t) {
    if (online_.freq == 0) return;
    const auto it = last_update_.try_emplace(variable, online_.anchor.value_or(t)).first;
    if (t < it->second + online_.freq) return;
    VariableModel& m = models_.at(variable);
    ForecasterConfig c = online_.cfg;
    c.seed = derive_seed(derive_seed(online_.cfg.seed, variable), t);
    m.model = online_update(m.model, model_channels(ds, variable, m.features, {t - online_.freq, t}), c);
    it->second = t;
    ++updates_;
}

std::vector<double> ModelForecaster::forecast_variable(const tscore::ScenarioDataset& ds, const std::string& variable,
                                                       std::size_t t, std::size_t horizon) {
    const auto it = models_.find(variable);
    if (it == models_.end()) throw ForecastError("no model for variable '" + variable + "'");
    if (it->second.model.shape.horizon != horizon) {
        throw ForecastError("model horizon " + std::to_string(it->second.model.shape.horizon) +
                            " differs from requested horizon " + std::to_string(horizon));
    }
    maybe_update(ds, variable, t);
    return forecast_with(models_.at(variable), ds, variable, t);
}

mpc::ForecastSet ModelForecaster::forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) {
    mpc::ForecastSet f;
    f.horizon = horizon;
    f.step_hours = ds.step_hours();
    for (const auto& id : ds.building_ids()) f.load[id] = forecast_variable(ds, tscore::load_variable(id), t, horizon);
    f.solar = forecast_variable(ds, "solar", t, horizon);
    f.price = forecast_variable(ds, "price", t, horizon);
    f.carbon = forecast_variable(ds, "carbon", t, horizon);
    return f;
}

}  // namespace mpcbench::forecast
