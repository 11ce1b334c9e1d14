#include "mpcbench/forecast/logging.hpp"

#include "mpcbench/forecast/model_forecaster.hpp"
#include "mpcbench/forecast/reference_forecasters.hpp"

namespace mpcbench::forecast {

void log_forecast(metrics::ForecastLog& log, std::size_t t, const std::string& variable, std::vector<double> values) {
    if (t == 0) throw ForecastError("forecasts starting at step 0 have no issue time to normalize by");
    log.add(t - 1, variable, std::move(values));
}

void set_truth(metrics::ForecastLog& log, const tscore::ScenarioDataset& ds, const std::vector<std::string>& variables) {
    for (const auto& v : variables) {
        const auto values = ds.variable(v).values();
        log.set_truth(v, {values.begin(), values.end()});
    }
}

mpc::ForecastSet LoggingForecaster::forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) {
    if (!truth_set_) {
        set_truth(log_, ds, control_variables(ds));
        truth_set_ = true;
    }
    mpc::ForecastSet f = inner_.forecast(ds, t, horizon);
    for (const auto& [id, v] : f.load) log_forecast(log_, t, tscore::load_variable(id), v);
    log_forecast(log_, t, "solar", f.solar);
    log_forecast(log_, t, "price", f.price);
    log_forecast(log_, t, "carbon", f.carbon);
    return f;
}

}  // namespace mpcbench::forecast
