#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpcbench/forecast/forecaster.hpp"
#include "mpcbench/metrics/metrics.hpp"

namespace mpcbench::forecast {

/// Records every forecast passed through to the controller. A forecast for
/// steps t .. t+T-1 is logged as issued at t-1, so the truth at t-1 is its
/// normalizer.
class LoggingForecaster final : public Forecaster {
public:
    explicit LoggingForecaster(Forecaster& inner) : inner_(inner) {}

    mpc::ForecastSet forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) override;
    [[nodiscard]] std::string name() const override { return inner_.name(); }
    [[nodiscard]] const metrics::ForecastLog& log() const { return log_; }

private:
    Forecaster& inner_;
    metrics::ForecastLog log_;
    bool truth_set_ = false;
};

/// Adds one variable's forecast for steps t .. t+T-1 to `log`, issued at t-1.
void log_forecast(metrics::ForecastLog& log, std::size_t t, const std::string& variable, std::vector<double> values);

/// Sets the truth series of every control variable of `ds` on `log`.
void set_truth(metrics::ForecastLog& log, const tscore::ScenarioDataset& ds, const std::vector<std::string>& variables);

}  // namespace mpcbench::forecast
