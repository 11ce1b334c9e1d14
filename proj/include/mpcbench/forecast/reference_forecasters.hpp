#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpcbench/forecast/forecaster.hpp"
#include "mpcbench/tscore/random.hpp"

namespace mpcbench::forecast {

class ForecastError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gaussian random walk noise level and the seed of its stream.
struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Ground truth slices for steps t .. t+T-1.
mpc::ForecastSet perfect_forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon);

/// f[k] = v[t+k] + sum_{j=1..k} w_j with w_j ~ N(0, sigma^2) drawn from `rng`.
std::vector<double> grw_forecast(std::span<const double> truth, std::size_t t, std::size_t horizon, double sigma,
                                 Rng& rng);

/// Applies an independent random walk to each variable; `sigma` maps variable
/// names ("load:<id>", "solar", "price", "carbon") to noise levels, absent
/// names are forecast perfectly. Draw order: loads by id, solar, price, carbon.
mpc::ForecastSet grw_forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon,
                              const std::map<std::string, double>& sigma, Rng& rng);

/// Seasonal persistence: f[k] = v[t + k - period]. Requires t >= period.
mpc::ForecastSet persistence_forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon,
                                      std::size_t period = 168);

class PerfectForecaster final : public Forecaster {
public:
    mpc::ForecastSet forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) override {
        return perfect_forecast(ds, t, horizon);
    }
    [[nodiscard]] std::string name() const override { return "perfect"; }
};

class PersistenceForecaster final : public Forecaster {
public:
    explicit PersistenceForecaster(std::size_t period = 168) : period_(period) {}
    mpc::ForecastSet forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) override {
        return persistence_forecast(ds, t, horizon, period_);
    }
    [[nodiscard]] std::string name() const override { return "persistence"; }

private:
    std::size_t period_;
};

/// Synthetic noisy forecasts; noise is regenerated at every call.
class GrwForecaster final : public Forecaster {
public:
    GrwForecaster(std::map<std::string, double> sigma, std::uint64_t seed) : sigma_(std::move(sigma)), rng_(seed) {}
    mpc::ForecastSet forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) override {
        return grw_forecast(ds, t, horizon, sigma_, rng_);
    }
    [[nodiscard]] std::string name() const override { return "grw"; }

private:
    std::map<std::string, double> sigma_;
    Rng rng_;
};

}  // namespace mpcbench::forecast
