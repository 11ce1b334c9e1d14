#include "mpcbench/forecast/reference_forecasters.hpp"

#include <cmath>
#include <random>

namespace mpcbench::forecast {

namespace {

std::vector<double> window(std::span<const double> v, std::size_t from, std::size_t n) {
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n)};
}

void check_window(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) {
    if (horizon == 0) throw ForecastError("forecast horizon must be positive");
    if (t + horizon > ds.size()) throw ForecastError("forecast window extends beyond the dataset");
}

}  // namespace

mpc::ForecastSet perfect_forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) {
    check_window(ds, t, horizon);
    mpc::ForecastSet f;
    f.horizon = horizon;
    f.step_hours = ds.step_hours();
    for (const auto& b : ds.buildings()) f.load[b.name] = window(b.series.values(), t, horizon);
    f.solar = window(ds.solar().values(), t, horizon);
    f.price = window(ds.price().values(), t, horizon);
    f.carbon = window(ds.carbon().values(), t, horizon);
    return f;
}

std::vector<double> grw_forecast(std::span<const double> truth, std::size_t t, std::size_t horizon, double sigma,
                                 Rng& rng) {
    if (t + horizon > truth.size()) throw ForecastError("forecast window extends beyond the series");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ForecastError("noise level must be finite and nonnegative");
    std::vector<double> f = window(truth, t, horizon);
    if (sigma == 0.0) return f;
    std::normal_distribution<double> gauss(0.0, sigma);
    double walk = 0.0;
    for (std::size_t k = 1; k < horizon; ++k) {
        walk += gauss(rng);
        f[k] += walk;
    }
    return f;
}

mpc::ForecastSet grw_forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon,
                              const std::map<std::string, double>& sigma, Rng& rng) {
    mpc::ForecastSet f = perfect_forecast(ds, t, horizon);
    auto level = [&](const std::string& name) {
        const auto it = sigma.find(name);
        return it == sigma.end() ? 0.0 : it->second;
    };
    for (auto& [id, v] : f.load) {
        v = grw_forecast(ds.load(id).values(), t, horizon, level(tscore::load_variable(id)), rng);
    }
    f.solar = grw_forecast(ds.solar().values(), t, horizon, level("solar"), rng);
    f.price = grw_forecast(ds.price().values(), t, horizon, level("price"), rng);
    f.carbon = grw_forecast(ds.carbon().values(), t, horizon, level("carbon"), rng);
    return f;
}

mpc::ForecastSet persistence_forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon,
                                      std::size_t period) {
    if (period == 0) throw ForecastError("persistence period must be positive");
    if (t < period) throw ForecastError("persistence forecast needs a full period of history");
    if (horizon == 0) throw ForecastError("forecast horizon must be positive");
    auto lagged = [&](std::span<const double> v) {
        std::vector<double> f(horizon);
        for (std::size_t k = 0; k < horizon; ++k) {
            // Beyond one period ahead, repeat the last observed period.
            std::size_t src = t + k - period;
            while (src >= t) src -= period;
            f[k] = v[src];
        }
        return f;
    };
    mpc::ForecastSet f;
    f.horizon = horizon;
    f.step_hours = ds.step_hours();
    for (const auto& b : ds.buildings()) f.load[b.name] = lagged(b.series.values());
    f.solar = lagged(ds.solar().values());
    f.price = lagged(ds.price().values());
    f.carbon = lagged(ds.carbon().values());
    return f;
}

}  // namespace mpcbench::forecast
