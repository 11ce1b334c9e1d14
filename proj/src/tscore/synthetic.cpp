#include "mpcbench/tscore/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mpcbench/tscore/random.hpp"

namespace mpcbench::tscore {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Calendar {
    int hour;
    int weekday;  // 0 = Monday
    int month;    // 1..12
    double day_of_year;
};

Calendar calendar_at(Timestamp t) {
    const auto day = std::chrono::floor<std::chrono::days>(t);
    const std::chrono::year_month_day ymd{day};
    const std::chrono::weekday wd{day};
    const auto jan1 = std::chrono::sys_days{ymd.year() / 1 / 1};
    Calendar c{};
    c.hour = static_cast<int>(std::chrono::duration_cast<std::chrono::hours>(t - day).count());
    c.weekday = static_cast<int>(wd.iso_encoding()) - 1;
    c.month = static_cast<int>(static_cast<unsigned>(ymd.month()));
    c.day_of_year = static_cast<double>((day - jan1).count()) + c.hour / 24.0;
    return c;
}

double bump(double hour, double centre, double width) {
    const double d = hour - centre;
    return std::exp(-d * d / (2.0 * width * width));
}

}  // namespace

ScenarioDataset generate_synthetic_scenario(const SyntheticConfig& cfg) {
    if (cfg.n_hours < 168) {
        throw DataError("synthetic scenario needs at least 168 hours");
    }
    if (cfg.n_buildings == 0) {
        throw DataError("synthetic scenario needs at least one building");
    }
    if (cfg.daily_amplitude + cfg.weekly_amplitude + cfg.annual_amplitude >= 1.0) {
        throw DataError("load amplitudes must sum below 1");
    }
    for (const auto& w : cfg.weekly_shifts) {
        if (w.amplitude < 0.0 || cfg.daily_amplitude + w.amplitude + cfg.annual_amplitude >= 1.0) {
            throw DataError("load amplitudes must sum below 1");
        }
    }
    if (!(std::abs(cfg.ar_coefficient) < 1.0)) throw DataError("AR coefficient must lie in (-1, 1)");
    for (const auto& a : cfg.ar_shifts) {
        if (!(std::abs(a.coefficient) < 1.0)) throw DataError("AR coefficient must lie in (-1, 1)");
    }
    const std::size_t n = cfg.n_hours;
    std::vector<Calendar> cal(n);
    for (std::size_t t = 0; t < n; ++t) {
        cal[t] = calendar_at(cfg.start + std::chrono::hours(static_cast<long long>(t)));
    }

    std::vector<NamedSeries> buildings;
    for (std::size_t b = 0; b < cfg.n_buildings; ++b) {
        Rng rng(derive_seed(derive_seed(cfg.seed, "load"), b));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double level = cfg.base_load * (1.0 + cfg.base_spread * unit(rng));
        const double daily_phase = 13.0 + 3.0 * unit(rng);
        const double weekly_phase = 2.0 + unit(rng);
        const double annual_phase = 15.0 + 20.0 * unit(rng);
        std::vector<double> values(n);
        double noise = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const Calendar& c = cal[t];
            const double week_pos = c.weekday + c.hour / 24.0;
            double weekly = cfg.weekly_amplitude;
            for (const auto& w : cfg.weekly_shifts) {
                if (t >= w.at_hour) weekly = w.amplitude;
            }
            double shape = 1.0 + cfg.daily_amplitude * std::cos(kTwoPi * (c.hour - daily_phase) / 24.0) +
                           weekly * std::cos(kTwoPi * (week_pos - weekly_phase) / 7.0) +
                           cfg.annual_amplitude * std::cos(kTwoPi * (c.day_of_year - annual_phase) / 365.25);
            double shift = 1.0;
            for (const auto& s : cfg.level_shifts) {
                if (t >= s.at_hour) shift *= s.factor;
            }
            double ar = cfg.ar_coefficient;
            for (const auto& a : cfg.ar_shifts) {
                if (t >= a.at_hour) ar = a.coefficient;
            }
            noise = ar * noise + cfg.noise_sigma * gauss(rng);
            values[t] = level * shift * shape * std::exp(noise);
        }
        buildings.push_back({std::to_string(b), TimeSeries(cfg.start, 1.0, std::move(values))});
    }

    Rng rng(derive_seed(cfg.seed, "grid"));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> solar(n), price(n), carbon(n), temperature(n), humidity(n), hour(n), weekday(n), month(n);
    double cloud = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
        const Calendar& c = cal[t];
        if (t == 0 || c.hour == 0) {
            cloud = 1.0 - cfg.solar_cloudiness * unif(rng);
        }
        const double season = 0.65 + 0.35 * std::cos(kTwoPi * (c.day_of_year - 172.0) / 365.25);
        const double h = c.hour;
        solar[t] = (h > 6.0 && h < 18.0) ? cfg.solar_peak * season * cloud * std::sin(std::numbers::pi * (h - 6.0) / 12.0)
                                         : 0.0;
        const double weekend = c.weekday >= 5 ? 0.8 : 1.0;
        price[t] = cfg.price_base +
                   weekend * (cfg.price_morning_peak * bump(h, 8.0, 2.0) + cfg.price_evening_peak * bump(h, 18.5, 2.0)) +
                   cfg.price_noise * gauss(rng);
        carbon[t] = std::max(0.0, cfg.carbon_base + cfg.carbon_morning_peak * bump(h, 9.0, 2.5) +
                                      cfg.carbon_evening_peak * bump(h, 19.0, 2.5) - 0.08 * solar[t] +
                                      cfg.carbon_noise * gauss(rng));
        temperature[t] = 10.0 + 8.0 * std::cos(kTwoPi * (c.day_of_year - 200.0) / 365.25) +
                         4.0 * std::sin(kTwoPi * (h - 9.0) / 24.0) + 1.0 * gauss(rng);
        humidity[t] = std::clamp(75.0 - 1.5 * (temperature[t] - 10.0) + 5.0 * gauss(rng), 5.0, 100.0);
        hour[t] = h;
        weekday[t] = c.weekday;
        month[t] = c.month;
    }
    auto series = [&](std::vector<double> v) { return TimeSeries(cfg.start, 1.0, std::move(v)); };
    std::vector<NamedSeries> covariates;
    covariates.push_back({"temperature", series(std::move(temperature))});
    covariates.push_back({"humidity", series(std::move(humidity))});
    covariates.push_back({"hour", series(std::move(hour))});
    covariates.push_back({"weekday", series(std::move(weekday))});
    covariates.push_back({"month", series(std::move(month))});
    return ScenarioDataset(std::move(buildings), series(std::move(solar)), series(std::move(price)),
                           series(std::move(carbon)), std::move(covariates));
}

}  // namespace mpcbench::tscore
