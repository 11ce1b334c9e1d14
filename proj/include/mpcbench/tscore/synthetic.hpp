#pragma once

#include <cstdint>
#include <vector>

#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::tscore {

/// Multiplicative change of a building's load level from `at_hour` onwards.
struct LevelShift {
    std::size_t at_hour = 0;
    double factor = 1.0;
};

/// Weekly-profile amplitude that replaces weekly_amplitude from `at_hour` on.
struct WeeklyShift {
    std::size_t at_hour = 0;
    double amplitude = 0.0;
};

/// Noise AR coefficient that replaces ar_coefficient from `at_hour` on.
struct ArShift {
    std::size_t at_hour = 0;
    double coefficient = 0.0;
};

/// Parameters of the synthetic scenario generator.
///
/// Building i has mean level base_load * (1 + base_spread * u_i), u_i ~ U(-1, 1).
/// Load = level * shift(t) * (1 + daily + weekly + annual) * exp(noise_t), where
/// noise_t = ar_coefficient * noise_{t-1} + noise_sigma * z_t. Sinusoid phases are
/// drawn per building. Amplitudes must sum below 1 so the load stays positive.
struct SyntheticConfig {
    std::size_t n_buildings = 3;
    std::size_t n_hours = 24 * 30;
    std::uint64_t seed = 1;
    Timestamp start = std::chrono::sys_days{std::chrono::year{2016} / 1 / 1};

    double base_load = 100.0;
    double base_spread = 0.5;
    double daily_amplitude = 0.35;
    double weekly_amplitude = 0.15;
    double annual_amplitude = 0.2;
    double noise_sigma = 0.05;
    double ar_coefficient = 0.0;
    std::vector<LevelShift> level_shifts;
    std::vector<WeeklyShift> weekly_shifts;
    std::vector<ArShift> ar_shifts;

    double solar_peak = 0.85;
    double solar_cloudiness = 0.3;

    double price_base = 0.15;
    double price_morning_peak = 0.08;
    double price_evening_peak = 0.15;
    double price_noise = 0.01;

    double carbon_base = 0.20;
    double carbon_morning_peak = 0.05;
    double carbon_evening_peak = 0.08;
    double carbon_noise = 0.01;
};

/// Deterministic in `config`. Covariates: temperature, humidity, hour, weekday, month.
ScenarioDataset generate_synthetic_scenario(const SyntheticConfig& config);

}  // namespace mpcbench::tscore
