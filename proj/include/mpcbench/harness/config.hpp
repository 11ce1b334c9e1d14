#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpcbench/forecast/network.hpp"
#include "mpcbench/forecast/training.hpp"
#include "mpcbench/mpc/types.hpp"
#include "mpcbench/tscore/dataset.hpp"
#include "mpcbench/tscore/synthetic.hpp"

namespace mpcbench::harness {

/// Invalid or inconsistent configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kExperiments = {"baseline", "horizon", "generalisation", "volume", "changepoint",
                                                      "features", "online",  "noise",          "simulate"};

struct ScenarioConfig {
    enum class Source { Synthetic, Csv };
    Source source = Source::Synthetic;
    tscore::SyntheticConfig synthetic;
    std::filesystem::path csv_path;
};

struct AssetConfig {
    std::optional<double> power_kw;    // overrides 3 x mean load
    std::optional<double> energy_kwh;  // overrides 24 x mean load
    std::optional<double> efficiency;  // overrides 0.9
    std::optional<double> pv_kwp;      // overrides pv_ratio x mean load
    double pv_ratio = 0.5;
};

struct RunConfig {
    std::string experiment;
    std::uint64_t seed = 42;
    std::filesystem::path output = "results";
    std::size_t threads = 1;

    ScenarioConfig scenario;
    std::optional<tscore::SplitSpec> split;  // default: 2/3 train, 1/6 validate, 1/6 test
    AssetConfig assets;
    mpc::ObjectiveWeights weights;
    std::size_t horizon = 48;
    /// Length of each MPC episode in hours, starting at the test range; 0 uses
    /// the whole test range.
    std::size_t control_hours = 336;

    std::vector<forecast::Architecture> models = {forecast::Architecture::Linear, forecast::Architecture::ResMLP,
                                                  forecast::Architecture::Conv};
    forecast::ForecasterConfig training;
    std::size_t n_features = 0;

    std::vector<std::size_t> horizons = {12, 24, 48, 72};
    std::vector<double> sigmas = {0.0, 0.1, 0.25, 0.5, 1.0};
    std::vector<std::string> noise_sets = {"all", "load", "solar", "price", "carbon"};
    std::size_t replicates = 2;
    std::vector<std::size_t> durations;  // hours; empty derives from the train length
    std::vector<std::size_t> feature_counts = {0, 1, 2, 3, 4};
    std::vector<std::size_t> update_freqs = {0, 1440, 720, 336};  // 0 = never
    std::size_t changepoint_min_segment = 168;  // hours
    std::string simulate_forecaster = "perfect";
    double simulate_sigma = 0.0;

    /// Throws ConfigError.
    void validate() const;
};

RunConfig parse_config(std::string_view toml_text);
RunConfig load_config(const std::filesystem::path& path);

/// Stable key=value rendering of every setting; hashed into the manifest.
std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

}  // namespace mpcbench::harness
