#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mpcbench/forecast/network.hpp"

namespace mpcbench::forecast {

/// Raised when training diverges (non-finite loss).
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ForecasterConfig {
    std::size_t input_window = 168;
    std::size_t horizon = 48;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    std::size_t max_epochs = 60;
    /// Epochs without held-out improvement before stopping.
    std::size_t patience = 5;
    /// Epochs without held-out improvement before halving the learning rate.
    std::size_t lr_patience = 3;
    /// Share of the training windows, taken from the end, used for early stopping.
    double holdout_fraction = 0.1;
    /// Fine-tuning epochs per online update.
    std::size_t online_epochs = 20;
    /// Adam step size for online updates; learning_rate when unset.
    std::optional<double> online_learning_rate;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Per-channel standardization with training-set statistics. A constant
/// channel keeps unit scale so it maps to zero.
struct Scaler {
    double mean = 0.0;
    double stddev = 1.0;

    static Scaler fit(std::span<const double> v);
    [[nodiscard]] double standardize(double x) const { return (x - mean) / stddev; }
    [[nodiscard]] double destandardize(double z) const { return z * stddev + mean; }
    bool operator==(const Scaler&) const = default;
};

struct TrainedModel {
    NetworkShape shape;
    std::vector<double> params;
    std::vector<Scaler> scalers;  // one per input channel; channel 0 is the target
    std::size_t epochs = 0;
    double train_loss = 0.0;     // standardized MSE on the fitting windows
    double holdout_loss = 0.0;   // standardized MSE on the early-stopping windows
};

/// Trains `arch` on sliding windows: input channels[c][s .. s+W), target
/// channels[0][s+W .. s+W+T). All channels must have equal length >= W + T.
TrainedModel fit(Architecture arch, const std::vector<std::span<const double>>& channels, const ForecasterConfig& cfg);

inline TrainedModel fit(Architecture arch, std::span<const double> target, const ForecasterConfig& cfg) {
    return fit(arch, std::vector<std::span<const double>>{target}, cfg);
}

/// One forward pass; `history[c]` holds the last W values of channel c.
std::vector<double> predict(const TrainedModel& model, const std::vector<std::span<const double>>& history);

inline std::vector<double> predict(const TrainedModel& model, std::span<const double> history) {
    return predict(model, std::vector<std::span<const double>>{history});
}

/// Warm-start fine-tuning for cfg.online_epochs epochs on `recent` (all of it
/// is used, so callers pass the last `freq` hours). Scalers are kept.
TrainedModel online_update(const TrainedModel& model, const std::vector<std::span<const double>>& recent,
                           const ForecasterConfig& cfg);

/// Standardized sliding-window design matrices: inputs are input_size x N,
/// targets horizon x N.
struct WindowSet {
    Eigen::MatrixXd x;
    Eigen::MatrixXd y;
};

WindowSet make_windows(const NetworkShape& shape, const std::vector<Scaler>& scalers,
                       const std::vector<std::span<const double>>& channels);

}  // namespace mpcbench::forecast
