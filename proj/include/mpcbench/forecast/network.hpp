#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mpcbench/tscore/random.hpp"

namespace mpcbench::forecast {

enum class Architecture { Linear, ResMLP, Conv };

const char* to_string(Architecture a);
/// Accepts "linear", "resmlp", "conv" (case-insensitive). Throws ForecastError.
Architecture parse_architecture(std::string_view name);

/// Input of a network is `channels` windows of `window` values, channel-major
/// and oldest first: x[c * window + k]. Channel 0 is the target variable.
struct NetworkShape {
    Architecture arch = Architecture::Linear;
    std::size_t window = 168;
    std::size_t horizon = 48;
    std::size_t channels = 1;

    [[nodiscard]] std::size_t input_size() const { return window * channels; }
    void validate() const;
    bool operator==(const NetworkShape&) const = default;
};

// Conv: conv(k=5, 5 filters) -> relu -> conv(k=6, 1 filter) -> relu -> dense.
inline constexpr std::size_t kConvFilters = 5;
inline constexpr std::size_t kConvKernel1 = 5;
inline constexpr std::size_t kConvKernel2 = 6;

std::size_t parameter_count(const NetworkShape& shape);

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for every weight and bias.
std::vector<double> init_parameters(const NetworkShape& shape, Rng& rng);

/// Batched forward pass. `x` is input_size x N, the result horizon x N.
Eigen::MatrixXd forward(const NetworkShape& shape, std::span<const double> params, const Eigen::MatrixXd& x);

/// Mean squared error over all entries of the batch and its gradient with
/// respect to the flat parameter vector (resized to parameter_count).
double loss_and_gradient(const NetworkShape& shape, std::span<const double> params, const Eigen::MatrixXd& x,
                         const Eigen::MatrixXd& y, std::vector<double>& grad);

/// True when a Conv network's last ReLU outputs zero on every sample of `x`,
/// which leaves only the output bias trainable. Always false otherwise.
bool dead_features(const NetworkShape& shape, std::span<const double> params, const Eigen::MatrixXd& x);

double mse_loss(const NetworkShape& shape, std::span<const double> params, const Eigen::MatrixXd& x,
                const Eigen::MatrixXd& y);

}  // namespace mpcbench::forecast
