#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpcbench/tscore/table.hpp"
#include "mpcbench/tscore/time_series.hpp"

namespace mpcbench::fpcsim {

class FpcaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kHoursPerDay = 24;

/// Complete midnight-aligned days of an hourly series as rows of an
/// n_days x 24 matrix. With `max_normalize` each row is divided by its
/// largest absolute value (all-zero rows are kept as is).
Eigen::MatrixXd extract_daily_profiles(const tscore::TimeSeries& series, bool max_normalize = true);

struct FpcaModel {
    Eigen::VectorXd mean;                  // 24
    Eigen::MatrixXd components;            // 24 x k, orthonormal columns
    std::vector<double> explained_variance;  // k, non-increasing
    double total_variance = 0.0;           // trace of the sample covariance

    [[nodiscard]] std::size_t k() const { return static_cast<std::size_t>(components.cols()); }
    /// Explained-variance shares of the retained components, summing to 1
    /// (uniform when all variances are zero).
    [[nodiscard]] std::vector<double> weights() const;
};

/// Top-k eigenvectors of the sample covariance (n-1 denominator). Each
/// component's largest-magnitude entry is made positive.
FpcaModel fit_fpca(const Eigen::MatrixXd& profiles, std::size_t k);

/// Smallest k whose components explain at least 90% of the variance, capped
/// at 5 and at n_days - 1.
std::size_t default_components(const Eigen::MatrixXd& profiles);

/// Scores alpha = nu^T (x - mu), one row per profile.
Eigen::MatrixXd transform(const FpcaModel& model, const Eigen::MatrixXd& profiles);

/// mu + sum_i alpha_i nu_i per row.
Eigen::MatrixXd reconstruct(const FpcaModel& model, const Eigen::MatrixXd& scores);

/// W1 distance between the empirical distributions of `a` and `b`: the
/// integral over u in [0, 1] of |Qa(u) - Qb(u)| with piecewise-constant
/// quantile functions.
double wasserstein_1d(std::span<const double> a, std::span<const double> b);

/// Sum over components of w_i * W1(column i of a, column i of b), with the
/// weights rescaled to sum to 1.
double similarity_metric(const Eigen::MatrixXd& scores_a, const Eigen::MatrixXd& scores_b,
                         const std::vector<double>& weights);

/// Candidate id minimizing the metric against `target`; exact ties go to the
/// lowest id in natural order.
std::string select_reuse_model(const Eigen::MatrixXd& target, const std::map<std::string, Eigen::MatrixXd>& candidates,
                               const std::vector<double>& weights);

/// Pairwise metric over named score sets; columns "building" then one per id.
tscore::Table similarity_matrix(const std::map<std::string, Eigen::MatrixXd>& scores,
                                const std::vector<double>& weights);

}  // namespace mpcbench::fpcsim
