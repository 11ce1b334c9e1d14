#include "mpcbench/fpcsim/fpca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::fpcsim {

Eigen::MatrixXd extract_daily_profiles(const tscore::TimeSeries& series, bool max_normalize) {
    if (series.step_hours() != 1.0) throw FpcaError("daily profiles need an hourly series");
    std::size_t first = 0;
    while (first < series.size() && series.hour_of_day(first) != 0) ++first;
    const std::size_t days = first < series.size() ? (series.size() - first) / kHoursPerDay : 0;
    if (days < 2) throw FpcaError("need at least 2 complete days, got " + std::to_string(days));
    const auto v = series.values();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(days), static_cast<Eigen::Index>(kHoursPerDay));
    for (std::size_t d = 0; d < days; ++d) {
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(h)) = v[first + d * kHoursPerDay + h];
        }
        if (max_normalize) {
            const double mx = out.row(static_cast<Eigen::Index>(d)).cwiseAbs().maxCoeff();
            if (mx > 0.0) out.row(static_cast<Eigen::Index>(d)) /= mx;
        }
    }
    return out;
}

std::vector<double> FpcaModel::weights() const {
    const double sum = std::accumulate(explained_variance.begin(), explained_variance.end(), 0.0);
    std::vector<double> w(explained_variance.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = sum > 0.0 ? explained_variance[i] / sum : 1.0 / static_cast<double>(w.size());
    }
    return w;
}

namespace {

struct Spectrum {
    Eigen::VectorXd mean;
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // columns match values
};

Spectrum spectrum(const Eigen::MatrixXd& profiles) {
    const auto n = profiles.rows();
    if (profiles.cols() != static_cast<Eigen::Index>(kHoursPerDay)) throw FpcaError("profiles must have 24 columns");
    if (n < 2) throw FpcaError("need at least 2 profiles");
    if (!profiles.allFinite()) throw FpcaError("profiles contain non-finite values");
    Spectrum s;
    s.mean = profiles.colwise().mean().transpose();
    const Eigen::MatrixXd centered = profiles.rowwise() - s.mean.transpose();
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw FpcaError("eigendecomposition failed");
    // Eigen sorts ascending; reverse to descending.
    s.values = eig.eigenvalues().reverse().cwiseMax(0.0);
    s.vectors = eig.eigenvectors().rowwise().reverse();
    return s;
}

}  // namespace

FpcaModel fit_fpca(const Eigen::MatrixXd& profiles, std::size_t k) {
    if (k < 1) throw FpcaError("k must be at least 1");
    if (k >= static_cast<std::size_t>(profiles.rows())) {
        throw FpcaError("k must be below the number of profiles (" + std::to_string(profiles.rows()) + ")");
    }
    if (k > kHoursPerDay) throw FpcaError("k cannot exceed 24");
    const Spectrum s = spectrum(profiles);
    FpcaModel m;
    m.mean = s.mean;
    m.components = s.vectors.leftCols(static_cast<Eigen::Index>(k));
    for (Eigen::Index c = 0; c < m.components.cols(); ++c) {
        Eigen::Index arg = 0;
        m.components.col(c).cwiseAbs().maxCoeff(&arg);
        if (m.components(arg, c) < 0.0) m.components.col(c) *= -1.0;
    }
    for (std::size_t i = 0; i < k; ++i) m.explained_variance.push_back(s.values(static_cast<Eigen::Index>(i)));
    m.total_variance = s.values.sum();
    return m;
}

std::size_t default_components(const Eigen::MatrixXd& profiles) {
    constexpr double kTarget = 0.9;
    constexpr std::size_t kCap = 5;
    const Spectrum s = spectrum(profiles);
    const std::size_t cap = std::min<std::size_t>(kCap, static_cast<std::size_t>(profiles.rows()) - 1);
    const double total = s.values.sum();
    double acc = 0.0;
    for (std::size_t k = 1; k <= cap; ++k) {
        acc += s.values(static_cast<Eigen::Index>(k - 1));
        if (total <= 0.0 || acc >= kTarget * total) return k;
    }
    return cap;
}

Eigen::MatrixXd transform(const FpcaModel& model, const Eigen::MatrixXd& profiles) {
    if (profiles.cols() != model.mean.size()) throw FpcaError("profile width does not match the model");
    return (profiles.rowwise() - model.mean.transpose()) * model.components;
}

Eigen::MatrixXd reconstruct(const FpcaModel& model, const Eigen::MatrixXd& scores) {
    if (scores.cols() != model.components.cols()) throw FpcaError("score width does not match the model");
    return (scores * model.components.transpose()).rowwise() + model.mean.transpose();
}

double wasserstein_1d(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw FpcaError("Wasserstein distance needs non-empty samples");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    // Breakpoints i/na and j/nb on the integer grid of 1/(na*nb).
    const auto na = static_cast<std::uint64_t>(x.size());
    const auto nb = static_cast<std::uint64_t>(y.size());
    std::uint64_t pos = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    double sum = 0.0;
    while (i < x.size() && j < y.size()) {
        const std::uint64_t end_a = (i + 1) * nb;
        const std::uint64_t end_b = (j + 1) * na;
        const std::uint64_t next = std::min(end_a, end_b);
        sum += static_cast<double>(next - pos) * std::abs(x[i] - y[j]);
        pos = next;
        if (end_a == next) ++i;
        if (end_b == next) ++j;
    }
    return sum / static_cast<double>(na * nb);
}

double similarity_metric(const Eigen::MatrixXd& scores_a, const Eigen::MatrixXd& scores_b,
                         const std::vector<double>& weights) {
    if (scores_a.cols() != scores_b.cols()) throw FpcaError("score sets have different numbers of components");
    if (weights.size() != static_cast<std::size_t>(scores_a.cols())) {
        throw FpcaError("one weight per component is required");
    }
    double wsum = 0.0;
    for (const double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw FpcaError("weights must be finite and nonnegative");
        wsum += w;
    }
    if (wsum <= 0.0) throw FpcaError("weights must not all be zero");
    double out = 0.0;
    for (Eigen::Index c = 0; c < scores_a.cols(); ++c) {
        const Eigen::VectorXd ca = scores_a.col(c);
        const Eigen::VectorXd cb = scores_b.col(c);
        out += weights[static_cast<std::size_t>(c)] / wsum *
               wasserstein_1d({ca.data(), static_cast<std::size_t>(ca.size())},
                              {cb.data(), static_cast<std::size_t>(cb.size())});
    }
    return out;
}

std::string select_reuse_model(const Eigen::MatrixXd& target, const std::map<std::string, Eigen::MatrixXd>& candidates,
                               const std::vector<double>& weights) {
    if (candidates.empty()) throw FpcaError("no reuse candidates");
    std::string best;
    double best_metric = 0.0;
    for (const auto& [id, scores] : candidates) {
        const double m = similarity_metric(target, scores, weights);
        if (best.empty() || m < best_metric || (m == best_metric && tscore::natural_less(id, best))) {
            best = id;
            best_metric = m;
        }
    }
    return best;
}

tscore::Table similarity_matrix(const std::map<std::string, Eigen::MatrixXd>& scores,
                                const std::vector<double>& weights) {
    std::vector<std::string> ids;
    for (const auto& [id, s] : scores) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), tscore::natural_less);
    std::vector<std::string> cols{"building"};
    cols.insert(cols.end(), ids.begin(), ids.end());
    tscore::Table t(cols);
    for (const auto& a : ids) {
        std::vector<tscore::Cell> row{a};
        for (const auto& b : ids) row.emplace_back(similarity_metric(scores.at(a), scores.at(b), weights));
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace mpcbench::fpcsim
