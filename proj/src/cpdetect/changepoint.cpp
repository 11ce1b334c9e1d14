#include "mpcbench/cpdetect/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "mpcbench/tscore/table.hpp"

namespace mpcbench::cpdetect {

namespace {

constexpr std::size_t kHarmonics = 2;
constexpr std::size_t kExactLimit = 4000;
constexpr std::size_t kCoarseStride = 24;

// Prefix sums for O(1) segment line fits. Positions are global indices.
class LineCost {
public:
    explicit LineCost(std::span<const double> y) : s_(y.size() + 1) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            const auto x = static_cast<long double>(i);
            const long double v = y[i];
            const Sums& p = s_[i];
            s_[i + 1] = {p.x + x, p.xx + x * x, p.y + v, p.xy + x * v, p.yy + v * v};
        }
    }

    [[nodiscard]] double operator()(std::size_t a, std::size_t b) const {
        const auto m = static_cast<long double>(b - a);
        if (b - a < 2) return 0.0;
        const long double sx = s_[b].x - s_[a].x;
        const long double sxx = s_[b].xx - s_[a].xx;
        const long double sy = s_[b].y - s_[a].y;
        const long double sxy = s_[b].xy - s_[a].xy;
        const long double syy = s_[b].yy - s_[a].yy;
        const long double cxx = sxx - sx * sx / m;
        const long double cxy = sxy - sx * sy / m;
        const long double cyy = syy - sy * sy / m;
        const long double sse = cxx > 0 ? cyy - cxy * cxy / cxx : cyy;
        return std::max(0.0, static_cast<double>(sse));
    }

private:
    struct Sums {
        long double x = 0, xx = 0, y = 0, xy = 0, yy = 0;
    };
    std::vector<Sums> s_;
};

}  // namespace

Decomposition decompose(std::span<const double> series, const std::vector<std::size_t>& periods) {
    if (periods.empty()) throw ChangePointError("at least one seasonal period is required");
    const std::size_t longest = *std::max_element(periods.begin(), periods.end());
    if (series.size() < 2 * longest) {
        throw ChangePointError("series shorter than twice the longest period (" + std::to_string(2 * longest) + ")");
    }
    for (const double v : series) {
        if (!std::isfinite(v)) throw ChangePointError("series contains non-finite values");
    }
    const auto n = static_cast<Eigen::Index>(series.size());
    const auto cols = static_cast<Eigen::Index>(1 + 2 * kHarmonics * periods.size());
    Eigen::MatrixXd a(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = 1.0;
        Eigen::Index c = 1;
        for (const std::size_t p : periods) {
            for (std::size_t h = 1; h <= kHarmonics; ++h) {
                const double w = 2.0 * std::numbers::pi * static_cast<double>(h) / static_cast<double>(p);
                a(i, c++) = std::sin(w * static_cast<double>(i));
                a(i, c++) = std::cos(w * static_cast<double>(i));
            }
        }
    }
    const Eigen::Map<const Eigen::VectorXd> y(series.data(), n);
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd seasonal = a.rightCols(cols - 1) * coef.tail(cols - 1);

    Decomposition d;
    d.seasonal.assign(seasonal.data(), seasonal.data() + n);
    std::vector<double> deseason(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) deseason[i] = series[i] - d.seasonal[i];
    std::vector<double> prefix(series.size() + 1, 0.0);
    for (std::size_t i = 0; i < series.size(); ++i) prefix[i + 1] = prefix[i] + deseason[i];
    constexpr std::size_t half = kTrendWindow / 2;
    d.trend.resize(series.size());
    d.residual.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(series.size(), i + half);
        d.trend[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
        d.residual[i] = series[i] - d.seasonal[i] - d.trend[i];
    }
    return d;
}

double segment_sse(std::span<const double> y, std::size_t begin, std::size_t end) {
    if (begin > end || end > y.size()) throw ChangePointError("segment out of range");
    return LineCost(y.subspan(begin, end - begin))(0, end - begin);
}

ChangePointReport detect_changepoints(std::span<const double> trend, double beta, const DetectOptions& options) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ChangePointError("penalty must be positive");
    if (trend.size() < 10) throw ChangePointError("series needs at least 10 values");
    if (options.min_segment < 2) throw ChangePointError("minimum segment length must be at least 2");
    for (const double v : trend) {
        if (!std::isfinite(v)) throw ChangePointError("series contains non-finite values");
    }
    const std::size_t n = trend.size();
    const std::size_t stride = options.stride != 0 ? options.stride : (n <= kExactLimit ? 1 : kCoarseStride);
    const LineCost cost(trend);

    // Boundaries: 0, interior multiples of stride, n.
    std::vector<std::size_t> pos{0};
    for (std::size_t p = stride; p < n; p += stride) pos.push_back(p);
    pos.push_back(n);
    const std::size_t m = pos.size();
    std::vector<double> best(m, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> prev(m, 0);
    best[0] = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (pos[j] - pos[i] < options.min_segment) break;  // pos increasing: later i are closer
            if (!std::isfinite(best[i])) continue;
            const double c = best[i] + cost(pos[i], pos[j]) + beta;
            if (c < best[j]) {
                best[j] = c;
                prev[j] = i;
            }
        }
    }
    ChangePointReport r;
    if (!std::isfinite(best[m - 1])) return r;  // too short for any segmentation: no change points
    std::vector<std::size_t> bounds;
    for (std::size_t j = m - 1; j != 0; j = prev[j]) bounds.push_back(pos[j]);
    bounds.push_back(0);
    std::reverse(bounds.begin(), bounds.end());
    for (std::size_t k = 1; k + 1 < bounds.size(); ++k) {
        r.indices.push_back(bounds[k]);
        r.scores.push_back(cost(bounds[k - 1], bounds[k + 1]) - cost(bounds[k - 1], bounds[k]) -
                           cost(bounds[k], bounds[k + 1]));
    }
    return r;
}

double default_penalty(const Decomposition& d) {
    const std::size_t n = d.residual.size();
    if (n < 2) throw ChangePointError("decomposition too short for a penalty");
    double mean = 0.0;
    for (const double v : d.residual) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const double v : d.residual) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    if (!(var > 0.0)) throw ChangePointError("residual has zero variance; supply a penalty explicitly");
    return 2.0 * var * std::log(static_cast<double>(n));
}

double default_penalty(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 3) throw ChangePointError("series too short for a penalty");
    std::vector<double> diff(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) diff[i] = std::abs(series[i + 1] - series[i]);
    auto mid = diff.begin() + static_cast<std::ptrdiff_t>(diff.size() / 2);
    std::nth_element(diff.begin(), mid, diff.end());
    const double sigma = *mid / 0.6745 / std::numbers::sqrt2;
    if (!(sigma > 0.0)) throw ChangePointError("series has no noise to scale the penalty; supply one explicitly");
    return 2.0 * sigma * sigma * std::log(static_cast<double>(n));
}

std::vector<Candidate> screen_training_data(std::size_t n, const ChangePointReport& report, std::size_t min_length) {
    for (std::size_t k = 0; k < report.indices.size(); ++k) {
        const std::size_t i = report.indices[k];
        if (i == 0 || i >= n || (k > 0 && i <= report.indices[k - 1])) {
            throw ChangePointError("change points must be increasing and interior to the series");
        }
    }
    std::vector<Candidate> out{{0, n, n < min_length}};
    for (const std::size_t i : report.indices) out.push_back({i, n - i, n - i < min_length});
    return out;
}

void write_report_csv(const std::filesystem::path& path, const ChangePointReport& report,
                      const tscore::TimeSeries& series) {
    tscore::Table t({"index", "timestamp", "score"});
    for (std::size_t k = 0; k < report.indices.size(); ++k) {
        t.add_row({static_cast<std::int64_t>(report.indices[k]),
                   tscore::format_timestamp(series.time_at(report.indices[k])), report.scores[k]});
    }
    t.write_csv(path);
}

}  // namespace mpcbench::cpdetect
