#include "mpcbench/tscore/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mpcbench/tscore/time_series.hpp"

namespace mpcbench::tscore {

namespace {

std::vector<double> ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double mean(std::span<const double> x) {
    if (x.empty()) throw DataError("mean of empty sequence");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double stddev(std::span<const double> x) {
    if (x.size() < 2) throw DataError("standard deviation needs two samples");
    const double m = mean(x);
    double ss = 0.0;
    for (const double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("pearson: length mismatch");
    if (x.size() < 2) throw DataError("pearson: need at least two samples");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw DataError("pearson: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    return pearson_correlation(rx, ry);
}

}  // namespace mpcbench::tscore
