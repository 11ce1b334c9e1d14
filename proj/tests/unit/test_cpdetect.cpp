#include <doctest.h>

#include <functional>
#include <limits>
#include <random>

#include "mpcbench/cpdetect/changepoint.hpp"

using namespace mpcbench::cpdetect;

namespace {

double line_sse(const std::vector<double>& y, std::size_t b, std::size_t e) {
    const double n = static_cast<double>(e - b);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = b; i < e; ++i) {
        const double x = static_cast<double>(i - b);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    const double den = n * sxx - sx * sx;
    const double slope = den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
    const double icpt = (sy - slope * sx) / n;
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) {
        const double r = y[i] - icpt - slope * static_cast<double>(i - b);
        s += r * r;
    }
    return s;
}

// Exhaustive search over all segmentations with segments >= min_seg.
std::vector<std::size_t> brute_force(const std::vector<double>& y, double beta, std::size_t min_seg) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_cuts, cuts;
    std::function<void(std::size_t, double)> go = [&](std::size_t start, double cost) {
        const double close = cost + line_sse(y, start, y.size()) + beta;
        if (y.size() - start >= min_seg && close < best) {
            best = close;
            best_cuts = cuts;
        }
        for (std::size_t c = start + min_seg; c + min_seg <= y.size(); ++c) {
            cuts.push_back(c);
            go(c, cost + line_sse(y, start, c) + beta);
            cuts.pop_back();
        }
    };
    go(0, 0.0);
    return best_cuts;
}

}  // namespace

TEST_CASE("optimal partitioning matches exhaustive search") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<double> y(36);
        const std::size_t shift = 8 + rng() % 20;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (i >= shift ? 4.0 : 0.0) + 0.02 * i * (trial % 3) + g(rng);
        const double beta = 2.0 + trial;
        DetectOptions o;
        o.min_segment = 5;
        o.stride = 1;
        const auto r = detect_changepoints(y, beta, o);
        CHECK(r.indices == brute_force(y, beta, 5));
    }
}

TEST_CASE("segment SSE of a line is zero") {
    std::vector<double> y(50);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3.0 - 0.5 * static_cast<double>(i);
    CHECK(segment_sse(y, 10, 40) == doctest::Approx(0.0).scale(1.0));
    std::vector<double> z = {1, 3, 2, 5, 4, 7};
    CHECK(segment_sse(z, 0, 6) == doctest::Approx(line_sse(z, 0, 6)));
}

TEST_CASE("no change in a stationary series") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(2000);
    for (auto& v : y) v = 10.0 + g(rng);
    const auto r = detect_changepoints(y, default_penalty(std::span<const double>(y)));
    CHECK(r.indices.empty());
    const auto c = screen_training_data(y.size(), r);
    REQUIRE(c.size() == 1);
    CHECK(c[0].begin == 0);
}

TEST_CASE("mean shift is located and scored") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(2000);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (i >= 1200 ? 5.0 : 0.0) + g(rng);
    const auto r = detect_changepoints(y, default_penalty(std::span<const double>(y)));
    REQUIRE(r.indices.size() >= 1);
    CHECK(std::abs(static_cast<long>(r.indices[0]) - 1200) <= 50);
    CHECK(r.scores[0] > 0.0);
}

TEST_CASE("decomposition parts sum to the series") {
    std::vector<double> y(24 * 30);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 5.0 + std::sin(2 * M_PI * i / 24.0) + 0.01 * i;
    const Decomposition d = decompose(y);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(d.seasonal[i] + d.trend[i] + d.residual[i] == doctest::Approx(y[i]));
    }
    CHECK_THROWS_AS(decompose(std::vector<double>(10, 1.0)), ChangePointError);
}

TEST_CASE("screening flags sub-year suffixes") {
    ChangePointReport r;
    r.indices = {2000, 9000};
    r.scores = {1.0, 1.0};
    const auto c = screen_training_data(12000, r);
    REQUIRE(c.size() == 3);
    CHECK(c[1].begin == 2000);
    CHECK_FALSE(c[1].short_history);
    CHECK(c[2].short_history);
    CHECK(c[2].length == 3000);
}
