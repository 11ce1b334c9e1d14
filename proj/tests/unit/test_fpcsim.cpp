#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "../support/scenarios.hpp"
#include "mpcbench/fpcsim/fpca.hpp"

using namespace mpcbench;
using namespace mpcbench::fpcsim;

namespace {

// W1 as the integral of |Fa - Fb| over the merged support.
double cdf_w1(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<double> pts(a);
    pts.insert(pts.end(), b.begin(), b.end());
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double x = pts[i];
        const double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size();
        const double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) / b.size();
        total += std::abs(fa - fb) * (pts[i + 1] - x);
    }
    return total;
}

std::vector<double> sample(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g(std::uniform_real_distribution<double>(-2, 2)(rng), 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

}  // namespace

TEST_CASE("W1 matches the CDF integral") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto a = sample(rng, 1 + rng() % 30);
        const auto b = sample(rng, 1 + rng() % 30);
        CHECK(wasserstein_1d(a, b) == doctest::Approx(cdf_w1(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("W1 axioms") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto a = sample(rng, 5 + rng() % 20);
        const auto b = sample(rng, 5 + rng() % 20);
        const auto c = sample(rng, 5 + rng() % 20);
        CHECK(wasserstein_1d(a, b) >= 0.0);
        CHECK(wasserstein_1d(a, a) == 0.0);
        CHECK(wasserstein_1d(a, b) == wasserstein_1d(b, a));
        CHECK(wasserstein_1d(a, c) <= wasserstein_1d(a, b) + wasserstein_1d(b, c) + 1e-9);
    }
    CHECK_THROWS_AS(wasserstein_1d(std::vector<double>{}, std::vector<double>{1.0}), FpcaError);
}

TEST_CASE("shifted sample is at the shift distance") {
    const std::vector<double> a = {1.0, 2.0, 5.0};
    const std::vector<double> b = {3.5, 4.5, 7.5};
    CHECK(wasserstein_1d(a, b) == doctest::Approx(2.5));
}

TEST_CASE("daily profiles are midnight aligned and max normalized") {
    std::vector<double> v(24 * 3 + 5);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = 1.0 + static_cast<double>(t % 24);
    const tscore::TimeSeries s(testdata::epoch() + std::chrono::hours(19), 1.0, v);
    const Eigen::MatrixXd p = extract_daily_profiles(s);
    REQUIRE(p.rows() == 3);
    CHECK(p.rowwise().maxCoeff().minCoeff() == 1.0);
    CHECK_THROWS_AS(extract_daily_profiles(tscore::TimeSeries(testdata::epoch(), 1.0, std::vector<double>(30, 1.0))),
                    FpcaError);
}

TEST_CASE("full-rank fPCA reconstructs exactly") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd x(60, 24);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    const FpcaModel m = fit_fpca(x, 24);
    CHECK((reconstruct(m, transform(m, x)) - x).cwiseAbs().maxCoeff() <= 1e-8);
    // components orthonormal, variances descending
    CHECK((m.components.transpose() * m.components - Eigen::MatrixXd::Identity(24, 24)).cwiseAbs().maxCoeff() <= 1e-10);
    for (std::size_t i = 1; i < m.explained_variance.size(); ++i) {
        CHECK(m.explained_variance[i] <= m.explained_variance[i - 1]);
    }
    const auto w = m.weights();
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("default component count covers 90 percent") {
    Eigen::MatrixXd x(30, 24);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    for (Eigen::Index i = 0; i < 30; ++i) {
        const double a = g(rng);
        for (Eigen::Index h = 0; h < 24; ++h) x(i, h) = a * std::sin(h / 4.0) + 1e-3 * g(rng);
    }
    CHECK(default_components(x) == 1);
}

TEST_CASE("reuse selection prefers a clone") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd target(40, 3), other(40, 3);
    for (Eigen::Index i = 0; i < target.size(); ++i) {
        target.data()[i] = g(rng);
        other.data()[i] = 2.0 + g(rng);
    }
    const std::vector<double> w = {0.5, 0.3, 0.2};
    const std::map<std::string, Eigen::MatrixXd> cands = {{"10", other}, {"2", target}, {"3", other}};
    CHECK(select_reuse_model(target, cands, w) == "2");
    CHECK(similarity_metric(target, target, w) == 0.0);
    // ties resolve to the lowest id in natural order
    CHECK(select_reuse_model(target, {{"10", other}, {"3", other}}, w) == "3");
    const auto table = similarity_matrix(cands, w);
    CHECK(table.size() == 3);
}
