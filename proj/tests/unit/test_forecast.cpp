#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "../support/scenarios.hpp"
#include "mpcbench/forecast/features.hpp"
#include "mpcbench/forecast/logging.hpp"
#include "mpcbench/forecast/model_forecaster.hpp"
#include "mpcbench/forecast/model_io.hpp"
#include "mpcbench/forecast/reference_forecasters.hpp"
#include "mpcbench/forecast/training.hpp"

using namespace mpcbench;
using namespace mpcbench::forecast;

namespace {

double fd_relative_error(const NetworkShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> p = init_parameters(shape, rng);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(shape.input_size()), 5);
    Eigen::MatrixXd y(static_cast<Eigen::Index>(shape.horizon), 5);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = g(rng);
    std::vector<double> grad;
    loss_and_gradient(shape, p, x, y, grad);
    double num = 0.0, den = 0.0;
    const double h = 1e-6;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double keep = p[j];
        p[j] = keep + h;
        const double up = mse_loss(shape, p, x, y);
        p[j] = keep - h;
        const double down = mse_loss(shape, p, x, y);
        p[j] = keep;
        const double fd = (up - down) / (2.0 * h);
        num += (fd - grad[j]) * (fd - grad[j]);
        den += fd * fd;
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

ForecasterConfig small_cfg(std::uint64_t seed = 1) {
    ForecasterConfig c;
    c.input_window = 24;
    c.horizon = 12;
    c.max_epochs = 30;
    c.seed = seed;
    return c;
}

std::vector<double> sinusoid(std::size_t n, double level) {
    std::vector<double> v(n);
    for (std::size_t t = 0; t < n; ++t) v[t] = level + std::sin(2.0 * M_PI * static_cast<double>(t) / 24.0);
    return v;
}

}  // namespace

TEST_CASE("analytic gradients match finite differences") {
    for (const Architecture a : {Architecture::Linear, Architecture::ResMLP, Architecture::Conv}) {
        for (std::uint64_t s = 0; s < 4; ++s) {
            const NetworkShape shape{a, 12, 4, 1 + s % 2};
            CHECK(fd_relative_error(shape, s + 100) <= 1e-4);
        }
    }
}

TEST_CASE("parameter counts") {
    CHECK(parameter_count({Architecture::Linear, 10, 3, 2}) == 3 * 20 + 3);
    CHECK(parameter_count({Architecture::ResMLP, 10, 3, 1}) == 100 + 10 + 30 + 3);
    // conv: 5*c*5 + 5 + 5*6 + 1 + T*(W-9) + T
    CHECK(parameter_count({Architecture::Conv, 20, 3, 1}) == 25 + 5 + 30 + 1 + 33 + 3);
    CHECK_THROWS(NetworkShape{Architecture::Conv, 9, 3, 1}.validate());
}

TEST_CASE("architecture names parse case-insensitively") {
    CHECK(parse_architecture("ResMLP") == Architecture::ResMLP);
    CHECK(parse_architecture("conv") == Architecture::Conv);
    CHECK_THROWS(parse_architecture("tft"));
}

TEST_CASE("linear model learns a noiseless sinusoid like the ridge solution") {
    const auto v = sinusoid(24 * 40, 10.0);
    ForecasterConfig cfg = small_cfg();
    cfg.max_epochs = 200;
    const TrainedModel m = fit(Architecture::Linear, std::span<const double>(v).first(24 * 30), cfg);
    const WindowSet w = make_windows(m.shape, m.scalers, {std::span<const double>(v).first(24 * 30)});
    const Eigen::MatrixXd coef = oracle::ridge_fit(w.x, w.y, 1e-6);
    const WindowSet val = make_windows(m.shape, m.scalers, {std::span<const double>(v).subspan(24 * 30)});
    const Eigen::MatrixXd net = forward(m.shape, m.params, val.x);
    const Eigen::MatrixXd ridge = oracle::ridge_predict(coef, val.x);
    const double err = std::sqrt((net - val.y).array().square().mean()) * m.scalers[0].stddev / 10.0;
    CHECK(err <= 0.02);
    CHECK(std::sqrt((ridge - val.y).array().square().mean()) <= 1e-3);
}

TEST_CASE("training is deterministic and seed dependent") {
    const auto v = sinusoid(400, 5.0);
    const TrainedModel a = fit(Architecture::ResMLP, v, small_cfg(3));
    const TrainedModel b = fit(Architecture::ResMLP, v, small_cfg(3));
    const TrainedModel c = fit(Architecture::ResMLP, v, small_cfg(4));
    CHECK(a.params == b.params);
    CHECK(a.params != c.params);
}

TEST_CASE("fit rejects short series") {
    const auto v = sinusoid(30, 5.0);
    CHECK_THROWS(fit(Architecture::Linear, v, small_cfg()));
}

TEST_CASE("constant channel standardizes to zero") {
    const std::vector<double> c(10, 3.0);
    const Scaler s = Scaler::fit(c);
    CHECK(s.stddev == 1.0);
    CHECK(s.standardize(3.0) == 0.0);
}

TEST_CASE("model files round trip") {
    const auto v = sinusoid(300, 5.0);
    VariableModel vm{fit(Architecture::Conv, v, small_cfg()), {}};
    std::stringstream ss;
    save_model(ss, vm);
    const VariableModel back = load_model(ss);
    CHECK(back.model.params == vm.model.params);
    CHECK(back.model.scalers == vm.model.scalers);
    CHECK(back.model.shape == vm.model.shape);
    CHECK(back.features == vm.features);
    std::stringstream bad("mpcbench-model 2\n");
    CHECK_THROWS(load_model(bad));
}

TEST_CASE("perfect forecast is the truth slice") {
    const auto ds = testdata::synthetic(2, 200, 1);
    const auto f = perfect_forecast(ds, 10, 5);
    CHECK(f.load.at("1")[0] == ds.load("1")[10]);
    CHECK(f.price[4] == ds.price()[14]);
    CHECK_THROWS_AS(perfect_forecast(ds, 196, 5), ForecastError);
}

TEST_CASE("persistence repeats the value one period back") {
    const auto ds = testdata::synthetic(1, 400, 1);
    const auto f = persistence_forecast(ds, 200, 10);
    CHECK(f.load.at("0")[3] == ds.load("0")[203 - 168]);
    CHECK_THROWS_AS(persistence_forecast(ds, 100, 10), ForecastError);
}

TEST_CASE("GRW error variance grows linearly with lead time") {
    std::vector<double> truth(64, 1.0);
    Rng rng(5);
    const int draws = 10000;
    double s10 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto f = grw_forecast(truth, 0, 20, 1.0, rng);
        CHECK_FALSE(f[0] != 1.0);
        s10 += (f[10] - 1.0) * (f[10] - 1.0);
    }
    CHECK(s10 / draws == doctest::Approx(10.0).epsilon(0.05));
    Rng again(1);
    CHECK(grw_forecast(truth, 0, 8, 0.0, again) == std::vector<double>(8, 1.0));
}

TEST_CASE("feature ranking orders by absolute correlation") {
    const std::size_t n = 24 * 20;
    std::vector<double> lead(n), noise(n);
    std::mt19937_64 g(3);
    std::normal_distribution<double> z(0.0, 1.0);
    auto load = [](std::size_t t) { return 10.0 + std::sin(0.3 * static_cast<double>(t)) + 0.1 * std::cos(0.05 * t); };
    for (std::size_t t = 0; t < n; ++t) {
        lead[t] = load(t + 1);
        noise[t] = z(g);
    }
    const auto ds = testdata::single_series(n, load, {{"lead", tscore::TimeSeries(testdata::epoch(), 1.0, lead)},
                                                      {"noise", tscore::TimeSeries(testdata::epoch(), 1.0, noise)}});
    const auto ranked = rank_features(ds, "load:0", {0, n});
    REQUIRE(ranked.size() == 5);
    CHECK(ranked.front().name == "lead");
    CHECK(select_features(ds, "load:0", 1, {0, n}) == std::vector<std::string>{"lead"});
    CHECK_THROWS(select_features(ds, "load:0", 6, {0, n}));
}

TEST_CASE("model forecaster covers every control variable") {
    const auto ds = testdata::synthetic(2, 24 * 20, 6);
    ForecasterConfig cfg = small_cfg();
    cfg.max_epochs = 5;
    const auto vars = control_variables(ds);
    CHECK(vars == std::vector<std::string>{"load:0", "load:1", "solar", "price", "carbon"});
    ModelForecaster f("linear", fit_models(ds, {0, 24 * 15}, vars, Architecture::Linear, cfg, 0));
    const auto fs = f.forecast(ds, 24 * 16, 12);
    CHECK(fs.load.size() == 2);
    CHECK(fs.solar.size() == 12);
    for (const double v : fs.load.at("0")) CHECK(v >= 0.0);
    CHECK_THROWS(f.forecast(ds, 24 * 16, 6));
}

TEST_CASE("online updates fire on schedule") {
    const auto ds = testdata::synthetic(1, 24 * 30, 2);
    ForecasterConfig cfg = small_cfg();
    cfg.max_epochs = 3;
    cfg.online_epochs = 2;
    auto models = fit_models(ds, {0, 24 * 10}, {"load:0"}, Architecture::Linear, cfg, 0);
    OnlineSchedule sched;
    sched.freq = 48;
    sched.anchor = 24 * 10;
    sched.cfg = cfg;
    ModelForecaster f("linear", models, sched);
    for (std::size_t t = 24 * 10; t < 24 * 10 + 100; ++t) (void)f.forecast_variable(ds, "load:0", t, 12);
    CHECK(f.updates() == 2);
    CHECK(f.models().at("load:0").model.params != models.at("load:0").model.params);
    sched.freq = 10;
    CHECK_THROWS(ModelForecaster("linear", models, sched));
}

TEST_CASE("logging forecaster records issue time one step back") {
    const auto ds = testdata::synthetic(1, 200, 2);
    PerfectForecaster inner;
    LoggingForecaster logged(inner);
    (void)logged.forecast(ds, 10, 6);
    const auto& log = logged.log();
    REQUIRE(log.count("load:0") == 1);
    CHECK(log.entries().front().t == 9);
    CHECK(metrics::nrmse(log, "load:0") == 0.0);
}
