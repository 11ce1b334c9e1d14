#include "mpcbench/forecast/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <random>
#include <string>

#include "mpcbench/forecast/reference_forecasters.hpp"

namespace mpcbench::forecast {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

class Adam {
public:
    Adam(std::size_t n, double lr) : lr_(lr), m_(n, 0.0), v_(n, 0.0) {}

    void step(std::vector<double>& p, const std::vector<double>& g) {
        ++t_;
        const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(t_));
        const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(t_));
        for (std::size_t i = 0; i < p.size(); ++i) {
            m_[i] = kAdamBeta1 * m_[i] + (1.0 - kAdamBeta1) * g[i];
            v_[i] = kAdamBeta2 * v_[i] + (1.0 - kAdamBeta2) * g[i] * g[i];
            p[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kAdamEps);
        }
    }
    void halve() { lr_ *= 0.5; }

private:
    double lr_;
    std::vector<double> m_, v_;
    std::size_t t_ = 0;
};

void check_channels(const std::vector<std::span<const double>>& channels, std::size_t min_len) {
    if (channels.empty()) throw ForecastError("no input channels");
    for (const auto& c : channels) {
        if (c.size() != channels.front().size()) throw ForecastError("input channels differ in length");
        for (const double v : c) {
            if (!std::isfinite(v)) throw ForecastError("non-finite value in training data");
        }
    }
    if (channels.front().size() < min_len) {
        throw ForecastError("insufficient data: need at least " + std::to_string(min_len) + " values, got " +
                            std::to_string(channels.front().size()));
    }
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, std::span<const std::size_t> cols) {
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(cols[k]));
    return out;
}

// Mini-batch Adam over the first n_fit windows; the remaining windows steer
// learning-rate halving and early stopping. With `fixed_epochs` the loop runs
// exactly that many epochs and keeps the final parameters.
void train(TrainedModel& model, const WindowSet& w, std::size_t n_fit, const ForecasterConfig& cfg, Rng& rng,
           std::size_t max_epochs, bool fixed_epochs, double learning_rate) {
    const std::size_t n = static_cast<std::size_t>(w.x.cols());
    const bool has_holdout = n_fit < n;
    Eigen::MatrixXd hx, hy;
    if (has_holdout) {
        hx = w.x.rightCols(static_cast<Eigen::Index>(n - n_fit));
        hy = w.y.rightCols(static_cast<Eigen::Index>(n - n_fit));
    }
    const Eigen::MatrixXd fx = w.x.leftCols(static_cast<Eigen::Index>(n_fit));
    const Eigen::MatrixXd fy = w.y.leftCols(static_cast<Eigen::Index>(n_fit));

    Adam opt(model.params.size(), learning_rate);
    std::vector<std::size_t> order(n_fit);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> grad;
    std::vector<double> best = model.params;
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;
    std::size_t since_lr = 0;

    for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
        // Fisher-Yates with explicit draws so the order is library independent.
        for (std::size_t i = n_fit; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(order[i - 1], order[j]);
        }
        for (std::size_t from = 0; from < n_fit; from += cfg.batch_size) {
            const std::size_t to = std::min(n_fit, from + cfg.batch_size);
            const std::span<const std::size_t> idx(order.data() + from, to - from);
            const double loss = loss_and_gradient(model.shape, model.params, gather(fx, idx), gather(fy, idx), grad);
            if (!std::isfinite(loss)) throw TrainingError("training diverged: loss is not finite");
            opt.step(model.params, grad);
        }
        model.epochs = epoch + 1;
        if (fixed_epochs) continue;

        const double monitor = has_holdout ? mse_loss(model.shape, model.params, hx, hy)
                                           : mse_loss(model.shape, model.params, fx, fy);
        if (!std::isfinite(monitor)) throw TrainingError("training diverged: loss is not finite");
        if (monitor < best_loss) {
            best_loss = monitor;
            best = model.params;
            since_best = 0;
            since_lr = 0;
        } else {
            ++since_best;
            if (++since_lr >= cfg.lr_patience) {
                opt.halve();
                since_lr = 0;
            }
            if (since_best >= cfg.patience) break;
        }
    }
    if (!fixed_epochs) model.params = best;
    model.train_loss = mse_loss(model.shape, model.params, fx, fy);
    model.holdout_loss = has_holdout ? mse_loss(model.shape, model.params, hx, hy) : model.train_loss;
}

}  // namespace

void ForecasterConfig::validate() const {
    if (horizon < 1) throw ForecastError("horizon must be at least 1");
    if (input_window < horizon) throw ForecastError("input window must be at least the horizon");
    if (batch_size < 1) throw ForecastError("batch size must be at least 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ForecastError("learning rate must be positive");
    if (online_learning_rate && (!(*online_learning_rate > 0.0) || !std::isfinite(*online_learning_rate))) {
        throw ForecastError("online learning rate must be positive");
    }
    if (max_epochs < 1) throw ForecastError("max_epochs must be at least 1");
    if (patience < 1 || lr_patience < 1) throw ForecastError("patience must be at least 1");
    if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) throw ForecastError("holdout fraction must be in [0, 1)");
}

Scaler Scaler::fit(std::span<const double> v) {
    if (v.empty()) throw ForecastError("cannot fit a scaler on no data");
    Scaler s;
    double sum = 0.0;
    for (const double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size()));
    s.stddev = sd > 1e-12 * (1.0 + std::abs(s.mean)) ? sd : 1.0;
    return s;
}

WindowSet make_windows(const NetworkShape& shape, const std::vector<Scaler>& scalers,
                       const std::vector<std::span<const double>>& channels) {
    shape.validate();
    if (channels.size() != shape.channels || scalers.size() != shape.channels) {
        throw ForecastError("channel count does not match the network");
    }
    check_channels(channels, shape.window + shape.horizon);
    const std::size_t len = channels.front().size();
    const std::size_t n = len - shape.window - shape.horizon + 1;
    std::vector<std::vector<double>> z(channels.size());
    for (std::size_t c = 0; c < channels.size(); ++c) {
        z[c].resize(len);
        for (std::size_t i = 0; i < len; ++i) z[c][i] = scalers[c].standardize(channels[c][i]);
    }
    WindowSet w;
    w.x.resize(static_cast<Eigen::Index>(shape.input_size()), static_cast<Eigen::Index>(n));
    w.y.resize(static_cast<Eigen::Index>(shape.horizon), static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        const auto col = static_cast<Eigen::Index>(s);
        for (std::size_t c = 0; c < channels.size(); ++c) {
            for (std::size_t k = 0; k < shape.window; ++k) {
                w.x(static_cast<Eigen::Index>(c * shape.window + k), col) = z[c][s + k];
            }
        }
        for (std::size_t k = 0; k < shape.horizon; ++k) {
            w.y(static_cast<Eigen::Index>(k), col) = z[0][s + shape.window + k];
        }
    }
    return w;
}

TrainedModel fit(Architecture arch, const std::vector<std::span<const double>>& channels, const ForecasterConfig& cfg) {
    cfg.validate();
    TrainedModel model;
    model.shape = NetworkShape{arch, cfg.input_window, cfg.horizon, channels.size()};
    model.shape.validate();
    check_channels(channels, cfg.input_window + cfg.horizon);
    for (const auto& c : channels) model.scalers.push_back(Scaler::fit(c));

    const WindowSet w = make_windows(model.shape, model.scalers, channels);
    const std::size_t n = static_cast<std::size_t>(w.x.cols());
    const auto n_hold = static_cast<std::size_t>(std::floor(cfg.holdout_fraction * static_cast<double>(n)));
    // A Conv network whose last ReLU is silent everywhere cannot recover; such
    // fits are redrawn from a derived seed a bounded number of times.
    constexpr std::uint64_t kMaxDraws = 4;
    for (std::uint64_t draw = 0; draw < kMaxDraws; ++draw) {
        Rng rng(draw == 0 ? cfg.seed : derive_seed(cfg.seed, draw));
        model.params = init_parameters(model.shape, rng);
        train(model, w, n - n_hold, cfg, rng, cfg.max_epochs, false, cfg.learning_rate);
        if (!dead_features(model.shape, model.params, w.x)) break;
    }
    return model;
}

std::vector<double> predict(const TrainedModel& model, const std::vector<std::span<const double>>& history) {
    const NetworkShape& s = model.shape;
    if (history.size() != s.channels) throw ForecastError("channel count does not match the network");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(s.input_size()), 1);
    for (std::size_t c = 0; c < s.channels; ++c) {
        if (history[c].size() != s.window) throw ForecastError("history length must equal the input window");
        for (std::size_t k = 0; k < s.window; ++k) {
            const double v = history[c][k];
            if (!std::isfinite(v)) throw ForecastError("non-finite value in forecast history");
            x(static_cast<Eigen::Index>(c * s.window + k), 0) = model.scalers[c].standardize(v);
        }
    }
    const Eigen::MatrixXd z = forward(s, model.params, x);
    std::vector<double> out(s.horizon);
    for (std::size_t k = 0; k < s.horizon; ++k) out[k] = model.scalers[0].destandardize(z(static_cast<Eigen::Index>(k), 0));
    return out;
}

TrainedModel online_update(const TrainedModel& model, const std::vector<std::span<const double>>& recent,
                           const ForecasterConfig& cfg) {
    cfg.validate();
    TrainedModel updated = model;
    const WindowSet w = make_windows(model.shape, model.scalers, recent);
    Rng rng(cfg.seed);
    train(updated, w, static_cast<std::size_t>(w.x.cols()), cfg, rng, cfg.online_epochs, true,
          cfg.online_learning_rate.value_or(cfg.learning_rate));
    updated.epochs = model.epochs + cfg.online_epochs;
    return updated;
}

}  // namespace mpcbench::forecast
