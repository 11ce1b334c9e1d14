#include "mpcbench/forecast/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "mpcbench/forecast/reference_forecasters.hpp"

namespace mpcbench::forecast {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatMap = Eigen::Map<const RowMat>;
using MatMap = Eigen::Map<RowMat>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;

// Offsets of each tensor in the flat parameter vector.
struct Layout {
    std::size_t w1 = 0, b1 = 0, w2 = 0, b2 = 0, w3 = 0, b3 = 0, total = 0;
};

std::size_t conv_len1(const NetworkShape& s) { return s.window - kConvKernel1 + 1; }
std::size_t conv_len2(const NetworkShape& s) { return conv_len1(s) - kConvKernel2 + 1; }

Layout layout_of(const NetworkShape& s) {
    Layout l;
    const std::size_t d = s.input_size();
    const std::size_t t = s.horizon;
    switch (s.arch) {
        case Architecture::Linear:
            l.w1 = 0;
            l.b1 = t * d;
            l.total = l.b1 + t;
            break;
        case Architecture::ResMLP:
            l.w1 = 0;
            l.b1 = d * d;
            l.w2 = l.b1 + d;
            l.b2 = l.w2 + t * d;
            l.total = l.b2 + t;
            break;
        case Architecture::Conv:
            l.w1 = 0;
            l.b1 = kConvFilters * s.channels * kConvKernel1;
            l.w2 = l.b1 + kConvFilters;
            l.b2 = l.w2 + kConvFilters * kConvKernel2;
            l.w3 = l.b2 + 1;
            l.b3 = l.w3 + t * conv_len2(s);
            l.total = l.b3 + t;
            break;
    }
    return l;
}

void check_batch(const NetworkShape& s, std::span<const double> params, const Eigen::MatrixXd& x) {
    if (params.size() != parameter_count(s)) throw ForecastError("parameter vector does not match the network shape");
    if (static_cast<std::size_t>(x.rows()) != s.input_size()) throw ForecastError("input size does not match the network");
}

// Conv intermediate activations for one batch (pre-activation values).
struct ConvCache {
    std::vector<Eigen::MatrixXd> a1;  // per filter: len1 x N
    Eigen::MatrixXd a2;               // len2 x N
    Eigen::MatrixXd h2;               // relu(a2)
};

ConvCache conv_features(const NetworkShape& s, std::span<const double> p, const Layout& l, const Eigen::MatrixXd& x) {
    const std::size_t n = static_cast<std::size_t>(x.cols());
    const std::size_t len1 = conv_len1(s);
    const std::size_t len2 = conv_len2(s);
    ConvCache c;
    c.a1.assign(kConvFilters, Eigen::MatrixXd(len1, n));
    for (std::size_t o = 0; o < kConvFilters; ++o) {
        Eigen::MatrixXd& a = c.a1[o];
        a.setConstant(p[l.b1 + o]);
        for (std::size_t ch = 0; ch < s.channels; ++ch) {
            for (std::size_t k = 0; k < kConvKernel1; ++k) {
                const double w = p[l.w1 + (o * s.channels + ch) * kConvKernel1 + k];
                a += w * x.middleRows(static_cast<Eigen::Index>(ch * s.window + k), static_cast<Eigen::Index>(len1));
            }
        }
    }
    c.a2.setConstant(static_cast<Eigen::Index>(len2), static_cast<Eigen::Index>(n), p[l.b2]);
    for (std::size_t o = 0; o < kConvFilters; ++o) {
        const Eigen::MatrixXd h1 = c.a1[o].cwiseMax(0.0);
        for (std::size_t k = 0; k < kConvKernel2; ++k) {
            c.a2 += p[l.w2 + o * kConvKernel2 + k] *
                    h1.middleRows(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(len2));
        }
    }
    c.h2 = c.a2.cwiseMax(0.0);
    return c;
}

}  // namespace

const char* to_string(Architecture a) {
    switch (a) {
        case Architecture::Linear: return "linear";
        case Architecture::ResMLP: return "resmlp";
        case Architecture::Conv: return "conv";
    }
    return "unknown";
}

Architecture parse_architecture(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "linear") return Architecture::Linear;
    if (lower == "resmlp") return Architecture::ResMLP;
    if (lower == "conv") return Architecture::Conv;
    throw ForecastError("unknown architecture '" + std::string(name) + "'");
}

void NetworkShape::validate() const {
    if (horizon < 1) throw ForecastError("horizon must be at least 1");
    if (window < horizon) throw ForecastError("input window must be at least the horizon");
    if (channels < 1) throw ForecastError("network needs at least one input channel");
    if (arch == Architecture::Conv && window < kConvKernel1 + kConvKernel2 - 1) {
        throw ForecastError("input window too short for the convolution kernels");
    }
}

std::size_t parameter_count(const NetworkShape& shape) {
    shape.validate();
    return layout_of(shape).total;
}

std::vector<double> init_parameters(const NetworkShape& shape, Rng& rng) {
    shape.validate();
    const Layout l = layout_of(shape);
    std::vector<double> p(l.total);
    auto fill = [&](std::size_t from, std::size_t to, std::size_t fan_in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> u(-bound, bound);
        for (std::size_t i = from; i < to; ++i) p[i] = u(rng);
    };
    const std::size_t d = shape.input_size();
    switch (shape.arch) {
        case Architecture::Linear: fill(0, l.total, d); break;
        case Architecture::ResMLP:
            fill(l.w1, l.w2, d);
            fill(l.w2, l.total, d);
            break;
        case Architecture::Conv:
            fill(l.w1, l.w2, shape.channels * kConvKernel1);
            fill(l.w2, l.w3, kConvFilters * kConvKernel2);
            fill(l.w3, l.total, conv_len2(shape));
            break;
    }
    return p;
}

Eigen::MatrixXd forward(const NetworkShape& s, std::span<const double> p, const Eigen::MatrixXd& x) {
    check_batch(s, p, x);
    const Layout l = layout_of(s);
    const auto d = static_cast<Eigen::Index>(s.input_size());
    const auto t = static_cast<Eigen::Index>(s.horizon);
    switch (s.arch) {
        case Architecture::Linear: {
            const ConstMatMap w(p.data() + l.w1, t, d);
            const ConstVecMap b(p.data() + l.b1, t);
            return (w * x).colwise() + b;
        }
        case Architecture::ResMLP: {
            const ConstMatMap w1(p.data() + l.w1, d, d);
            const ConstVecMap b1(p.data() + l.b1, d);
            const ConstMatMap w2(p.data() + l.w2, t, d);
            const ConstVecMap b2(p.data() + l.b2, t);
            const Eigen::MatrixXd h = ((w1 * x).colwise() + b1).cwiseMax(0.0) + x;
            return (w2 * h).colwise() + b2;
        }
        case Architecture::Conv: {
            const ConvCache c = conv_features(s, p, l, x);
            const ConstMatMap w3(p.data() + l.w3, t, static_cast<Eigen::Index>(conv_len2(s)));
            const ConstVecMap b3(p.data() + l.b3, t);
            return (w3 * c.h2).colwise() + b3;
        }
    }
    return {};
}

bool dead_features(const NetworkShape& s, std::span<const double> p, const Eigen::MatrixXd& x) {
    check_batch(s, p, x);
    if (s.arch != Architecture::Conv) return false;
    return conv_features(s, p, layout_of(s), x).h2.isZero(0.0);
}

double mse_loss(const NetworkShape& s, std::span<const double> p, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const Eigen::MatrixXd e = forward(s, p, x) - y;
    return e.squaredNorm() / static_cast<double>(e.size());
}

double loss_and_gradient(const NetworkShape& s, std::span<const double> p, const Eigen::MatrixXd& x,
                         const Eigen::MatrixXd& y, std::vector<double>& grad) {
    check_batch(s, p, x);
    if (y.rows() != static_cast<Eigen::Index>(s.horizon) || y.cols() != x.cols()) {
        throw ForecastError("target batch does not match the network output");
    }
    const Layout l = layout_of(s);
    grad.assign(l.total, 0.0);
    const auto d = static_cast<Eigen::Index>(s.input_size());
    const auto t = static_cast<Eigen::Index>(s.horizon);
    const double scale = 2.0 / static_cast<double>(y.size());

    switch (s.arch) {
        case Architecture::Linear: {
            const ConstMatMap w(p.data() + l.w1, t, d);
            const ConstVecMap b(p.data() + l.b1, t);
            const Eigen::MatrixXd e = ((w * x).colwise() + b) - y;
            const Eigen::MatrixXd dy = scale * e;
            MatMap(grad.data() + l.w1, t, d) = dy * x.transpose();
            VecMap(grad.data() + l.b1, t) = dy.rowwise().sum();
            return e.squaredNorm() / static_cast<double>(e.size());
        }
        case Architecture::ResMLP: {
            const ConstMatMap w1(p.data() + l.w1, d, d);
            const ConstVecMap b1(p.data() + l.b1, d);
            const ConstMatMap w2(p.data() + l.w2, t, d);
            const ConstVecMap b2(p.data() + l.b2, t);
            const Eigen::MatrixXd z = (w1 * x).colwise() + b1;
            const Eigen::MatrixXd h = z.cwiseMax(0.0) + x;
            const Eigen::MatrixXd e = ((w2 * h).colwise() + b2) - y;
            const Eigen::MatrixXd dy = scale * e;
            MatMap(grad.data() + l.w2, t, d) = dy * h.transpose();
            VecMap(grad.data() + l.b2, t) = dy.rowwise().sum();
            const Eigen::MatrixXd dz = (w2.transpose() * dy).cwiseProduct((z.array() > 0.0).cast<double>().matrix());
            MatMap(grad.data() + l.w1, d, d) = dz * x.transpose();
            VecMap(grad.data() + l.b1, d) = dz.rowwise().sum();
            return e.squaredNorm() / static_cast<double>(e.size());
        }
        case Architecture::Conv: {
            const auto len1 = static_cast<Eigen::Index>(conv_len1(s));
            const auto len2 = static_cast<Eigen::Index>(conv_len2(s));
            const ConvCache c = conv_features(s, p, l, x);
            const ConstMatMap w3(p.data() + l.w3, t, len2);
            const ConstVecMap b3(p.data() + l.b3, t);
            const Eigen::MatrixXd e = ((w3 * c.h2).colwise() + b3) - y;
            const Eigen::MatrixXd dy = scale * e;
            MatMap(grad.data() + l.w3, t, len2) = dy * c.h2.transpose();
            VecMap(grad.data() + l.b3, t) = dy.rowwise().sum();
            const Eigen::MatrixXd da2 =
                (w3.transpose() * dy).cwiseProduct((c.a2.array() > 0.0).cast<double>().matrix());
            grad[l.b2] = da2.sum();
            for (std::size_t o = 0; o < kConvFilters; ++o) {
                const Eigen::MatrixXd h1 = c.a1[o].cwiseMax(0.0);
                Eigen::MatrixXd dh1 = Eigen::MatrixXd::Zero(len1, x.cols());
                for (std::size_t k = 0; k < kConvKernel2; ++k) {
                    const auto kk = static_cast<Eigen::Index>(k);
                    grad[l.w2 + o * kConvKernel2 + k] = h1.middleRows(kk, len2).cwiseProduct(da2).sum();
                    dh1.middleRows(kk, len2) += p[l.w2 + o * kConvKernel2 + k] * da2;
                }
                const Eigen::MatrixXd da1 = dh1.cwiseProduct((c.a1[o].array() > 0.0).cast<double>().matrix());
                grad[l.b1 + o] = da1.sum();
                for (std::size_t ch = 0; ch < s.channels; ++ch) {
                    for (std::size_t k = 0; k < kConvKernel1; ++k) {
                        const auto row = static_cast<Eigen::Index>(ch * s.window + k);
                        grad[l.w1 + (o * s.channels + ch) * kConvKernel1 + k] =
                            x.middleRows(row, len1).cwiseProduct(da1).sum();
                    }
                }
            }
            return e.squaredNorm() / static_cast<double>(e.size());
        }
    }
    return 0.0;
}

}  // namespace mpcbench::forecast
