#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// None of these call into the solver or controller code they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mpcbench/lp/problem.hpp"
#include "mpcbench/mpc/types.hpp"
#include "mpcbench/tscore/assets.hpp"

namespace oracle {

using mpcbench::lp::LpProblem;
using mpcbench::lp::Relation;

struct Dense {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    std::vector<Relation> rel;
    Eigen::VectorXd c, lo, hi;
};

inline Dense densify(const LpProblem& p) {
    const auto n = static_cast<Eigen::Index>(p.num_vars());
    const auto m = static_cast<Eigen::Index>(p.num_rows());
    Dense d{Eigen::MatrixXd::Zero(m, n), Eigen::VectorXd(m), {}, Eigen::VectorXd(n), Eigen::VectorXd(n),
            Eigen::VectorXd(n)};
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& row = p.rows()[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < row.index.size(); ++k) d.a(i, row.index[k]) += row.coef[k];
        d.b(i) = row.rhs;
        d.rel.push_back(row.relation);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        d.c(j) = p.cost()[static_cast<std::size_t>(j)];
        d.lo(j) = p.bounds()[static_cast<std::size_t>(j)].lower;
        d.hi(j) = p.bounds()[static_cast<std::size_t>(j)].upper;
    }
    return d;
}

inline bool feasible(const Dense& d, const Eigen::VectorXd& x, double tol) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x(j) < d.lo(j) - tol || x(j) > d.hi(j) + tol) return false;
    }
    const Eigen::VectorXd ax = d.a * x;
    for (Eigen::Index i = 0; i < ax.size(); ++i) {
        const double s = tol * (1.0 + std::abs(d.b(i)));
        switch (d.rel[static_cast<std::size_t>(i)]) {
            case Relation::LessEqual: if (ax(i) > d.b(i) + s) return false; break;
            case Relation::GreaterEqual: if (ax(i) < d.b(i) - s) return false; break;
            case Relation::Equal: if (std::abs(ax(i) - d.b(i)) > s) return false; break;
        }
    }
    return true;
}

/// Minimum of a box-bounded LP by enumerating basic solutions: choose a set of
/// k rows held tight, k free columns, and put every other column at one of
/// its bounds. Returns +inf when no vertex is feasible.
inline double vertex_enumeration(const LpProblem& p) {
    const Dense d = densify(p);
    const int n = static_cast<int>(d.c.size());
    const int m = static_cast<int>(d.b.size());
    double best = std::numeric_limits<double>::infinity();

    auto try_vertex = [&](const std::vector<int>& rows, const std::vector<int>& cols, unsigned bound_mask) {
        Eigen::VectorXd x(n);
        int bit = 0;
        std::vector<bool> is_free(static_cast<std::size_t>(n), false);
        for (const int j : cols) is_free[static_cast<std::size_t>(j)] = true;
        for (int j = 0; j < n; ++j) {
            if (!is_free[static_cast<std::size_t>(j)]) x(j) = ((bound_mask >> bit++) & 1U) ? d.hi(j) : d.lo(j);
        }
        const auto k = static_cast<Eigen::Index>(cols.size());
        if (k > 0) {
            Eigen::MatrixXd sub(k, k);
            Eigen::VectorXd rhs(k);
            for (Eigen::Index r = 0; r < k; ++r) {
                const int i = rows[static_cast<std::size_t>(r)];
                rhs(r) = d.b(i);
                for (int j = 0; j < n; ++j) {
                    if (!is_free[static_cast<std::size_t>(j)]) rhs(r) -= d.a(i, j) * x(j);
                }
                for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = d.a(i, cols[static_cast<std::size_t>(c)]);
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
            if (lu.rank() < k) return;
            const Eigen::VectorXd y = lu.solve(rhs);
            for (Eigen::Index c = 0; c < k; ++c) x(cols[static_cast<std::size_t>(c)]) = y(c);
        }
        if (feasible(d, x, 1e-9)) best = std::min(best, d.c.dot(x));
    };

    // Iterate subsets of rows held tight (bitmask) and of free columns. An
    // equality need not be in the subset: the feasibility check enforces it,
    // which keeps dependent equality rows from hiding every vertex.
    for (unsigned rmask = 0; rmask < (1U << m); ++rmask) {
        std::vector<int> rows;
        for (int r = 0; r < m; ++r) {
            if ((rmask >> r) & 1U) rows.push_back(r);
        }
        const int k = static_cast<int>(rows.size());
        if (k > n) continue;
        for (unsigned cmask = 0; cmask < (1U << n); ++cmask) {
            if (__builtin_popcount(cmask) != k) continue;
            std::vector<int> cols;
            for (int j = 0; j < n; ++j) {
                if ((cmask >> j) & 1U) cols.push_back(j);
            }
            for (unsigned bmask = 0; bmask < (1U << (n - k)); ++bmask) try_vertex(rows, cols, bmask);
        }
    }
    return best;
}

/// Random LP with every variable boxed and a known interior point, so it is
/// feasible and bounded.
inline LpProblem random_bounded_lp(std::mt19937_64& rng, int n, int m) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> rel_pick(0, 5);
    LpProblem p(static_cast<std::size_t>(n));
    Eigen::VectorXd x0(n);
    for (int j = 0; j < n; ++j) {
        const double lo = -1.0 - 4.0 * std::abs(u(rng));
        const double hi = 1.0 + 4.0 * std::abs(u(rng));
        p.set_bounds(j, {lo, hi});
        p.set_cost(j, 3.0 * u(rng));
        x0(j) = 0.5 * u(rng);
    }
    for (int i = 0; i < m; ++i) {
        std::vector<int> idx;
        std::vector<double> coef;
        double act = 0.0;
        for (int j = 0; j < n; ++j) {
            if (u(rng) < -0.3) continue;  // sparsify
            idx.push_back(j);
            coef.push_back(4.0 * u(rng));
            act += coef.back() * x0(j);
        }
        if (idx.empty()) {
            idx.push_back(0);
            coef.push_back(1.0);
            act = x0(0);
        }
        const int r = rel_pick(rng);
        if (r == 0) {
            p.add_row(idx, coef, Relation::Equal, act);
        } else if (r <= 3) {
            p.add_row(idx, coef, Relation::LessEqual, act + 2.0 * std::abs(u(rng)));
        } else {
            p.add_row(idx, coef, Relation::GreaterEqual, act - 2.0 * std::abs(u(rng)));
        }
    }
    return p;
}

/// Single-building horizon objective with exact battery physics. Returns +inf
/// if the action sequence leaves [0, capacity].
struct HorizonCase {
    double soc0 = 0.0;
    double prev_net = 0.0;
    std::vector<double> load, solar, price, carbon;
    mpcbench::tscore::AssetSpec asset;
    mpcbench::mpc::ObjectiveWeights w;
};

inline double horizon_objective(const HorizonCase& h, const std::vector<double>& e) {
    const std::size_t T = h.load.size();
    const double g = std::sqrt(h.asset.round_trip_efficiency);
    auto terms = [&](const std::vector<double>& act, double& p, double& c, double& r) {
        p = c = r = 0.0;
        double prev = h.prev_net;
        for (std::size_t t = 0; t < T; ++t) {
            const double net = h.load[t] - h.asset.pv_capacity_kwp * h.solar[t] + act[t];
            const double imp = std::max(0.0, net);
            p += h.price[t] * imp;
            c += h.carbon[t] * imp;
            r += std::abs(net - prev);
            prev = net;
        }
    };
    double p0, c0, r0;
    terms(std::vector<double>(T, 0.0), p0, c0, r0);
    double soc = h.soc0;
    for (std::size_t t = 0; t < T; ++t) {
        soc += e[t] >= 0.0 ? e[t] * g : e[t] / g;
        if (soc < -1e-12 || soc > h.asset.energy_capacity_kwh + 1e-12) return std::numeric_limits<double>::infinity();
    }
    double p, c, r;
    terms(e, p, c, r);
    return h.w.gamma_p * p / std::max(1.0, p0) + h.w.gamma_c * c / std::max(1.0, c0) +
           h.w.gamma_r * r / std::max(1.0, r0);
}

/// Best objective over an n-point grid per step for every step of the horizon.
inline double grid_minimum(const HorizonCase& h, int points, double pmax) {
    const std::size_t T = h.load.size();
    std::vector<int> idx(T, 0);
    std::vector<double> e(T);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t t = 0; t < T; ++t) e[t] = -pmax + 2.0 * pmax * idx[t] / (points - 1);
        best = std::min(best, horizon_objective(h, e));
        std::size_t t = 0;
        while (t < T && ++idx[t] == points) idx[t++] = 0;
        if (t == T) break;
    }
    return best;
}

/// Bound on how far the grid minimum can sit above the continuous one when
/// the charge limits never bind: half a grid step times the objective's
/// Lipschitz constant in each action.
inline double grid_resolution_bound(const HorizonCase& h, int points, double pmax) {
    const std::size_t T = h.load.size();
    double p0 = 0.0, c0 = 0.0, r0 = 0.0, prev = h.prev_net;
    for (std::size_t t = 0; t < T; ++t) {
        const double net = h.load[t] - h.asset.pv_capacity_kwp * h.solar[t];
        p0 += h.price[t] * std::max(0.0, net);
        c0 += h.carbon[t] * std::max(0.0, net);
        r0 += std::abs(net - prev);
        prev = net;
    }
    const double half = pmax / (points - 1);
    double bound = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        bound += half * (h.w.gamma_p * std::max(0.0, h.price[t]) / std::max(1.0, p0) +
                         h.w.gamma_c * std::max(0.0, h.carbon[t]) / std::max(1.0, c0) +
                         2.0 * h.w.gamma_r / std::max(1.0, r0));
    }
    return bound;
}

/// Ridge regression of each horizon step on the window plus an intercept.
inline Eigen::MatrixXd ridge_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double lambda) {
    Eigen::MatrixXd xa(x.rows() + 1, x.cols());
    xa.topRows(x.rows()) = x;
    xa.row(x.rows()).setOnes();
    Eigen::MatrixXd gram = xa * xa.transpose();
    gram.diagonal().array() += lambda;
    gram(x.rows(), x.rows()) -= lambda;  // intercept unpenalized
    return gram.ldlt().solve(xa * y.transpose()).transpose();  // T x (D+1)
}

inline Eigen::MatrixXd ridge_predict(const Eigen::MatrixXd& coef, const Eigen::MatrixXd& x) {
    return coef.leftCols(x.rows()) * x + coef.col(x.rows()).replicate(1, x.cols());
}

}  // namespace oracle
