#include "mpcbench/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mpcbench::lp {

const char* to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr double kBreakdownPivot = 1e-11;
constexpr double kArtificialTol = 1e-7;
constexpr std::size_t kRefreshEvery = 100;
// Tableau fill below this magnitude is cancellation noise; dropping it keeps rows sparse.
constexpr double kDropTol = 1e-14;

// Between: nonbasic at a value strictly inside its bounds (free variables at 0).
enum class VarState : unsigned char { Basic, AtLower, AtUpper, Between };

/// Working state of one solve. Column layout: structurals, then one slack per
/// row, then artificials. The slack block of the tableau always holds B^-1.
class Simplex {
public:
    Simplex(const LpProblem& p, const SolverOptions& opt) : problem_(p), opt_(opt) {}

    LpSolution run();

private:
    void scale();
    void build_initial_basis();
    bool iterate(int phase);
    void pivot(std::size_t row, std::size_t col);
    void refresh_basic_values();
    void remove_artificials();
    [[nodiscard]] std::vector<double> unscaled_solution() const;

    double& tab(std::size_t i, std::size_t j) { return tableau_[i * width_ + j]; }
    [[nodiscard]] double tab(std::size_t i, std::size_t j) const { return tableau_[i * width_ + j]; }
    [[nodiscard]] bool is_artificial(std::size_t j) const { return j >= n_ + m_; }

    const LpProblem& problem_;
    const SolverOptions& opt_;

    std::size_t n_ = 0;  // structurals
    std::size_t m_ = 0;  // rows
    std::size_t width_ = 0;

    std::vector<double> a_;  // scaled constraint matrix, m x n row-major
    std::vector<double> b_;  // scaled rhs
    std::vector<double> row_scale_;
    std::vector<double> col_scale_;
    std::vector<double> cost_;  // scaled phase-2 cost per column (width)

    std::vector<double> lo_, hi_, value_;
    std::vector<VarState> state_;
    std::vector<double> art_sign_;  // per row, 0 if no artificial
    std::vector<std::size_t> art_col_of_row_;

    std::vector<double> tableau_;
    std::vector<double> d1_, d2_;  // reduced costs for phase 1 and 2
    std::vector<std::size_t> basis_;
    std::vector<double> beta_;
    std::vector<std::size_t> nz_;

    std::size_t iterations_ = 0;
    std::size_t max_iterations_ = 0;
    std::size_t since_refresh_ = 0;
};

void Simplex::scale() {
    n_ = problem_.num_vars();
    m_ = problem_.num_rows();
    a_.assign(m_ * n_, 0.0);
    b_.assign(m_, 0.0);
    const auto rows = problem_.rows();
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t k = 0; k < rows[i].index.size(); ++k) {
            a_[i * n_ + static_cast<std::size_t>(rows[i].index[k])] += rows[i].coef[k];
        }
        b_[i] = rows[i].rhs;
    }
    row_scale_.assign(m_, 1.0);
    col_scale_.assign(n_, 1.0);
    if (opt_.equilibrate) {
        for (std::size_t i = 0; i < m_; ++i) {
            double mx = 0.0;
            for (std::size_t j = 0; j < n_; ++j) mx = std::max(mx, std::abs(a_[i * n_ + j]));
            if (mx > 0.0) row_scale_[i] = 1.0 / mx;
            for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] *= row_scale_[i];
            b_[i] *= row_scale_[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            double mx = 0.0;
            for (std::size_t i = 0; i < m_; ++i) mx = std::max(mx, std::abs(a_[i * n_ + j]));
            if (mx > 0.0) col_scale_[j] = 1.0 / mx;
            for (std::size_t i = 0; i < m_; ++i) a_[i * n_ + j] *= col_scale_[j];
        }
    }
}

void Simplex::build_initial_basis() {
    const auto bounds = problem_.bounds();
    const auto rows = problem_.rows();
    const auto cost = problem_.cost();

    // x = S x_hat, so bounds divide by the column scale.
    lo_.assign(n_ + m_, 0.0);
    hi_.assign(n_ + m_, 0.0);
    value_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::AtLower);
    for (std::size_t j = 0; j < n_; ++j) {
        lo_[j] = bounds[j].lower / col_scale_[j];
        hi_[j] = bounds[j].upper / col_scale_[j];
        // Start at the point of the box closest to the origin.
        const double guess = opt_.start.empty() ? 0.0 : opt_.start[j] / col_scale_[j];
        value_[j] = std::clamp(guess, lo_[j], hi_[j]);
        if (value_[j] == lo_[j]) {
            state_[j] = VarState::AtLower;
        } else if (value_[j] == hi_[j]) {
            state_[j] = VarState::AtUpper;
        } else {
            state_[j] = VarState::Between;
        }
    }
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t s = n_ + i;
        switch (rows[i].relation) {
            case Relation::LessEqual: lo_[s] = 0.0; hi_[s] = kInf; break;
            case Relation::GreaterEqual: lo_[s] = -kInf; hi_[s] = 0.0; break;
            case Relation::Equal: lo_[s] = 0.0; hi_[s] = 0.0; break;
        }
    }

    // Residual of each row with structurals at their starting values.
    std::vector<double> resid(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        double act = 0.0;
        for (std::size_t j = 0; j < n_; ++j) act += a_[i * n_ + j] * value_[j];
        resid[i] = b_[i] - act;
    }

    // Crash: a violated row containing a column singleton takes that column
    // into the basis when the shift that zeroes the slack stays in bounds.
    std::vector<std::size_t> col_count(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (a_[i * n_ + j] != 0.0) ++col_count[j];
        }
    }
    art_sign_.assign(m_, 0.0);
    art_col_of_row_.assign(m_, 0);
    std::vector<std::size_t> crash_col(m_, n_);
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t s = n_ + i;
        const double tol = opt_.feasibility_tol * (1.0 + std::abs(b_[i]));
        if (resid[i] >= lo_[s] - tol && resid[i] <= hi_[s] + tol) continue;
        const double target = std::clamp(resid[i], lo_[s], hi_[s]);
        double best_cost = kInf;
        for (std::size_t j = 0; j < n_; ++j) {
            const double aij = a_[i * n_ + j];
            if (aij == 0.0 || col_count[j] != 1 || state_[j] == VarState::Basic) continue;
            const double xj = value_[j] + (resid[i] - target) / aij;
            if (xj < lo_[j] - tol || xj > hi_[j] + tol) continue;
            const double c = cost[j] * col_scale_[j] * (xj - value_[j]);
            if (c < best_cost) {
                best_cost = c;
                crash_col[i] = j;
            }
        }
        if (crash_col[i] != n_) {
            state_[crash_col[i]] = VarState::Basic;
            value_[s] = target;
            continue;
        }
        art_sign_[i] = resid[i] > 0.0 ? 1.0 : -1.0;
        art_col_of_row_[i] = n_ + m_ + n_art++;
    }

    width_ = n_ + m_ + n_art;
    lo_.resize(width_, 0.0);
    hi_.resize(width_, kInf);
    value_.resize(width_, 0.0);
    state_.resize(width_, VarState::AtLower);
    tableau_.assign(m_ * width_, 0.0);
    basis_.assign(m_, 0);
    beta_.assign(m_, 0.0);

    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t s = n_ + i;
        // Tableau row i is the original row divided by its basic coefficient.
        double mult = 1.0;
        if (crash_col[i] != n_) {
            mult = 1.0 / a_[i * n_ + crash_col[i]];
        } else if (art_sign_[i] != 0.0) {
            mult = art_sign_[i];
        }
        for (std::size_t j = 0; j < n_; ++j) tab(i, j) = mult * a_[i * n_ + j];
        tab(i, s) = mult;
        if (crash_col[i] != n_) {
            const std::size_t j = crash_col[i];
            basis_[i] = j;
            beta_[i] = value_[j] + (resid[i] - value_[s]) * mult;
            value_[j] = 0.0;
            state_[s] = value_[s] == lo_[s] ? VarState::AtLower : VarState::AtUpper;
        } else if (art_sign_[i] != 0.0) {
            // Slack rests at its bound nearest the residual (always 0); the
            // artificial absorbs |resid| with coefficient +1 after the sign flip.
            const std::size_t art = art_col_of_row_[i];
            tab(i, art) = 1.0;
            value_[s] = 0.0;
            state_[s] = std::isfinite(lo_[s]) ? VarState::AtLower : VarState::AtUpper;
            basis_[i] = art;
            beta_[i] = std::abs(resid[i]);
            state_[art] = VarState::Basic;
        } else {
            basis_[i] = s;
            beta_[i] = resid[i];
            state_[s] = VarState::Basic;
        }
    }

    cost_.assign(width_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = cost[j] * col_scale_[j];

    d1_.assign(width_, 0.0);
    d2_ = cost_;
    for (std::size_t i = 0; i < m_; ++i) {
        const double cb = cost_[basis_[i]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < width_; ++j) d2_[j] -= cb * tab(i, j);
        d2_[basis_[i]] = 0.0;
    }
    for (std::size_t i = 0; i < m_; ++i) {
        if (is_artificial(basis_[i])) {
            d1_[basis_[i]] = 1.0;
        }
    }
    for (std::size_t i = 0; i < m_; ++i) {
        if (is_artificial(basis_[i])) {
            for (std::size_t j = 0; j < width_; ++j) d1_[j] -= tab(i, j);
        }
    }
}

void Simplex::pivot(std::size_t r, std::size_t q) {
    const double piv = tab(r, q);
    if (std::abs(piv) < kBreakdownPivot) {
        throw NumericalError("numerical breakdown: pivot magnitude " + std::to_string(std::abs(piv)));
    }
    double* prow = &tableau_[r * width_];
    const double inv = 1.0 / piv;
    nz_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
        if (prow[j] != 0.0) {
            prow[j] *= inv;
            nz_.push_back(j);
        }
    }
    prow[q] = 1.0;
    auto eliminate = [&](double* row) {
        const double f = row[q];
        if (f == 0.0) return;
        for (const std::size_t j : nz_) {
            const double v = row[j] - f * prow[j];
            row[j] = std::abs(v) < kDropTol ? 0.0 : v;
        }
        row[q] = 0.0;
    };
    for (std::size_t i = 0; i < m_; ++i) {
        if (i != r) eliminate(&tableau_[i * width_]);
    }
    eliminate(d1_.data());
    eliminate(d2_.data());
}

void Simplex::refresh_basic_values() {
    // beta = B^-1 (b - N x_N); the slack block of the tableau is B^-1.
    std::vector<double> rhs(b_);
    for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] == VarState::Basic || value_[j] == 0.0) continue;
        for (std::size_t i = 0; i < m_; ++i) rhs[i] -= a_[i * n_ + j] * value_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t s = n_ + i;
        if (state_[s] != VarState::Basic) rhs[i] -= value_[s];
        if (art_sign_[i] != 0.0) {
            const std::size_t art = art_col_of_row_[i];
            if (state_[art] != VarState::Basic) rhs[i] -= art_sign_[i] * value_[art];
        }
    }
    for (std::size_t i = 0; i < m_; ++i) {
        double v = 0.0;
        const double* row = &tableau_[i * width_ + n_];
        for (std::size_t k = 0; k < m_; ++k) v += row[k] * rhs[k];
        beta_[i] = v;
    }
    since_refresh_ = 0;
}

bool Simplex::iterate(int phase) {
    const std::vector<double>& d = phase == 1 ? d1_ : d2_;
    std::size_t degenerate_run = 0;
    while (true) {
        if (++iterations_ > max_iterations_) {
            throw NumericalError("simplex iteration limit reached");
        }
        if (since_refresh_ >= kRefreshEvery) refresh_basic_values();
        const bool bland = degenerate_run >= opt_.degenerate_limit;

        // Pricing.
        std::size_t q = width_;
        double best = 0.0;
        double dir = 0.0;
        for (std::size_t j = 0; j < width_; ++j) {
            const VarState st = state_[j];
            if (st == VarState::Basic) continue;
            if (phase == 2 && is_artificial(j)) continue;
            if (lo_[j] == hi_[j]) continue;
            const double dj = d[j];
            double score = 0.0;
            double dj_dir = 0.0;
            if ((st == VarState::AtLower || st == VarState::Between) && dj < -opt_.optimality_tol) {
                score = -dj;
                dj_dir = 1.0;
            } else if ((st == VarState::AtUpper || st == VarState::Between) && dj > opt_.optimality_tol) {
                score = dj;
                dj_dir = -1.0;
            } else {
                continue;
            }
            if (bland) {
                q = j;
                dir = dj_dir;
                break;
            }
            if (score > best) {
                best = score;
                q = j;
                dir = dj_dir;
            }
        }
        if (q == width_) return true;  // optimal for this phase

        // Ratio test. Basic i changes at rate -dir * alpha_i. Harris two-pass:
        // bound the step with bounds relaxed by the feasibility tolerance, then
        // take the largest pivot among rows blocking within that step.
        const double own_range = dir > 0.0 ? hi_[q] - value_[q] : value_[q] - lo_[q];
        const double relax = opt_.feasibility_tol;
        auto ratio = [&](std::size_t i, double slack, double& ti, bool& to_upper) {
            const double alpha = tab(i, q);
            if (std::abs(alpha) <= opt_.pivot_tol) return false;
            const double rate = -dir * alpha;
            const std::size_t bv = basis_[i];
            if (rate < 0.0) {
                if (!std::isfinite(lo_[bv])) return false;
                ti = (beta_[i] - lo_[bv] + slack) / -rate;
                to_upper = false;
            } else {
                if (!std::isfinite(hi_[bv])) return false;
                ti = (hi_[bv] - beta_[i] + slack) / rate;
                to_upper = true;
            }
            ti = std::max(ti, 0.0);
            return true;
        };
        double block = kInf;
        std::size_t leave = m_;
        double leave_alpha = 0.0;
        bool leave_to_upper = false;
        if (bland) {
            for (std::size_t i = 0; i < m_; ++i) {
                double ti;
                bool to_upper;
                if (!ratio(i, 0.0, ti, to_upper)) continue;
                const double tie = 1e-12 * (1.0 + std::min(block, ti));
                if (leave == m_ || ti < block - tie || (ti <= block + tie && basis_[i] < basis_[leave])) {
                    block = std::min(block, ti);
                    leave = i;
                    leave_to_upper = to_upper;
                }
            }
        } else {
            double bound = kInf;
            for (std::size_t i = 0; i < m_; ++i) {
                double ti;
                bool to_upper;
                if (ratio(i, relax, ti, to_upper)) bound = std::min(bound, ti);
            }
            if (std::isfinite(bound)) {
                for (std::size_t i = 0; i < m_; ++i) {
                    double ti;
                    bool to_upper;
                    if (!ratio(i, 0.0, ti, to_upper) || ti > bound) continue;
                    if (leave == m_ || std::abs(tab(i, q)) > std::abs(leave_alpha)) {
                        block = ti;
                        leave = i;
                        leave_alpha = tab(i, q);
                        leave_to_upper = to_upper;
                    }
                }
            }
        }

        const double theta = std::min(block, own_range);
        if (!std::isfinite(theta)) {
            if (phase == 1) throw NumericalError("unbounded phase-1 ray");
            return false;  // unbounded
        }
        const double step = theta;
        for (std::size_t i = 0; i < m_; ++i) {
            const double alpha = tab(i, q);
            if (alpha != 0.0) beta_[i] -= dir * step * alpha;
        }
        degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

        if (leave == m_ || own_range <= block) {
            // Bound flip, no basis change.
            if (dir > 0.0) {
                value_[q] = hi_[q];
                state_[q] = VarState::AtUpper;
            } else {
                value_[q] = lo_[q];
                state_[q] = VarState::AtLower;
            }
            continue;
        }

        const std::size_t out = basis_[leave];
        const double entering_value = value_[q] + dir * step;
        if (leave_to_upper) {
            value_[out] = hi_[out];
            state_[out] = VarState::AtUpper;
        } else {
            value_[out] = lo_[out];
            state_[out] = VarState::AtLower;
        }
        pivot(leave, q);
        basis_[leave] = q;
        state_[q] = VarState::Basic;
        beta_[leave] = entering_value;
        value_[q] = 0.0;
        ++since_refresh_;
    }
}

void Simplex::remove_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t bv = basis_[i];
        if (!is_artificial(bv)) continue;
        std::size_t best = width_;
        double mag = kArtificialTol;
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            if (state_[j] == VarState::Basic) continue;
            if (std::abs(tab(i, j)) > mag) {
                mag = std::abs(tab(i, j));
                best = j;
            }
        }
        if (best == width_) continue;  // redundant row; the artificial stays basic at zero
        const double entering_value = value_[best];
        value_[bv] = 0.0;
        state_[bv] = VarState::AtLower;
        pivot(i, best);
        basis_[i] = best;
        state_[best] = VarState::Basic;
        beta_[i] = entering_value;
        value_[best] = 0.0;
    }
    for (std::size_t j = n_ + m_; j < width_; ++j) {
        lo_[j] = 0.0;
        hi_[j] = 0.0;
        if (state_[j] != VarState::Basic) value_[j] = 0.0;
    }
    refresh_basic_values();
}

std::vector<double> Simplex::unscaled_solution() const {
    std::vector<double> full(value_);
    for (std::size_t i = 0; i < m_; ++i) full[basis_[i]] = beta_[i];
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = full[j] * col_scale_[j];
    return x;
}

LpSolution Simplex::run() {
    problem_.validate();
    if (!opt_.start.empty() && opt_.start.size() != problem_.num_vars()) {
        throw ProblemError("starting point has the wrong dimension");
    }
    scale();
    build_initial_basis();
    max_iterations_ = opt_.max_iterations != 0 ? opt_.max_iterations : 50 * (m_ + n_) + 1000;

    LpSolution sol;
    const bool needs_phase1 = std::any_of(basis_.begin(), basis_.end(), [&](std::size_t b) { return is_artificial(b); });
    if (needs_phase1) {
        iterate(1);
        refresh_basic_values();
        double infeas = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (is_artificial(basis_[i])) infeas = std::max(infeas, beta_[i]);
        }
        if (infeas > kArtificialTol) {
            sol.status = Status::Infeasible;
            sol.x = unscaled_solution();
            sol.objective_value = kInf;
            sol.iterations = iterations_;
            return sol;
        }
        remove_artificials();
    }

    const bool bounded = iterate(2);
    refresh_basic_values();
    sol.iterations = iterations_;
    sol.x = unscaled_solution();
    if (!bounded) {
        sol.status = Status::Unbounded;
        sol.objective_value = -kInf;
        return sol;
    }
    sol.status = Status::Optimal;
    sol.objective_value = problem_.objective(sol.x);
    const double viol = problem_.max_scaled_violation(sol.x);
    if (viol > 1e-7) {
        throw NumericalError("numerical breakdown: optimal basis violates constraints by " + std::to_string(viol));
    }
    return sol;
}

}  // namespace

LpSolution solve(const LpProblem& problem, const SolverOptions& options) {
    if (options.start.empty()) return Simplex(problem, options).run();
    try {
        return Simplex(problem, options).run();
    } catch (const NumericalError&) {
        // A warm start only changes the path; retry from the default point.
        SolverOptions cold = options;
        cold.start.clear();
        return Simplex(problem, cold).run();
    }
}

}  // namespace mpcbench::lp
