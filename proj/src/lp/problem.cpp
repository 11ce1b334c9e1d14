#include "mpcbench/lp/problem.hpp"

#include <algorithm>
#include <cmath>

namespace mpcbench::lp {

LpProblem::LpProblem(std::size_t num_vars) : cost_(num_vars, 0.0), bounds_(num_vars), names_(num_vars) {}

int LpProblem::add_variable(Bounds bounds, double cost, std::string name) {
    cost_.push_back(cost);
    bounds_.push_back(bounds);
    names_.push_back(std::move(name));
    return static_cast<int>(cost_.size() - 1);
}

void LpProblem::add_row(Row row) {
    if (row.index.size() != row.coef.size()) {
        throw ProblemError("row index/coefficient length mismatch");
    }
    rows_.push_back(std::move(row));
}

void LpProblem::add_row(std::vector<int> index, std::vector<double> coef, Relation rel, double rhs) {
    add_row(Row{std::move(index), std::move(coef), rel, rhs});
}

void LpProblem::validate() const {
    const auto n = static_cast<int>(num_vars());
    for (std::size_t j = 0; j < cost_.size(); ++j) {
        if (!std::isfinite(cost_[j])) throw ProblemError("non-finite cost coefficient");
        const Bounds& b = bounds_[j];
        if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper || b.lower == kInf || b.upper == -kInf) {
            throw ProblemError("invalid bounds on variable " + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Row& r = rows_[i];
        if (!std::isfinite(r.rhs)) throw ProblemError("non-finite rhs in row " + std::to_string(i));
        for (std::size_t k = 0; k < r.index.size(); ++k) {
            if (r.index[k] < 0 || r.index[k] >= n) throw ProblemError("variable index out of range in row " + std::to_string(i));
            if (!std::isfinite(r.coef[k])) throw ProblemError("non-finite coefficient in row " + std::to_string(i));
        }
    }
}

double LpProblem::objective(std::span<const double> x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < cost_.size(); ++j) v += cost_[j] * x[j];
    return v;
}

namespace {

double row_violation(const Row& r, double activity) {
    switch (r.relation) {
        case Relation::LessEqual: return std::max(0.0, activity - r.rhs);
        case Relation::GreaterEqual: return std::max(0.0, r.rhs - activity);
        case Relation::Equal: return std::abs(activity - r.rhs);
    }
    return 0.0;
}

}  // namespace

double LpProblem::max_violation(std::span<const double> x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < bounds_.size(); ++j) {
        worst = std::max({worst, bounds_[j].lower - x[j], x[j] - bounds_[j].upper});
    }
    for (const Row& r : rows_) {
        double a = 0.0;
        for (std::size_t k = 0; k < r.index.size(); ++k) a += r.coef[k] * x[static_cast<std::size_t>(r.index[k])];
        worst = std::max(worst, row_violation(r, a));
    }
    return worst;
}

double LpProblem::max_scaled_violation(std::span<const double> x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < bounds_.size(); ++j) {
        const double v = std::max({0.0, bounds_[j].lower - x[j], x[j] - bounds_[j].upper});
        worst = std::max(worst, v / (1.0 + std::abs(x[j])));
    }
    for (const Row& r : rows_) {
        double a = 0.0;
        double scale = std::abs(r.rhs);
        for (std::size_t k = 0; k < r.index.size(); ++k) {
            const double term = r.coef[k] * x[static_cast<std::size_t>(r.index[k])];
            a += term;
            scale = std::max(scale, std::abs(term));
        }
        worst = std::max(worst, row_violation(r, a) / (1.0 + scale));
    }
    return worst;
}

}  // namespace mpcbench::lp
