#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpcbench::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

/// One constraint row, stored sparsely: sum_k coef[k] * x[index[k]] (rel) rhs.
struct Row {
    std::vector<int> index;
    std::vector<double> coef;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
};

struct Bounds {
    double lower = 0.0;
    double upper = kInf;
};

class ProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Minimize c^T x subject to rows and per-variable bounds.
class LpProblem {
public:
    explicit LpProblem(std::size_t num_vars = 0);

    /// Adds a variable with bounds and objective coefficient; returns its index.
    int add_variable(Bounds bounds = {}, double cost = 0.0, std::string name = {});
    void add_row(Row row);
    void add_row(std::vector<int> index, std::vector<double> coef, Relation rel, double rhs);

    void set_cost(int var, double cost) { cost_.at(static_cast<std::size_t>(var)) = cost; }
    void set_bounds(int var, Bounds b) { bounds_.at(static_cast<std::size_t>(var)) = b; }

    [[nodiscard]] std::size_t num_vars() const { return cost_.size(); }
    [[nodiscard]] std::size_t num_rows() const { return rows_.size(); }
    [[nodiscard]] std::span<const double> cost() const { return cost_; }
    [[nodiscard]] std::span<const Bounds> bounds() const { return bounds_; }
    [[nodiscard]] std::span<const Row> rows() const { return rows_; }
    [[nodiscard]] const std::string& name(int var) const { return names_.at(static_cast<std::size_t>(var)); }

    /// Throws ProblemError unless indices are in range, coefficients finite and lo <= hi.
    void validate() const;

    [[nodiscard]] double objective(std::span<const double> x) const;
    /// Largest violation of any row or bound at x (absolute).
    [[nodiscard]] double max_violation(std::span<const double> x) const;
    /// Row-wise violation divided by (1 + max |coefficient| * max|x_j| in the row, |rhs|).
    [[nodiscard]] double max_scaled_violation(std::span<const double> x) const;

private:
    std::vector<double> cost_;
    std::vector<Bounds> bounds_;
    std::vector<std::string> names_;
    std::vector<Row> rows_;
};

}  // namespace mpcbench::lp
