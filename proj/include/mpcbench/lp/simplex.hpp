#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mpcbench/lp/problem.hpp"

namespace mpcbench::lp {

enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status s);

struct LpSolution {
    Status status = Status::Infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
    std::size_t iterations = 0;
};

struct SolverOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    /// Ratio-test entries below this magnitude are never pivoted on.
    double pivot_tol = 1e-9;
    /// Consecutive degenerate pivots tolerated under Dantzig pricing before
    /// switching to Bland's rule; Dantzig resumes after the next improving pivot.
    std::size_t degenerate_limit = 50;
    /// 0 selects 50 * (rows + columns).
    std::size_t max_iterations = 0;
    bool equilibrate = true;
    /// Optional starting values for the structurals, clamped to their bounds.
    /// Empty starts each variable at the point of its box nearest zero. Only
    /// the path of the solve depends on it, not the optimal objective. A warm
    /// solve that breaks down numerically is retried from the default point.
    std::vector<double> start;
};

/// Raised when the solve cannot produce a trustworthy basis: a pivot below
/// 1e-11 after equilibration, the iteration cap, or an "optimal" point that
/// violates the problem by more than 1e-7 (scaled).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense bounded-variable two-phase primal simplex. Deterministic: Dantzig
/// pricing with lowest-index tie-breaking, a Harris two-pass ratio test that
/// favours large pivots, and Bland's rule during degenerate stalls.
LpSolution solve(const LpProblem& problem, const SolverOptions& options = {});

}  // namespace mpcbench::lp
