#pragma once

#include <filesystem>
#include <iosfwd>

#include "mpcbench/lp/problem.hpp"

namespace mpcbench::lp {

/// Writes the problem in CPLEX LP text format (Minimize / Subject To / Bounds /
/// End) so it can be cross-checked with an external solver. Unnamed variables
/// are written as x<index>, rows as c<index>.
void write_lp_format(std::ostream& out, const LpProblem& problem);
void write_lp_format(const std::filesystem::path& path, const LpProblem& problem);

}  // namespace mpcbench::lp
