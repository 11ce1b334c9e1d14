#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpcbench/sim/evaluate.hpp"

namespace mpcbench::sim {

/// Realized trajectories of one receding-horizon run. Trajectories are indexed
/// [building][step]; step k corresponds to dataset index first_step + k and the
/// SoC entry is the charge after that step's action.
struct SimulationResult {
    std::vector<std::string> buildings;
    std::size_t first_step = 0;
    Trajectories soc;
    Trajectories action;
    Trajectories net_demand;
    Trajectories baseline_net_demand;
    CostComponents components;
    CostComponents baseline_components;
    double performance_ratio = 1.0;
    double solve_seconds = 0.0;
    std::size_t lp_iterations = 0;

    [[nodiscard]] std::size_t steps() const { return soc.empty() ? 0 : soc.front().size(); }
};

/// Columns: t, then soc_<id>, action_<id>, net_demand_<id> per building.
void write_trajectories_csv(const std::filesystem::path& path, const SimulationResult& r);
/// Rows "component,value,baseline" plus the performance ratio.
void write_summary_csv(const std::filesystem::path& path, const SimulationResult& r);

}  // namespace mpcbench::sim
