#pragma once

#include <cstddef>
#include <limits>

#include "mpcbench/forecast/forecaster.hpp"
#include "mpcbench/lp/simplex.hpp"
#include "mpcbench/sim/plant.hpp"
#include "mpcbench/sim/result.hpp"

namespace mpcbench::mpc {

struct RecedingHorizonOptions {
    /// Dataset window [begin, end) to control over; end = npos means the dataset end.
    std::size_t begin = 0;
    std::size_t end = std::numeric_limits<std::size_t>::max();
    lp::SolverOptions solver;
    /// Start each solve from the previous plan shifted by one step and cut
    /// back to a feasible point for the new forecast. The optimal objective is
    /// unchanged; with several optima the chosen plan may differ.
    bool warm_start = true;
};

/// Runs the controller over the window: for t = begin .. end-T-1 it obtains a
/// forecast, solves the horizon LP, applies the first action to the plant and
/// records the realized trajectories. The run is evaluated against the
/// no-storage baseline over the same steps.
sim::SimulationResult run_receding_horizon(sim::Plant& plant, const ObjectiveWeights& w, std::size_t horizon,
                                           forecast::Forecaster& forecaster,
                                           const RecedingHorizonOptions& options = {});

}  // namespace mpcbench::mpc
