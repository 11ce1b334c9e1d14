#pragma once

#include <span>
#include <string>
#include <vector>

#include "mpcbench/mpc/types.hpp"

namespace mpcbench::sim {

using mpc::ObjectiveWeights;

struct CostComponents {
    double price = 0.0;   // sum_t p[t] * sum_i max(0, E^b_i[t])
    double carbon = 0.0;  // sum_t c[t] * sum_i max(0, E^b_i[t])
    double ramp = 0.0;    // sum_t |sum_i E^b_i[t] - sum_i E^b_i[t-1]|, first term zero
};

struct EpisodeEvaluation {
    CostComponents components;
    CostComponents baseline;
    double performance_ratio = 1.0;
};

/// Per-building net demand trajectories, all the same length.
using Trajectories = std::vector<std::vector<double>>;

CostComponents cost_components(const Trajectories& net_demand, std::span<const double> price,
                               std::span<const double> carbon);

/// gamma_p * price/max(1, price~) + gamma_c * carbon/max(1, carbon~) + gamma_r * ramp/max(1, ramp~).
double performance_ratio(const CostComponents& c, const CostComponents& baseline, const ObjectiveWeights& w);

/// Evaluates an episode against its no-storage baseline (same loads, E = 0).
/// Prices enter unclipped. Throws on any length mismatch.
EpisodeEvaluation evaluate_episode(const Trajectories& net_demand, const Trajectories& baseline_net_demand,
                                   std::span<const double> price, std::span<const double> carbon,
                                   const ObjectiveWeights& w);

}  // namespace mpcbench::sim
