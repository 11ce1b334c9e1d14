#include "mpcbench/sim/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpcbench::sim {

namespace {

void check_lengths(const Trajectories& traj, std::size_t n) {
    for (const auto& b : traj) {
        if (b.size() != n) throw std::invalid_argument("trajectory length mismatch");
    }
}

}  // namespace

CostComponents cost_components(const Trajectories& net_demand, std::span<const double> price,
                               std::span<const double> carbon) {
    const std::size_t n = price.size();
    if (carbon.size() != n) throw std::invalid_argument("price/carbon length mismatch");
    check_lengths(net_demand, n);
    CostComponents c;
    double prev_total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double imports = 0.0;
        double total = 0.0;
        for (const auto& b : net_demand) {
            imports += std::max(0.0, b[t]);
            total += b[t];
        }
        c.price += price[t] * imports;
        c.carbon += carbon[t] * imports;
        if (t > 0) c.ramp += std::abs(total - prev_total);
        prev_total = total;
    }
    return c;
}

double performance_ratio(const CostComponents& c, const CostComponents& baseline, const ObjectiveWeights& w) {
    return w.gamma_p * c.price / std::max(1.0, baseline.price) + w.gamma_c * c.carbon / std::max(1.0, baseline.carbon) +
           w.gamma_r * c.ramp / std::max(1.0, baseline.ramp);
}

EpisodeEvaluation evaluate_episode(const Trajectories& net_demand, const Trajectories& baseline_net_demand,
                                   std::span<const double> price, std::span<const double> carbon,
                                   const ObjectiveWeights& w) {
    w.validate();
    if (net_demand.size() != baseline_net_demand.size()) {
        throw std::invalid_argument("trajectory building count mismatch");
    }
    EpisodeEvaluation e;
    e.components = cost_components(net_demand, price, carbon);
    e.baseline = cost_components(baseline_net_demand, price, carbon);
    e.performance_ratio = performance_ratio(e.components, e.baseline, w);
    return e;
}

}  // namespace mpcbench::sim
