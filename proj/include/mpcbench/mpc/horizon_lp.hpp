#pragma once

#include <map>
#include <string>
#include <vector>

#include "mpcbench/lp/problem.hpp"
#include "mpcbench/lp/simplex.hpp"
#include "mpcbench/mpc/types.hpp"
#include "mpcbench/tscore/assets.hpp"

namespace mpcbench::mpc {

using tscore::AssetSpec;

/// No-storage values of the three objective components over one horizon,
/// each clipped below at 1.
struct Normalizers {
    double price = 1.0;
    double carbon = 1.0;
    double ramp = 1.0;
};

/// Evaluates the objective components with E = 0 from the forecasts. The ramp
/// term at tau = 0 is taken against the aggregate of state.prev_net_demand.
Normalizers compute_normalizers(const ControllerState& state, const ForecastSet& f,
                                const std::vector<AssetSpec>& assets);

/// Column positions of the horizon LP. Per building i and step tau: battery
/// intake E, end-of-step charge SoC[tau+1], import bound u >= max(0, E^b); per
/// step: ramp bound r >= |ramp|.
struct HorizonLayout {
    std::vector<std::string> buildings;
    std::size_t horizon = 0;

    [[nodiscard]] int energy(std::size_t i, std::size_t tau) const { return static_cast<int>(i * horizon + tau); }
    [[nodiscard]] int soc(std::size_t i, std::size_t tau) const {
        return static_cast<int>((buildings.size() + i) * horizon + tau);
    }
    [[nodiscard]] int import(std::size_t i, std::size_t tau) const {
        return static_cast<int>((2 * buildings.size() + i) * horizon + tau);
    }
    [[nodiscard]] int ramp(std::size_t tau) const { return static_cast<int>(3 * buildings.size() * horizon + tau); }
    [[nodiscard]] std::size_t num_vars() const { return (3 * buildings.size() + 1) * horizon; }
};

struct HorizonLp {
    lp::LpProblem problem;
    HorizonLayout layout;
    Normalizers normalizers;
};

/// Builds the receding-horizon battery dispatch LP. The charge dynamics appear
/// as the pair SoC[tau+1] <= SoC[tau] + E*sqrt(eta) and SoC[tau+1] <= SoC[tau] +
/// E/sqrt(eta); negative price and carbon forecasts are clipped to zero in the
/// objective, which keeps the LP bounded.
HorizonLp build_horizon_lp(const ControllerState& state, const ForecastSet& f, const std::vector<AssetSpec>& assets,
                           const ObjectiveWeights& w);

struct StepResult {
    std::map<std::string, double> actions;      // E_i*[0], kWh
    std::map<std::string, double> planned_soc;  // SoC_i[1] of the plan, kWh
    double objective = 0.0;
    std::size_t iterations = 0;
    lp::LpSolution solution;
    HorizonLayout layout;
};

/// Solves one horizon and returns the first-step actions. Throws MpcError if
/// the LP is not solved to optimality.
StepResult step(const ControllerState& state, const ForecastSet& f, const std::vector<AssetSpec>& assets,
                const ObjectiveWeights& w, const lp::SolverOptions& options = {});

}  // namespace mpcbench::mpc
