#pragma once

#include <map>
#include <string>
#include <vector>

#include "mpcbench/tscore/assets.hpp"
#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::sim {

using tscore::AssetSpec;

/// Realized outcome of one battery action.
struct ActionOutcome {
    double soc = 0.0;     // state of charge after the step, kWh
    double energy = 0.0;  // grid-side battery intake actually achieved, kWh
};

/// Battery step with clamping. The request is first limited to +-P_max*dt; a
/// charge stores E*sqrt(eta) and a discharge draws |E|/sqrt(eta) from storage,
/// each further limited by the capacity window [0, C^s].
ActionOutcome apply_action(double soc, double requested_kwh, const AssetSpec& asset, double step_hours);

/// E^b = L - C^pv * g + E.
double net_demand(double load, double pv_capacity_kwp, double solar, double battery_energy);

struct PlantState {
    std::map<std::string, double> soc;
};

/// Ground-truth multi-building system driven by a dataset.
class Plant {
public:
    /// Batteries start at `initial_soc` (kWh, default empty).
    Plant(const tscore::ScenarioDataset& ds, std::vector<AssetSpec> assets,
          std::map<std::string, double> initial_soc = {});

    /// Applies the requested intakes for one step. Returns realized intakes per building.
    std::map<std::string, double> step(const std::map<std::string, double>& requested);

    [[nodiscard]] const PlantState& state() const { return state_; }
    [[nodiscard]] const std::vector<AssetSpec>& assets() const { return assets_; }
    [[nodiscard]] const tscore::ScenarioDataset& dataset() const { return ds_; }
    [[nodiscard]] double net_demand(const std::string& building, std::size_t t, double energy) const;

private:
    const tscore::ScenarioDataset& ds_;
    std::vector<AssetSpec> assets_;
    PlantState state_;
};

}  // namespace mpcbench::sim
