#include "mpcbench/sim/plant.hpp"

#include <algorithm>
#include <cmath>

namespace mpcbench::sim {

ActionOutcome apply_action(double soc, double requested_kwh, const AssetSpec& asset, double step_hours) {
    const double limit = asset.power_capacity_kw * step_hours;
    const double e = std::clamp(requested_kwh, -limit, limit);
    const double root_eta = std::sqrt(asset.round_trip_efficiency);
    if (e > 0.0) {
        const double headroom = std::max(0.0, asset.energy_capacity_kwh - soc);
        if (e * root_eta > headroom) {
            return {asset.energy_capacity_kwh, headroom / root_eta};
        }
        return {soc + e * root_eta, e};
    }
    if (e < 0.0) {
        const double available = std::max(0.0, soc);
        if (-e / root_eta > available) {
            return {0.0, -available * root_eta};
        }
        return {std::max(0.0, soc + e / root_eta), e};
    }
    return {soc, 0.0};
}

double net_demand(double load, double pv_capacity_kwp, double solar, double battery_energy) {
    return load - pv_capacity_kwp * solar + battery_energy;
}

Plant::Plant(const tscore::ScenarioDataset& ds, std::vector<AssetSpec> assets,
             std::map<std::string, double> initial_soc)
    : ds_(ds), assets_(std::move(assets)) {
    for (const auto& a : assets_) {
        a.validate();
        (void)ds_.load(a.building_id);
        const auto it = initial_soc.find(a.building_id);
        const double soc = it == initial_soc.end() ? 0.0 : it->second;
        if (soc < 0.0 || soc > a.energy_capacity_kwh) {
            throw tscore::DataError("initial state of charge outside [0, capacity] for '" + a.building_id + "'");
        }
        state_.soc[a.building_id] = soc;
    }
}

std::map<std::string, double> Plant::step(const std::map<std::string, double>& requested) {
    std::map<std::string, double> realized;
    for (const auto& a : assets_) {
        const auto it = requested.find(a.building_id);
        const double e = it == requested.end() ? 0.0 : it->second;
        const ActionOutcome out = apply_action(state_.soc[a.building_id], e, a, ds_.step_hours());
        state_.soc[a.building_id] = out.soc;
        realized[a.building_id] = out.energy;
    }
    return realized;
}

double Plant::net_demand(const std::string& building, std::size_t t, double energy) const {
    const auto& a = tscore::find_asset(assets_, building);
    return sim::net_demand(ds_.load(building)[t], a.pv_capacity_kwp, ds_.solar()[t], energy);
}

}  // namespace mpcbench::sim
