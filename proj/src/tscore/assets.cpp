#include "mpcbench/tscore/assets.hpp"

#include <cmath>

namespace mpcbench::tscore {

void AssetSpec::validate() const {
    const bool ok = std::isfinite(power_capacity_kw) && power_capacity_kw >= 0.0 &&
                    std::isfinite(energy_capacity_kwh) && energy_capacity_kwh >= 0.0 &&
                    std::isfinite(pv_capacity_kwp) && pv_capacity_kwp >= 0.0 && round_trip_efficiency > 0.0 &&
                    round_trip_efficiency <= 1.0;
    if (!ok) {
        throw DataError("invalid asset specification for building '" + building_id + "'");
    }
}

double pv_capacity_from_roof(double roof_area_m2) {
    if (!(roof_area_m2 >= 0.0)) {
        throw DataError("roof area must be nonnegative");
    }
    return kRoofCoverage * roof_area_m2 * kPanelDensityKwpPerM2;
}

std::vector<AssetSpec> derive_asset_specs(const ScenarioDataset& ds, IndexRange range, const PvSizing& pv) {
    if (range.empty()) {
        throw DataError("asset sizing needs a non-empty range");
    }
    std::vector<AssetSpec> specs;
    for (const auto& b : ds.buildings()) {
        const double mean_load = b.series.mean(range);
        AssetSpec a;
        a.building_id = b.name;
        a.power_capacity_kw = kPowerToMeanLoad * mean_load;
        a.energy_capacity_kwh = kEnergyToMeanLoad * mean_load;
        a.round_trip_efficiency = kDefaultEfficiency;
        if (const auto it = pv.roof_area_m2.find(b.name); it != pv.roof_area_m2.end()) {
            a.pv_capacity_kwp = pv_capacity_from_roof(it->second);
        } else if (const auto jt = pv.pv_kwp.find(b.name); jt != pv.pv_kwp.end()) {
            a.pv_capacity_kwp = jt->second;
        } else {
            a.pv_capacity_kwp = pv.default_pv_kwp;
        }
        a.validate();
        specs.push_back(a);
    }
    return specs;
}

const AssetSpec& find_asset(const std::vector<AssetSpec>& assets, const std::string& building_id) {
    for (const auto& a : assets) {
        if (a.building_id == building_id) return a;
    }
    throw DataError("no asset specification for building '" + building_id + "'");
}

}  // namespace mpcbench::tscore
