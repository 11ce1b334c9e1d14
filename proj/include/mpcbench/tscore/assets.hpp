#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::tscore {

/// Battery and PV sizing of one building.
struct AssetSpec {
    std::string building_id;
    double power_capacity_kw = 0.0;     // P_max
    double energy_capacity_kwh = 0.0;   // C^s
    double round_trip_efficiency = 1.0; // eta, in (0, 1]
    double pv_capacity_kwp = 0.0;       // C^pv

    void validate() const;
};

/// PV sizing inputs. A roof area takes precedence over an explicit capacity,
/// which takes precedence over `default_pv_kwp`.
struct PvSizing {
    std::map<std::string, double> roof_area_m2;
    std::map<std::string, double> pv_kwp;
    double default_pv_kwp = 0.0;
};

inline constexpr double kPowerToMeanLoad = 3.0;
inline constexpr double kEnergyToMeanLoad = 24.0;
inline constexpr double kDefaultEfficiency = 0.9;
inline constexpr double kRoofCoverage = 0.9;
inline constexpr double kPanelDensityKwpPerM2 = 0.15;

double pv_capacity_from_roof(double roof_area_m2);

/// Power = 3 x mean load over `range`, energy = 24 x mean load, eta = 0.9.
std::vector<AssetSpec> derive_asset_specs(const ScenarioDataset& ds, IndexRange range, const PvSizing& pv = {});

const AssetSpec& find_asset(const std::vector<AssetSpec>& assets, const std::string& building_id);

}  // namespace mpcbench::tscore
