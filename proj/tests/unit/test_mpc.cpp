#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "../support/scenarios.hpp"
#include "mpcbench/forecast/reference_forecasters.hpp"
#include "mpcbench/mpc/horizon_lp.hpp"
#include "mpcbench/mpc/receding_horizon.hpp"

using namespace mpcbench;
using namespace mpcbench::mpc;

namespace {

oracle::HorizonCase random_case(std::mt19937_64& rng, std::size_t T, bool roomy) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    oracle::HorizonCase h;
    h.asset.building_id = "0";
    h.asset.power_capacity_kw = 2.0 + 8.0 * u(rng);
    h.asset.energy_capacity_kwh = roomy ? 4.0 * h.asset.power_capacity_kw * static_cast<double>(T)
                                        : h.asset.power_capacity_kw * (0.5 + 2.0 * u(rng));
    h.asset.round_trip_efficiency = 0.7 + 0.3 * u(rng);
    h.asset.pv_capacity_kwp = 5.0 * u(rng);
    h.soc0 = roomy ? 0.5 * h.asset.energy_capacity_kwh : h.asset.energy_capacity_kwh * u(rng);
    h.prev_net = 20.0 * u(rng);
    for (std::size_t t = 0; t < T; ++t) {
        h.load.push_back(5.0 + 20.0 * u(rng));
        h.solar.push_back(u(rng));
        h.price.push_back(0.05 + 0.4 * u(rng));
        h.carbon.push_back(0.1 + 0.3 * u(rng));
    }
    return h;
}

StepResult solve_case(const oracle::HorizonCase& h) {
    ControllerState st;
    st.soc["0"] = h.soc0;
    st.prev_net_demand["0"] = h.prev_net;
    ForecastSet f;
    f.horizon = h.load.size();
    f.load["0"] = h.load;
    f.solar = h.solar;
    f.price = h.price;
    f.carbon = h.carbon;
    return step(st, f, {h.asset}, h.w);
}

}  // namespace

TEST_CASE("horizon LP is no worse than any gridded action sequence") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t T = 1 + static_cast<std::size_t>(trial % 3);
        const bool roomy = trial % 2 == 0;
        const oracle::HorizonCase h = random_case(rng, T, roomy);
        const StepResult s = solve_case(h);
        const double grid = oracle::grid_minimum(h, 21, h.asset.power_capacity_kw);
        CHECK(s.objective <= grid + 1e-9);
        if (roomy) {
            CHECK(grid - s.objective <= oracle::grid_resolution_bound(h, 21, h.asset.power_capacity_kw) + 1e-12);
        }
    }
}

TEST_CASE("LP objective equals the exact objective of its plan when storage never binds") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const oracle::HorizonCase h = random_case(rng, 6, true);
        const StepResult s = solve_case(h);
        std::vector<double> e;
        for (std::size_t t = 0; t < 6; ++t) e.push_back(s.solution.x[static_cast<std::size_t>(s.layout.energy(0, t))]);
        CHECK(oracle::horizon_objective(h, e) == doctest::Approx(s.objective).epsilon(1e-7));
    }
}

TEST_CASE("zero capacity gives zero actions") {
    std::mt19937_64 rng(1);
    oracle::HorizonCase h = random_case(rng, 4, false);
    h.asset.power_capacity_kw = 0.0;
    h.asset.energy_capacity_kwh = 0.0;
    h.soc0 = 0.0;
    const StepResult s = solve_case(h);
    CHECK(s.actions.at("0") == 0.0);
}

TEST_CASE("flat prices and no ramp weight leave nothing to arbitrage") {
    const auto ds = testdata::flat_scenario(24 * 10, 1);
    sim::Plant plant(ds, testdata::assets_for(ds, 0.9));
    forecast::PerfectForecaster f;
    const ObjectiveWeights w{0.5, 0.5, 0.0};
    RecedingHorizonOptions o;
    o.end = 100;
    const auto r = run_receding_horizon(plant, w, 1, f, o);
    CHECK(r.performance_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("normalizers clip at one") {
    ControllerState st;
    st.soc["0"] = 0.0;
    st.prev_net_demand["0"] = 0.0;
    ForecastSet f;
    f.horizon = 2;
    f.load["0"] = {0.0, 0.0};
    f.solar = {0.0, 0.0};
    f.price = {0.1, 0.1};
    f.carbon = {0.1, 0.1};
    tscore::AssetSpec a;
    a.building_id = "0";
    const Normalizers nz = compute_normalizers(st, f, {a});
    CHECK(nz.price == 1.0);
    CHECK(nz.carbon == 1.0);
    CHECK(nz.ramp == 1.0);
}

TEST_CASE("invalid inputs raise MpcError") {
    std::mt19937_64 rng(2);
    oracle::HorizonCase h = random_case(rng, 3, false);
    h.w = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(solve_case(h), MpcError);
    h = random_case(rng, 3, false);
    h.price.pop_back();
    CHECK_THROWS_AS(solve_case(h), MpcError);
}

TEST_CASE("receding horizon run is deterministic and respects battery limits") {
    const auto ds = testdata::synthetic(3, 24 * 14, 9);
    const auto assets = testdata::assets_for(ds, 0.9);
    forecast::PerfectForecaster f;
    RecedingHorizonOptions o;
    o.begin = 24;
    o.end = 24 + 48 + 24;
    sim::Plant p1(ds, assets);
    sim::Plant p2(ds, assets);
    const auto a = run_receding_horizon(p1, {}, 24, f, o);
    const auto b = run_receding_horizon(p2, {}, 24, f, o);
    CHECK(a.action == b.action);
    CHECK(a.steps() == 48);
    for (std::size_t i = 0; i < assets.size(); ++i) {
        for (std::size_t k = 0; k < a.steps(); ++k) {
            CHECK(a.soc[i][k] >= 0.0);
            CHECK(a.soc[i][k] <= assets[i].energy_capacity_kwh + 1e-9);
            CHECK(std::abs(a.action[i][k]) <= assets[i].power_capacity_kw + 1e-9);
        }
    }
    CHECK(a.performance_ratio <= 1.0);
}

TEST_CASE("warm start does not change the trajectory") {
    const auto ds = testdata::synthetic(2, 24 * 10, 4);
    const auto assets = testdata::assets_for(ds, 0.9);
    forecast::PerfectForecaster f;
    RecedingHorizonOptions o;
    o.begin = 0;
    o.end = 24 * 4;
    sim::Plant p1(ds, assets);
    sim::Plant p2(ds, assets);
    const auto warm = run_receding_horizon(p1, {}, 24, f, o);
    o.warm_start = false;
    const auto cold = run_receding_horizon(p2, {}, 24, f, o);
    CHECK(warm.performance_ratio == doctest::Approx(cold.performance_ratio).epsilon(1e-6));
}
