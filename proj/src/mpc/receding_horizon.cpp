#include "mpcbench/mpc/receding_horizon.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "mpcbench/mpc/horizon_lp.hpp"

namespace mpcbench::mpc {

namespace {

// Start point for the next solve: the previous energy plan shifted by one
// step (last step held), cut back where it would leave [0, capacity] under
// the LP's charge dynamics, with imports and ramps set to their smallest
// feasible values for the new forecast. The point is feasible, so the solver
// skips phase 1.
std::vector<double> feasible_start(const StepResult& prev, const ControllerState& state, const ForecastSet& f,
                                   const std::vector<AssetSpec>& assets) {
    const HorizonLayout& L = prev.layout;
    const std::vector<double>& x = prev.solution.x;
    const std::size_t T = L.horizon;
    std::vector<double> start(x.size(), 0.0);
    std::vector<double> net(T, 0.0);
    for (std::size_t i = 0; i < L.buildings.size(); ++i) {
        const std::string& id = L.buildings[i];
        const auto a = std::find_if(assets.begin(), assets.end(), [&](const AssetSpec& s) { return s.building_id == id; });
        const double pmax = a->power_capacity_kw * f.step_hours;
        const double root_eta = std::sqrt(a->round_trip_efficiency);
        const auto& load = f.load_of(id);
        double soc = state.soc.at(id);
        for (std::size_t tau = 0; tau < T; ++tau) {
            double e = std::clamp(x[static_cast<std::size_t>(L.energy(i, std::min(tau + 1, T - 1)))], -pmax, pmax);
            // tightest of the two dynamics rows: charge scaled by root_eta, discharge by 1/root_eta
            if (e >= 0.0) {
                e = std::min(e, (a->energy_capacity_kwh - soc) / root_eta);
                soc = std::min(a->energy_capacity_kwh, soc + root_eta * e);
            } else {
                e = std::max(e, -soc * root_eta);
                soc = std::max(0.0, soc + e / root_eta);
            }
            const double demand = load[tau] - a->pv_capacity_kwp * f.solar[tau] + e;
            start[static_cast<std::size_t>(L.energy(i, tau))] = e;
            start[static_cast<std::size_t>(L.soc(i, tau))] = soc;
            start[static_cast<std::size_t>(L.import(i, tau))] = std::max(0.0, demand);
            net[tau] += demand;
        }
    }
    double prev_net = 0.0;
    for (const auto& [id, v] : state.prev_net_demand) prev_net += v;
    for (std::size_t tau = 0; tau < T; ++tau) {
        start[static_cast<std::size_t>(L.ramp(tau))] = std::abs(net[tau] - prev_net);
        prev_net = net[tau];
    }
    return start;
}

}  // namespace

sim::SimulationResult run_receding_horizon(sim::Plant& plant, const ObjectiveWeights& w, std::size_t horizon,
                                           forecast::Forecaster& forecaster, const RecedingHorizonOptions& options) {
    w.validate();
    const auto& ds = plant.dataset();
    const std::size_t end = std::min(options.end, ds.size());
    const std::size_t begin = options.begin;
    if (horizon == 0) throw MpcError("planning horizon must be positive");
    if (end <= begin || end - begin <= horizon) {
        throw MpcError("control window must be longer than the planning horizon");
    }
    const std::size_t steps = end - begin - horizon;
    const auto& assets = plant.assets();

    sim::SimulationResult r;
    r.first_step = begin;
    for (const auto& a : assets) r.buildings.push_back(a.building_id);
    const std::size_t B = r.buildings.size();
    for (auto* traj : {&r.soc, &r.action, &r.net_demand, &r.baseline_net_demand}) {
        traj->assign(B, std::vector<double>(steps, 0.0));
    }

    ControllerState state;
    for (const auto& id : r.buildings) {
        state.prev_net_demand[id] = plant.net_demand(id, begin, 0.0);
    }

    lp::SolverOptions solver = options.solver;
    std::optional<StepResult> previous;
    for (std::size_t k = 0; k < steps; ++k) {
        const std::size_t t = begin + k;
        state.soc = plant.state().soc;
        const ForecastSet f = forecaster.forecast(ds, t, horizon);
        const auto t0 = std::chrono::steady_clock::now();
        if (options.warm_start && previous) solver.start = feasible_start(*previous, state, f, assets);
        const StepResult& s = previous.emplace(step(state, f, assets, w, solver));
        r.solve_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.lp_iterations += s.iterations;
        const auto realized = plant.step(s.actions);
        for (std::size_t i = 0; i < B; ++i) {
            const std::string& id = r.buildings[i];
            const double e = realized.at(id);
            r.soc[i][k] = plant.state().soc.at(id);
            r.action[i][k] = e;
            r.net_demand[i][k] = plant.net_demand(id, t, e);
            r.baseline_net_demand[i][k] = plant.net_demand(id, t, 0.0);
            state.prev_net_demand[id] = r.net_demand[i][k];
        }
    }

    const auto price = ds.price().values().subspan(begin, steps);
    const auto carbon = ds.carbon().values().subspan(begin, steps);
    const sim::EpisodeEvaluation eval = sim::evaluate_episode(r.net_demand, r.baseline_net_demand, price, carbon, w);
    r.components = eval.components;
    r.baseline_components = eval.baseline;
    r.performance_ratio = eval.performance_ratio;
    return r;
}

}  // namespace mpcbench::mpc
