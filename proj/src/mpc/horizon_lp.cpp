#include "mpcbench/mpc/horizon_lp.hpp"

#include <algorithm>
#include <cmath>

namespace mpcbench::mpc {

void ObjectiveWeights::validate() const {
    if (!(gamma_p >= 0.0 && gamma_c >= 0.0 && gamma_r >= 0.0)) {
        throw MpcError("objective weights must be nonnegative");
    }
    if (std::abs(gamma_p + gamma_c + gamma_r - 1.0) > 1e-9) {
        throw MpcError("objective weights must sum to 1");
    }
}

void ForecastSet::validate() const {
    if (horizon == 0) throw MpcError("forecast horizon must be positive");
    if (!(step_hours > 0.0)) throw MpcError("forecast step must be positive");
    auto check = [&](const std::vector<double>& v, const std::string& what) {
        if (v.size() != horizon) throw MpcError("forecast '" + what + "' has wrong length");
        for (const double x : v) {
            if (!std::isfinite(x)) throw MpcError("non-finite forecast for '" + what + "'");
        }
    };
    for (const auto& [id, v] : load) check(v, "load:" + id);
    check(solar, "solar");
    check(price, "price");
    check(carbon, "carbon");
}

const std::vector<double>& ForecastSet::load_of(const std::string& building) const {
    const auto it = load.find(building);
    if (it == load.end()) throw MpcError("no load forecast for building '" + building + "'");
    return it->second;
}

namespace {

double prev_total(const ControllerState& state) {
    double s = 0.0;
    for (const auto& [id, v] : state.prev_net_demand) s += v;
    return s;
}

const AssetSpec& asset_for(const std::vector<AssetSpec>& assets, const std::string& id) {
    for (const auto& a : assets) {
        if (a.building_id == id) return a;
    }
    throw MpcError("unknown building id '" + id + "'");
}

/// sum_i (L_i - C^pv_i g) per step.
std::vector<double> aggregate_base_demand(const ForecastSet& f, const std::vector<AssetSpec>& assets) {
    std::vector<double> agg(f.horizon, 0.0);
    for (const auto& [id, load] : f.load) {
        const AssetSpec& a = asset_for(assets, id);
        for (std::size_t tau = 0; tau < f.horizon; ++tau) agg[tau] += load[tau] - a.pv_capacity_kwp * f.solar[tau];
    }
    return agg;
}

}  // namespace

Normalizers compute_normalizers(const ControllerState& state, const ForecastSet& f,
                                const std::vector<AssetSpec>& assets) {
    f.validate();
    double price = 0.0, carbon = 0.0, ramp = 0.0;
    for (std::size_t tau = 0; tau < f.horizon; ++tau) {
        double imports = 0.0;
        for (const auto& [id, load] : f.load) {
            const AssetSpec& a = asset_for(assets, id);
            imports += std::max(0.0, load[tau] - a.pv_capacity_kwp * f.solar[tau]);
        }
        price += f.price[tau] * imports;
        carbon += f.carbon[tau] * imports;
    }
    const auto agg = aggregate_base_demand(f, assets);
    double prev = prev_total(state);
    for (std::size_t tau = 0; tau < f.horizon; ++tau) {
        ramp += std::abs(agg[tau] - prev);
        prev = agg[tau];
    }
    return {std::max(1.0, price), std::max(1.0, carbon), std::max(1.0, ramp)};
}

HorizonLp build_horizon_lp(const ControllerState& state, const ForecastSet& f, const std::vector<AssetSpec>& assets,
                           const ObjectiveWeights& w) {
    w.validate();
    f.validate();
    HorizonLp out;
    HorizonLayout& lay = out.layout;
    lay.horizon = f.horizon;
    for (const auto& [id, load] : f.load) lay.buildings.push_back(id);
    out.normalizers = compute_normalizers(state, f, assets);
    const Normalizers& nz = out.normalizers;

    const std::size_t T = f.horizon;
    const std::size_t B = lay.buildings.size();
    lp::LpProblem& p = out.problem;
    p = lp::LpProblem(lay.num_vars());

    for (std::size_t i = 0; i < B; ++i) {
        const AssetSpec& a = asset_for(assets, lay.buildings[i]);
        a.validate();
        const double pmax = a.power_capacity_kw * f.step_hours;
        for (std::size_t tau = 0; tau < T; ++tau) {
            p.set_bounds(lay.energy(i, tau), {-pmax, pmax});
            p.set_bounds(lay.soc(i, tau), {0.0, a.energy_capacity_kwh});
            p.set_bounds(lay.import(i, tau), {0.0, lp::kInf});
            const double coef = w.gamma_p * std::max(0.0, f.price[tau]) / nz.price + w.gamma_c * std::max(0.0, f.carbon[tau]) / nz.carbon;
            p.set_cost(lay.import(i, tau), coef);
        }
    }
    for (std::size_t tau = 0; tau < T; ++tau) {
        p.set_bounds(lay.ramp(tau), {0.0, lp::kInf});
        p.set_cost(lay.ramp(tau), w.gamma_r / nz.ramp);
    }

    for (std::size_t i = 0; i < B; ++i) {
        const std::string& id = lay.buildings[i];
        const AssetSpec& a = asset_for(assets, id);
        const auto soc_it = state.soc.find(id);
        if (soc_it == state.soc.end()) throw MpcError("no state of charge for building '" + id + "'");
        const double soc0 = soc_it->second;
        if (soc0 < -1e-9 || soc0 > a.energy_capacity_kwh + 1e-9) {
            throw MpcError("state of charge outside [0, capacity] for building '" + id + "'");
        }
        const double root_eta = std::sqrt(a.round_trip_efficiency);
        const auto& load = f.load_of(id);
        for (std::size_t tau = 0; tau < T; ++tau) {
            const int e = lay.energy(i, tau);
            const int s_next = lay.soc(i, tau);
            for (const double gain : {root_eta, 1.0 / root_eta}) {
                if (tau == 0) {
                    p.add_row({s_next, e}, {1.0, -gain}, lp::Relation::LessEqual, soc0);
                } else {
                    p.add_row({s_next, lay.soc(i, tau - 1), e}, {1.0, -1.0, -gain}, lp::Relation::LessEqual, 0.0);
                }
            }
            p.add_row({lay.import(i, tau), e}, {1.0, -1.0}, lp::Relation::GreaterEqual,
                      load[tau] - a.pv_capacity_kwp * f.solar[tau]);
        }
    }

    const auto agg = aggregate_base_demand(f, assets);
    double prev = prev_total(state);
    for (std::size_t tau = 0; tau < T; ++tau) {
        const double base_ramp = agg[tau] - prev;
        prev = agg[tau];
        for (const double sign : {1.0, -1.0}) {
            // r - sign * (sum_i E_i[tau] - sum_i E_i[tau-1]) >= sign * base_ramp
            std::vector<int> idx{lay.ramp(tau)};
            std::vector<double> coef{1.0};
            for (std::size_t i = 0; i < B; ++i) {
                idx.push_back(lay.energy(i, tau));
                coef.push_back(-sign);
                if (tau > 0) {
                    idx.push_back(lay.energy(i, tau - 1));
                    coef.push_back(sign);
                }
            }
            p.add_row(std::move(idx), std::move(coef), lp::Relation::GreaterEqual, sign * base_ramp);
        }
    }
    return out;
}

StepResult step(const ControllerState& state, const ForecastSet& f, const std::vector<AssetSpec>& assets,
                const ObjectiveWeights& w, const lp::SolverOptions& options) {
    HorizonLp h = build_horizon_lp(state, f, assets, w);
    StepResult r;
    r.solution = lp::solve(h.problem, options);
    if (r.solution.status != lp::Status::Optimal) {
        throw MpcError(std::string("horizon LP not solved: ") + lp::to_string(r.solution.status));
    }
    r.objective = r.solution.objective_value;
    r.iterations = r.solution.iterations;
    for (std::size_t i = 0; i < h.layout.buildings.size(); ++i) {
        const std::string& id = h.layout.buildings[i];
        const AssetSpec& a = asset_for(assets, id);
        const double pmax = a.power_capacity_kw * f.step_hours;
        r.actions[id] = std::clamp(r.solution.x[static_cast<std::size_t>(h.layout.energy(i, 0))], -pmax, pmax);
        r.planned_soc[id] = r.solution.x[static_cast<std::size_t>(h.layout.soc(i, 0))];
    }
    r.layout = std::move(h.layout);
    return r;
}

}  // namespace mpcbench::mpc
