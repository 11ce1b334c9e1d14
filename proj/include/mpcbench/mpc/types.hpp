#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpcbench::mpc {

class MpcError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fractions of the objective assigned to electricity cost, carbon and ramping.
struct ObjectiveWeights {
    double gamma_p = 0.45;
    double gamma_c = 0.45;
    double gamma_r = 0.1;

    /// Nonnegative and summing to 1 within 1e-9.
    void validate() const;
};

/// Battery state seen by the controller at the current step.
struct ControllerState {
    std::map<std::string, double> soc;              // kWh
    std::map<std::string, double> prev_net_demand;  // kWh, previous step
};

/// Forecasts issued at decision step t; element k refers to step t + k.
struct ForecastSet {
    std::size_t horizon = 0;
    double step_hours = 1.0;
    std::map<std::string, std::vector<double>> load;
    std::vector<double> solar;
    std::vector<double> price;
    std::vector<double> carbon;

    /// Every vector has length `horizon` and finite entries; horizon >= 1.
    void validate() const;
    [[nodiscard]] const std::vector<double>& load_of(const std::string& building) const;
};

}  // namespace mpcbench::mpc
