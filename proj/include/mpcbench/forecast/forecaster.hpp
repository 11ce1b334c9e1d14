#pragma once

#include <cstddef>
#include <string>

#include "mpcbench/mpc/types.hpp"
#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::forecast {

/// Source of operating-condition forecasts for the controller.
///
/// forecast(ds, t, T) returns predictions for dataset steps t .. t+T-1 issued at
/// decision step t. Learned forecasters read only ds values before t; the
/// reference forecasters (perfect, noisy) read the truth by construction.
class Forecaster {
public:
    virtual ~Forecaster() = default;
    virtual mpc::ForecastSet forecast(const tscore::ScenarioDataset& ds, std::size_t t, std::size_t horizon) = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

}  // namespace mpcbench::forecast
