#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mpcbench/tscore/time_series.hpp"

namespace mpcbench::tscore {

/// A named series; order of insertion is preserved.
struct NamedSeries {
    std::string name;
    TimeSeries series;
};

/// Aligned hourly operating data for a multi-building system.
///
/// Every series shares the same start, step and length. Load, solar and carbon
/// are nonnegative; price may go negative.
class ScenarioDataset {
public:
    ScenarioDataset(std::vector<NamedSeries> buildings, TimeSeries solar, TimeSeries price, TimeSeries carbon,
                    std::vector<NamedSeries> covariates = {});

    [[nodiscard]] std::size_t size() const { return solar_.size(); }
    [[nodiscard]] double step_hours() const { return solar_.step_hours(); }
    [[nodiscard]] Timestamp start() const { return solar_.start(); }

    [[nodiscard]] const std::vector<NamedSeries>& buildings() const { return buildings_; }
    [[nodiscard]] const std::vector<NamedSeries>& covariates() const { return covariates_; }
    [[nodiscard]] std::vector<std::string> building_ids() const;
    [[nodiscard]] const TimeSeries& load(const std::string& building) const;
    [[nodiscard]] const TimeSeries& solar() const { return solar_; }
    [[nodiscard]] const TimeSeries& price() const { return price_; }
    [[nodiscard]] const TimeSeries& carbon() const { return carbon_; }
    [[nodiscard]] const TimeSeries& covariate(const std::string& name) const;

    /// Looks up any series by variable name: "load:<id>", "solar", "price",
    /// "carbon" or a covariate name.
    [[nodiscard]] const TimeSeries& variable(const std::string& name) const;
    /// Every variable name accepted by variable(), in a stable order.
    [[nodiscard]] std::vector<std::string> variable_names() const;

    [[nodiscard]] ScenarioDataset slice(IndexRange r) const;
    [[nodiscard]] ScenarioDataset concat(const ScenarioDataset& tail) const;

    friend bool operator==(const ScenarioDataset&, const ScenarioDataset&);

private:
    std::vector<NamedSeries> buildings_;
    TimeSeries solar_;
    TimeSeries price_;
    TimeSeries carbon_;
    std::vector<NamedSeries> covariates_;
};

std::string load_variable(const std::string& building);

struct SplitSpec {
    IndexRange train;
    IndexRange validate;
    IndexRange test;
};

struct SplitDatasets {
    ScenarioDataset train;
    ScenarioDataset validate;
    ScenarioDataset test;
};

void validate_split(const SplitSpec& spec, std::size_t length);
SplitDatasets split_dataset(const ScenarioDataset& ds, const SplitSpec& spec);

/// Orders "2" before "10"; non-numeric ids fall back to lexicographic order.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace mpcbench::tscore
