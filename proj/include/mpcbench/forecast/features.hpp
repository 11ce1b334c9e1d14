#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpcbench/tscore/dataset.hpp"

namespace mpcbench::forecast {

struct FeatureScore {
    std::string name;
    double correlation = 0.0;  // Pearson r against the target; 0 for a constant candidate
};

/// Candidates are the covariates plus solar, price and carbon, minus the
/// target itself; building loads are not offered as features. Sorted by |r|
/// over `range`, descending, ties by name.
std::vector<FeatureScore> rank_features(const tscore::ScenarioDataset& ds, const std::string& target,
                                        tscore::IndexRange range);

/// Names of the n best-ranked candidates. Throws ForecastError if n exceeds
/// the number of candidates.
std::vector<std::string> select_features(const tscore::ScenarioDataset& ds, const std::string& target, std::size_t n,
                                         tscore::IndexRange range);

}  // namespace mpcbench::forecast
