#include "mpcbench/forecast/features.hpp"

#include <algorithm>
#include <cmath>

#include "mpcbench/forecast/reference_forecasters.hpp"
#include "mpcbench/tscore/stats.hpp"

namespace mpcbench::forecast {

namespace {

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

std::vector<FeatureScore> rank_features(const tscore::ScenarioDataset& ds, const std::string& target,
                                        tscore::IndexRange range) {
    if (range.empty() || range.end > ds.size()) throw ForecastError("feature ranking range is empty or out of bounds");
    const auto y = ds.variable(target).values().subspan(range.begin, range.size());
    std::vector<std::string> candidates;
    for (const auto& c : ds.covariates()) candidates.push_back(c.name);
    for (const char* v : {"solar", "price", "carbon"}) candidates.emplace_back(v);
    std::vector<FeatureScore> out;
    for (const auto& name : candidates) {
        if (name == target) continue;
        const auto x = ds.variable(name).values().subspan(range.begin, range.size());
        const double r = is_constant(x) || is_constant(y) ? 0.0 : tscore::pearson_correlation(x, y);
        out.push_back({name, r});
    }
    std::stable_sort(out.begin(), out.end(), [](const FeatureScore& a, const FeatureScore& b) {
        const double ra = std::abs(a.correlation);
        const double rb = std::abs(b.correlation);
        return ra != rb ? ra > rb : a.name < b.name;
    });
    return out;
}

std::vector<std::string> select_features(const tscore::ScenarioDataset& ds, const std::string& target, std::size_t n,
                                         tscore::IndexRange range) {
    const auto ranked = rank_features(ds, target, range);
    if (n > ranked.size()) {
        throw ForecastError("requested " + std::to_string(n) + " features, only " + std::to_string(ranked.size()) +
                            " available");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].name);
    return out;
}

}  // namespace mpcbench::forecast
