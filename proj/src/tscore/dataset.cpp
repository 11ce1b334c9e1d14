#include "mpcbench/tscore/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mpcbench::tscore {

namespace {

void check_aligned(const TimeSeries& ref, const TimeSeries& s, const std::string& name) {
    if (s.start() != ref.start() || s.step_hours() != ref.step_hours() || s.size() != ref.size()) {
        throw DataError("series '" + name + "' is not aligned with the dataset grid");
    }
}

void check_nonnegative(const TimeSeries& s, const std::string& name) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0.0) {
            throw DataError("series '" + name + "' has a negative value at index " + std::to_string(i));
        }
    }
}

std::vector<NamedSeries> slice_all(const std::vector<NamedSeries>& in, IndexRange r) {
    std::vector<NamedSeries> out;
    out.reserve(in.size());
    for (const auto& n : in) {
        out.push_back({n.name, n.series.slice(r)});
    }
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

std::string load_variable(const std::string& building) { return "load:" + building; }

ScenarioDataset::ScenarioDataset(std::vector<NamedSeries> buildings, TimeSeries solar, TimeSeries price,
                                 TimeSeries carbon, std::vector<NamedSeries> covariates)
    : buildings_(std::move(buildings)),
      solar_(std::move(solar)),
      price_(std::move(price)),
      carbon_(std::move(carbon)),
      covariates_(std::move(covariates)) {
    check_aligned(solar_, price_, "price");
    check_aligned(solar_, carbon_, "carbon");
    check_nonnegative(solar_, "solar");
    check_nonnegative(carbon_, "carbon");
    std::set<std::string> seen;
    for (const auto& b : buildings_) {
        if (!seen.insert(b.name).second) {
            throw DataError("duplicate building id '" + b.name + "'");
        }
        check_aligned(solar_, b.series, load_variable(b.name));
        check_nonnegative(b.series, load_variable(b.name));
    }
    for (const auto& c : covariates_) {
        if (c.name == "solar" || c.name == "price" || c.name == "carbon" || c.name.starts_with("load:")) {
            throw DataError("covariate name '" + c.name + "' is reserved");
        }
        if (!seen.insert("cov:" + c.name).second) {
            throw DataError("duplicate covariate '" + c.name + "'");
        }
        check_aligned(solar_, c.series, c.name);
    }
}

std::vector<std::string> ScenarioDataset::building_ids() const {
    std::vector<std::string> ids;
    ids.reserve(buildings_.size());
    for (const auto& b : buildings_) {
        ids.push_back(b.name);
    }
    return ids;
}

const TimeSeries& ScenarioDataset::load(const std::string& building) const {
    for (const auto& b : buildings_) {
        if (b.name == building) {
            return b.series;
        }
    }
    throw DataError("unknown building id '" + building + "'");
}

const TimeSeries& ScenarioDataset::covariate(const std::string& name) const {
    for (const auto& c : covariates_) {
        if (c.name == name) {
            return c.series;
        }
    }
    throw DataError("unknown covariate '" + name + "'");
}

const TimeSeries& ScenarioDataset::variable(const std::string& name) const {
    if (name == "solar") return solar_;
    if (name == "price") return price_;
    if (name == "carbon") return carbon_;
    if (name.starts_with("load:")) return load(name.substr(5));
    return covariate(name);
}

std::vector<std::string> ScenarioDataset::variable_names() const {
    std::vector<std::string> names;
    for (const auto& b : buildings_) {
        names.push_back(load_variable(b.name));
    }
    names.insert(names.end(), {"solar", "price", "carbon"});
    for (const auto& c : covariates_) {
        names.push_back(c.name);
    }
    return names;
}

ScenarioDataset ScenarioDataset::slice(IndexRange r) const {
    return ScenarioDataset(slice_all(buildings_, r), solar_.slice(r), price_.slice(r), carbon_.slice(r),
                           slice_all(covariates_, r));
}

ScenarioDataset ScenarioDataset::concat(const ScenarioDataset& tail) const {
    auto join = [](const std::vector<NamedSeries>& a, const std::vector<NamedSeries>& b) {
        if (a.size() != b.size()) {
            throw DataError("datasets have different variables");
        }
        std::vector<NamedSeries> out;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].name != b[i].name) {
                throw DataError("datasets have different variables");
            }
            out.push_back({a[i].name, a[i].series.concat(b[i].series)});
        }
        return out;
    };
    return ScenarioDataset(join(buildings_, tail.buildings_), solar_.concat(tail.solar_),
                           price_.concat(tail.price_), carbon_.concat(tail.carbon_),
                           join(covariates_, tail.covariates_));
}

bool operator==(const ScenarioDataset& a, const ScenarioDataset& b) {
    auto same = [](const std::vector<NamedSeries>& x, const std::vector<NamedSeries>& y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const NamedSeries& p, const NamedSeries& q) {
            return p.name == q.name && p.series == q.series;
        });
    };
    return same(a.buildings_, b.buildings_) && a.solar_ == b.solar_ && a.price_ == b.price_ &&
           a.carbon_ == b.carbon_ && same(a.covariates_, b.covariates_);
}

void validate_split(const SplitSpec& spec, std::size_t length) {
    const IndexRange parts[] = {spec.train, spec.validate, spec.test};
    const char* names[] = {"train", "validate", "test"};
    for (int i = 0; i < 3; ++i) {
        if (parts[i].empty()) {
            throw DataError(std::string("empty range: ") + names[i]);
        }
        if (parts[i].end > length) {
            throw DataError(std::string("range out of bounds: ") + names[i]);
        }
    }
    if (spec.train.end > spec.validate.begin || spec.validate.end > spec.test.begin) {
        throw DataError("split ranges overlap or are out of order");
    }
}

SplitDatasets split_dataset(const ScenarioDataset& ds, const SplitSpec& spec) {
    validate_split(spec, ds.size());
    return {ds.slice(spec.train), ds.slice(spec.validate), ds.slice(spec.test)};
}

bool natural_less(const std::string& a, const std::string& b) {
    if (all_digits(a) && all_digits(b)) {
        const auto strip = [](const std::string& s) {
            const auto p = s.find_first_not_of('0');
            return p == std::string::npos ? std::string("0") : s.substr(p);
        };
        const std::string x = strip(a);
        const std::string y = strip(b);
        if (x.size() != y.size()) return x.size() < y.size();
        if (x != y) return x < y;
        return a < b;
    }
    return a < b;
}

}  // namespace mpcbench::tscore
