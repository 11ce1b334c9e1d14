#include "mpcbench/metrics/metrics.hpp"

#include <cmath>
#include <fstream>

#include "mpcbench/tscore/table.hpp"

namespace mpcbench::metrics {

namespace {

constexpr const char* kLoadPrefix = "load:";

template <typename HorizonError>
double normalized(const ForecastLog& log, const std::string& variable, HorizonError horizon_error) {
    const std::vector<double>& v = log.truth(variable);
    double err = 0.0;
    double level = 0.0;
    std::size_t n = 0;
    for (const auto& e : log.entries()) {
        if (e.variable != variable) continue;
        err += horizon_error(e, v);
        level += v[e.t];
        ++n;
    }
    if (n == 0) throw MetricError("no forecasts logged for '" + variable + "'");
    if (level == 0.0) throw MetricError("zero normalizer: mean truth at issue times is 0 for '" + variable + "'");
    return (err / static_cast<double>(n)) / (level / static_cast<double>(n));
}

}  // namespace

void ForecastLog::set_truth(const std::string& variable, std::vector<double> truth) {
    truth_[variable] = std::move(truth);
}

void ForecastLog::add(std::size_t t, const std::string& variable, std::vector<double> values) {
    const auto it = truth_.find(variable);
    if (it == truth_.end()) throw MetricError("no truth series for '" + variable + "'");
    if (values.empty()) throw MetricError("empty forecast");
    if (t + values.size() >= it->second.size()) throw MetricError("forecast targets run past the truth series");
    entries_.push_back({t, variable, std::move(values)});
}

const std::vector<double>& ForecastLog::truth(const std::string& variable) const {
    const auto it = truth_.find(variable);
    if (it == truth_.end()) throw MetricError("no truth series for '" + variable + "'");
    return it->second;
}

std::vector<std::string> ForecastLog::variables() const {
    std::vector<std::string> out;
    for (const auto& [name, v] : truth_) {
        if (count(name) > 0) out.push_back(name);
    }
    return out;
}

std::size_t ForecastLog::count(const std::string& variable) const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.variable == variable ? 1 : 0;
    return n;
}

double nmae(const ForecastLog& log, const std::string& variable) {
    return normalized(log, variable, [](const ForecastEntry& e, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t k = 0; k < e.values.size(); ++k) s += std::abs(e.values[k] - v[e.t + 1 + k]);
        return s / static_cast<double>(e.values.size());
    });
}

double nrmse(const ForecastLog& log, const std::string& variable) {
    return normalized(log, variable, [](const ForecastEntry& e, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t k = 0; k < e.values.size(); ++k) {
            const double d = e.values[k] - v[e.t + 1 + k];
            s += d * d;
        }
        return std::sqrt(s / static_cast<double>(e.values.size()));
    });
}

std::vector<MetricRow> metric_rows(const ForecastLog& log, const std::string& model) {
    std::vector<MetricRow> rows;
    double sum_mae = 0.0;
    double sum_rmse = 0.0;
    std::size_t loads = 0;
    for (const auto& var : log.variables()) {
        MetricRow r{model, var, "", nmae(log, var), nrmse(log, var)};
        if (var.rfind(kLoadPrefix, 0) == 0) {
            r.variable = "load";
            r.building = var.substr(std::string(kLoadPrefix).size());
            sum_mae += r.nmae;
            sum_rmse += r.nrmse;
            ++loads;
        }
        rows.push_back(std::move(r));
    }
    if (loads > 0) {
        const double n = static_cast<double>(loads);
        rows.push_back({model, "load", "mean", sum_mae / n, sum_rmse / n});
    }
    return rows;
}

void write_metric_table(const std::filesystem::path& path, const std::vector<MetricRow>& rows) {
    tscore::Table t({"model", "variable", "building", "nmae", "nrmse"});
    for (const auto& r : rows) t.add_row({r.model, r.variable, r.building, r.nmae, r.nrmse});
    t.write_csv(path);
}

}  // namespace mpcbench::metrics
