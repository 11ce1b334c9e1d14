#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpcbench::metrics {

class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One forecast issued at time t: values[k] predicts truth[t + 1 + k].
struct ForecastEntry {
    std::size_t t = 0;
    std::string variable;
    std::vector<double> values;
};

/// Forecasts together with the truth series they are scored against.
class ForecastLog {
public:
    void set_truth(const std::string& variable, std::vector<double> truth);
    /// Throws MetricError if the variable has no truth or the targets run past it.
    void add(std::size_t t, const std::string& variable, std::vector<double> values);

    [[nodiscard]] const std::vector<ForecastEntry>& entries() const { return entries_; }
    [[nodiscard]] const std::vector<double>& truth(const std::string& variable) const;
    [[nodiscard]] std::vector<std::string> variables() const;
    [[nodiscard]] std::size_t count(const std::string& variable) const;

private:
    std::map<std::string, std::vector<double>> truth_;
    std::vector<ForecastEntry> entries_;
};

/// Mean over entries of the per-horizon mean absolute error, divided by the
/// mean of truth[t] over the entries' issue times.
double nmae(const ForecastLog& log, const std::string& variable);

/// As nmae with the per-horizon root mean squared error.
double nrmse(const ForecastLog& log, const std::string& variable);

struct MetricRow {
    std::string model;
    std::string variable;
    std::string building;  // empty for shared variables
    double nmae = 0.0;
    double nrmse = 0.0;
};

/// Rows for every logged variable. Load variables ("load:<id>") are reported
/// per building and as an unweighted average row with building "mean".
std::vector<MetricRow> metric_rows(const ForecastLog& log, const std::string& model);

/// Columns: model,variable,building,nmae,nrmse.
void write_metric_table(const std::filesystem::path& path, const std::vector<MetricRow>& rows);

}  // namespace mpcbench::metrics
