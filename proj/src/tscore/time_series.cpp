#include "mpcbench/tscore/time_series.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace mpcbench::tscore {

namespace {

std::chrono::seconds step_duration(double step_hours) {
    return std::chrono::seconds(static_cast<long long>(std::llround(step_hours * 3600.0)));
}

}  // namespace

TimeSeries::TimeSeries(Timestamp start, double step_hours, std::vector<double> values)
    : start_(start), step_hours_(step_hours), values_(std::move(values)) {
    if (!(step_hours_ > 0.0) || !std::isfinite(step_hours_)) {
        throw DataError("time series step must be positive");
    }
    if (values_.empty()) {
        throw DataError("time series must be non-empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("non-finite value at index " + std::to_string(i));
        }
    }
}

Timestamp TimeSeries::time_at(std::size_t i) const {
    return start_ + step_duration(step_hours_) * static_cast<long long>(i);
}

int TimeSeries::hour_of_day(std::size_t i) const {
    const auto t = time_at(i);
    const auto day = std::chrono::floor<std::chrono::days>(t);
    return static_cast<int>(std::chrono::duration_cast<std::chrono::hours>(t - day).count());
}

TimeSeries TimeSeries::slice(IndexRange r) const {
    if (r.empty() || r.end > values_.size()) {
        throw DataError("slice out of range");
    }
    return TimeSeries(time_at(r.begin), step_hours_,
                      std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(r.begin),
                                          values_.begin() + static_cast<std::ptrdiff_t>(r.end)));
}

double TimeSeries::mean() const { return mean({0, values_.size()}); }

double TimeSeries::mean(IndexRange r) const {
    if (r.empty() || r.end > values_.size()) {
        throw DataError("mean over empty or out-of-range window");
    }
    const double sum = std::accumulate(values_.begin() + static_cast<std::ptrdiff_t>(r.begin),
                                       values_.begin() + static_cast<std::ptrdiff_t>(r.end), 0.0);
    return sum / static_cast<double>(r.size());
}

TimeSeries TimeSeries::concat(const TimeSeries& tail) const {
    if (tail.step_hours_ != step_hours_ || tail.start_ != time_at(values_.size())) {
        throw DataError("concatenated series are not contiguous");
    }
    std::vector<double> joined = values_;
    joined.insert(joined.end(), tail.values_.begin(), tail.values_.end());
    return TimeSeries(start_, step_hours_, std::move(joined));
}

Timestamp parse_timestamp(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    const int n = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y, &mo, &d, &sep, &h, &mi, &s);
    if (n < 6 || (sep != 'T' && sep != ' ')) {
        throw DataError("malformed timestamp '" + text + "'");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) {
        throw DataError("invalid timestamp '" + text + "'");
    }
    return std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} + std::chrono::seconds{s};
}

std::string format_timestamp(Timestamp t) {
    const auto day = std::chrono::floor<std::chrono::days>(t);
    const std::chrono::year_month_day ymd{day};
    const std::chrono::hh_mm_ss hms{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

}  // namespace mpcbench::tscore
