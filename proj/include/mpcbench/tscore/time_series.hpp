#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpcbench::tscore {

using Timestamp = std::chrono::sys_seconds;

/// Half-open index range [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t size() const { return end > begin ? end - begin : 0; }
    [[nodiscard]] bool empty() const { return end <= begin; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Regularly sampled series on a UTC grid. Values are finite and non-empty.
class TimeSeries {
public:
    TimeSeries(Timestamp start, double step_hours, std::vector<double> values);

    [[nodiscard]] Timestamp start() const { return start_; }
    [[nodiscard]] double step_hours() const { return step_hours_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] Timestamp time_at(std::size_t i) const;
    /// Hour of day (0..23) of sample i, UTC.
    [[nodiscard]] int hour_of_day(std::size_t i) const;

    [[nodiscard]] TimeSeries slice(IndexRange r) const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double mean(IndexRange r) const;

    /// Appends `tail`, which must start exactly one step after this series ends.
    [[nodiscard]] TimeSeries concat(const TimeSeries& tail) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    Timestamp start_;
    double step_hours_;
    std::vector<double> values_;
};

/// ISO-8601 "YYYY-MM-DD[T ]HH:MM[:SS][Z]" in UTC.
Timestamp parse_timestamp(const std::string& text);
std::string format_timestamp(Timestamp t);

}  // namespace mpcbench::tscore
