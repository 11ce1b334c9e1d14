#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "mpcbench/tscore/time_series.hpp"

namespace mpcbench::cpdetect {

class ChangePointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Decomposition {
    std::vector<double> seasonal;
    std::vector<double> trend;
    std::vector<double> residual;
};

inline constexpr std::size_t kTrendWindow = 168;

/// Seasonal part: least-squares fit of an intercept plus two sine/cosine
/// harmonics per period, without the intercept. Trend: centered moving
/// average (window 168, shrinking at the ends) of the deseasonalized series.
/// Residual: the remainder, so the three parts sum to the input.
Decomposition decompose(std::span<const double> series, const std::vector<std::size_t>& periods = {24, 168});

struct ChangePointReport {
    std::vector<std::size_t> indices;  // first index of each new segment, increasing
    std::vector<double> scores;        // SSE increase if the point were removed
};

struct DetectOptions {
    std::size_t min_segment = 168;
    /// Spacing of candidate boundaries; 0 picks 1 for n <= 4000 and 24 above.
    std::size_t stride = 0;
};

/// Exact optimal partitioning over the candidate grid: minimizes the sum of
/// per-segment least-squares line SSE plus beta per segment.
ChangePointReport detect_changepoints(std::span<const double> trend, double beta, const DetectOptions& options = {});

/// SSE of the least-squares line through y[begin, end).
double segment_sse(std::span<const double> y, std::size_t begin, std::size_t end);

/// beta = 2 sigma^2 log n with sigma^2 the residual variance of `d`.
double default_penalty(const Decomposition& d);

/// beta = 2 sigma^2 log n with sigma estimated robustly from first
/// differences (MAD / 0.6745 / sqrt 2), for detection on a raw series.
double default_penalty(std::span<const double> series);

inline constexpr std::size_t kHoursPerYear = 8760;

struct Candidate {
    std::size_t begin = 0;  // suffix [begin, n)
    std::size_t length = 0;
    bool short_history = false;  // shorter than one year
};

/// The full series, then one suffix per change point.
std::vector<Candidate> screen_training_data(std::size_t n, const ChangePointReport& report,
                                            std::size_t min_length = kHoursPerYear);

/// Columns index,timestamp,score.
void write_report_csv(const std::filesystem::path& path, const ChangePointReport& report,
                      const tscore::TimeSeries& series);

}  // namespace mpcbench::cpdetect
