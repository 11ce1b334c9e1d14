#pragma once

#include <span>

namespace mpcbench::tscore {

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator).
double stddev(std::span<const double> x);

/// Sample Pearson correlation. Throws DataError on length mismatch, fewer than
/// two samples, or zero variance in either input.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace mpcbench::tscore
