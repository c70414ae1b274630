#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bdiv {

struct MannWhitneyResult {
  double u = 0.0;  // U statistic of the first sample
  double p = 1.0;  // two-sided
  bool exact = false;
};

/// Mann-Whitney U with midranks for ties. Exact permutation p-value when the
/// smaller sample has fewer than 8 values, otherwise the tie-corrected normal
/// approximation with continuity correction. Throws DegenerateSamples when
/// every value in both samples is the same.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Both routes, regardless of sample size.
double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b);
double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b);

struct HolmDecision {
  double adjusted_p = 1.0;
  bool reject = false;
};

/// Holm step-down; output is in input order.
std::vector<HolmDecision> holm_bonferroni(std::span<const double> p_values, double alpha);

double median(std::vector<double> values);

/// Sample standard deviation (n - 1); zero for fewer than two values.
double standard_deviation(std::span<const double> values);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap interval of the median.
Interval bootstrap_median_ci(std::span<const double> values, double level, std::size_t resamples,
                             std::uint64_t seed);

}  // namespace bdiv
