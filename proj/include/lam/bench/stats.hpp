#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lam::bench {

struct MeanStd {
  double mean = 0.0;
  /// Sample standard deviation (n - 1); zero for fewer than two values.
  double std = 0.0;
  std::size_t n = 0;
};

/// Sums in sorted order so the result does not depend on input order.
MeanStd mean_std(std::vector<double> xs);

/// "7.20 ± 0.25"
std::string format_pm(const MeanStd& m, int precision = 2);

struct WelchResult {
  MeanStd a;
  MeanStd b;
  double t = 0.0;
  double df = 0.0;
  /// Two-sided.
  double p = 1.0;
};

/// Welch's unequal-variance t-test. Throws std::invalid_argument when a
/// sample has fewer than two values.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap interval of `statistic` over `resamples` seeded
/// resamples.
Interval bootstrap_ci(const std::vector<double>& xs, const std::function<double(const std::vector<double>&)>& statistic,
                      int resamples, double level, std::uint64_t seed);

/// n p ± k sqrt(n p (1 - p)): the count range a Binomial(n, p) stays in
/// with k-sigma confidence.
Interval binomial_bounds(std::size_t n, double p, double k = 3.0);

double rms(const std::vector<double>& xs);

}  // namespace lam::bench
