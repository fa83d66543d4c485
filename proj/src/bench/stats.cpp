#include "lam/bench/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace lam::bench {

namespace {

double sorted_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace

MeanStd mean_std(std::vector<double> xs) {
  MeanStd m;
  m.n = xs.size();
  if (xs.empty()) return m;
  std::sort(xs.begin(), xs.end());
  m.mean = sorted_sum(xs) / static_cast<double>(m.n);
  if (m.n < 2) return m;
  std::vector<double> sq;
  sq.reserve(xs.size());
  for (double x : xs) sq.push_back((x - m.mean) * (x - m.mean));
  m.std = std::sqrt(sorted_sum(std::move(sq)) / static_cast<double>(m.n - 1));
  return m;
}

std::string format_pm(const MeanStd& m, int precision) {
  return fmt::format("{:.{}f} ± {:.{}f}", m.mean, precision, m.std, precision);
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test needs two values per sample");
  WelchResult r;
  r.a = mean_std(a);
  r.b = mean_std(b);
  const double va = r.a.std * r.a.std / static_cast<double>(r.a.n);
  const double vb = r.b.std * r.b.std / static_cast<double>(r.b.n);
  const double se2 = va + vb;
  if (se2 == 0.0) {
    r.t = 0.0;
    r.df = static_cast<double>(r.a.n + r.b.n - 2);
    r.p = r.a.mean == r.b.mean ? 1.0 : 0.0;
    return r;
  }
  r.t = (r.a.mean - r.b.mean) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / static_cast<double>(r.a.n - 1) + vb * vb / static_cast<double>(r.b.n - 1));
  boost::math::students_t dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

Interval bootstrap_ci(const std::vector<double>& xs, const std::function<double(const std::vector<double>&)>& statistic,
                      int resamples, double level, std::uint64_t seed) {
  if (xs.empty() || resamples <= 0) return {};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(resamples));
  std::vector<double> sample(xs.size());
  for (int r = 0; r < resamples; ++r) {
    for (auto& s : sample) s = xs[pick(rng)];
    stats.push_back(statistic(sample));
  }
  std::sort(stats.begin(), stats.end());
  const double alpha = (1.0 - level) / 2.0;
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::clamp(q * static_cast<double>(stats.size() - 1), 0.0,
                                                         static_cast<double>(stats.size() - 1)));
    return stats[idx];
  };
  return {at(alpha), at(1.0 - alpha)};
}

Interval binomial_bounds(std::size_t n, double p, double k) {
  const double mean = static_cast<double>(n) * p;
  const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  return {mean - k * sigma, mean + k * sigma};
}

double rms(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  std::vector<double> sq;
  sq.reserve(xs.size());
  for (double x : xs) sq.push_back(x * x);
  return std::sqrt(sorted_sum(std::move(sq)) / static_cast<double>(xs.size()));
}

}  // namespace lam::bench
