#ifndef STARGRAPH_STATS_HPP
#define STARGRAPH_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace stargraph {

/// Neumaier-compensated running sum. Order of add() calls determines the result
/// bit-for-bit, so aggregate in index order for reproducibility.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// A Monte Carlo estimate with its standard error and, when known, the value
/// it is meant to reproduce.
struct EstimateWithCI {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::optional<double> analytic;
  std::optional<double> z;

  void attach(double oracle) {
    analytic = oracle;
    z.reset();
    if (std_error > 0.0) z = (value - oracle) / std_error;
  }

  /// |value - analytic| <= k * stderr + allowance. Requires an attached oracle.
  bool within(double k, double allowance = 0.0) const {
    return analytic && std::abs(value - *analytic) <= k * std_error + allowance;
  }
};

/// Sample mean and standard error of the mean (unbiased variance).
inline EstimateWithCI mean_estimate(std::span<const double> xs) {
  EstimateWithCI e;
  e.n = xs.size();
  if (xs.empty()) return e;
  CompensatedSum s;
  for (double x : xs) s.add(x);
  const double mean = s.value() / static_cast<double>(xs.size());
  CompensatedSum ss;
  for (double x : xs) ss.add((x - mean) * (x - mean));
  e.value = mean;
  if (xs.size() > 1) {
    const double var = ss.value() / static_cast<double>(xs.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return e;
}

/// Estimate of a probability from a hit count, binomial standard error.
inline EstimateWithCI proportion_estimate(std::size_t hits, std::size_t n) {
  EstimateWithCI e;
  e.n = n;
  if (n == 0) return e;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  e.value = p;
  e.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return e;
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic two-sample KS critical value at level 1%.
inline double ks_two_sample_critical_1pct(std::size_t na, std::size_t nb) {
  const double n = static_cast<double>(na), m = static_cast<double>(nb);
  return 1.6276 * std::sqrt((n + m) / (n * m));
}

/// One-sample KS statistic of xs against a continuous CDF.
template <class Cdf>
double ks_one_sample_statistic(std::vector<double> xs, Cdf&& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

inline double ks_one_sample_critical_1pct(std::size_t n) {
  return 1.6276 / std::sqrt(static_cast<double>(n));
}

}  // namespace stargraph

#endif  // STARGRAPH_STATS_HPP
