#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace rwre {

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  std::int64_t n = 0;
};

inline Summary summarize(std::span<const double> xs) {
  Summary s;
  s.n = static_cast<std::int64_t>(xs.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : xs) {
      const double d = x - s.mean;
      ss += d * d;
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    s.se = s.sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

// Two-sample Kolmogorov-Smirnov D statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

// Critical value for the two-sample KS test at the 1% level.
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
  return 1.6276 * std::sqrt(static_cast<double>(n + m) /
                            (static_cast<double>(n) * static_cast<double>(m)));
}

}  // namespace rwre
