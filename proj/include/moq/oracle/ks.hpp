#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace moq::oracle {

/// Critical-value coefficient for the KS statistic at significance 0.001
/// (sqrt(-log(0.0005)/2) = 1.9495, rounded up).
inline constexpr double kKsCoefficient = 1.95;

inline double ks_threshold(std::size_t n) { return kKsCoefficient / std::sqrt(static_cast<double>(n)); }

inline double ks_threshold(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return kKsCoefficient * std::sqrt((nn + mm) / (nn * mm));
}

/// sup |F_n - F| for sorted values.
template <class Cdf>
double ks_one_sample(std::span<const double> sorted, Cdf&& cdf) {
  if (sorted.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// sup |F_a - F_b| between two sorted samples; ties are stepped over together.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace moq::oracle
