#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace moq::oracle {

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t n = 0;
};

/// Sample mean of |x|^r with its standard error (Welford).
inline MonteCarloEstimate mc_abs_moment(std::span<const double> values, double r) {
  if (values.size() < 2) throw std::invalid_argument("mc_abs_moment needs at least two values");
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double x : values) {
    const double v = std::pow(std::abs(x), r);
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(k);
  return {mean, std::sqrt(m2 / (n - 1.0) / n), k};
}

}  // namespace moq::oracle
