#pragma once

#include <array>
#include <cmath>
#include <string>

#include "moq/error.hpp"

namespace moq::oracle {

namespace detail {

// zeta(2), zeta(3), ..., zeta(40)
inline constexpr std::array<double, 39> kZeta = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915, 1.0369277551433699263,
    1.0173430619844491397, 1.0083492773819228268, 1.0040773561979443394, 1.0020083928260822144,
    1.0009945751278180853, 1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519, 1.0000076371976378998,
    1.0000038172932649998, 1.0000019082127165539, 1.0000009539620338728, 1.0000004769329867878,
    1.0000002384505027277, 1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
    1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248, 1.0000000018626597235,
    1.0000000009313274324, 1.0000000004656629065, 1.0000000002328311834, 1.0000000001164155017,
    1.0000000000582077209, 1.0000000000291038504, 1.0000000000145519219, 1.0000000000072759598,
    1.0000000000036379795, 1.0000000000018189897, 1.0000000000009094948,
};

inline constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(1 + z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k, |z| <= 1/4.
inline double log_gamma_1p_taylor(double z) {
  double acc = 0.0;
  double zk = -z;
  for (std::size_t i = 0; i < kZeta.size(); ++i) {
    zk *= -z;
    const double k = static_cast<double>(i + 2);
    acc += kZeta[i] * zk / k;
  }
  return -kEulerGamma * z + acc;
}

// Lanczos approximation, g = 671/128 with 14 terms.
inline double log_gamma_lanczos(double x) {
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,    -0.491913816097620199,
      .339946499848118887e-4,  .465236289270485756e-4,  -.983744753048795646e-4, .158088703224912494e-3,
      -.210264441724104883e-3, .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

}  // namespace detail

/// ln Gamma(x) for x > 0. Near the zeros at x = 1 and x = 2 a Taylor series in
/// zeta values takes over so the result keeps relative accuracy there.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::DomainError, "log_gamma requires finite x > 0, got " + std::to_string(x));
  }
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::abs(x - 1.0) <= 0.25) return detail::log_gamma_1p_taylor(x - 1.0);
  if (std::abs(x - 2.0) <= 0.25) return detail::log_gamma_1p_taylor(x - 2.0) + std::log1p(x - 2.0);
  return detail::log_gamma_lanczos(x);
}

inline double beta_fn(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw Error(ErrorKind::DomainError, "beta_fn requires p, q > 0");
  }
  return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

/// Gamma(1 + r) = r Gamma(r), finite as r -> 0.
inline double gamma_1p(double r) { return std::exp(log_gamma(1.0 + r)); }

}  // namespace moq::oracle
