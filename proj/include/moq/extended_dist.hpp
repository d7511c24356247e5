#pragma once

#include <cstdio>
#include <string>
#include <utility>

#include "moq/baselines.hpp"
#include "moq/error.hpp"
#include "moq/param_family.hpp"

namespace moq {

/// Survival values below this make the hazard meaningless.
inline constexpr double kSurvivalFloor = 1e-300;

/// F(x) = g(F0(x)) for a baseline F0 and parameter vector (a_1..a_q).
class ExtendedDistribution {
 public:
  ExtendedDistribution(BaselineModel baseline, ParameterVector pv)
      : baseline_(std::move(baseline)), pv_(std::move(pv)) {}

  const BaselineModel& baseline() const noexcept { return baseline_; }
  const ParameterVector& params() const noexcept { return pv_; }

  double cdf(double x) const {
    const double s0 = baseline_.sf(x);
    if (s0 < 0.5) return 1.0 - g_complement(pv_, s0);
    return g_eval(pv_, baseline_.cdf(x));
  }

  /// Upper half of [0, 1] goes through g_complement on the baseline survival
  /// value so the right tail keeps full relative precision.
  double sf(double x) const {
    const double s0 = baseline_.sf(x);
    if (s0 < 0.5) return g_complement(pv_, s0);
    return 1.0 - g_eval(pv_, baseline_.cdf(x));
  }

  double pdf(double x) const {
    const double f0 = baseline_.pdf(x);
    if (f0 == 0.0) return 0.0;
    return g_prime(pv_, baseline_.cdf(x)) * f0;
  }

  double hazard(double x) const {
    if (x < baseline_.support_lo()) return 0.0;
    const double s = sf(x);
    if (s < kSurvivalFloor) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "survival %.3g below %.3g", s, kSurvivalFloor);
      throw Error(ErrorKind::SurvivalUnderflow, buf);
    }
    return pdf(x) / s;
  }

  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorKind::DomainError, "quantile requires 0 < p < 1, got " + std::to_string(p));
    }
    if (p <= g_eval(pv_, 0.5)) return baseline_.quantile(g_inverse(pv_, p));
    const double s = g_complement_inverse(pv_, 1.0 - p);
    if (s <= 0.0) return baseline_.support_hi();
    return baseline_.isf(s);
  }

 private:
  BaselineModel baseline_;
  ParameterVector pv_;
};

inline double ext_cdf(const ExtendedDistribution& ed, double x) { return ed.cdf(x); }
inline double ext_sf(const ExtendedDistribution& ed, double x) { return ed.sf(x); }
inline double ext_pdf(const ExtendedDistribution& ed, double x) { return ed.pdf(x); }
inline double ext_hazard(const ExtendedDistribution& ed, double x) { return ed.hazard(x); }
inline double ext_quantile(const ExtendedDistribution& ed, double p) { return ed.quantile(p); }

}  // namespace moq
