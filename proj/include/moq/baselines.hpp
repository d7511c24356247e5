#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "moq/error.hpp"

namespace moq {

enum class BaselineFamily { Exponential, Weibull, GeneralizedWeibull, LogLogistic };

constexpr std::string_view to_string(BaselineFamily f) noexcept {
  switch (f) {
    case BaselineFamily::Exponential: return "exponential";
    case BaselineFamily::Weibull: return "weibull";
    case BaselineFamily::GeneralizedWeibull: return "generalized_weibull";
    case BaselineFamily::LogLogistic: return "log_logistic";
  }
  return "unknown";
}

inline std::optional<BaselineFamily> parse_family(std::string_view name) {
  for (auto f : {BaselineFamily::Exponential, BaselineFamily::Weibull, BaselineFamily::GeneralizedWeibull,
                 BaselineFamily::LogLogistic}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

/// A baseline lifetime distribution F0 on J = (0, +inf).
///
/// Parameters follow the usual scale/shape convention: b1 is the scale, b2 the
/// shape and b3 the extra shape of the three-parameter generalized Weibull,
///   Exponential        F0 = 1 - exp(-x/b1)
///   Weibull            F0 = 1 - exp(-(x/b1)^b2)
///   GeneralizedWeibull F0 = 1 - exp(1 - (1 + (x/b1)^b2)^(1/b3))
///   LogLogistic        F0 = (x/b1)^b2 / (1 + (x/b1)^b2)
/// Unused parameters are fixed at 1.
///
/// Where the density is unbounded at 0+ (shape < 1) pdf(0) returns 0; this is a
/// measure-zero choice and keeps every return value finite.
class BaselineModel {
 public:
  static BaselineModel exponential(double scale = 1.0) {
    return BaselineModel(BaselineFamily::Exponential, scale, 1.0, 1.0);
  }
  static BaselineModel weibull(double scale, double shape) {
    return BaselineModel(BaselineFamily::Weibull, scale, shape, 1.0);
  }
  static BaselineModel generalized_weibull(double scale, double shape, double extra_shape) {
    return BaselineModel(BaselineFamily::GeneralizedWeibull, scale, shape, extra_shape);
  }
  static BaselineModel log_logistic(double scale = 1.0, double shape = 1.0) {
    return BaselineModel(BaselineFamily::LogLogistic, scale, shape, 1.0);
  }

  BaselineFamily family() const noexcept { return family_; }
  double b1() const noexcept { return b1_; }
  double b2() const noexcept { return b2_; }
  double b3() const noexcept { return b3_; }
  double support_lo() const noexcept { return 0.0; }
  double support_hi() const noexcept { return std::numeric_limits<double>::infinity(); }

  double cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double t = std::pow(x / b1_, b2_);
    switch (family_) {
      case BaselineFamily::Exponential:
      case BaselineFamily::Weibull: return -std::expm1(-t);
      case BaselineFamily::GeneralizedWeibull: return -std::expm1(-gw_excess(t));
      case BaselineFamily::LogLogistic: return 1.0 / (1.0 + 1.0 / t);
    }
    return 0.0;
  }

  double sf(double x) const {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double t = std::pow(x / b1_, b2_);
    switch (family_) {
      case BaselineFamily::Exponential:
      case BaselineFamily::Weibull: return std::exp(-t);
      case BaselineFamily::GeneralizedWeibull: return std::exp(-gw_excess(t));
      case BaselineFamily::LogLogistic: return 1.0 / (1.0 + t);
    }
    return 1.0;
  }

  double pdf(double x) const {
    if (x < 0.0 || std::isinf(x)) return 0.0;
    if (x == 0.0) return pdf_at_zero();
    const double z = x / b1_;
    const double t = std::pow(z, b2_);
    const double dt = (b2_ / b1_) * std::pow(z, b2_ - 1.0);  // d t / d x
    switch (family_) {
      case BaselineFamily::Exponential:
      case BaselineFamily::Weibull: return dt * std::exp(-t);
      case BaselineFamily::GeneralizedWeibull: {
        const double dh = std::exp((1.0 / b3_ - 1.0) * std::log1p(t)) * dt / b3_;
        return dh * std::exp(-gw_excess(t));
      }
      case BaselineFamily::LogLogistic: {
        if (std::isinf(t)) return 0.0;
        const double sf = 1.0 / (1.0 + t);
        return dt * sf * sf;
      }
    }
    return 0.0;
  }

  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorKind::DomainError, "baseline quantile requires 0 < p < 1, got " + std::to_string(p));
    }
    switch (family_) {
      case BaselineFamily::Exponential:
      case BaselineFamily::Weibull: return from_t(-std::log1p(-p));
      case BaselineFamily::GeneralizedWeibull: return from_t(gw_t_from_excess(-std::log1p(-p)));
      case BaselineFamily::LogLogistic: return from_t(p / (1.0 - p));
    }
    return 0.0;
  }

  /// Inverse survival function: the x with sf(x) = s, accurate for small s.
  double isf(double s) const {
    if (!(s > 0.0 && s < 1.0)) {
      throw Error(ErrorKind::DomainError, "baseline inverse survival requires 0 < s < 1, got " + std::to_string(s));
    }
    switch (family_) {
      case BaselineFamily::Exponential:
      case BaselineFamily::Weibull: return from_t(-std::log(s));
      case BaselineFamily::GeneralizedWeibull: return from_t(gw_t_from_excess(-std::log(s)));
      case BaselineFamily::LogLogistic: return from_t((1.0 - s) / s);
    }
    return 0.0;
  }

  bool operator==(const BaselineModel&) const = default;

 private:
  BaselineModel(BaselineFamily family, double b1, double b2, double b3)
      : family_(family), b1_(b1), b2_(b2), b3_(b3) {
    for (double v : {b1, b2, b3}) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::NonPositiveParameter,
                    std::string(to_string(family)) + " baseline parameters must be positive and finite");
      }
    }
  }

  // (1 + t)^(1/b3) - 1
  double gw_excess(double t) const { return std::expm1(std::log1p(t) / b3_); }
  // inverse of gw_excess
  double gw_t_from_excess(double y) const { return std::expm1(b3_ * std::log1p(y)); }
  double from_t(double t) const { return b1_ * std::pow(t, 1.0 / b2_); }

  double pdf_at_zero() const {
    if (b2_ != 1.0) return 0.0;
    return family_ == BaselineFamily::GeneralizedWeibull ? 1.0 / (b1_ * b3_) : 1.0 / b1_;
  }

  BaselineFamily family_;
  double b1_;
  double b2_;
  double b3_;
};

inline double baseline_cdf(const BaselineModel& bm, double x) { return bm.cdf(x); }
inline double baseline_pdf(const BaselineModel& bm, double x) { return bm.pdf(x); }
inline double baseline_quantile(const BaselineModel& bm, double p) { return bm.quantile(p); }

}  // namespace moq
