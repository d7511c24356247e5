#pragma once

// Moments E(X^r) of the extended family: power series in the c or d
// coefficients, the closed form for q = 2 over a log-logistic baseline, the
// scaling relations for two-parameter Weibull/log-logistic baselines, and the
// binomial expansion for the three-parameter generalized Weibull.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moq/baselines.hpp"
#include "moq/error.hpp"
#include "moq/extended_dist.hpp"
#include "moq/oracle/quadrature.hpp"
#include "moq/oracle/special.hpp"
#include "moq/param_family.hpp"
#include "moq/random.hpp"
#include "moq/sampling.hpp"

namespace moq {

enum class MomentMethod { SeriesC, SeriesD, ClosedForm, Scaling, Quadrature, Auto };

constexpr std::string_view to_string(MomentMethod m) noexcept {
  switch (m) {
    case MomentMethod::SeriesC: return "series-c";
    case MomentMethod::SeriesD: return "series-d";
    case MomentMethod::ClosedForm: return "closed-form";
    case MomentMethod::Scaling: return "scaling";
    case MomentMethod::Quadrature: return "quadrature";
    case MomentMethod::Auto: return "auto";
  }
  return "unknown";
}

inline std::optional<MomentMethod> parse_moment_method(std::string_view name) {
  for (auto m : {MomentMethod::SeriesC, MomentMethod::SeriesD, MomentMethod::ClosedForm, MomentMethod::Scaling,
                 MomentMethod::Quadrature, MomentMethod::Auto}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

struct MomentQuery {
  double r = 1.0;
  MomentMethod method = MomentMethod::Auto;
  double tol = 1e-12;
};

struct MomentResult {
  double value = 0.0;
  MomentMethod method_used = MomentMethod::Auto;
  std::size_t terms_used = 0;
  double error_estimate = 0.0;
};

/// Condition-number ceiling for the alternating inner sums of the exponential
/// c-series; above it the computation moves to another route.
inline constexpr double kConditionLimit = 1e12;

namespace detail {

struct WeightedTerm {
  double weight;     // multiplies the series coefficient
  double bound;      // majorant of |weight| whose ratio is <= exp(kappa/m)
  double magnitude;  // sum of |parts| that make up weight, for the condition estimate
};

struct SeriesSum {
  double value = 0.0;
  std::size_t terms = 0;
  double tail = std::numeric_limits<double>::infinity();
  double abs_sum = 0.0;
  double magnitude_sum = 0.0;
  bool ill_conditioned = false;
};

template <class W>
SeriesSum sum_weighted_series(const SeriesTerms& terms, W&& weight, double kappa, double tol,
                              std::size_t max_terms, double cond_limit) {
  SeriesSum out;
  long double acc = 0.0L;
  const auto q = static_cast<std::size_t>(terms.q());
  for (std::size_t m = 1; m <= max_terms; ++m) {
    const double c = terms.value(m);
    const WeightedTerm wt = weight(m);
    const double t = c * wt.weight;
    acc += t;
    out.abs_sum += std::abs(t);
    out.magnitude_sum += std::abs(c) * wt.magnitude;
    out.terms = m;
    if (out.magnitude_sum > cond_limit * std::abs(static_cast<double>(acc))) {
      out.ill_conditioned = true;
      break;
    }
    if (m < q) continue;
    const double rr = terms.ratio_bound(m) * std::exp(kappa / static_cast<double>(m));
    if (rr >= 1.0) continue;
    out.tail = terms.bound(m) * wt.bound * rr / (1.0 - rr);
    if (out.tail <= tol * std::abs(static_cast<double>(acc))) break;
  }
  out.value = static_cast<double>(acc);
  if (!out.ill_conditioned && !(out.tail <= tol * std::abs(out.value))) {
    throw Error(ErrorKind::Nonconvergence, "moment series did not reach tolerance within " +
                                               std::to_string(max_terms) + " terms");
  }
  return out;
}

inline MomentResult finish(const SeriesSum& s, MomentMethod method, double extra_relative_error = 0.0) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding = eps * (static_cast<double>(s.terms) + 8.0) * s.abs_sum;
  return {s.value, method, s.terms, s.tail + rounding + extra_relative_error * std::abs(s.value)};
}

// sum_{j=0}^{m-1} C(m-1, j) (-1)^j (j+1)^(-r-1) in extended precision with
// compensated summation; magnitude is the same sum with every sign positive.
struct AlternatingSum {
  long double value;
  long double magnitude;
};

inline AlternatingSum order_statistic_sum(std::size_t m, double r) {
  long double binom = 1.0L, sum = 0.0L, comp = 0.0L, mag = 0.0L;
  const long double expo = -(static_cast<long double>(r) + 1.0L);
  for (std::size_t j = 0; j < m; ++j) {
    const long double term = binom * std::pow(static_cast<long double>(j + 1), expo);
    mag += term;
    const long double y = ((j % 2 == 0) ? term : -term) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    binom = binom * static_cast<long double>(m - 1 - j) / static_cast<long double>(j + 1);
  }
  return {sum, mag};
}

inline void require_corollary(const ParameterVector& pv) {
  if (!pv.corollary_ok()) {
    throw Error(ErrorKind::ConditionViolated, "series moments require a1+...+aq >= q and ai <= 1 for 2 <= i <= q");
  }
}

inline void require_series_d(const ParameterVector& pv) {
  require_corollary(pv);
  if (!pv.dev2_ok()) throw Error(ErrorKind::ConditionViolated, "the d-series moment requires a1+...+aq < 2q");
}

template <class Pdf>
MomentResult quadrature_moment(Pdf&& pdf, double r, double tol) {
  const double qtol = std::max(tol, 1e-11);
  auto res = oracle::abs_moment_by_quadrature(pdf, r, 0.0, qtol);
  return {res.value, MomentMethod::Quadrature, res.evaluations, res.error_estimate};
}

}  // namespace detail

/// E(X^r) for the unit exponential baseline, r > 0.
inline MomentResult moment_exponential(const ParameterVector& pv, double r, MomentMethod method = MomentMethod::Auto,
                                       double tol = 1e-12) {
  if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "exponential-baseline moment requires r > 0");
  const double gamma_r = oracle::gamma_1p(r);  // r Gamma(r)

  auto series_d = [&]() {
    detail::require_series_d(pv);
    const SeriesTerms terms(pv, SeriesKind::D);
    auto s = detail::sum_weighted_series(
        terms,
        [&](std::size_t m) {
          const double w = gamma_r * std::pow(static_cast<double>(m), -r);
          return detail::WeightedTerm{(m % 2 == 1) ? w : -w, w, w};
        },
        0.0, tol, kDefaultMaxTerms, std::numeric_limits<double>::infinity());
    return detail::finish(s, MomentMethod::SeriesD);
  };
  auto quadrature = [&]() {
    const ExtendedDistribution ed(BaselineModel::exponential(), pv);
    return detail::quadrature_moment([&](double x) { return ed.pdf(x); }, r, tol);
  };

  switch (method) {
    case MomentMethod::SeriesD: return series_d();
    case MomentMethod::Quadrature: return quadrature();
    case MomentMethod::ClosedForm:
      throw Error(ErrorKind::ConditionViolated, "no closed form for the exponential baseline");
    default: break;
  }
  if (method == MomentMethod::Auto && !pv.corollary_ok()) return quadrature();

  detail::require_corollary(pv);
  const SeriesTerms terms(pv, SeriesKind::C);
  const double bound_scale = std::max(1.0, gamma_r);
  auto s = detail::sum_weighted_series(
      terms,
      [&](std::size_t m) {
        const auto inner = detail::order_statistic_sum(m, r);
        const double md = static_cast<double>(m);
        // E(max of m unit exponentials)^r <= max(1, Gamma(1+r)) (1 + ln m)^r
        return detail::WeightedTerm{static_cast<double>(gamma_r * md * inner.value),
                                    bound_scale * std::pow(1.0 + std::log(md), r),
                                    static_cast<double>(gamma_r * md * inner.magnitude)};
      },
      r, tol, kDefaultMaxTerms, kConditionLimit);
  if (s.ill_conditioned) {
    if (pv.dev2_ok()) return series_d();
    return quadrature();
  }
  const double cond = s.magnitude_sum / std::max(std::abs(s.value), std::numeric_limits<double>::min());
  return detail::finish(s, MomentMethod::SeriesC, cond * std::numeric_limits<long double>::epsilon());
}

/// E(X^r) for the standard log-logistic baseline, |r| < 1.
inline MomentResult moment_loglogistic(const ParameterVector& pv, double r, MomentMethod method = MomentMethod::Auto,
                                       double tol = 1e-12) {
  if (!(std::abs(r) < 1.0)) throw Error(ErrorKind::DomainError, "log-logistic moment requires |r| < 1");
  if (r == 0.0) return {1.0, method == MomentMethod::Auto ? MomentMethod::SeriesC : method, 1, 0.0};

  if (method == MomentMethod::Quadrature || (method == MomentMethod::Auto && !pv.corollary_ok())) {
    const ExtendedDistribution ed(BaselineModel::log_logistic(), pv);
    return detail::quadrature_moment([&](double x) { return ed.pdf(x); }, r, tol);
  }
  if (method == MomentMethod::ClosedForm) {
    throw Error(ErrorKind::ConditionViolated, "use moment_q2_loglogistic_closed for the closed form");
  }
  if (method == MomentMethod::SeriesD) {
    detail::require_series_d(pv);
    const SeriesTerms terms(pv, SeriesKind::D);
    auto s = detail::sum_weighted_series(
        terms,
        [&](std::size_t m) {
          const double md = static_cast<double>(m);
          const double w = md * oracle::beta_fn(md - r, 1.0 + r);
          return detail::WeightedTerm{(m % 2 == 1) ? w : -w, w, w};
        },
        std::max(-r, 0.0), tol, kDefaultMaxTerms, std::numeric_limits<double>::infinity());
    return detail::finish(s, MomentMethod::SeriesD);
  }
  detail::require_corollary(pv);
  const SeriesTerms terms(pv, SeriesKind::C);
  auto s = detail::sum_weighted_series(
      terms,
      [&](std::size_t m) {
        const double md = static_cast<double>(m);
        const double w = md * oracle::beta_fn(1.0 - r, md + r);
        return detail::WeightedTerm{w, w, w};
      },
      std::max(r, 0.0), tol, kDefaultMaxTerms, std::numeric_limits<double>::infinity());
  return detail::finish(s, MomentMethod::SeriesC);
}

/// Closed form of E(X^r) for q = 2 over LogLogistic(b1, b2), |r| < b2.
/// The same expression holds for either ordering of a1 and a2.
inline double moment_q2_loglogistic_closed(double a1, double a2, double b1, double b2, double r) {
  for (double v : {a1, a2, b1, b2}) {
    if (!(v > 0.0)) throw Error(ErrorKind::DomainError, "closed-form moment requires a1, a2, b1, b2 > 0");
  }
  if (!(std::abs(r) < b2)) throw Error(ErrorKind::DomainError, "closed-form moment requires |r| < b2");
  if (r == 0.0) return 1.0;
  const double x = r * std::numbers::pi / b2;
  const double x_over_sin = std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : x / std::sin(x);
  return std::pow(b1, r) * std::pow(0.5 * (a1 + a2), r / b2) * x_over_sin *
         (r * (a1 - a2) / (b2 * (a1 + a2)) + 1.0);
}

/// Weibull(b1, b2) baseline via E(X^r) = b1^r E(X_{1,1}^(r/b2)).
inline MomentResult moment_weibull_scaled(const ParameterVector& pv, double b1, double b2, double r,
                                          MomentMethod method = MomentMethod::Auto, double tol = 1e-12) {
  if (!(b1 > 0.0) || !(b2 > 0.0)) throw Error(ErrorKind::DomainError, "Weibull parameters must be positive");
  if (method == MomentMethod::Scaling) method = MomentMethod::Auto;
  MomentResult inner = moment_exponential(pv, r / b2, method, tol);
  const double scale = std::pow(b1, r);
  inner.value *= scale;
  inner.error_estimate *= scale;
  return inner;
}

namespace detail {

inline int require_positive_integer(double v, const char* what) {
  const double rounded = std::round(v);
  if (!(rounded >= 1.0) || std::abs(v - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw Error(ErrorKind::DomainError, std::string(what) + " must be a positive integer");
  }
  return static_cast<int>(rounded);
}

inline double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace detail

/// Integer moment E(X^m) for GeneralizedWeibull(b1, b2, b3) with 1/b2 and b3
/// positive integers, expanding ((1 + Y)^b3 - 1)^(m/b2) for Y over the unit
/// exponential baseline.
inline MomentResult moment_generalized_weibull(const ParameterVector& pv, double b1, double b2, double b3, int m,
                                               double tol = 1e-12) {
  if (!(b1 > 0.0) || !(b2 > 0.0) || !(b3 > 0.0)) {
    throw Error(ErrorKind::DomainError, "generalized Weibull parameters must be positive");
  }
  if (m < 1) throw Error(ErrorKind::DomainError, "moment order must be a positive integer");
  const int m2 = detail::require_positive_integer(1.0 / b2, "1/b2");
  const int k3 = detail::require_positive_integer(b3, "b3");
  detail::require_corollary(pv);

  const int outer = m * m2;
  std::vector<MomentResult> cache(static_cast<std::size_t>(k3 * outer + 1));
  std::vector<bool> have(cache.size(), false);
  auto raw_moment = [&](int j) -> const MomentResult& {
    auto idx = static_cast<std::size_t>(j);
    if (!have[idx]) {
      cache[idx] = j == 0 ? MomentResult{1.0, MomentMethod::Auto, 0, 0.0} : moment_exponential(pv, j, MomentMethod::Auto, tol);
      have[idx] = true;
    }
    return cache[idx];
  };

  double total = 0.0, magnitude = 0.0, err = 0.0;
  std::size_t terms = 0;
  MomentMethod used = MomentMethod::SeriesC;
  for (int k = 0; k <= outer; ++k) {
    const double ck = detail::binomial(outer, k) * (((outer - k) % 2 == 0) ? 1.0 : -1.0);
    for (int j = 0; j <= k3 * k; ++j) {
      const double coef = ck * detail::binomial(k3 * k, j);
      const MomentResult& ey = raw_moment(j);
      if (j > 0 && ey.method_used != MomentMethod::SeriesC) used = ey.method_used;
      total += coef * ey.value;
      magnitude += std::abs(coef * ey.value);
      err += std::abs(coef) * ey.error_estimate;
      terms += ey.terms_used;
    }
  }
  const double scale = std::pow(b1, m);
  const double eps = std::numeric_limits<double>::epsilon();
  return {scale * total, used, std::max<std::size_t>(terms, 1),
          scale * (err + 4.0 * eps * magnitude * (k3 * outer + 2))};
}

/// E(X^r) for any supported baseline, dispatching on family and method.
inline MomentResult moment(const ExtendedDistribution& ed, const MomentQuery& query) {
  const auto& pv = ed.params();
  const auto& bm = ed.baseline();
  const double r = query.r;
  if (r == 0.0) return {1.0, query.method, 1, 0.0};
  auto quadrature = [&]() { return detail::quadrature_moment([&](double x) { return ed.pdf(x); }, r, query.tol); };

  switch (bm.family()) {
    case BaselineFamily::Exponential:
    case BaselineFamily::Weibull: {
      if (r <= -bm.b2()) throw Error(ErrorKind::ConditionViolated, "E(X^r) is infinite for r <= -b2");
      if (query.method == MomentMethod::Quadrature || (r < 0.0 && query.method == MomentMethod::Auto)) {
        return quadrature();
      }
      return moment_weibull_scaled(pv, bm.b1(), bm.b2(), r, query.method, query.tol);
    }
    case BaselineFamily::LogLogistic: {
      if (!(std::abs(r) < bm.b2())) {
        throw Error(ErrorKind::ConditionViolated, "log-logistic moments require |r| < b2");
      }
      if (query.method == MomentMethod::Quadrature) return quadrature();
      const bool closed_ok = pv.q() == 2;
      if (query.method == MomentMethod::ClosedForm && !closed_ok) {
        throw Error(ErrorKind::ConditionViolated, "the closed form needs q = 2");
      }
      if (closed_ok && (query.method == MomentMethod::ClosedForm || query.method == MomentMethod::Auto)) {
        return {moment_q2_loglogistic_closed(pv.a(1), pv.a(2), bm.b1(), bm.b2(), r), MomentMethod::ClosedForm, 1, 0.0};
      }
      const MomentMethod inner = query.method == MomentMethod::Scaling ? MomentMethod::Auto : query.method;
      MomentResult res = moment_loglogistic(pv, r / bm.b2(), inner, query.tol);
      const double scale = std::pow(bm.b1(), r);
      res.value *= scale;
      res.error_estimate *= scale;
      return res;
    }
    case BaselineFamily::GeneralizedWeibull: {
      const bool integral = r >= 1.0 && r == std::round(r);
      const double m2 = 1.0 / bm.b2();
      const bool shapes_ok = std::abs(m2 - std::round(m2)) <= 1e-9 * std::max(1.0, m2) &&
                             bm.b3() == std::round(bm.b3());
      if (query.method == MomentMethod::Quadrature ||
          (query.method == MomentMethod::Auto && !(integral && shapes_ok && pv.corollary_ok()))) {
        if (r <= -bm.b2()) throw Error(ErrorKind::ConditionViolated, "E(X^r) is infinite for r <= -b2");
        return quadrature();
      }
      if (!integral) throw Error(ErrorKind::ConditionViolated, "the generalized Weibull formula needs an integer r");
      return moment_generalized_weibull(pv, bm.b1(), bm.b2(), bm.b3(), static_cast<int>(r), query.tol);
    }
  }
  return quadrature();
}

/// (E|X|^r for the extension, a1 E|X0|^r). The left side is a quadrature
/// value when n_mc = 0, otherwise a Monte-Carlo mean over n_mc inverse-CDF
/// draws; the right side is always quadrature.
inline std::pair<double, double> moment_bound_check(const ParameterVector& pv, const BaselineModel& baseline, double r,
                                                    std::size_t n_mc = 0, std::uint64_t seed = 42,
                                                    double tol = 1e-12) {
  detail::require_corollary(pv);
  if (baseline.family() == BaselineFamily::LogLogistic && !(std::abs(r) < baseline.b2())) {
    throw Error(ErrorKind::ConditionViolated, "log-logistic moments require |r| < b2");
  }
  if (r <= -baseline.b2()) throw Error(ErrorKind::ConditionViolated, "E|X|^r is infinite for r <= -b2");
  const ExtendedDistribution ed(baseline, pv);
  const double right =
      pv.a(1) * oracle::abs_moment_by_quadrature([&](double x) { return baseline.pdf(x); }, r, 0.0, tol).value;
  if (n_mc == 0) {
    return {oracle::abs_moment_by_quadrature([&](double x) { return ed.pdf(x); }, r, 0.0, tol).value, right};
  }
  RandomSource rng(seed);
  const SampleBatch batch = sample_inverse_cdf(ed, rng, n_mc);
  double acc = 0.0;
  for (double x : batch.values) acc += std::pow(std::abs(x), r);
  return {acc / static_cast<double>(n_mc), right};
}

}  // namespace moq
