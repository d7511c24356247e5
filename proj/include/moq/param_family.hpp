#pragma once

// The q-parameter support function g_{a_1..a_q} on [0, 1], its derivative,
// and its power-series expansions about u = 0 (c coefficients) and u = 1
// (d coefficients).
//
// Everything is evaluated in the "s-form": with s = 1 - u,
//   b_i = a_i s + u,   D = mean(a) s + u,   g(u) = (u / D) * prod_{i>=2} (b_i / D).
// All of b_i and D are sums of non-negative terms, so there is no cancellation
// anywhere on [0, 1], and g(0) = 0, g(1) = 1 hold exactly.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moq/detail/roots.hpp"
#include "moq/error.hpp"

namespace moq {

/// Slack accepted on u before a DomainError; values inside the slack are clamped.
inline constexpr double kUnitSlack = 1e-12;

class ParameterVector {
 public:
  /// Validating constructor; throws NonPositiveParameter on any a_i <= 0 (or non-finite).
  explicit ParameterVector(std::vector<double> a) : a_(std::move(a)) {
    if (a_.empty()) throw Error(ErrorKind::LengthMismatch, "parameter vector must have q >= 1 entries");
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (!(a_[i] > 0.0) || !std::isfinite(a_[i])) {
        throw Error(ErrorKind::NonPositiveParameter,
                    "a" + std::to_string(i + 1) + " = " + std::to_string(a_[i]) + " must be > 0");
      }
    }
    sum_ = std::accumulate(a_.begin(), a_.end(), 0.0);
  }

  int q() const noexcept { return static_cast<int>(a_.size()); }
  std::span<const double> a() const noexcept { return a_; }
  /// 1-based, matching a_1..a_q.
  double a(int i) const { return a_.at(static_cast<std::size_t>(i - 1)); }
  double sum_a() const noexcept { return sum_; }
  double mean_a() const noexcept { return sum_ / q(); }

  bool dev1_ok() const noexcept { return sum_ > 0.5 * q(); }
  bool dev2_ok() const noexcept { return sum_ < 2.0 * q(); }
  bool corollary_ok() const noexcept {
    if (sum_ < q()) return false;
    return std::all_of(a_.begin() + 1, a_.end(), [](double x) { return x <= 1.0; });
  }

  bool operator==(const ParameterVector& other) const { return a_ == other.a_; }

 private:
  std::vector<double> a_;
  double sum_ = 0.0;
};

/// Checks the declared q against the number of supplied parameters.
inline ParameterVector validate_params(int q, std::span<const double> a) {
  if (q < 1) throw Error(ErrorKind::LengthMismatch, "q must be a positive integer");
  if (a.size() != static_cast<std::size_t>(q)) {
    throw Error(ErrorKind::LengthMismatch, "q = " + std::to_string(q) + " but " +
                                               std::to_string(a.size()) + " parameters given");
  }
  return ParameterVector(std::vector<double>(a.begin(), a.end()));
}

/// (a_1 b, ..., a_q b)
inline ParameterVector scaled(const ParameterVector& pv, double b) {
  if (!(b > 0.0)) throw Error(ErrorKind::NonPositiveParameter, "scale b must be > 0");
  std::vector<double> a(pv.a().begin(), pv.a().end());
  for (double& x : a) x *= b;
  return ParameterVector(std::move(a));
}

/// The q-fold constant vector (b, ..., b); its g is the one-parameter Marshall-Olkin map.
inline ParameterVector constant_params(int q, double b) {
  return ParameterVector(std::vector<double>(static_cast<std::size_t>(q), b));
}

namespace detail {

inline double clamp_unit(double u, const char* what) {
  if (!(u >= -kUnitSlack && u <= 1.0 + kUnitSlack)) {
    throw Error(ErrorKind::DomainError, std::string(what) + " = " + std::to_string(u) + " outside [0, 1]");
  }
  return std::clamp(u, 0.0, 1.0);
}

}  // namespace detail

inline double g_eval(const ParameterVector& pv, double u) {
  u = detail::clamp_unit(u, "u");
  const double s = 1.0 - u;
  const double d = pv.mean_a() * s + u;
  // min(q, sum a)/q <= d <= max(q, sum a)/q on [0, 1]
  assert(d >= std::min(1.0, pv.mean_a()) * (1 - 1e-12) && d <= std::max(1.0, pv.mean_a()) * (1 + 1e-12));
  double g = u / d;
  for (int i = 2; i <= pv.q(); ++i) g *= (pv.a(i) * s + u) / d;
  return g;
}

/// Analytic derivative of g. The three-term sum is regrouped so that at u = 1
/// it collapses to exactly a_1:
///   g'(u) = (1/D) prod(b_i/D) * [ (u a_1 + s mean)/D + u s sum_{i>=2} (a_i-1)(a_i-mean)/(D b_i) ].
inline double g_prime(const ParameterVector& pv, double u) {
  u = detail::clamp_unit(u, "u");
  const double s = 1.0 - u;
  const double mean = pv.mean_a();
  const double d = mean * s + u;
  double prod = 1.0 / d;
  double cross = 0.0;
  for (int i = 2; i <= pv.q(); ++i) {
    const double ai = pv.a(i);
    const double bi = ai * s + u;
    prod *= bi / d;
    cross += (ai - 1.0) * (ai - mean) / bi;
  }
  const double bracket = (u * pv.a(1) + s * mean) / d + u * s * cross / d;
  return prod * bracket;
}

/// 1 - g(1 - s), evaluated without forming g. With X = D and Y_1 = u, Y_k = b_k,
///   X^q - prod Y = sum_k X^{q-k} (X - Y_k) prod_{i<k} Y_i,
/// and every X - Y_k is proportional to s.
inline double g_complement(const ParameterVector& pv, double s) {
  s = detail::clamp_unit(s, "s");
  const double u = 1.0 - s;
  const double mean = pv.mean_a();
  const double d = mean * s + u;
  double lead = u / d;  // prod_{i<k} Y_i / X^{k-1}
  double total = mean * s / d;
  for (int k = 2; k <= pv.q(); ++k) {
    const double ak = pv.a(k);
    total += lead * s * (mean - ak) / d;
    lead *= (ak * s + u) / d;
  }
  return std::clamp(total, 0.0, 1.0);
}

/// Solves g(u) = p for u in [0, 1].
inline double g_inverse(const ParameterVector& pv, double p) {
  p = detail::clamp_unit(p, "p");
  if (p == 0.0 || p == 1.0) return p;
  auto r = detail::solve_increasing([&](double u) { return g_eval(pv, u); }, 0.0, 1.0, p, 1e-12);
  if (!r.converged) throw Error(ErrorKind::Nonconvergence, "g inversion did not converge for p = " + std::to_string(p));
  return r.x;
}

/// Solves g_complement(s) = t for s in [0, 1]; the upper-tail counterpart of g_inverse.
inline double g_complement_inverse(const ParameterVector& pv, double t) {
  t = detail::clamp_unit(t, "t");
  if (t == 0.0 || t == 1.0) return t;
  auto r = detail::solve_increasing([&](double s) { return g_complement(pv, s); }, 0.0, 1.0, t, 1e-12);
  if (!r.converged) throw Error(ErrorKind::Nonconvergence, "g complement inversion did not converge for t = " + std::to_string(t));
  return r.x;
}

/// Elementary symmetric polynomials sigma_0..sigma_upto of the weights,
/// built by multiplying out prod (1 + w_j x); sigma_i = 0 for i > weights.size().
inline std::vector<double> sigma_terms(std::span<const double> weights, std::size_t upto) {
  std::vector<double> e(std::max(upto, weights.size()) + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    for (std::size_t j = n + 1; j >= 1; --j) e[j] += weights[n] * e[j - 1];
  }
  e.resize(upto + 1);
  return e;
}

/// Compares g_a(g_{b..b}(u)) against g_{b a}(u); the two agree for every b > 0.
inline std::pair<double, double> g_compose_check(const ParameterVector& pv, double b, double u) {
  const double inner = g_eval(constant_params(pv.q(), b), u);
  return {g_eval(pv, inner), g_eval(scaled(pv, b), u)};
}

enum class SeriesKind { C, D };

/// Term generator for either expansion. value(m) is the exact coefficient;
/// bound(m) is a majorant B_m >= |value(m)| with B_{m+1} <= ratio_bound(m) * B_m
/// for every m >= q, which is what the truncation and tail estimates rest on.
class SeriesTerms {
 public:
  SeriesTerms(const ParameterVector& pv, SeriesKind kind) : kind_(kind), q_(pv.q()) {
    const double q = pv.q();
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(pv.q() - 1));
    if (kind == SeriesKind::C) {
      if (!pv.dev1_ok()) {
        throw Error(ErrorKind::ConditionViolated,
                    "the expansion about 0 requires a1+...+aq > q/2 (sum = " + std::to_string(pv.sum_a()) + ")");
      }
      rho_ = (pv.sum_a() - q) / pv.sum_a();
      double log_pre = q * std::log(q / pv.sum_a());
      for (int i = 2; i <= pv.q(); ++i) {
        log_pre += std::log(pv.a(i));
        w.push_back((1.0 - pv.a(i)) / pv.a(i));
      }
      prefactor_ = std::exp(log_pre);
      sigma_ = sigma_terms(w, static_cast<std::size_t>(pv.q()));
    } else {
      if (!pv.dev2_ok()) {
        throw Error(ErrorKind::ConditionViolated,
                    "the expansion about 1 requires a1+...+aq < 2q (sum = " + std::to_string(pv.sum_a()) + ")");
      }
      rho_ = (pv.sum_a() - q) / q;
      prefactor_ = 1.0;
      for (int i = 2; i <= pv.q(); ++i) w.push_back(1.0 - pv.a(i));
      sigma_ = sigma_terms(w, static_cast<std::size_t>(pv.q()));
    }
  }

  SeriesKind kind() const noexcept { return kind_; }
  int q() const noexcept { return q_; }
  /// Signed geometric ratio of the expansion.
  double rho() const noexcept { return rho_; }
  std::span<const double> sigma() const noexcept { return sigma_; }

  double value(std::size_t m) const { return evaluate(m, false); }
  double bound(std::size_t m) const { return evaluate(m, true); }

  double ratio_bound(std::size_t m) const {
    const double mm = static_cast<double>(std::max<std::size_t>(m, static_cast<std::size_t>(q_)));
    return std::abs(rho_) * mm / (mm - q_ + 1.0);
  }

  /// C(k+q-1, q-1) = (k+q-1)...(k+1)/(q-1)!
  double binomial(std::size_t k) const {
    double b = 1.0;
    for (int i = 1; i < q_; ++i) b *= (static_cast<double>(k) + i) / i;
    return b;
  }

  double log_binomial(std::size_t k) const {
    double lb = 0.0;
    for (int i = 1; i < q_; ++i) lb += std::log1p(static_cast<double>(k) / i);
    return lb;
  }

 private:
  // coef * C(k+q-1, q-1) * rho^k, switching to log space only when the direct
  // product over- or underflows.
  double power_term(double coef, std::size_t k, bool absolute) const {
    if (coef == 0.0) return 0.0;
    if (absolute) coef = std::abs(coef);
    if (k == 0) return coef;
    if (rho_ == 0.0) return 0.0;
    const double r = absolute ? std::abs(rho_) : rho_;
    const double sign = (r < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    const double binom = binomial(k);
    const double pw = std::pow(std::abs(r), static_cast<double>(k));
    const double direct = coef * binom * pw;
    if (std::isfinite(binom) && pw > 1e-280 && std::isfinite(direct) && direct != 0.0) return sign * direct;
    const double lg = std::log(std::abs(coef)) + log_binomial(k) + static_cast<double>(k) * std::log(std::abs(r));
    return sign * std::copysign(std::exp(lg), coef);
  }

  double evaluate(std::size_t m, bool absolute) const {
    if (m == 0) return 0.0;
    const std::size_t jmax = std::min<std::size_t>(m, static_cast<std::size_t>(q_));
    double acc = 0.0;
    if (kind_ == SeriesKind::C) {
      for (std::size_t j = 1; j <= jmax; ++j) acc += power_term(sigma_[j - 1], m - j, absolute);
      return prefactor_ * acc;
    }
    acc = power_term(1.0, m, absolute);
    for (std::size_t j = 1; j <= jmax; ++j) {
      const double sj = (j < sigma_.size() ? sigma_[j] : 0.0) + sigma_[j - 1];
      acc += power_term(sj, m - j, absolute);
    }
    return acc;
  }

  SeriesKind kind_;
  int q_;
  double rho_ = 0.0;
  double prefactor_ = 1.0;
  std::vector<double> sigma_;
};

struct SeriesCoefficients {
  SeriesKind kind;
  /// values[m-1] holds the coefficient of index m.
  std::vector<double> values;
  std::size_t truncation_index = 0;
  /// Bounds both the truncated tail sum_{m>M} |coef_m| and the rounding in the
  /// partial sums, so it bounds the reconstruction error for |u - centre| <= 1.
  double tail_estimate = 0.0;
  /// sigma_0..sigma_{q-1}
  std::vector<double> sigma;

  double coefficient(std::size_t m) const {
    return (m >= 1 && m <= values.size()) ? values[m - 1] : 0.0;
  }

  double partial_sum() const {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }

  /// Truncated series at u: sum c_m u^m (kind C) or 1 + sum d_m (u-1)^m (kind D).
  double evaluate(double u) const {
    const double x = kind == SeriesKind::C ? u : u - 1.0;
    double acc = 0.0;
    for (std::size_t i = values.size(); i-- > 0;) acc = (acc + values[i]) * x;
    return kind == SeriesKind::C ? acc : 1.0 + acc;
  }
};

inline constexpr std::size_t kDefaultMaxTerms = 1'000'000;

inline SeriesCoefficients expand_series(const ParameterVector& pv, SeriesKind kind, double tol,
                                        std::size_t max_terms) {
  const SeriesTerms terms(pv, kind);
  SeriesCoefficients out{kind, {}, 0, 0.0, {}};
  out.sigma.assign(terms.sigma().begin(), terms.sigma().begin() + pv.q());
  double abs_sum = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m <= max_terms; ++m) {
    const double v = terms.value(m);
    out.values.push_back(v);
    abs_sum += std::abs(v);
    if (m < static_cast<std::size_t>(pv.q())) continue;
    const double r = terms.ratio_bound(m);
    if (r >= 1.0) continue;
    tail = terms.bound(m) * r / (1.0 - r);
    if (tail <= tol) break;
  }
  out.truncation_index = out.values.size();
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding = eps * (static_cast<double>(out.truncation_index) + 16.0 * pv.q()) * std::max(abs_sum, 1.0);
  out.tail_estimate = tail + rounding;
  if (tail > tol) {
    throw Error(ErrorKind::Nonconvergence, "series tail " + std::to_string(tail) + " above tolerance after " +
                                               std::to_string(max_terms) + " terms");
  }
  return out;
}

inline SeriesCoefficients c_coefficients(const ParameterVector& pv, double tol = 1e-12,
                                         std::size_t max_terms = kDefaultMaxTerms) {
  return expand_series(pv, SeriesKind::C, tol, max_terms);
}

inline SeriesCoefficients d_coefficients(const ParameterVector& pv, double tol = 1e-12,
                                         std::size_t max_terms = kDefaultMaxTerms) {
  return expand_series(pv, SeriesKind::D, tol, max_terms);
}

}  // namespace moq
