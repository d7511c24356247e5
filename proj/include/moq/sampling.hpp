#pragma once

// Samplers for the extended family: accept-reject against the baseline,
// maxima of a random number of baseline draws, and inverse-CDF. Also the
// logistic construction for q = 2 used as a distributional check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moq/baselines.hpp"
#include "moq/error.hpp"
#include "moq/extended_dist.hpp"
#include "moq/param_family.hpp"
#include "moq/random.hpp"

namespace moq {

enum class SamplerKind { AcceptReject, RandomMaxima, InverseCdf };

constexpr std::string_view to_string(SamplerKind k) noexcept {
  switch (k) {
    case SamplerKind::AcceptReject: return "accept-reject";
    case SamplerKind::RandomMaxima: return "random-maxima";
    case SamplerKind::InverseCdf: return "inverse-cdf";
  }
  return "unknown";
}

inline std::optional<SamplerKind> parse_sampler(std::string_view name) {
  for (auto k : {SamplerKind::AcceptReject, SamplerKind::RandomMaxima, SamplerKind::InverseCdf}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

struct SampleBatch {
  std::vector<double> values;
  SamplerKind sampler = SamplerKind::InverseCdf;
  /// Proposals drawn; equals values.size() for the samplers without rejection.
  std::size_t n_proposed = 0;
  std::uint64_t seed = 0;

  double acceptance_rate() const {
    return n_proposed == 0 ? 0.0 : static_cast<double>(values.size()) / static_cast<double>(n_proposed);
  }
};

/// Tolerated excess of g'(u)/M over 1 before the envelope is declared broken.
inline constexpr double kEnvelopeSlack = 1e-12;

/// M >= sup_u g'(u). Under the corollary_ok conditions M = a1; otherwise the
/// three-term bound built from min(1, mean(a)) and max(1, ai).
inline double envelope_constant(const ParameterVector& pv) {
  if (pv.corollary_ok()) return pv.a(1);
  const int q = pv.q();
  const double mn = std::min(1.0, pv.mean_a());
  double prod_max = 1.0;
  for (int i = 2; i <= q; ++i) prod_max *= std::max(1.0, pv.a(i));
  double cross = 0.0;
  for (int i = 2; i <= q; ++i) {
    double p = 1.0;
    for (int j = 2; j <= q; ++j) {
      if (j != i) p *= std::max(1.0, pv.a(j));
    }
    cross += std::abs(1.0 - pv.a(i)) * p;
  }
  const double mnq = std::pow(mn, q);
  return prod_max / mnq + std::abs(pv.sum_a() - q) * prod_max / (mnq * mn) + cross / mnq;
}

/// Accept-reject with an explicit envelope constant. Used directly for fault
/// injection; normal callers take the overload without it.
inline SampleBatch sample_accept_reject(const ExtendedDistribution& ed, RandomSource& rng, std::size_t n,
                                        double envelope) {
  if (n < 1) throw Error(ErrorKind::DomainError, "sample size must be at least 1");
  if (!(envelope > 0.0)) throw Error(ErrorKind::DomainError, "envelope constant must be positive");
  const auto& bm = ed.baseline();
  const auto& pv = ed.params();
  SampleBatch out{{}, SamplerKind::AcceptReject, 0, rng.seed()};
  out.values.reserve(n);
  while (out.values.size() < n) {
    const double x = bm.quantile(rng.uniform_open());
    ++out.n_proposed;
    const double ratio = g_prime(pv, bm.cdf(x)) / envelope;
    if (ratio > 1.0 + kEnvelopeSlack) {
      throw Error(ErrorKind::EnvelopeViolation, "g'(F0(x))/M = " + std::to_string(ratio) + " exceeds 1 at x = " +
                                                    std::to_string(x) + " (M = " + std::to_string(envelope) + ")");
    }
    if (rng.uniform() < ratio) out.values.push_back(x);
  }
  return out;
}

inline SampleBatch sample_accept_reject(const ExtendedDistribution& ed, RandomSource& rng, std::size_t n) {
  return sample_accept_reject(ed, rng, n, envelope_constant(ed.params()));
}

/// Law of N with pr(N = m) = c_m. The cumulative sums are extended on demand
/// and cached in the object.
class CountDistribution {
 public:
  explicit CountDistribution(const ParameterVector& pv, std::size_t max_terms = kDefaultMaxTerms)
      : terms_(check(pv), SeriesKind::C), max_terms_(max_terms) {}

  std::size_t draw(double u) {
    while (cumulative_.empty() || (cumulative_.back() < u && !converged_)) extend();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    // Past the converged end the residual mass is below rounding; the last
    // index absorbs it.
    if (it == cumulative_.end()) return cumulative_.size();
    return static_cast<std::size_t>(it - cumulative_.begin()) + 1;
  }

  std::size_t draw(RandomSource& rng) { return draw(rng.uniform()); }

  std::size_t cached_terms() const noexcept { return cumulative_.size(); }

 private:
  static const ParameterVector& check(const ParameterVector& pv) {
    if (!pv.corollary_ok()) {
      throw Error(ErrorKind::ConditionViolated,
                  "random maxima require a1+...+aq >= q and ai <= 1 for 2 <= i <= q (c must be a pmf)");
    }
    return pv;
  }

  void extend() {
    const std::size_t m = cumulative_.size() + 1;
    if (m > max_terms_) {
      throw Error(ErrorKind::Nonconvergence, "cumulative pmf of N stalled below the uniform draw after " +
                                                 std::to_string(max_terms_) + " terms");
    }
    const double prev = cumulative_.empty() ? 0.0 : cumulative_.back();
    cumulative_.push_back(prev + std::max(0.0, terms_.value(m)));
    if (m >= static_cast<std::size_t>(terms_.q())) {
      const double r = terms_.ratio_bound(m);
      if (r < 1.0 && terms_.bound(m) * r / (1.0 - r) <= 0.25 * std::numeric_limits<double>::epsilon()) {
        converged_ = true;
      }
    }
  }

  SeriesTerms terms_;
  std::size_t max_terms_;
  std::vector<double> cumulative_;
  bool converged_ = false;
};

inline std::size_t sample_N(const ParameterVector& pv, RandomSource& rng) {
  CountDistribution dist(pv);
  return dist.draw(rng);
}

/// Each draw is max(X_1, ..., X_N) with N ~ c and X_i iid from the baseline.
/// The maximum is taken over the uniforms and mapped through the baseline
/// quantile once, which is the same variate since the quantile is increasing.
inline SampleBatch sample_random_maxima(const ExtendedDistribution& ed, RandomSource& rng, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "sample size must be at least 1");
  CountDistribution dist(ed.params());
  SampleBatch out{{}, SamplerKind::RandomMaxima, n, rng.seed()};
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t count = dist.draw(rng);
    double u = 0.0;
    for (std::size_t k = 0; k < count; ++k) u = std::max(u, rng.uniform_open());
    out.values.push_back(ed.baseline().quantile(u));
  }
  return out;
}

inline SampleBatch sample_inverse_cdf(const ExtendedDistribution& ed, RandomSource& rng, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "sample size must be at least 1");
  SampleBatch out{{}, SamplerKind::InverseCdf, n, rng.seed()};
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.values.push_back(ed.quantile(rng.uniform_open()));
  return out;
}

inline SampleBatch sample(const ExtendedDistribution& ed, SamplerKind kind, RandomSource& rng, std::size_t n) {
  switch (kind) {
    case SamplerKind::AcceptReject: return sample_accept_reject(ed, rng, n);
    case SamplerKind::RandomMaxima: return sample_random_maxima(ed, rng, n);
    case SamplerKind::InverseCdf: return sample_inverse_cdf(ed, rng, n);
  }
  throw Error(ErrorKind::DomainError, "unknown sampler");
}

/// For draws from the (a1, a2) extension, L = +-Y + V - shift with
/// Y = log(1/F0(x) - 1) and V ~ Exp((a1 + a2)/|a1 - a2|) is standard logistic.
inline std::vector<double> logistic_transform(const SampleBatch& x_batch, double a1, double a2,
                                              const BaselineModel& baseline, RandomSource& rng) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw Error(ErrorKind::DomainError, "a1 and a2 must be positive");
  if (a1 == a2) throw Error(ErrorKind::DomainError, "logistic transform needs a1 != a2 (rate (a1+a2)/|a1-a2|)");
  const double rate = (a1 + a2) / std::abs(a1 - a2);
  std::vector<double> out;
  out.reserve(x_batch.values.size());
  for (double x : x_batch.values) {
    const double f = baseline.cdf(x);
    const double y = (f <= 0.0 || f >= 1.0) ? 0.0 : std::log(baseline.sf(x)) - std::log(f);
    const double v = rng.exponential(rate);
    if (a1 > a2) {
      out.push_back(y + v - std::log(2.0 / (a1 + a2)));
    } else {
      out.push_back(-y + v - std::log((a1 + a2) / 2.0));
    }
  }
  return out;
}

}  // namespace moq
