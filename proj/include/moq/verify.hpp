#pragma once

// Named verification checks. Each check returns pass, fail or skip with a
// one-line detail; run_checks() runs a selection, optionally on threads.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moq/baselines.hpp"
#include "moq/curve.hpp"
#include "moq/error.hpp"
#include "moq/extended_dist.hpp"
#include "moq/moments.hpp"
#include "moq/oracle/ks.hpp"
#include "moq/oracle/quadrature.hpp"
#include "moq/param_family.hpp"
#include "moq/random.hpp"
#include "moq/sampling.hpp"
#include "moq/spec_file.hpp"

namespace moq::verify {

enum class Status { Pass, Fail, Skip };

constexpr std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "skip";
  }
  return "unknown";
}

struct CheckResult {
  std::string name;
  Status status = Status::Fail;
  std::string detail;
  double seconds = 0.0;
};

enum class Injection { None, EnvelopeHalf };

struct VerifyOptions {
  /// Scales sample sizes and random-case counts; 1 runs the full sizes.
  double budget = 1.0;
  std::uint64_t seed = 42;
  Injection inject = Injection::None;
  /// When set, checks that work on a single distribution use this one.
  std::optional<DistributionSpec> spec;
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline std::size_t scaled_count(double budget, std::size_t full, std::size_t floor_count) {
  const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(full) * budget));
  return std::max(n, floor_count);
}

inline double envelope_for(const ParameterVector& pv, Injection inject) {
  const double m = envelope_constant(pv);
  return inject == Injection::EnvelopeHalf ? 0.5 * m : m;
}

inline double log_uniform(RandomSource& rng, double lo_exp, double hi_exp) {
  return std::exp(lo_exp + (hi_exp - lo_exp) * rng.uniform());
}

/// Random parameter vectors drawn from three regimes: broad log-uniform,
/// corollary_ok, and extreme magnitudes.
inline ParameterVector random_params(RandomSource& rng) {
  const int q = 1 + static_cast<int>(rng.next_u64() % 6);
  const auto regime = rng.next_u64() % 3;
  std::vector<double> a(static_cast<std::size_t>(q));
  if (regime == 0) {
    for (double& x : a) x = log_uniform(rng, -5.0, 3.0);
  } else if (regime == 1) {
    double rest = 0.0;
    for (int i = 1; i < q; ++i) {
      a[static_cast<std::size_t>(i)] = 0.02 + 0.98 * rng.uniform();
      rest += a[static_cast<std::size_t>(i)];
    }
    a[0] = std::max(q - rest, 0.0) + log_uniform(rng, -6.0, 2.0);
  } else {
    for (double& x : a) x = std::pow(10.0, -6.0 + 8.0 * rng.uniform());
  }
  return ParameterVector(std::move(a));
}

inline std::string describe(const ParameterVector& pv) {
  std::ostringstream os;
  os.precision(6);
  os << '[';
  for (int i = 1; i <= pv.q(); ++i) os << (i > 1 ? "," : "") << pv.a(i);
  os << ']';
  return os.str();
}

struct Dist {
  BaselineModel baseline;
  ParameterVector pv;
};

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

using CheckOutcome = std::pair<Status, std::string>;

inline CheckOutcome check_mo_reduction(const VerifyOptions&) {
  double worst = 0.0;
  for (int q = 1; q <= 5; ++q) {
    for (double a : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const ParameterVector pv = constant_params(q, a);
      for (int i = 0; i <= 100; ++i) {
        const double u = i / 100.0;
        worst = std::max(worst, std::abs(g_eval(pv, u) - u / (a + (1.0 - a) * u)));
      }
    }
  }
  const bool ok = worst <= 1e-12;
  return {ok ? Status::Pass : Status::Fail, "max |g - u/(a+(1-a)u)| = " + detail::sci(worst) + " (tol 1e-12)"};
}

inline CheckOutcome check_g_properties(const VerifyOptions& opt) {
  RandomSource rng = RandomSource(opt.seed).split(2);
  const std::size_t cases = opt.spec ? 1 : detail::scaled_count(opt.budget, 1000, 100);
  std::size_t failures = 0;
  double worst_end = 0.0, worst_slope = 0.0;
  std::string first;
  for (std::size_t c = 0; c < cases; ++c) {
    const ParameterVector pv = opt.spec ? opt.spec->params : detail::random_params(rng);
    std::vector<double> us;
    for (int i = 0; i <= 200; ++i) us.push_back(i / 200.0);
    for (int i = 0; i < 200; ++i) us.push_back(rng.uniform());
    std::sort(us.begin(), us.end());
    const double e0 = std::abs(g_eval(pv, 0.0));
    const double e1 = std::abs(g_eval(pv, 1.0) - 1.0);
    const double slope = std::abs(g_prime(pv, 1.0) - pv.a(1)) / pv.a(1);
    worst_end = std::max({worst_end, e0, e1});
    worst_slope = std::max(worst_slope, slope);
    bool ok = e0 <= 1e-14 && e1 <= 1e-14 && slope <= 1e-12;
    double prev = -1.0;
    for (double u : us) {
      const double g = g_eval(pv, u);
      if (g < prev || g_prime(pv, u) < 0.0) ok = false;
      prev = g;
    }
    if (!ok) {
      ++failures;
      if (first.empty()) first = " first failure a=" + detail::describe(pv);
    }
  }
  return {failures == 0 ? Status::Pass : Status::Fail,
          std::to_string(cases) + " vectors, " + std::to_string(failures) + " failing; max endpoint err " +
              detail::sci(worst_end) + ", max rel |g'(1)-a1| " + detail::sci(worst_slope) + first};
}

inline CheckOutcome check_series_fidelity(const VerifyOptions& opt) {
  RandomSource rng = RandomSource(opt.seed).split(3);
  std::size_t failures = 0, checked = 0;
  double worst_ratio = 0.0;
  std::string first;
  auto draw_pv = [&](double lo_mean, double hi_mean) {
    const int q = 1 + static_cast<int>(rng.next_u64() % 5);
    const double target = q * (lo_mean + (hi_mean - lo_mean) * rng.uniform());
    std::vector<double> w(static_cast<std::size_t>(q));
    double sw = 0.0;
    for (double& x : w) {
      x = 0.05 + rng.uniform();
      sw += x;
    }
    for (double& x : w) x *= target / sw;
    return ParameterVector(std::move(w));
  };
  for (auto kind : {SeriesKind::C, SeriesKind::D}) {
    for (int k = 0; k < 20; ++k) {
      // means kept away from the radius boundary so truncation stays moderate
      const ParameterVector pv = kind == SeriesKind::C ? draw_pv(0.6, 3.0) : draw_pv(0.3, 1.8);
      const SeriesCoefficients sc = kind == SeriesKind::C ? c_coefficients(pv) : d_coefficients(pv);
      for (int i = 0; i <= 10; ++i) {
        const double u = i / 10.0;
        const double err = std::abs(sc.evaluate(u) - g_eval(pv, u));
        ++checked;
        worst_ratio = std::max(worst_ratio, err / sc.tail_estimate);
        if (err > sc.tail_estimate) {
          ++failures;
          if (first.empty()) first = " first failure a=" + detail::describe(pv);
        }
      }
    }
  }
  double worst_sum = 0.0;
  bool negative = false;
  for (int k = 0; k < 20; ++k) {
    const int q = 1 + static_cast<int>(rng.next_u64() % 5);
    std::vector<double> a(static_cast<std::size_t>(q));
    double rest = 0.0;
    for (int i = 1; i < q; ++i) rest += (a[static_cast<std::size_t>(i)] = 0.05 + 0.95 * rng.uniform());
    a[0] = std::max(q - rest, 0.0) + 2.0 * rng.uniform();
    const ParameterVector pv(std::move(a));
    const SeriesCoefficients sc = c_coefficients(pv);
    for (double c : sc.values) negative = negative || c < 0.0;
    worst_sum = std::max(worst_sum, std::abs(sc.partial_sum() - 1.0));
  }
  const bool ok = failures == 0 && !negative && worst_sum <= 1e-8;
  return {ok ? Status::Pass : Status::Fail,
          std::to_string(checked) + " reconstructions, " + std::to_string(failures) +
              " above tail_estimate (max err/tail " + detail::sci(worst_ratio) + "); pmf: negative c " +
              (negative ? "found" : "none") + ", max |sum c - 1| " + detail::sci(worst_sum) + first};
}

inline CheckOutcome check_series_vs_quadrature(const VerifyOptions& opt) {
  struct Case {
    bool loglogistic;
    std::vector<double> a;
    MomentMethod method;
    double r;
  };
  std::vector<Case> cases;
  if (opt.spec) {
    const auto& bm = opt.spec->baseline;
    const auto& pv = opt.spec->params;
    if (!pv.corollary_ok()) return {Status::Skip, "series need a1+...+aq >= q and ai <= 1 (i >= 2)"};
    const double r = bm.family() == BaselineFamily::LogLogistic ? 0.5 * bm.b2() : 1.0;
    const ExtendedDistribution ed = opt.spec->distribution();
    const MomentResult s = moment(ed, {r, MomentMethod::Auto, 1e-12});
    const MomentResult qd = moment(ed, {r, MomentMethod::Quadrature, 1e-12});
    const double diff = std::abs(s.value - qd.value);
    const double tol = std::max(1e-6 * std::abs(qd.value), s.error_estimate);
    return {diff <= tol ? Status::Pass : Status::Fail,
            "r=" + format_real(r) + " " + std::string(to_string(s.method_used)) + " " + format_real(s.value) +
                " vs quadrature " + format_real(qd.value) + " |diff| " + detail::sci(diff)};
  }
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    cases.push_back({false, {3.0, 0.5}, MomentMethod::SeriesC, r});
    cases.push_back({false, {1.2, 0.9}, MomentMethod::SeriesD, r});
    cases.push_back({false, {1.4, 0.9, 0.8}, MomentMethod::SeriesC, r});
  }
  for (double r : {-0.5, 0.25, 0.5, 0.9}) {
    cases.push_back({true, {1.3, 0.8}, MomentMethod::SeriesC, r});
    cases.push_back({true, {2.0, 0.6, 0.7}, MomentMethod::SeriesD, r});
  }
  std::size_t failures = 0;
  double worst_rel = 0.0;
  std::string first;
  for (const auto& c : cases) {
    const ParameterVector pv(c.a);
    const BaselineModel bm = c.loglogistic ? BaselineModel::log_logistic() : BaselineModel::exponential();
    const ExtendedDistribution ed(bm, pv);
    const MomentResult s = c.loglogistic ? moment_loglogistic(pv, c.r, c.method) : moment_exponential(pv, c.r, c.method);
    const auto qd = oracle::abs_moment_by_quadrature([&](double x) { return ed.pdf(x); }, c.r, 0.0, 1e-12);
    const double diff = std::abs(s.value - qd.value);
    worst_rel = std::max(worst_rel, diff / std::abs(qd.value));
    if (diff > std::max(1e-6 * std::abs(qd.value), s.error_estimate)) {
      ++failures;
      if (first.empty()) {
        first = std::string(" first failure ") + (c.loglogistic ? "log-logistic" : "exponential") +
                " a=" + detail::describe(pv) + " r=" + format_real(c.r);
      }
    }
  }
  return {failures == 0 ? Status::Pass : Status::Fail,
          std::to_string(cases.size()) + " cases, " + std::to_string(failures) + " failing; max rel diff " +
              detail::sci(worst_rel) + first};
}

inline CheckOutcome check_closed_form(const VerifyOptions&) {
  const double base = moment_q2_loglogistic_closed(1.0, 1.0, 1.0, 1.0, 0.5);
  const double e_base = std::abs(base - std::numbers::pi / 2.0);

  const ParameterVector hi({1.5, 0.5});
  const double closed = moment_q2_loglogistic_closed(1.5, 0.5, 1.0, 1.0, 0.5);
  const double series = moment_loglogistic(hi, 0.5, MomentMethod::SeriesC).value;
  const ExtendedDistribution ed_hi(BaselineModel::log_logistic(), hi);
  const double quad = oracle::abs_moment_by_quadrature([&](double x) { return ed_hi.pdf(x); }, 0.5, 0.0, 1e-12).value;
  const double e_pair = std::max({std::abs(closed - series), std::abs(closed - quad), std::abs(series - quad)});

  const ExtendedDistribution ed_lo(BaselineModel::log_logistic(), ParameterVector({0.5, 1.5}));
  const double closed_lo = moment_q2_loglogistic_closed(0.5, 1.5, 1.0, 1.0, 0.5);
  const double quad_lo =
      oracle::abs_moment_by_quadrature([&](double x) { return ed_lo.pdf(x); }, 0.5, 0.0, 1e-12).value;
  const double e_lo = std::abs(closed_lo - quad_lo);

  const bool ok = e_base <= 1e-10 && e_pair <= 1e-6 && e_lo <= 1e-6;
  return {ok ? Status::Pass : Status::Fail, "|(1,1) - pi/2| " + detail::sci(e_base) + " (tol 1e-10); (1.5,0.5) pairwise " +
                                                detail::sci(e_pair) + " (tol 1e-6); (0.5,1.5) vs quadrature " +
                                                detail::sci(e_lo) + " (tol 1e-6)"};
}

inline CheckOutcome check_sampler_ks(const VerifyOptions& opt) {
  std::vector<detail::Dist> cases;
  if (opt.spec) {
    cases.push_back({opt.spec->baseline, opt.spec->params});
  } else {
    cases.push_back({BaselineModel::exponential(), ParameterVector({1.5, 0.5})});
    cases.push_back({BaselineModel::weibull(2.0, 2.0), ParameterVector({2.0, 0.6, 0.7})});
  }
  const std::size_t n = detail::scaled_count(opt.budget, 100000, 2000);
  const double t1 = oracle::ks_threshold(n);
  const double t2 = oracle::ks_threshold(n, n);
  const RandomSource root(opt.seed);
  bool ok = true;
  std::ostringstream detail_text;
  detail_text << "n=" << n << " thresholds " << detail::sci(t1) << "/" << detail::sci(t2) << ";";
  std::uint64_t stream = 100;
  for (const auto& c : cases) {
    const ExtendedDistribution ed(c.baseline, c.pv);
    std::vector<std::pair<std::string, std::vector<double>>> batches;
    {
      RandomSource rng = root.split(stream++);
      batches.emplace_back("inverse-cdf", detail::sorted(sample_inverse_cdf(ed, rng, n).values));
    }
    const double m_env = detail::envelope_for(c.pv, opt.inject);
    if (envelope_constant(c.pv) <= 50.0) {
      RandomSource rng = root.split(stream++);
      const SampleBatch b = sample_accept_reject(ed, rng, n, m_env);
      const double p = 1.0 / m_env;
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(b.n_proposed));
      const double dev = std::abs(b.acceptance_rate() - p);
      const bool rate_ok = dev <= 3.0 * se;
      ok = ok && rate_ok;
      detail_text << " a=" << detail::describe(c.pv) << " acceptance " << b.acceptance_rate() << " vs 1/M " << p
                  << (rate_ok ? "" : " [FAIL]") << ";";
      batches.emplace_back("accept-reject", detail::sorted(b.values));
    } else {
      stream++;
      detail_text << " a=" << detail::describe(c.pv) << " accept-reject skipped (M=" << detail::sci(m_env) << ");";
    }
    if (c.pv.corollary_ok()) {
      RandomSource rng = root.split(stream++);
      batches.emplace_back("random-maxima", detail::sorted(sample_random_maxima(ed, rng, n).values));
    } else {
      stream++;
    }
    double worst1 = 0.0, worst2 = 0.0;
    for (std::size_t i = 0; i < batches.size(); ++i) {
      const double d = oracle::ks_one_sample(batches[i].second, [&](double x) { return ed.cdf(x); });
      worst1 = std::max(worst1, d);
      if (d >= t1) {
        ok = false;
        detail_text << " " << batches[i].first << " KS " << detail::sci(d) << " [FAIL];";
      }
      for (std::size_t j = i + 1; j < batches.size(); ++j) {
        const double d2 = oracle::ks_two_sample(batches[i].second, batches[j].second);
        worst2 = std::max(worst2, d2);
        if (d2 >= t2) {
          ok = false;
          detail_text << " " << batches[i].first << "/" << batches[j].first << " KS " << detail::sci(d2) << " [FAIL];";
        }
      }
    }
    detail_text << " max KS " << detail::sci(worst1) << ", max 2-sample " << detail::sci(worst2) << ";";
  }
  return {ok ? Status::Pass : Status::Fail, detail_text.str()};
}

inline CheckOutcome check_logistic_convolution(const VerifyOptions& opt) {
  std::vector<detail::Dist> cases;
  if (opt.spec) {
    const auto& pv = opt.spec->params;
    if (pv.q() != 2 || pv.a(1) == pv.a(2)) return {Status::Skip, "needs q = 2 with a1 != a2"};
    cases.push_back({opt.spec->baseline, pv});
  } else {
    cases.push_back({BaselineModel::log_logistic(), ParameterVector({1.5, 0.5})});
    cases.push_back({BaselineModel::log_logistic(), ParameterVector({0.5, 1.5})});
  }
  const std::size_t n = detail::scaled_count(opt.budget, 100000, 2000);
  const double threshold = oracle::ks_threshold(n);
  const RandomSource root(opt.seed);
  bool ok = true;
  std::ostringstream text;
  text << "n=" << n << " threshold " << detail::sci(threshold) << ";";
  std::uint64_t stream = 200;
  for (const auto& c : cases) {
    const ExtendedDistribution ed(c.baseline, c.pv);
    RandomSource rx = root.split(stream++);
    RandomSource rv = root.split(stream++);
    const SampleBatch xs = sample_inverse_cdf(ed, rx, n);
    const auto ls = detail::sorted(logistic_transform(xs, c.pv.a(1), c.pv.a(2), c.baseline, rv));
    const double d = oracle::ks_one_sample(ls, [](double v) { return 1.0 / (1.0 + std::exp(-v)); });
    ok = ok && d < threshold;
    text << " a=" << detail::describe(c.pv) << " KS " << detail::sci(d) << (d < threshold ? "" : " [FAIL]") << ";";
  }
  return {ok ? Status::Pass : Status::Fail, text.str()};
}

inline CheckOutcome check_expectation_bound(const VerifyOptions& opt) {
  struct Case {
    BaselineModel baseline;
    std::vector<double> a;
    double r;
  };
  std::vector<Case> cases;
  if (opt.spec) {
    if (!opt.spec->params.corollary_ok()) return {Status::Skip, "bound needs a1+...+aq >= q and ai <= 1 (i >= 2)"};
    const auto& bm = opt.spec->baseline;
    const double r = bm.family() == BaselineFamily::LogLogistic ? 0.5 * bm.b2() : 1.0;
    cases.push_back({bm, std::vector<double>(opt.spec->params.a().begin(), opt.spec->params.a().end()), r});
  } else {
    cases = {
        {BaselineModel::exponential(), {1.5, 0.5}, 1.0},
        {BaselineModel::exponential(), {2.0}, 2.0},
        {BaselineModel::log_logistic(), {2.0, 0.6, 0.7}, 0.5},
        {BaselineModel::log_logistic(), {1.5, 0.5}, -0.5},
        {BaselineModel::weibull(2.0, 2.0), {1.2, 0.9}, 1.0},
        {BaselineModel::weibull(1.0, 0.5), {3.0, 0.5}, 0.5},
        {BaselineModel::generalized_weibull(1.0, 1.0, 2.0), {1.4, 0.9, 0.8}, 1.0},
        {BaselineModel::log_logistic(2.0, 3.0), {1.3, 0.8}, 2.0},
        {BaselineModel::exponential(2.0), {5.0, 0.2, 0.3, 0.9}, 0.25},
        {BaselineModel::weibull(1.0, 3.0), {1.0, 1.0}, 3.0},
    };
  }
  std::size_t failures = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (const auto& c : cases) {
    const auto [left, right] = moment_bound_check(ParameterVector(c.a), c.baseline, c.r);
    worst_margin = std::max(worst_margin, left - right);
    if (left > right + 1e-9) ++failures;
  }
  return {failures == 0 ? Status::Pass : Status::Fail,
          std::to_string(cases.size()) + " cases, " + std::to_string(failures) +
              " violating; max (E|X|^r - a1 E|X0|^r) = " + detail::sci(worst_margin) + " (slack 1e-9)"};
}

/// Values of the second CSV column.
inline std::vector<double> csv_values(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    out.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
  }
  return out;
}

inline CheckOutcome check_hazard_extrema(const VerifyOptions&) {
  const BaselineModel weibull = BaselineModel::weibull(2.0, 2.0);
  const ExtendedDistribution plain(weibull, ParameterVector({1.0}));
  const ExtendedDistribution extended(weibull, ParameterVector({1e-6, 0.15}));
  const std::string c1 = curve_csv(plain, CurveQuantity::Hazard, 0.01, 6.0, 0.01);
  const std::string c2 = curve_csv(extended, CurveQuantity::Hazard, 0.01, 6.0, 0.01);
  const bool stable = c1 == curve_csv(plain, CurveQuantity::Hazard, 0.01, 6.0, 0.01) &&
                      c2 == curve_csv(extended, CurveQuantity::Hazard, 0.01, 6.0, 0.01);
  const auto v1 = csv_values(c1);
  const auto v2 = csv_values(c2);
  const std::size_t e1 = count_interior_extrema(v1);
  const std::size_t e2 = count_interior_extrema(v2);
  bool increasing = true;
  for (std::size_t i = 1; i < v1.size(); ++i) increasing = increasing && v1[i] > v1[i - 1];
  const bool ok = stable && increasing && e1 == 0 && e2 >= 2 && v1.size() == 600;
  return {ok ? Status::Pass : Status::Fail,
          std::to_string(v1.size()) + " rows; baseline extrema " + std::to_string(e1) + (increasing ? " (increasing)" : "") +
              ", extension extrema " + std::to_string(e2) + "; csv " + (stable ? "byte-stable" : "NOT stable")};
}

inline CheckOutcome check_composition(const VerifyOptions& opt) {
  RandomSource rng = RandomSource(opt.seed).split(10);
  const std::size_t cases = detail::scaled_count(opt.budget, 1000, 100);
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const ParameterVector pv = opt.spec ? opt.spec->params : detail::random_params(rng);
    const double b = detail::log_uniform(rng, -3.0, 3.0);
    const double u = rng.uniform();
    const auto [lhs, rhs] = g_compose_check(pv, b, u);
    const double err = std::abs(lhs - rhs);
    worst = std::max(worst, err);
    if (err > 1e-12) ++failures;
  }
  return {failures == 0 ? Status::Pass : Status::Fail,
          std::to_string(cases) + " triples, " + std::to_string(failures) + " failing; max |diff| " +
              detail::sci(worst) + " (tol 1e-12)"};
}

inline CheckOutcome check_envelope(const VerifyOptions& opt) {
  RandomSource rng = RandomSource(opt.seed).split(11);
  const std::size_t cases = opt.spec ? 1 : detail::scaled_count(opt.budget, 1000, 100);
  const std::size_t grid = 10000;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  std::string first;
  for (std::size_t c = 0; c < cases; ++c) {
    const ParameterVector pv = opt.spec ? opt.spec->params : detail::random_params(rng);
    const double m = detail::envelope_for(pv, opt.inject);
    double peak = 0.0;
    for (std::size_t i = 0; i <= grid; ++i) {
      peak = std::max(peak, g_prime(pv, static_cast<double>(i) / static_cast<double>(grid)));
    }
    worst_ratio = std::max(worst_ratio, peak / m);
    if (peak > m + 1e-12) {
      ++violations;
      if (first.empty()) first = " first violation a=" + detail::describe(pv);
    }
  }
  return {violations == 0 ? Status::Pass : Status::Fail,
          std::to_string(cases) + " vectors, " + std::to_string(violations) + " violations; max grid sup g'/M " +
              detail::sci(worst_ratio) + first};
}

struct CheckEntry {
  std::string_view name;
  std::string_view description;
  CheckOutcome (*fn)(const VerifyOptions&);
};

inline const std::vector<CheckEntry>& registry() {
  static const std::vector<CheckEntry> entries = {
      {"mo-reduction", "equal parameters reduce to the Marshall-Olkin map", check_mo_reduction},
      {"g-properties", "g(0)=0, g(1)=1, g increasing, g'(1)=a1 on random vectors", check_g_properties},
      {"series-fidelity", "c/d series reconstruct g within tail_estimate; c is a pmf", check_series_fidelity},
      {"series-vs-quadrature", "series moments agree with quadrature", check_series_vs_quadrature},
      {"closed-form", "q=2 log-logistic closed form vs series and quadrature", check_closed_form},
      {"sampler-ks", "KS battery for the three samplers and the acceptance rate", check_sampler_ks},
      {"logistic-convolution", "q=2 logistic construction is standard logistic", check_logistic_convolution},
      {"expectation-bound", "E|X|^r <= a1 E|X0|^r on corollary_ok cases", check_expectation_bound},
      {"hazard-extrema", "hazard extrema counts for Weibull(2,2) and a=(1e-6,0.15)", check_hazard_extrema},
      {"composition", "g_a(g_b(u)) = g_{ba}(u) on random triples", check_composition},
      {"envelope", "grid sup of g' stays below the envelope constant", check_envelope},
  };
  return entries;
}

inline const CheckEntry* find_check(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

inline CheckResult run_check(const CheckEntry& entry, const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult res{std::string(entry.name), Status::Fail, "", 0.0};
  try {
    auto [status, text] = entry.fn(opt);
    res.status = status;
    res.detail = std::move(text);
  } catch (const Error& e) {
    res.status = Status::Fail;
    res.detail = e.what();
  } catch (const std::exception& e) {
    res.status = Status::Fail;
    res.detail = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

/// Runs the named checks (all when names is empty), each on its own thread
/// when parallel is set. Results keep the registry order.
inline std::vector<CheckResult> run_checks(const std::vector<std::string>& names, const VerifyOptions& opt,
                                           bool parallel = true) {
  std::vector<const CheckEntry*> selected;
  if (names.empty()) {
    for (const auto& e : registry()) selected.push_back(&e);
  } else {
    for (const auto& n : names) {
      const CheckEntry* e = find_check(n);
      if (!e) throw std::invalid_argument("unknown check '" + n + "'");
      selected.push_back(e);
    }
  }
  std::vector<CheckResult> out;
  if (!parallel) {
    for (const auto* e : selected) out.push_back(run_check(*e, opt));
    return out;
  }
  std::vector<std::future<CheckResult>> futures;
  for (const auto* e : selected) futures.push_back(std::async(std::launch::async, [e, &opt] { return run_check(*e, opt); }));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace moq::verify
