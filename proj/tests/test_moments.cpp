#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <tuple>
#include <numbers>
#include <vector>

#include "moq/moments.hpp"
#include "moq/oracle/quadrature.hpp"

using namespace moq;

namespace {

constexpr double kPi = std::numbers::pi;

ParameterVector pv_of(std::vector<double> a) { return ParameterVector(std::move(a)); }

double quad_moment(const BaselineModel& bm, const std::vector<double>& a, double r) {
  const ExtendedDistribution ed(bm, pv_of(a));
  return oracle::abs_moment_by_quadrature([&](double x) { return ed.pdf(x); }, r, 0.0, 1e-12).value;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::DomainError;
}

}  // namespace

TEST(MomentExponential, UnitExponentialMean) {
  const auto res = moment_exponential(pv_of({1.0}), 1.0);
  EXPECT_NEAR(res.value, 1.0, 1e-14);
  EXPECT_GE(res.terms_used, 1u);
  EXPECT_GE(res.error_estimate, 0.0);
}

// Survival 2e^{-x}/(1+e^{-x}) integrates to 2 ln 2.
TEST(MomentExponential, MarshallOlkinMeanIsTwoLogTwo) {
  const double two_ln2 = 2.0 * std::log(2.0);
  const auto survival = oracle::integrate_semiinfinite(
      [](double x) { return 2.0 * std::exp(-x) / (1.0 + std::exp(-x)); }, 0.0, 1e-13);
  EXPECT_NEAR(survival.value, two_ln2, 1e-12);
  for (auto m : {MomentMethod::SeriesC, MomentMethod::Auto}) {
    const auto res = moment_exponential(pv_of({2.0}), 1.0, m);
    EXPECT_NEAR(res.value, two_ln2, 1e-11) << to_string(m);
  }
  // a = 2 = 2q is outside the expansion about 1
  EXPECT_EQ(kind_of([] { moment_exponential(pv_of({2.0}), 1.0, MomentMethod::SeriesD); }),
            ErrorKind::ConditionViolated);
  EXPECT_NEAR(moment_exponential(pv_of({1.9}), 1.0, MomentMethod::SeriesD).value,
              moment_exponential(pv_of({1.9}), 1.0, MomentMethod::SeriesC).value, 1e-11);
}

TEST(MomentExponential, SecondMomentMatchesQuadrature) {
  const double q = quad_moment(BaselineModel::exponential(), {1.5, 0.5}, 2.0);
  const auto res = moment_exponential(pv_of({1.5, 0.5}), 2.0);
  EXPECT_NEAR(res.value, q, 1e-6 * q);
  EXPECT_NEAR(res.value, 2.75, 1e-12);
  EXPECT_EQ(res.method_used, MomentMethod::SeriesC);
}

TEST(MomentExponential, BranchesAgree) {
  for (auto a : {std::vector<double>{1.2, 0.9}, {1.4, 0.9, 0.8}, {1.0, 1.0}, {2.5, 0.7, 0.9}}) {
    for (double r : {0.25, 0.5, 1.0, 2.0, 3.5}) {
      const auto c = moment_exponential(pv_of(a), r, MomentMethod::SeriesC);
      const auto d = moment_exponential(pv_of(a), r, MomentMethod::SeriesD);
      const double q = quad_moment(BaselineModel::exponential(), a, r);
      EXPECT_NEAR(c.value, d.value, 1e-10 * q);
      EXPECT_NEAR(c.value, q, 1e-9 * q);
      EXPECT_LE(std::abs(c.value - q), c.error_estimate + 1e-10 * q);
    }
  }
}

TEST(MomentExponential, IllConditionedSeriesFallsBack) {
  // c_m decays like 0.95^m, so the alternating inner sums lose every digit long
  // before the series converges.
  const auto res = moment_exponential(pv_of({20.0}), 1.0, MomentMethod::SeriesC);
  EXPECT_EQ(res.method_used, MomentMethod::Quadrature);
  const double q = quad_moment(BaselineModel::exponential(), {20.0}, 1.0);
  EXPECT_NEAR(res.value, q, 1e-10 * q);
}

TEST(MomentExponential, ConditionsEnforced) {
  EXPECT_EQ(kind_of([] { moment_exponential(pv_of({0.5, 0.5}), 1.0, MomentMethod::SeriesC); }),
            ErrorKind::ConditionViolated);
  EXPECT_EQ(kind_of([] { moment_exponential(pv_of({3.5, 0.6}), 1.0, MomentMethod::SeriesD); }),
            ErrorKind::ConditionViolated);
  EXPECT_EQ(kind_of([] { moment_exponential(pv_of({1.2, 1.1}), 1.0, MomentMethod::SeriesC); }),
            ErrorKind::ConditionViolated);
  EXPECT_EQ(kind_of([] { moment_exponential(pv_of({1.0}), -1.0); }), ErrorKind::DomainError);
  // outside the series conditions Auto integrates numerically
  const auto res = moment_exponential(pv_of({1e-6, 0.15}), 1.0);
  EXPECT_EQ(res.method_used, MomentMethod::Quadrature);
}

TEST(MomentExponential, SmallOrderTendsToOne) {
  for (auto a : {std::vector<double>{1.0}, {1.5, 0.5}, {1.4, 0.9, 0.8}}) {
    EXPECT_NEAR(moment_exponential(pv_of(a), 1e-8).value, 1.0, 1e-7);
  }
}

TEST(MomentLogLogistic, Examples) {
  EXPECT_NEAR(moment_loglogistic(pv_of({1.0}), 0.5).value, kPi / 2.0, 1e-10);
  EXPECT_NEAR(moment_loglogistic(pv_of({1.5, 0.5}), 0.5).value, 1.9634954085, 1e-10);
  EXPECT_NEAR(moment_loglogistic(pv_of({1.5, 0.5}), 0.5).value, 1.25 * kPi / 2.0, 1e-12);
  EXPECT_EQ(moment_loglogistic(pv_of({1.0}), 0.0).value, 1.0);
}

TEST(MomentLogLogistic, BranchesMatchQuadrature) {
  for (auto a : {std::vector<double>{1.3, 0.8}, {2.0, 0.6, 0.7}, {1.0, 1.0, 1.0}}) {
    for (double r : {-0.9, -0.5, 0.25, 0.5, 0.9}) {
      const double q = quad_moment(BaselineModel::log_logistic(), a, r);
      for (auto m : {MomentMethod::SeriesC, MomentMethod::SeriesD}) {
        const auto res = moment_loglogistic(pv_of(a), r, m);
        EXPECT_LE(std::abs(res.value - q), std::max(1e-6 * q, res.error_estimate)) << to_string(m) << " r=" << r;
      }
    }
  }
}

TEST(MomentLogLogistic, DomainAndConditions) {
  EXPECT_EQ(kind_of([] { moment_loglogistic(pv_of({1.0}), 1.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { moment_loglogistic(pv_of({1.0}), -1.2); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { moment_loglogistic(pv_of({0.5, 1.5}), 0.5, MomentMethod::SeriesC); }),
            ErrorKind::ConditionViolated);
}

TEST(MomentClosedForm, Examples) {
  EXPECT_NEAR(moment_q2_loglogistic_closed(1, 1, 1, 1, 0.5), kPi / 2.0, 1e-14);
  const double v = moment_q2_loglogistic_closed(1.5, 0.5, 1, 1, 0.5);
  EXPECT_NEAR(v, 1.9634954085, 1e-10);
  EXPECT_NEAR(v, moment_loglogistic(pv_of({1.5, 0.5}), 0.5).value, 1e-8);
  const double q = quad_moment(BaselineModel::log_logistic(2.0, 2.0), {1.5, 0.5}, 1.0);
  EXPECT_NEAR(moment_q2_loglogistic_closed(1.5, 0.5, 2, 2, 1.0), q, 1e-8);
}

TEST(MomentClosedForm, BothOrderingsMatchQuadrature) {
  for (auto [a1, a2] : {std::pair{1.5, 0.5}, {0.5, 1.5}, {0.2, 3.0}, {3.0, 0.2}}) {
    for (auto [b1, b2, r] : {std::tuple{1.0, 1.0, 0.5}, {2.0, 3.0, -1.5}, {0.5, 2.0, 1.2}}) {
      const double q = quad_moment(BaselineModel::log_logistic(b1, b2), {a1, a2}, r);
      EXPECT_NEAR(moment_q2_loglogistic_closed(a1, a2, b1, b2, r), q, 1e-8 * q) << a1 << "," << a2 << " r=" << r;
    }
  }
}

TEST(MomentClosedForm, OrderZeroLimit) {
  EXPECT_EQ(moment_q2_loglogistic_closed(1.5, 0.5, 2, 2, 0.0), 1.0);
  EXPECT_NEAR(moment_q2_loglogistic_closed(1.5, 0.5, 2, 2, 1e-12), 1.0, 1e-11);
  EXPECT_EQ(kind_of([] { moment_q2_loglogistic_closed(1, 1, 1, 1, 1.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { moment_q2_loglogistic_closed(0, 1, 1, 1, 0.5); }), ErrorKind::DomainError);
}

TEST(MomentWeibull, Examples) {
  EXPECT_NEAR(moment_weibull_scaled(pv_of({1.0}), 1, 1, 1).value, 1.0, 1e-14);
  EXPECT_NEAR(moment_weibull_scaled(pv_of({1.0}), 2, 2, 2).value, 4.0, 1e-13);
  const double q = quad_moment(BaselineModel::weibull(2, 2), {1.5, 0.5}, 1.0);
  EXPECT_NEAR(moment_weibull_scaled(pv_of({1.5, 0.5}), 2, 2, 1).value, q, 1e-6 * q);
}

TEST(MomentGeneralizedWeibull, Examples) {
  EXPECT_NEAR(moment_generalized_weibull(pv_of({1.0}), 1, 1, 1, 1).value, 1.0, 1e-13);
  const double q1 = quad_moment(BaselineModel::generalized_weibull(1, 1, 2), {1.0}, 1.0);
  EXPECT_NEAR(moment_generalized_weibull(pv_of({1.0}), 1, 1, 2, 1).value, q1, 1e-6 * q1);
  const double q2 = quad_moment(BaselineModel::generalized_weibull(2, 0.5, 1), {1.5, 0.5}, 2.0);
  EXPECT_NEAR(moment_generalized_weibull(pv_of({1.5, 0.5}), 2, 0.5, 1, 2).value, q2, 1e-6 * q2);
}

// The expansion uses E(Y^j) with exponent j; the alternative exponent k*b3*j
// would not reproduce the integral.
TEST(MomentGeneralizedWeibull, ExponentIsJ) {
  for (auto [b2, b3, m] : {std::tuple{1.0, 2.0, 1}, {0.5, 2.0, 1}, {1.0, 3.0, 2}, {0.5, 2.0, 2}}) {
    const std::vector<double> a = {1.4, 0.9, 0.8};
    const double q = quad_moment(BaselineModel::generalized_weibull(1.3, b2, b3), a, m);
    const auto res = moment_generalized_weibull(pv_of(a), 1.3, b2, b3, m);
    EXPECT_NEAR(res.value, q, 1e-6 * q) << "b2=" << b2 << " b3=" << b3 << " m=" << m;
  }
}

TEST(MomentGeneralizedWeibull, Integrality) {
  EXPECT_EQ(kind_of([] { moment_generalized_weibull(pv_of({1.0}), 1, 0.7, 1, 1); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { moment_generalized_weibull(pv_of({1.0}), 1, 1, 1.5, 1); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { moment_generalized_weibull(pv_of({1.0}), 1, 1, 1, 0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { moment_generalized_weibull(pv_of({0.5}), 1, 1, 1, 1); }), ErrorKind::ConditionViolated);
}

TEST(MomentBound, Examples) {
  const auto [l0, r0] = moment_bound_check(pv_of({1.0}), BaselineModel::exponential(), 1.0);
  EXPECT_NEAR(l0, r0, 1e-12);
  const auto [l1, r1] = moment_bound_check(pv_of({1.5, 0.5}), BaselineModel::exponential(), 1.0);
  EXPECT_NEAR(r1, 1.5, 1e-12);
  EXPECT_LE(l1, r1);
  const auto [l2, r2] = moment_bound_check(pv_of({2.0, 0.6, 0.7}), BaselineModel::log_logistic(), 0.5);
  EXPECT_NEAR(r2, kPi, 1e-10);
  EXPECT_LE(l2, r2);
}

TEST(MomentBound, MonteCarloLeftSide) {
  const auto [mc, right] = moment_bound_check(pv_of({1.5, 0.5}), BaselineModel::exponential(), 1.0, 200000, 7);
  const auto [quad, right2] = moment_bound_check(pv_of({1.5, 0.5}), BaselineModel::exponential(), 1.0);
  EXPECT_EQ(right, right2);
  EXPECT_NEAR(mc, quad, 0.02);
  EXPECT_EQ(kind_of([] { moment_bound_check(pv_of({0.5}), BaselineModel::exponential(), 1.0); }),
            ErrorKind::ConditionViolated);
}

TEST(MomentDispatch, Families) {
  const auto ll = ExtendedDistribution(BaselineModel::log_logistic(), pv_of({1.0, 1.0}));
  const auto closed = moment(ll, {0.5, MomentMethod::ClosedForm, 1e-12});
  EXPECT_EQ(closed.method_used, MomentMethod::ClosedForm);
  EXPECT_NEAR(closed.value, kPi / 2.0, 1e-14);
  EXPECT_EQ(moment(ll, {0.5, MomentMethod::Auto, 1e-12}).method_used, MomentMethod::ClosedForm);
  EXPECT_EQ(kind_of([&] { moment(ll, {1.5, MomentMethod::Auto, 1e-12}); }), ErrorKind::ConditionViolated);

  const auto ex = ExtendedDistribution(BaselineModel::exponential(), pv_of({1.0}));
  EXPECT_NEAR(moment(ex, {1.0, MomentMethod::Auto, 1e-12}).value, 1.0, 1e-14);

  const auto ll3 = ExtendedDistribution(BaselineModel::log_logistic(2.0, 3.0), pv_of({2.0, 0.6, 0.7}));
  const auto s = moment(ll3, {1.2, MomentMethod::Auto, 1e-12});
  const auto q = moment(ll3, {1.2, MomentMethod::Quadrature, 1e-12});
  EXPECT_EQ(q.method_used, MomentMethod::Quadrature);
  EXPECT_NEAR(s.value, q.value, 1e-9 * q.value);

  const auto gw = ExtendedDistribution(BaselineModel::generalized_weibull(1.0, 0.5, 2.0), pv_of({1.4, 0.9, 0.8}));
  const auto g1 = moment(gw, {2.0, MomentMethod::Auto, 1e-12});
  const auto g2 = moment(gw, {2.0, MomentMethod::Quadrature, 1e-12});
  EXPECT_NEAR(g1.value, g2.value, 1e-8 * g2.value);
  // fractional order on the three-parameter family goes to quadrature
  EXPECT_EQ(moment(gw, {0.5, MomentMethod::Auto, 1e-12}).method_used, MomentMethod::Quadrature);

  const auto wb = ExtendedDistribution(BaselineModel::weibull(2.0, 2.0), pv_of({1.5, 0.5}));
  EXPECT_EQ(kind_of([&] { moment(wb, {-2.5, MomentMethod::Auto, 1e-12}); }), ErrorKind::ConditionViolated);
  const auto neg = moment(wb, {-1.0, MomentMethod::Auto, 1e-12});
  EXPECT_EQ(neg.method_used, MomentMethod::Quadrature);
  EXPECT_EQ(moment(wb, {0.0, MomentMethod::Auto, 1e-12}).value, 1.0);
}

TEST(MomentDispatch, MethodNames) {
  for (auto m : {MomentMethod::SeriesC, MomentMethod::SeriesD, MomentMethod::ClosedForm, MomentMethod::Scaling,
                 MomentMethod::Quadrature, MomentMethod::Auto}) {
    EXPECT_EQ(parse_moment_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_moment_method("series").has_value());
}
