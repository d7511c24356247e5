#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "moq/baselines.hpp"

using namespace moq;

namespace {

std::vector<BaselineModel> battery() {
  return {BaselineModel::exponential(),       BaselineModel::exponential(2.5),
          BaselineModel::weibull(2.0, 2.0),    BaselineModel::weibull(1.0, 0.5),
          BaselineModel::log_logistic(),       BaselineModel::log_logistic(2.0, 3.0),
          BaselineModel::log_logistic(1.0, 0.7), BaselineModel::generalized_weibull(1.0, 1.0, 2.0),
          BaselineModel::generalized_weibull(2.0, 0.5, 3.0)};
}

}  // namespace

TEST(Baseline, CdfExamples) {
  EXPECT_NEAR(baseline_cdf(BaselineModel::exponential(), std::log(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(baseline_cdf(BaselineModel::log_logistic(), 1.0), 0.5, 1e-15);
  EXPECT_NEAR(baseline_cdf(BaselineModel::weibull(2.0, 2.0), 2.0), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(Baseline, PdfExamples) {
  EXPECT_DOUBLE_EQ(baseline_pdf(BaselineModel::exponential(), 0.0), 1.0);
  EXPECT_NEAR(baseline_pdf(BaselineModel::log_logistic(), 1.0), 0.25, 1e-15);
  EXPECT_NEAR(baseline_pdf(BaselineModel::weibull(2.0, 2.0), 2.0), std::exp(-1.0), 1e-15);
}

TEST(Baseline, QuantileExamples) {
  EXPECT_NEAR(baseline_quantile(BaselineModel::exponential(), 0.5), std::log(2.0), 1e-15);
  EXPECT_NEAR(baseline_quantile(BaselineModel::log_logistic(), 0.75), 3.0, 1e-14);
  EXPECT_NEAR(baseline_quantile(BaselineModel::generalized_weibull(1, 1, 1), 1.0 - std::exp(-1.0)), 1.0, 1e-14);
}

TEST(Baseline, QuantileDomain) {
  for (double p : {0.0, 1.0, -0.1, 1.5}) {
    try {
      baseline_quantile(BaselineModel::exponential(), p);
      FAIL() << "expected an error for p = " << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
  }
}

TEST(Baseline, RejectsBadParameters) {
  EXPECT_THROW(BaselineModel::weibull(0.0, 1.0), Error);
  EXPECT_THROW(BaselineModel::log_logistic(1.0, -2.0), Error);
  EXPECT_THROW(BaselineModel::generalized_weibull(1.0, 1.0, INFINITY), Error);
}

TEST(Baseline, SupportLimits) {
  for (const auto& bm : battery()) {
    EXPECT_EQ(bm.cdf(0.0), 0.0);
    EXPECT_EQ(bm.cdf(-3.0), 0.0);
    EXPECT_EQ(bm.sf(-3.0), 1.0);
    EXPECT_EQ(bm.cdf(INFINITY), 1.0);
    EXPECT_GT(bm.cdf(1e-3), 0.0);
    EXPECT_LE(bm.cdf(1e3), 1.0);
    EXPECT_EQ(bm.pdf(-1.0), 0.0);
    EXPECT_TRUE(std::isfinite(bm.pdf(0.0)));
  }
}

TEST(Baseline, RoundTrips) {
  for (const auto& bm : battery()) {
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
      EXPECT_NEAR(bm.quantile(bm.cdf(x)), x, 1e-10 * x) << to_string(bm.family());
      // rounding sf to a double moves x by up to eps * sf / pdf
      const double cond = 4.0 * std::numeric_limits<double>::epsilon() * bm.sf(x) / bm.pdf(x);
      EXPECT_NEAR(bm.isf(bm.sf(x)), x, 1e-10 * x + cond) << to_string(bm.family());
    }
    for (int i = 1; i < 100; ++i) {
      const double p = i / 100.0;
      EXPECT_NEAR(bm.cdf(bm.quantile(p)), p, 1e-10 * p);
    }
  }
}

TEST(Baseline, SurvivalAccurateInTheTail) {
  const auto w = BaselineModel::weibull(2.0, 2.0);
  EXPECT_NEAR(w.sf(20.0), std::exp(-100.0), 1e-14 * std::exp(-100.0));
  EXPECT_NEAR(w.isf(std::exp(-100.0)), 20.0, 1e-12);
  const auto ll = BaselineModel::log_logistic();
  EXPECT_NEAR(ll.sf(1e12), 1.0 / (1.0 + 1e12), 1e-14 / 1e12);
  for (const auto& bm : battery()) {
    for (double x : {0.1, 1.0, 3.0}) EXPECT_NEAR(bm.cdf(x) + bm.sf(x), 1.0, 2e-16);
  }
}

TEST(Baseline, PdfMatchesCentralDifference) {
  for (const auto& bm : battery()) {
    for (double x : {0.05, 0.3, 1.0, 2.5, 4.0}) {
      const double h = 1e-5 * x;
      const double fd = (bm.cdf(x + h) - bm.cdf(x - h)) / (2 * h);
      EXPECT_NEAR(bm.pdf(x), fd, 1e-6 * fd + 1e-12) << to_string(bm.family()) << " x=" << x;
    }
  }
}

TEST(Baseline, GeneralizedWeibullReducesToExponential) {
  const auto gw = BaselineModel::generalized_weibull(1.7, 1.0, 1.0);
  const auto ex = BaselineModel::exponential(1.7);
  for (int i = 0; i <= 50; ++i) {
    const double x = 0.1 * i;
    EXPECT_NEAR(gw.cdf(x), ex.cdf(x), 1e-15);
    EXPECT_NEAR(gw.pdf(x), ex.pdf(x), 1e-15);
  }
}

TEST(Baseline, PdfAtZeroIsFiniteLimit) {
  EXPECT_DOUBLE_EQ(BaselineModel::exponential(2.0).pdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(BaselineModel::log_logistic().pdf(0.0), 1.0);
  EXPECT_DOUBLE_EQ(BaselineModel::weibull(1.0, 2.0).pdf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(BaselineModel::generalized_weibull(1.0, 1.0, 2.0).pdf(0.0), 0.5);
  // unbounded density at 0+; defined as 0 at the single point
  EXPECT_EQ(BaselineModel::weibull(1.0, 0.5).pdf(0.0), 0.0);
}

TEST(Baseline, FamilyNames) {
  for (auto f : {BaselineFamily::Exponential, BaselineFamily::Weibull, BaselineFamily::GeneralizedWeibull,
                 BaselineFamily::LogLogistic}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
  EXPECT_FALSE(parse_family("gamma").has_value());
}
