#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "kpztail/tracy_widom.hpp"

namespace {

namespace tw = kpztail::tracy_widom;

struct Ref {
  double s;
  double value;
};

// tests/oracles/generate_oracles.py: 30-digit determinants with mpmath Airy functions.
const std::vector<Ref> kGue = {{-3.0, 0.080319552939334548081},
                               {-2.0, 0.41322414250512255469},
                               {0.0, 0.96937282835526266835},
                               {2.0, 0.99988755369830917293}};
const std::vector<Ref> kGoe = {{-3.0, 0.069600118867369888436},
                               {-1.0, 0.58378989551973228346},
                               {0.0, 0.83190806620295192746},
                               {1.0, 0.9514212369115507348}};

TEST(TailAsymptotics, ClosedForms) {
  EXPECT_NEAR(tw::gue_tail_asymptotic(4.0), std::exp(-32.0 / 3.0) / (16.0 * M_PI * 8.0), 1e-22);
  EXPECT_NEAR(tw::gue_tail_asymptotic(4.0), 5.79e-8, 0.01e-8);
  EXPECT_DOUBLE_EQ(tw::gue_tail_asymptotic(1.0), std::exp(-4.0 / 3.0) / (16.0 * M_PI));
  EXPECT_NEAR(tw::goe_tail_asymptotic(4.0), std::exp(-16.0 / 3.0) / (4.0 * std::sqrt(M_PI) * std::pow(4.0, 0.75)), 1e-18);
  EXPECT_DOUBLE_EQ(tw::goe_tail_asymptotic(1.0), std::exp(-2.0 / 3.0) / (4.0 * std::sqrt(M_PI)));
  EXPECT_THROW(tw::gue_tail_asymptotic(0.0), kpztail::DomainError);
}

TEST(TailAsymptotics, GoeAtRescaledArgument) {
  // 1 - F_GOE(2^{2/3} s) ~ e^{-4/3 s^{3/2}} / (4 sqrt(2 pi) s^{3/4}).
  const double s = 9.0;
  const double direct = -4.0 / 3.0 * std::pow(s, 1.5) - std::log(4.0 * std::sqrt(2.0 * M_PI)) - 0.75 * std::log(s);
  EXPECT_NEAR(tw::goe_tail_asymptotic_log(std::pow(2.0, 2.0 / 3.0) * s), direct, 1e-12);
}

TEST(GueCdf, MatchesHighPrecisionReference) {
  for (const auto& r : kGue) EXPECT_NEAR(tw::gue_cdf(r.s).value, r.value, 1e-13) << r.s;
}

TEST(GoeCdf, MatchesHighPrecisionReference) {
  for (const auto& r : kGoe) EXPECT_NEAR(tw::goe_cdf(r.s).value, r.value, 1e-13) << r.s;
}

TEST(Cdf, MonotoneAndInRangeOn200Points) {
  double prev_gue = 0.0;
  double prev_goe = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double s = tw::kRangeLow + (tw::kRangeHigh - tw::kRangeLow) * i / 199.0;
    const double gue = tw::gue_cdf(s).value;
    const double goe = tw::goe_cdf(s).value;
    EXPECT_GE(gue, 0.0);
    EXPECT_LE(gue, 1.0);
    EXPECT_GE(goe, 0.0);
    EXPECT_LE(goe, 1.0);
    EXPECT_GE(gue, prev_gue) << s;
    EXPECT_GE(goe, prev_goe) << s;
    prev_gue = gue;
    prev_goe = goe;
  }
}

TEST(Cdf, UpperLimit) {
  EXPECT_NEAR(tw::gue_cdf(12.0).value, 1.0, 1e-10);
  EXPECT_NEAR(tw::goe_cdf(12.0).value, 1.0, 1e-10);
}

TEST(Cdf, NodeDoublingSelfConsistency) {
  const tw::FredholmConfig cfg;
  for (double s = tw::kRangeLow; s <= tw::kRangeHigh; s += 1.0) {
    for (int n : {64, 128}) {
      const double g1 = std::exp(tw::detail::gue_det(s, n, cfg).log_det);
      const double g2 = std::exp(tw::detail::gue_det(s, 2 * n, cfg).log_det);
      EXPECT_LT(std::abs(g1 - g2), 1e-8) << "GUE s=" << s << " n=" << n;
      const double o1 = std::exp(tw::detail::goe_det(s, n, cfg).log_det);
      const double o2 = std::exp(tw::detail::goe_det(s, 2 * n, cfg).log_det);
      EXPECT_LT(std::abs(o1 - o2), 1e-8) << "GOE s=" << s << " n=" << n;
    }
  }
}

TEST(Cdf, TransformsAgree) {
  tw::FredholmConfig exp_cfg;
  exp_cfg.transform = tw::Transform::exp_map;
  for (double s : {-5.0, -1.0, 0.5, 3.0}) {
    EXPECT_NEAR(tw::gue_cdf(s, exp_cfg).value, tw::gue_cdf(s).value, 1e-12) << s;
    EXPECT_NEAR(tw::goe_cdf(s, exp_cfg).value, tw::goe_cdf(s).value, 1e-12) << s;
  }
}

TEST(Cdf, GueTailMatchesAsymptotic) {
  const double d6 = std::abs(tw::gue_ccdf(6.0).value / tw::gue_tail_asymptotic(6.0) - 1.0);
  const double d7 = std::abs(tw::gue_ccdf(7.0).value / tw::gue_tail_asymptotic(7.0) - 1.0);
  EXPECT_LT(d6, 0.15);
  EXPECT_LT(d7, d6);
  double prev = INFINITY;
  for (double s : {4.0, 5.0, 6.0, 7.0}) {
    const double dev = std::abs(tw::gue_ccdf(s).value / tw::gue_tail_asymptotic(s) - 1.0);
    EXPECT_LT(dev, prev) << s;
    prev = dev;
  }
}

TEST(Cdf, GoeTailMatchesAsymptotic) {
  EXPECT_LT(std::abs(tw::goe_ccdf(7.0).value / tw::goe_tail_asymptotic(7.0) - 1.0), 0.20);
  double prev = INFINITY;
  for (double x : {5.0, 7.0, 9.0}) {
    const double dev = std::abs(tw::goe_ccdf(x).value / tw::goe_tail_asymptotic(x) - 1.0);
    EXPECT_LT(dev, prev) << x;
    prev = dev;
  }
}

TEST(Cdf, ComplementIsAccurateInTheTail) {
  const auto r = tw::gue_distribution(10.0);
  EXPECT_GT(r.ccdf.value, 0.0);
  EXPECT_LT(std::abs(r.ccdf.value / tw::gue_tail_asymptotic(10.0) - 1.0), 0.1);
  EXPECT_NEAR(r.cdf.value + r.ccdf.value, 1.0, 1e-15);
}

TEST(Cdf, OutsideRangeIsFlagged) {
  const auto hi = tw::gue_distribution(15.0);
  EXPECT_TRUE(hi.cdf.flagged);
  EXPECT_DOUBLE_EQ(hi.ccdf.log_value, tw::gue_tail_asymptotic_log(15.0));
  EXPECT_TRUE(tw::goe_cdf(-10.0).flagged);
  EXPECT_FALSE(tw::gue_cdf(0.0).flagged);
  // Left-tail fallback joins the determinant to leading order.
  EXPECT_NEAR(tw::gue_cdf(-8.5).log_value / tw::gue_cdf(-8.0).log_value, 1.0, 0.2);
}

TEST(Cdf, RejectsBadConfig) {
  tw::FredholmConfig cfg;
  cfg.node_count = 4;
  EXPECT_THROW(tw::gue_cdf(0.0, cfg), kpztail::ConfigError);
  cfg = {};
  cfg.domain_cut = -1.0;
  EXPECT_THROW(tw::goe_cdf(0.0, cfg), kpztail::ConfigError);
  EXPECT_THROW(tw::gue_cdf(NAN), kpztail::DomainError);
}

}  // namespace
