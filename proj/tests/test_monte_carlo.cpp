#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "kpztail/groeneboom.hpp"
#include "kpztail/monte_carlo.hpp"
#include "kpztail/random.hpp"
#include "kpztail/tail_bounds.hpp"
#include "kpztail/tracy_widom.hpp"

namespace mc = kpztail::monte_carlo;
namespace rnd = kpztail::random;

TEST(Philox, KnownAnswer) {
  // Random123 kat_vectors: philox4x32_10, counter 0, key 0.
  rnd::Philox g(0, 0);
  const auto a = g();
  const auto b = g();
  EXPECT_EQ(a, (std::uint64_t{0xe169c58d} << 32) | 0x6627e8d5U);
  EXPECT_EQ(b, (std::uint64_t{0x9b00dbd8} << 32) | 0xbc57ac4cU);
}

TEST(Philox, StreamsDiffer) {
  auto a = rnd::replicate_engine({42, 0}, 7);
  auto b = rnd::replicate_engine({42, 1}, 7);
  auto c = rnd::replicate_engine({42, 0}, 8);
  auto a2 = rnd::replicate_engine({42, 0}, 7);
  const auto va = a();
  EXPECT_NE(va, b());
  EXPECT_NE(va, c());
  EXPECT_EQ(va, a2());
  double u = 1.0;
  for (int i = 0; i < 10000; ++i) u = std::min(u, rnd::uniform_open0(a));
  EXPECT_GT(u, 0.0);
}

TEST(Sampler, MaxNonNegativeAndInsideDomain) {
  mc::SamplerConfig cfg;
  const auto xs = mc::sample_bm_parabola_max(cfg, 2000, {1, 0});
  for (const auto& s : xs) {
    EXPECT_GE(s.max_value, 0.0);
    EXPECT_LE(std::abs(s.argmax), s.domain_radius + 0.01);
    EXPECT_TRUE(s.bridge_corrected);
    EXPECT_FALSE(s.boundary_flag);
  }
}

TEST(Sampler, ReproducibleAcrossWorkerCounts) {
  mc::SamplerConfig cfg;
  const auto a = mc::sample_bm_parabola_max(cfg, 300, {99, 3}, 1);
  const auto b = mc::sample_bm_parabola_max(cfg, 300, {99, 3}, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].max_value, b[i].max_value);
    EXPECT_EQ(a[i].argmax, b[i].argmax);
  }
}

TEST(Sampler, ConfigValidation) {
  mc::SamplerConfig cfg;
  cfg.grid_step = 2e-3;
  EXPECT_THROW(cfg.validate(), kpztail::ConfigError);
  cfg = {};
  cfg.domain_radius = 3.0;
  EXPECT_THROW(cfg.validate(), kpztail::ConfigError);
  cfg = {};
  cfg.c = 0.01;
  cfg.domain_radius = 40.0;  // meets max(4, 4/sqrt c) but not the truncation certificate
  EXPECT_THROW(cfg.validate(), kpztail::ConfigError);
  cfg.domain_radius.reset();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_LE(mc::truncation_bound(0.5, mc::default_radius(0.5)), 1e-4);
}

TEST(Sampler, MatchesGroeneboomTail) {
  mc::SamplerConfig cfg;
  const auto m = mc::max_values(mc::sample_bm_parabola_max(cfg, 100000, {2024, 0}));
  for (double x : {0.5, 1.0, 1.5}) {
    const auto e = mc::empirical_tail(m, x);
    const double g = kpztail::groeneboom::g_tail(x).value;
    EXPECT_LE(std::abs(e.estimate - g), 3.0 * e.std_error) << x;
  }
}

TEST(Sampler, HalvingGridStepIsWithinOneStandardError) {
  mc::SamplerConfig fine;
  fine.grid_step = 5e-5;
  mc::SamplerConfig coarse;
  coarse.grid_step = 1e-4;
  // Shared stream: both step sizes start from the same coarse grid.
  const auto a = mc::empirical_tail(mc::max_values(mc::sample_bm_parabola_max(coarse, 100000, {5, 0})), 1.0);
  const auto b = mc::empirical_tail(mc::max_values(mc::sample_bm_parabola_max(fine, 100000, {5, 0})), 1.0);
  EXPECT_LE(std::abs(a.estimate - b.estimate), std::hypot(a.std_error, b.std_error));
}

TEST(Sampler, GridMaximumBiasedDownWithoutBridge) {
  mc::SamplerConfig with;
  with.grid_step = 1e-3;
  mc::SamplerConfig without = with;
  without.bridge_correction = false;
  const auto a = mc::EmpiricalDistribution(mc::max_values(mc::sample_bm_parabola_max(with, 5000, {8, 0})));
  const auto b = mc::EmpiricalDistribution(mc::max_values(mc::sample_bm_parabola_max(without, 5000, {8, 0})));
  EXPECT_GT(a.mean(), b.mean());
}

TEST(Sampler, ScalingLawAcrossC) {
  std::vector<mc::EmpiricalDistribution> d;
  std::uint64_t stream = 10;
  for (double c : {0.5, 1.0, 2.0}) {
    mc::SamplerConfig cfg;
    cfg.c = c;
    auto m = mc::max_values(mc::sample_bm_parabola_max(cfg, 20000, {77, stream++}));
    for (double& v : m) v *= std::cbrt(2.0 * c);
    d.emplace_back(std::move(m));
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) EXPECT_GT(mc::ks_two_sample(d[i], d[j]).p_value, 0.01);
  }
}

TEST(Sampler, ArgmaxSymmetric) {
  mc::SamplerConfig cfg;
  auto tau = mc::argmax_values(mc::sample_bm_parabola_max(cfg, 20000, {3, 0}));
  std::vector<double> neg;
  for (double t : tau) neg.push_back(-t);
  EXPECT_GT(mc::ks_two_sample(mc::EmpiricalDistribution(tau), mc::EmpiricalDistribution(neg)).p_value, 0.01);
}

TEST(Empirical, TailExamples) {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  auto all = mc::empirical_tail(xs, 0.5);
  EXPECT_EQ(all.estimate, 1.0);
  EXPECT_EQ(all.std_error, 0.0);
  EXPECT_EQ(mc::empirical_tail(xs, 5.0).estimate, 0.0);
  const mc::EmpiricalDistribution d(xs);
  EXPECT_EQ(mc::empirical_tail(d, 2.5).estimate, 0.5);
  EXPECT_NEAR(mc::empirical_tail(d, 2.5).std_error, 0.25, 1e-15);
}

TEST(Empirical, KolmogorovSmirnov) {
  EXPECT_NEAR(mc::kolmogorov_q(1.36), 0.0495, 5e-4);
  EXPECT_NEAR(mc::kolmogorov_q(1.63), 0.0098, 3e-4);
  const mc::EmpiricalDistribution a(std::vector<double>{1, 2, 3});
  const mc::EmpiricalDistribution b(std::vector<double>{4, 5, 6});
  EXPECT_DOUBLE_EQ(mc::ks_two_sample(a, b).statistic, 1.0);
  EXPECT_DOUBLE_EQ(mc::ks_two_sample(a, a).statistic, 0.0);
  EXPECT_NEAR(a.ks_statistic([](double x) { return std::clamp(x / 4.0, 0.0, 1.0); }), 0.25, 1e-15);
}

TEST(Fit, ExactModelRecovery) {
  std::vector<std::pair<double, double>> pts;
  for (double s = 2.0; s <= 10.0; s += 1.0) pts.emplace_back(s, -2.0 / 3.0 * std::pow(s, 1.5));
  EXPECT_NEAR(mc::fit_tail_exponent(pts).coefficient, 2.0 / 3.0, 1e-10);
  std::vector<std::pair<double, double>> pre;
  for (double s = 2.0; s <= 10.0; s += 1.0) pre.emplace_back(s, 0.3 - 0.75 * std::log(s) - 1.1 * std::pow(s, 1.5));
  const auto f = mc::fit_tail_exponent(pre, {-0.75, 0.0});
  EXPECT_NEAR(f.coefficient, 1.1, 1e-10);
  EXPECT_LE(f.ci_low, f.coefficient);
  EXPECT_GE(f.ci_high, f.coefficient);
}

TEST(Fit, BoundCurvesAndGueTail) {
  std::vector<std::pair<double, double>> lo, gue;
  for (double s = 15.0; s <= 40.0; s += 1.0) lo.emplace_back(s, kpztail::tail_bounds::fsigma_lower_bound(1.0, s).lower);
  EXPECT_NEAR(mc::fit_tail_exponent(lo).coefficient, 2.0 / 3.0, 0.03 * 2.0 / 3.0);
  for (double s = 4.0; s <= 12.0; s += 0.5) gue.emplace_back(s, kpztail::tracy_widom::gue_tail_asymptotic_log(s));
  EXPECT_NEAR(mc::fit_tail_exponent(gue, {-1.5, 0.0}).coefficient, 4.0 / 3.0, 0.01 * 4.0 / 3.0);
}

TEST(Fit, Degenerate) {
  std::vector<std::pair<double, double>> three = {{1, 0}, {2, 0}, {3, 0}};
  EXPECT_THROW(mc::fit_tail_exponent(three), kpztail::IllConditioned);
  std::vector<std::pair<double, double>> unsorted = {{1, 0}, {3, 0}, {2, 0}, {4, 0}};
  EXPECT_THROW(mc::fit_tail_exponent(unsorted), kpztail::IllConditioned);
}

TEST(Lpp, SingleReplicateReproducible) {
  mc::LppConfig cfg;
  cfg.lattice_size = 128;
  const auto a = mc::simulate_lpp_height(cfg, {11, 0});
  const auto b = mc::simulate_lpp_height(cfg, {11, 0});
  ASSERT_EQ(a.count(), 1U);
  EXPECT_TRUE(std::isfinite(a.samples[0]));
  EXPECT_EQ(a.samples[0], b.samples[0]);
}

TEST(Lpp, MonotoneCoupling) {
  const int n = 8;
  std::vector<double> h0(2 * n + 1, 0.0);
  for (int u = -n; u <= n; ++u) h0[u + n] = 0.1 * u * std::sin(u);
  auto w = [](int i, int j) { return 1.0 + 0.5 * std::cos(3.0 * i + 7.0 * j); };
  const double base = mc::last_passage(n, h0, w);
  for (int i = -n; i <= n; ++i) {
    for (int j = -i; j <= n; ++j) {
      if (i > n) continue;
      const double bumped = mc::last_passage(n, h0, [&](int a, int b) { return w(a, b) + (a == i && b == j ? 0.7 : 0.0); });
      EXPECT_GE(bumped, base);
    }
  }
}

TEST(Lpp, VarianceGrowsWithSigma) {
  double prev = 0.0;
  std::uint64_t stream = 0;
  for (double sigma : {0.0, 0.5, 1.0}) {
    mc::LppConfig cfg;
    cfg.lattice_size = 128;
    cfg.sigma = sigma;
    cfg.replications = 1500;
    const double v = mc::simulate_lpp_height(cfg, {21, stream++}).variance();
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Lpp, FlatCloseToGoeAtModerateSize) {
  mc::LppConfig cfg;
  cfg.lattice_size = 256;
  cfg.replications = 1000;
  const auto d = mc::simulate_lpp_height(cfg, {31, 0});
  const double k = std::pow(2.0, 2.0 / 3.0);
  const double ks = d.ks_statistic([&](double s) { return kpztail::tracy_widom::goe_cdf(k * s).value; });
  EXPECT_LT(ks, 0.12);
}

TEST(Lpp, ConfigValidation) {
  mc::LppConfig cfg;
  cfg.lattice_size = 32;
  EXPECT_THROW(cfg.validate(), kpztail::ConfigError);
  cfg.lattice_size = 1000;
  cfg.memory_budget_bytes = 100;
  EXPECT_THROW(cfg.validate(), kpztail::ResourceError);
}
