#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "kpztail/quadrature.hpp"
#include "kpztail/special_functions.hpp"

namespace {

using kpztail::Complex;
namespace sf = kpztail::special;
constexpr double pi = kpztail::constants::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

struct Ref {
  Complex z;
  Complex value;
};

// Reference values from tests/oracles/generate_oracles.py (mpmath, 30 digits).
const std::vector<Ref> kAiRef = {
    {{1.0, 2.0}, {-0.2193862549814275574, -0.17538591140810941789}},
    {{10.0, 0.0}, {1.1047532552898685934e-10, 0.0}},
    {{-5.0, 3.0}, {146.42691651327136841, -74.580881328828801716}},
    {{3.0, -4.0}, {0.014554546690944634862, 0.047435251515492836146}},
    {{3.53553390593273762200, 3.53553390593273762200}, {0.0076230880173106594142, -0.0077121774709518150263}},
    {{-8.0, 0.0}, {-0.052705050356386202622, 0.0}},
    {{0.0, 12.0}, {20659441.479505008861, -44627666.757474334095}},
    {{-2.5, 0.0}, {-0.11232506769296608919, 0.0}},
    {{4.0, 0.0}, {0.00095156385120480187362, 0.0}},
    {{7.0, 0.5}, {1.7505714491843948514e-7, -7.4641147377721333952e-7}},
    {{-6.0, -6.0}, {571985.54098144059062, 365041.17725298604199}},
    {{1.7, 1.1}, {-0.00064360295972768977227, -0.066138561149353450576}},
    {{-19.0211303259030718734530426795, 6.18033988749894715518184313898},
     {-42098108523.284890608, 63534785831.029331927}},
};

const std::vector<Ref> kAipRef = {
    {{1.0, 2.0}, {0.17044497817891482257, 0.38762243941329509025}},
    {{10.0, 0.0}, {-3.5206336767389236366e-10, 0.0}},
    {{-5.0, 3.0}, {-260.67308556061395476, -292.42741147304087977}},
    {{3.0, -4.0}, {-0.075209961195903029036, -0.08236407715553779509}},
    {{-8.0, 0.0}, {0.93556093819830655103, 0.0}},
    {{0.0, 12.0}, {-158985314.73690398267, 59155301.224640708934}},
    {{4.0, 0.0}, {-0.0019586409502041789001, 0.0}},
    {{7.0, 0.5}, {-5.3821210338193727897e-7, 1.9856615332448456408e-6}},
    {{-6.0, -6.0}, {-1599971.7399748243585, 1128207.1787681939274}},
};

const std::vector<Ref> kHiRef = {
    {{2.0, 1.0}, {0.62295694383239940183, 2.5769855171661015694}},
    {{30.0, 0.0}, {9.0572885121513069519e+46, 0.0}},
    {{5.0, 7.0}, {-2.899059800973695213, -2.3648092728409871711}},
    {{-4.0, 0.0}, {0.07756535667970371359, 0.0}},
    {{-10.0, 2.0}, {0.030565501987285552745, 0.0060805900171272204383}},
    {{50.0, 0.0}, {4.9090996994442193288e+101, 0.0}},
    {{0.5, 0.0}, {0.60955599982659729561, 0.0}},
    {{3.5, 0.2}, {30.680408615811094449, 11.522004233001057617}},
    {{-1.0, 20.0}, {0.00078990665536439960624, 0.015876581398014555892}},
    {{2.0, 40.0}, {-0.0003971376101590513689, 0.0079378532077077352521}},
    {{8.0, 3.0}, {-297016.08801468380676, 445697.67162719991003}},
    {{-30.0, -5.0}, {0.010322976574537984633, -0.0017201379290917744064}},
};

TEST(AiryAi, ValueAtOrigin) {
  EXPECT_NEAR(sf::airy_ai(0.0), 0.3550280539, 1e-10);
  EXPECT_NEAR(sf::airy_ai_prime(0.0), -0.2588194038, 1e-10);
}

TEST(AiryAi, MatchesHighPrecisionReference) {
  for (const auto& r : kAiRef) {
    EXPECT_LT(rel(sf::airy_ai(r.z).value, r.value), 1e-12) << "z = " << r.z;
  }
  for (const auto& r : kAipRef) {
    EXPECT_LT(rel(sf::airy_ai_prime(r.z).value, r.value), 1e-12) << "z = " << r.z;
  }
}

TEST(AiryAi, ConjugateSymmetry) {
  const Complex w(1.0, 2.0);
  EXPECT_EQ(sf::airy_ai(std::conj(w)).value, std::conj(sf::airy_ai(w).value));
  for (double re = -12.0; re <= 12.0; re += 1.7) {
    for (double im = 0.3; im <= 12.0; im += 1.9) {
      const Complex z(re, im);
      EXPECT_LE(rel(sf::airy_ai(std::conj(z)).value, std::conj(sf::airy_ai(z).value)), 1e-12);
      EXPECT_LE(rel(sf::airy_ai_prime(std::conj(z)).value, std::conj(sf::airy_ai_prime(z).value)), 1e-12);
    }
  }
}

TEST(AiryAi, LeadingAsymptoticAtTen) {
  const double x = 10.0;
  const double lead = 0.5 / std::sqrt(pi) * std::pow(x, -0.25) * std::exp(-2.0 / 3.0 * std::pow(x, 1.5));
  EXPECT_LT(std::abs(sf::airy_ai(x) / lead - 1.0), 0.1);
  const double lead_p = -0.5 / std::sqrt(pi) * std::pow(x, 0.25) * std::exp(-2.0 / 3.0 * std::pow(x, 1.5));
  EXPECT_LT(std::abs(sf::airy_ai_prime(x) / lead_p - 1.0), 0.1);
}

TEST(AiryAi, DerivativeNegativeOnPositiveAxis) {
  for (double x : {0.5, 3.0, 9.9, 10.1, 25.0, 60.0}) EXPECT_LT(sf::airy_ai_prime(x), 0.0) << x;
}

TEST(AiryAi, OdeResidualByFiniteDifferences) {
  // Richardson-extrapolated second difference reproduces z Ai(z).
  for (double x = -6.0; x <= 8.0; x += 0.35) {
    auto d2 = [x](double h) {
      return (sf::airy_ai(x + h) - 2.0 * sf::airy_ai(x) + sf::airy_ai(x - h)) / (h * h);
    };
    const double h = 1e-2;
    const double extrap = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
    const double target = x * sf::airy_ai(x);
    EXPECT_LE(std::abs(extrap - target), 1e-6 * std::max(std::abs(target), 1e-3 * std::abs(sf::airy_ai(x)) + 1e-12))
        << "x = " << x;
  }
}

TEST(AiryAi, RegimesAgreeAtCrossoverRadii) {
  namespace d = sf::detail;
  const double tol = 10.0 * kpztail::AccuracyPolicy{}.target_rel_tol;
  for (double theta = 0.0; theta <= pi / 3.0 + 1e-12; theta += pi / 24.0) {
    // Inward stepping from the asymptotic anchor vs. the Maclaurin series.
    const Complex z = std::polar(sf::kAirySeriesRadius, theta);
    const auto series = d::taylor_step(0.0, d::kAi0, d::kAip0, z, 400);
    const Complex anchor = std::polar(sf::kAiryAsymptoticRadius, theta);
    const auto a = d::airy_asymptotic(anchor, 400);
    const auto ode = d::integrate_ray(anchor, a.ai, a.aip, z, 400);
    EXPECT_LT(rel(ode.y * std::exp(a.log_scale), series.y), tol) << theta;
    EXPECT_LT(rel(ode.yp * std::exp(a.log_scale), series.yp), tol) << theta;
  }
  for (double theta = pi / 3.0 + pi / 24.0; theta <= pi + 1e-12; theta += pi / 24.0) {
    // Outward stepping from the series disk vs. the asymptotic/connection formula.
    const Complex start = std::polar(sf::kAirySeriesRadius, theta);
    const auto s0 = d::taylor_step(0.0, d::kAi0, d::kAip0, start, 400);
    const Complex z = std::polar(sf::kAiryAsymptoticRadius, theta);
    const auto ode = d::integrate_ray(start, s0.y, s0.yp, z, 400);
    const auto asym = d::airy_upper(z, 400);
    EXPECT_LT(rel(ode.y, asym.ai * std::exp(asym.log_scale)), tol) << theta;
    EXPECT_LT(rel(ode.yp, asym.aip * std::exp(asym.log_scale)), tol) << theta;
  }
}

TEST(AiryAi, ScaledVariantAvoidsOverflow) {
  const Complex z(0.0, 400.0);
  EXPECT_THROW(sf::airy_ai(z), kpztail::OverflowError);
  const auto rep = sf::airy_ai_scaled_repr(z);
  EXPECT_TRUE(std::isfinite(rep.log_abs()));
  const auto scaled = sf::airy_ai_scaled(Complex(900.0, 0.0));
  EXPECT_NEAR(scaled.value.real(), 0.5 / std::sqrt(pi) * std::pow(900.0, -0.25), 1e-6);
}

TEST(AiryAi, RejectsNonFiniteInput) {
  EXPECT_THROW(sf::airy_ai(Complex(std::nan(""), 0.0)), kpztail::DomainError);
  EXPECT_THROW(sf::airy_ai_prime(Complex(0.0, INFINITY)), kpztail::DomainError);
}

TEST(ScorerHi, ValueAtOriginByDirectQuadrature) {
  // Independent route: the defining integral on the real line.
  auto f = [](double t) { return std::exp(-t * t * t / 3.0) / pi; };
  const double direct = kpztail::quadrature::adaptive(f, 0.0, 12.0, 1e-15).value;
  EXPECT_NEAR(direct, 0.4099510849, 1e-10);
  EXPECT_NEAR(sf::scorer_hi(0.0).value.real(), direct, 1e-14);
}

TEST(ScorerHi, MatchesHighPrecisionReference) {
  for (const auto& r : kHiRef) {
    const Complex v = sf::scorer_hi(r.z).value;
    EXPECT_LT(rel(v, r.value), 1e-12) << "z = " << r.z;
  }
}

TEST(ScorerHi, RealAsymptoticAtThirty) {
  const double x = 30.0;
  const double lead = std::pow(pi, -0.5) * std::pow(x, -0.25) * std::exp(2.0 / 3.0 * std::pow(x, 1.5));
  EXPECT_LT(std::abs(sf::scorer_hi(x).value.real() / lead - 1.0), 0.01);
}

TEST(ScorerHi, ConjugateSymmetry) {
  const Complex w(2.0, 1.0);
  EXPECT_EQ(sf::scorer_hi(std::conj(w)).value, std::conj(sf::scorer_hi(w).value));
  for (double re = -20.0; re <= 15.0; re += 2.3) {
    for (double im = 0.4; im <= 30.0; im += 3.1) {
      const Complex z(re, im);
      EXPECT_LE(rel(sf::scorer_hi(std::conj(z)).value, std::conj(sf::scorer_hi(z).value)), 1e-12);
    }
  }
}

TEST(ScorerHi, ScaledLeadingTerm) {
  for (double theta : {0.0, pi / 6.0}) {
    const Complex z = std::polar(50.0, theta);
    const Complex lead = std::pow(pi, -0.5) * std::pow(z, -0.25);
    const Complex v = sf::scorer_hi_scaled(z).value;
    EXPECT_LT(std::abs(v - lead), 1.0 * std::pow(50.0, -0.5)) << theta;
  }
}

TEST(ScorerHi, ScaledMatchesUnscaled) {
  const Complex z(0.5, 0.0);
  const Complex expect = sf::scorer_hi(z).value * std::exp(-kpztail::zeta(z));
  EXPECT_LT(rel(sf::scorer_hi_scaled(z).value, expect), 1e-15);
  for (double r : {0.7, 2.0, 3.5, 8.0, 20.0}) {
    for (double theta : {-0.3 * pi, -0.1, 0.0, 0.2, 0.3 * pi}) {
      const Complex zz = std::polar(r, theta);
      const Complex a = sf::scorer_hi_scaled(zz).value * std::exp(kpztail::zeta(zz));
      EXPECT_LT(rel(a, sf::scorer_hi(zz).value), 1e-12) << zz;
    }
  }
}

TEST(ScorerHi, RegimesAgreeAtAlgebraicSwitch) {
  namespace d = sf::detail;
  const double tol = 10.0 * kpztail::AccuracyPolicy{}.target_rel_tol;
  // Points just inside the algebraic regime, checked against the quadrature routes.
  for (double r : {sf::detail::kHiAlgebraicRadius, 20.0, 45.0}) {
    for (double theta = 0.45 * pi; theta <= pi + 1e-12; theta += pi / 20.0) {
      const Complex z = std::polar(r, theta);
      if (kpztail::zeta(z).real() > d::kHiAlgebraicMargin) continue;
      d::HiValue alg;
      ASSERT_TRUE(d::hi_algebraic(z, 400, alg)) << z;
      const auto quad = z.real() > 0.0 ? d::hi_shifted(z, 1e-15) : d::hi_rotated(z, 1e-15);
      EXPECT_LT(rel(alg.value.value(), quad.value.value()), tol) << z;
    }
  }
}

TEST(ScorerHi, ScaledRejectsOutsideSector) {
  EXPECT_THROW(sf::scorer_hi_scaled(Complex(-1.0, 1.0)), kpztail::DomainError);
  EXPECT_THROW(sf::scorer_hi_scaled(std::polar(4.0, pi / 3.0 + 0.01)), kpztail::DomainError);
}

TEST(ScorerHi, ModulusBoundedByRealPart) {
  for (double x = -2.0; x <= 10.0; x += 0.75) {
    const double bound = sf::scorer_hi(x).value.real() * (1.0 + 1e-10);
    for (double theta = pi / 2.0; theta <= 1.5 * pi + 1e-12; theta += pi / 10.0) {
      for (double y : {0.0, 1e-3, 0.4, 2.0, 7.0, 23.0, 50.0}) {
        const Complex z = x + std::polar(y, theta);
        EXPECT_LE(std::abs(sf::scorer_hi(z).value), bound) << z;
      }
    }
  }
}

TEST(ScorerHi, OverflowIsSignalled) {
  EXPECT_THROW(sf::scorer_hi(Complex(120.0, 0.0)), kpztail::OverflowError);
  const auto rep = sf::scorer_hi_scaled_repr(Complex(80.0, 0.0));
  EXPECT_NEAR(rep.log_abs(), 2.0 / 3.0 * std::pow(80.0, 1.5) - 0.5 * std::log(pi) - 0.25 * std::log(80.0), 1e-3);
}

TEST(ExpIntegral, ValueAtOneByDirectQuadrature) {
  auto f = [](double w) { return std::exp(-w) / w; };
  const double direct = kpztail::quadrature::adaptive(f, 1.0, 60.0, 1e-15).value;
  EXPECT_NEAR(direct, 0.2193839344, 1e-10);
  EXPECT_NEAR(sf::exp_integral_e1(1.0).value, direct, 1e-15);
}

TEST(ExpIntegral, MatchesReference) {
  const std::vector<std::pair<double, double>> ref = {
      {0.1, 1.8229239584193906159}, {0.5, 0.55977359477616081175},     {2.0, 0.048900510708061119567},
      {5.0, 0.0011482955912753257973}, {20.0, 9.8355252906498816904e-11}, {1e-4, 8.6332247045747053821}};
  for (auto [x, v] : ref) EXPECT_LT(std::abs(sf::exp_integral_e1(x).value / v - 1.0), 1e-13) << x;
}

TEST(ExpIntegral, ClassicalUpperBound) {
  for (double x = 1e-6; x < 300.0; x *= 1.37) {
    const auto e = sf::exp_integral_e1(x);
    EXPECT_LE(e.log_value, -x + std::log(std::log1p(1.0 / x))) << x;
  }
  EXPECT_LE(sf::exp_integral_e1(20.0).value, std::exp(-20.0) / 20.0 * 1.1);
}

TEST(ExpIntegral, DomainError) {
  EXPECT_THROW(sf::exp_integral_e1(0.0), kpztail::DomainError);
  EXPECT_THROW(sf::exp_integral_e1(-1.0), kpztail::DomainError);
}

}  // namespace
