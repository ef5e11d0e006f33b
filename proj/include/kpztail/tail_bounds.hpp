#pragma once

// Explicit tail bounds for sup-of-Airy2 variational formulas: the geometric
// sum lemma, finite-interval and parabola bounds for Airy2, the Laplace
// analysis behind the Brownian-initial-data bounds, and deterministic profiles.
// Every bound is returned as a natural log.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kpztail/core.hpp"
#include "kpztail/groeneboom.hpp"
#include "kpztail/quadrature.hpp"
#include "kpztail/tracy_widom.hpp"

namespace kpztail::tail_bounds {

/// 1/(4 sqrt(2 pi)): prefactor of the GOE-based bound on sup over an interval.
inline const double kIntervalConstant = 1.0 / (4.0 * std::sqrt(2.0 * constants::pi));

/// Constant of the a/s^{1/4} finite-interval bound: the union bound over
/// ceil(a sqrt s) <= 2 a sqrt s pieces, e^{8/3} from
/// -(4/3)(s-1/s)^{3/2} <= -(4/3)s^{3/2} + 8/3, and (s-1/s)^{-3/4} <= (4/3)^{3/4} s^{-3/4} for s >= 2.
inline const double kFiniteIntervalConstant = 2.0 * kIntervalConstant * std::exp(8.0 / 3.0) * std::pow(4.0 / 3.0, 0.75);

/// Default constant of the closed-form parabola bound; the supremum of
/// (assembled series)/(closed form without C) over s in [4, 1e4], c in (0, 1)
/// is 0.8147, attained as c -> 0 at s = 4.
inline constexpr double kParabolaConstantDefault = 0.82;

/// Default constant of the closed-form upper bound for Brownian initial data.
/// Dominates the c-tuned Laplace chain for sigma in [0.5, 2] and all s >= 15
/// (its s -> infinity limit at sigma = 2 is about 314). The sigma dependence of
/// the closed form differs from the chain, so no sigma-uniform value exists.
inline constexpr double kBrownianUpperConstantDefault = 320.0;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

struct TailParams {
  double sigma = 1.0;
  double s = 0.0;
  double c = 0.5;

  void validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("TailParams: sigma must be positive");
    if (!std::isfinite(s) || !(s - 1.0 / s > 0.0) || !(s > 0.0)) throw DomainError("TailParams: need s - 1/s > 0");
    if (!(c > 0.0 && c < 1.0)) throw DomainError("TailParams: c must lie in (0, 1)");
  }
};

/// Named log-valued components alongside the headline bounds.
struct BoundReport {
  double lower = kNegInf;  // log
  double upper = kPosInf;  // log
  double exponent_coeff = std::numeric_limits<double>::quiet_NaN();
  std::string prefactor_notes;
  bool flagged = false;
  std::vector<std::pair<std::string, double>> parts;

  [[nodiscard]] double part(const std::string& name) const {
    for (const auto& [k, v] : parts) {
      if (k == name) return v;
    }
    throw ConfigError("BoundReport: no component named " + name);
  }
};

// ---------------------------------------------------------------------------
// Geometric-exponential sums

struct GeometricSum {
  double bound;
  double direct_sum;
};

/// sum_{k>=0} exp(-beta alpha^k) <= ln(1 + alpha/beta) / ln(alpha).
inline GeometricSum geometric_exp_sum_bound(double alpha, double beta) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError("geometric_exp_sum_bound: alpha must exceed 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("geometric_exp_sum_bound: beta must be positive");
  GeometricSum out{std::log1p(alpha / beta) / std::log(alpha), 0.0};
  double x = beta;
  for (int k = 0; k < 1000000; ++k) {
    const double term = std::exp(-x);
    out.direct_sum += term;
    if (x > 50.0 && term < 1e-18 * out.direct_sum) break;
    x *= alpha;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Airy2 over an interval and below a parabola

/// Sharp form C e^{-4/3 (s-a^2)^{3/2}} / (s-a^2)^{3/4}, valid for s > a^2.
inline double airy_finite_interval_bound_sharp_log(double a, double s) {
  require_finite(a, "airy_finite_interval_bound");
  require_finite(s, "airy_finite_interval_bound");
  if (!(a > 0.0)) throw DomainError("airy_finite_interval_bound: a must be positive");
  const double u = s - a * a;
  if (!(u > 0.0)) throw DomainError("airy_finite_interval_bound: need s > a^2");
  return std::log(kIntervalConstant) - 4.0 / 3.0 * std::pow(u, 1.5) - 0.75 * std::log(u);
}

namespace detail {
// Pieces of length 1/sqrt(s) cannot number fewer than one, hence the floor.
inline double finite_interval_log(double a, double s) {
  const double eff = std::max(a, 1.0 / std::sqrt(s));
  return std::log(kFiniteIntervalConstant * eff) - 0.25 * std::log(s) - 4.0 / 3.0 * std::pow(s, 1.5);
}
}  // namespace detail

/// C' a s^{-1/4} e^{-4/3 s^{3/2}} bounding P(sup_{[0,a]} A2 > s); requires s >= 2.
inline double airy_finite_interval_bound(double a, double s) {
  require_finite(a, "airy_finite_interval_bound");
  require_finite(s, "airy_finite_interval_bound");
  if (!(a > 0.0)) throw DomainError("airy_finite_interval_bound: a must be positive");
  if (!(s >= 2.0)) throw DomainError("airy_finite_interval_bound: requires s >= 2");
  return detail::finite_interval_log(a, s);
}

struct PartitionSpec {
  double x1 = 0.0;
  double gamma = 1.0;
  std::vector<double> terms;  // x_0 = 0, x_1, ..., x_n
};

/// x_1 = 1/sqrt(s), x_{k+1} = gamma x_k with gamma = 1 + sqrt(1-c)/2.
inline PartitionSpec make_partition(double c, double s, int n_terms = 32) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("make_partition: c must lie in (0, 1)");
  if (!(s > 0.0)) throw DomainError("make_partition: s must be positive");
  PartitionSpec p;
  p.x1 = 1.0 / std::sqrt(s);
  p.gamma = 1.0 + 0.5 * std::sqrt(1.0 - c);
  p.terms.push_back(0.0);
  double x = p.x1;
  for (int k = 1; k <= n_terms; ++k) {
    p.terms.push_back(x);
    x *= p.gamma;
  }
  return p;
}

/// Closed form C ln(s/(1-c)) / (s^{3/4} sqrt(1-c)) e^{-4/3 s^{3/2}}.
inline double airy_parabola_closed_form_log(double c, double s, double constant = kParabolaConstantDefault) {
  return std::log(constant) + std::log(std::log(s / (1.0 - c))) - 0.75 * std::log(s) - 0.5 * std::log1p(-c) -
         4.0 / 3.0 * std::pow(s, 1.5);
}

/// Union bound over the geometric partition:
/// 2C e^{-4/3 (s-1/s)^{3/2}}/(s-1/s)^{3/4} + 2C e^{-4/3 s^{3/2}} s^{-3/4} L(gamma^3, beta).
inline double airy_parabola_assembled_log(double c, double s, bool direct_sum = false) {
  const double u = s - 1.0 / s;
  const double first = std::log(2.0 * kIntervalConstant) - 4.0 / 3.0 * std::pow(u, 1.5) - 0.75 * std::log(u);
  const double gamma = 1.0 + 0.5 * std::sqrt(1.0 - c);
  const double beta = std::sqrt(3.0) * std::pow(1.0 - c, 1.5) / (2.0 * std::pow(s, 1.5));
  const GeometricSum g = geometric_exp_sum_bound(gamma * gamma * gamma, beta);
  const double rest = std::log(2.0 * kIntervalConstant) - 4.0 / 3.0 * std::pow(s, 1.5) - 0.75 * std::log(s) +
                      std::log(direct_sum ? g.direct_sum : g.bound);
  return log_add_exp(first, rest);
}

/// Bounds on P(sup_t (A2(t) - (1-c) t^2) > s). `upper` is the assembled series;
/// the closed form and the direct-sum variant are listed in `parts`.
inline BoundReport airy_parabola_upper_bound(double c, double s, double constant = kParabolaConstantDefault) {
  require_finite(c, "airy_parabola_upper_bound");
  require_finite(s, "airy_parabola_upper_bound");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("airy_parabola_upper_bound: c must lie in (0, 1)");
  if (!(s >= 4.0)) throw DomainError("airy_parabola_upper_bound: requires s >= 4");
  if (!(constant > 0.0)) throw ConfigError("airy_parabola_upper_bound: constant must be positive");
  BoundReport r;
  r.lower = tracy_widom::gue_tail_asymptotic_log(s);
  r.upper = airy_parabola_assembled_log(c, s);
  r.exponent_coeff = 4.0 / 3.0;
  r.prefactor_notes = "upper: union bound over x_1 = s^{-1/2}, x_{k+1} = gamma x_k with C = 1/(4 sqrt(2 pi)); "
                      "closed_form uses C = " + std::to_string(constant);
  r.parts = {{"assembled", r.upper},
             {"assembled_direct_sum", airy_parabola_assembled_log(c, s, true)},
             {"closed_form", airy_parabola_closed_form_log(c, s, constant)},
             {"gue_lower", r.lower}};
  return r;
}

// ---------------------------------------------------------------------------
// Brownian initial data

struct LaplaceAnalysis {
  double mu0;
  double g_at_mu0;
  double curvature_alpha;
};

/// Exponent g(mu) = -(4/3) sqrt((4/3) c/(4 sigma^4)) mu^{3/2} - (4/3)(1-mu)^{3/2}.
inline double laplace_exponent(double sigma, double c, double mu) {
  return -4.0 / 3.0 * std::sqrt(4.0 / 3.0 * c / (4.0 * std::pow(sigma, 4))) * std::pow(mu, 1.5) -
         4.0 / 3.0 * std::pow(1.0 - mu, 1.5);
}

inline LaplaceAnalysis laplace_analysis(double sigma, double c = 1.0) {
  require_finite(sigma, "laplace_analysis");
  if (!(sigma > 0.0)) throw DomainError("laplace_analysis: sigma must be positive");
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("laplace_analysis: c must lie in (0, 1]");
  const double s4 = std::pow(sigma, 4);
  const double d = c + 3.0 * s4;
  return {3.0 * s4 / d, -4.0 / 3.0 * std::sqrt(c) / std::sqrt(d), std::pow(d, 1.5) / (6.0 * s4 * std::sqrt(c))};
}

/// s >= 10 max(sigma^{-4}, sigma^4): where the Laplace approximations are trusted.
inline bool in_regime(double sigma, double s) {
  const double s4 = std::pow(sigma, 4);
  return s >= 10.0 * std::max(s4, 1.0 / s4);
}

inline double brownian_exponent_coeff(double sigma) {
  return 4.0 / 3.0 / std::sqrt(1.0 + 3.0 * std::pow(sigma, 4));
}

/// sigma^2 (1+3 sigma^4)^{1/4} / (4 sqrt(2 pi)) s^{-3/4} e^{-(4/3) s^{3/2}/sqrt(1+3 sigma^4)}.
inline double fsigma_lower_closed_form_log(double sigma, double s) {
  const double d = 1.0 + 3.0 * std::pow(sigma, 4);
  return std::log(sigma * sigma * std::pow(d, 0.25) * kIntervalConstant) - 0.75 * std::log(s) -
         brownian_exponent_coeff(sigma) * std::pow(s, 1.5);
}

/// E[1 - F_GUE(s - M_1)] with M_1 ~ f_{1/(4 sigma^4)}, by quadrature. Mass of M_1
/// below the Groeneboom cutoff is dropped, which keeps the value a lower bound.
inline EvalResult fsigma_lower_quadrature(double sigma, double s, double rel_tol = 1e-6) {
  require_finite(sigma, "fsigma_lower_quadrature");
  require_finite(s, "fsigma_lower_quadrature");
  if (!(sigma > 0.0)) throw DomainError("fsigma_lower_quadrature: sigma must be positive");
  const double cp = 1.0 / (4.0 * std::pow(sigma, 4));
  const double k = std::cbrt(2.0 * cp);
  const double m_lo = groeneboom::kXMin / k;
  const double m_hi = s - tracy_widom::kRangeLow;
  // Reference exponent so that the integrand stays O(1) near the saddle.
  const double ref = -brownian_exponent_coeff(sigma) * std::pow(std::max(s, 1.0), 1.5);
  AccuracyPolicy policy;
  policy.target_rel_tol = 1e-9;
  auto f = [&](double m) {
    const auto dens = groeneboom::density_fc(cp, m, {}, policy);
    const auto tail = tracy_widom::gue_ccdf(s - m);
    return std::exp(dens.log_value + tail.log_value - ref);
  };
  EvalResult out;
  double total = 0.0;
  double err = 0.0;
  if (m_hi > m_lo) {
    const auto q = quadrature::adaptive(f, m_lo, m_hi, rel_tol, 0.0, 400);
    total = q.value;
    err = q.error;
    out.nodes_used = q.evaluations;
  }
  // Beyond m_hi the GUE factor is within 1e-18 of its value at s - m_hi.
  const double upper_mass = groeneboom::g_tail(k * std::max(m_hi, m_lo), {}, policy).log_value +
                            tracy_widom::gue_ccdf(s - std::max(m_hi, m_lo)).log_value;
  total += std::exp(upper_mass - ref);
  out.log_value = std::log(total) + ref;
  out.value = std::exp(out.log_value);
  out.rel_err_est = err / total;
  out.abs_err_est = out.rel_err_est * out.value;
  out.flagged = !in_regime(sigma, s);
  return out;
}

struct LowerOptions {
  bool quadrature = false;
};

inline BoundReport fsigma_lower_bound(double sigma, double s, const LowerOptions& opt = {}) {
  TailParams{sigma, s, 0.5}.validate();
  BoundReport r;
  r.lower = fsigma_lower_closed_form_log(sigma, s);
  r.exponent_coeff = brownian_exponent_coeff(sigma);
  r.flagged = !in_regime(sigma, s);
  r.prefactor_notes = "closed form with C1 = 1/(4 sqrt(2 pi))";
  r.parts = {{"closed_form", r.lower}};
  if (opt.quadrature) r.parts.emplace_back("quadrature", fsigma_lower_quadrature(sigma, s).log_value);
  return r;
}

/// Tuned split 1 - c = c~ s^{-3/2} with c~ = (1+3 sigma^4)^{3/2} / (4 sigma^4).
inline double tuned_split(double sigma, double s) {
  const double ct = 0.25 * std::pow(1.0 + 3.0 * std::pow(sigma, 4), 1.5) / std::pow(sigma, 4);
  return 1.0 - ct * std::pow(s, -1.5);
}

/// Upper bound before tuning c, from conditioning on M_c, the closed-form
/// parabola bound and a Laplace step at mu0 against the two-sided density of M_c
/// (twice the one-sided leading term):
///   C 4 sqrt(2 pi) sigma^2 / sqrt(c + 3 sigma^4) ln(s/(1-c)) / sqrt(1-c) e^{-(4/3) sqrt(c/(c+3 sigma^4)) s^{3/2}}.
inline double fsigma_upper_at_c_log(double sigma, double s, double c, double constant = kParabolaConstantDefault) {
  TailParams{sigma, s, c}.validate();
  const double d = c + 3.0 * std::pow(sigma, 4);
  return std::log(constant * 4.0 * std::sqrt(2.0 * constants::pi) * sigma * sigma / std::sqrt(d)) +
         std::log(std::log(s / (1.0 - c))) - 0.5 * std::log1p(-c) - 4.0 / 3.0 * std::sqrt(c / d) * std::pow(s, 1.5);
}

/// C2 sigma^6 (1+3 sigma^4)^{-2} s^{3/4} ln(s) e^{-(4/3) s^{3/2}/sqrt(1+3 sigma^4)}.
inline double fsigma_upper_closed_form_log(double sigma, double s, double constant = kBrownianUpperConstantDefault) {
  const double d = 1.0 + 3.0 * std::pow(sigma, 4);
  return std::log(constant * std::pow(sigma, 6) / (d * d)) + 0.75 * std::log(s) + std::log(std::log(s)) -
         brownian_exponent_coeff(sigma) * std::pow(s, 1.5);
}

struct UpperOptions {
  double brownian_constant = kBrownianUpperConstantDefault;
  double parabola_constant = kParabolaConstantDefault;
};

inline BoundReport fsigma_upper_bound(double sigma, double s, const UpperOptions& opt = {}) {
  TailParams{sigma, s, 0.5}.validate();
  if (!(s > 1.0)) throw DomainError("fsigma_upper_bound: requires s > 1");
  BoundReport r;
  r.upper = fsigma_upper_closed_form_log(sigma, s, opt.brownian_constant);
  r.exponent_coeff = brownian_exponent_coeff(sigma);
  r.flagged = !in_regime(sigma, s);
  r.prefactor_notes = "closed form with C2 = " + std::to_string(opt.brownian_constant) +
                      "; tuned_chain is the c-parametrized bound at the tuned split";
  r.parts = {{"closed_form", r.upper}};
  const double c = tuned_split(sigma, s);
  if (c > 0.0 && c < 1.0) r.parts.emplace_back("tuned_chain", fsigma_upper_at_c_log(sigma, s, c, opt.parabola_constant));
  return r;
}

/// Both sides of the sandwich for 1 - F^{(sigma)}(s).
inline BoundReport fsigma_bounds(double sigma, double s, const LowerOptions& lo = {}, const UpperOptions& up = {}) {
  BoundReport l = fsigma_lower_bound(sigma, s, lo);
  const BoundReport u = fsigma_upper_bound(sigma, s, up);
  l.upper = u.upper;
  l.prefactor_notes += "; " + u.prefactor_notes;
  std::vector<std::pair<std::string, double>> parts;
  for (const auto& [k, v] : l.parts) parts.emplace_back("lower_" + k, v);
  for (const auto& [k, v] : u.parts) parts.emplace_back("upper_" + k, v);
  l.parts = std::move(parts);
  return l;
}

// ---------------------------------------------------------------------------
// Deterministic initial profiles

struct ProfileSpec {
  std::function<double(double)> h0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<double> knots;  // tabulation points, checked exactly
  double A = 0.0;
  double epsilon = 0.5;
  // Filled by compute_kappa.
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double tau = std::numeric_limits<double>::quiet_NaN();
  double M = std::numeric_limits<double>::quiet_NaN();
  bool resolved = false;

  /// Piecewise-linear profile through the samples (t ascending after sorting).
  static ProfileSpec from_samples(std::vector<std::pair<double, double>> samples, double A, double epsilon) {
    if (samples.size() < 2) throw ConfigError("ProfileSpec: need at least two samples");
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second)) {
        throw DomainError("ProfileSpec: non-finite sample");
      }
      if (i > 0 && !(samples[i].first > samples[i - 1].first)) throw ConfigError("ProfileSpec: duplicate sample time");
    }
    ProfileSpec p;
    p.t_min = samples.front().first;
    p.t_max = samples.back().first;
    p.A = A;
    p.epsilon = epsilon;
    for (const auto& s : samples) p.knots.push_back(s.first);
    p.h0 = [samples](double t) {
      auto it = std::lower_bound(samples.begin(), samples.end(), std::make_pair(t, -kPosInf));
      if (it == samples.begin()) return samples.front().second;
      if (it == samples.end()) return samples.back().second;
      const auto& [t1, y1] = *it;
      const auto& [t0, y0] = *(it - 1);
      return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
    };
    return p;
  }

  static ProfileSpec from_function(std::function<double(double)> f, double t_min, double t_max, double A,
                                   double epsilon) {
    ProfileSpec p;
    p.h0 = std::move(f);
    p.t_min = t_min;
    p.t_max = t_max;
    p.A = A;
    p.epsilon = epsilon;
    return p;
  }

  /// Same profile shifted up by delta; the certificate constant moves with it.
  [[nodiscard]] ProfileSpec shifted(double delta) const {
    ProfileSpec p = *this;
    auto f = h0;
    p.h0 = [f, delta](double t) { return f(t) + delta; };
    p.A = A + delta;
    p.resolved = false;
    return p;
  }
};

struct KappaSearch {
  double coarse_step = 0.01;
  double tol = 1e-8;
  int max_iter = 200;
};

struct KappaResult {
  double kappa;
  double tau;
  double M;
};

inline KappaResult compute_kappa(ProfileSpec& p, const KappaSearch& cfg = {}) {
  if (!p.h0) throw ConfigError("compute_kappa: profile has no h0");
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw ConfigError("compute_kappa: epsilon must lie in (0, 1)");
  if (!(p.t_min < 0.0 && p.t_max > 0.0)) throw ConfigError("compute_kappa: tabulation must straddle t = 0");
  if (!(cfg.coarse_step > 0.0) || !(cfg.tol > 0.0)) throw ConfigError("compute_kappa: bad search config");
  const double eps = p.epsilon;
  auto slack = [](double a, double t) { return 1e-12 * (1.0 + std::abs(a) + t * t); };

  std::vector<double> grid;
  const auto n = static_cast<long>(std::ceil((p.t_max - p.t_min) / cfg.coarse_step));
  for (long i = 0; i <= n; ++i) grid.push_back(std::min(p.t_min + static_cast<double>(i) * cfg.coarse_step, p.t_max));
  grid.insert(grid.end(), p.knots.begin(), p.knots.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double best = kNegInf;
  double tau = 0.0;
  for (double t : grid) {
    const double h = p.h0(t);
    require_finite(h, "compute_kappa");
    if (h > p.A + (1.0 - eps) * t * t + slack(p.A, t)) {
      throw CertificateError("profile violates h0(t) <= A + (1 - epsilon) t^2 at t = " + std::to_string(t));
    }
    if (h - t * t > best) {
      best = h - t * t;
      tau = t;
    }
  }

  // Golden-section refinement of h0(t) - t^2 around the coarse maximizer.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(p.t_min, tau - cfg.coarse_step);
  double b = std::min(p.t_max, tau + cfg.coarse_step);
  auto obj = [&](double t) { return p.h0(t) - t * t; };
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = obj(x1);
  double f2 = obj(x2);
  int iter = 0;
  for (; iter < cfg.max_iter && b - a > cfg.tol; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = obj(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = obj(x1);
    }
  }
  if (b - a > cfg.tol) throw NonConvergence("compute_kappa: refinement did not reach tolerance");
  const double tm = 0.5 * (a + b);
  if (obj(tm) > best) {
    best = obj(tm);
    tau = tm;
  }

  // Outside the table only the certificate is known: h0 - t^2 <= A - epsilon t^2.
  const double edge = std::min(-p.t_min, p.t_max);
  if (p.A - eps * edge * edge > best + slack(p.A, edge)) {
    throw CertificateError("tabulation too narrow: the growth certificate allows h0 - t^2 above kappa outside it");
  }

  // M: beyond it h0(t) <= kappa + (1 - epsilon/2) t^2, checked on the grid inside
  // the table and from the certificate outside it.
  double m_table = 0.0;
  for (double t : grid) {
    if (p.h0(t) > best + (1.0 - 0.5 * eps) * t * t + slack(best, t)) {
      m_table = std::max(m_table, std::abs(t) + cfg.coarse_step);
    }
  }
  const double m_out = std::sqrt(2.0 * std::max(p.A - best, 0.0) / eps);
  p.kappa = best;
  p.tau = tau;
  p.M = std::max(m_table, m_out);
  p.resolved = true;
  return {p.kappa, p.tau, p.M};
}

/// Bounds as a function of u = s - kappa only.
inline BoundReport deterministic_bounds_at(double u, double M, double epsilon,
                                           double parabola_constant = kParabolaConstantDefault) {
  if (!(u >= 4.0)) throw DomainError("deterministic_profile_bounds: requires s - kappa >= 4");
  BoundReport r;
  r.lower = tracy_widom::gue_tail_asymptotic_log(u);
  const double finite = std::log(2.0) + detail::finite_interval_log(M, u);
  const BoundReport par = airy_parabola_upper_bound(1.0 - 0.5 * epsilon, u, parabola_constant);
  r.upper = log_add_exp(finite, par.upper);
  r.exponent_coeff = 4.0 / 3.0;
  r.prefactor_notes = "upper = 2 x finite-interval bound on [0, M] + parabola bound with 1 - c = epsilon/2, at s - kappa";
  r.parts = {{"gue_lower", r.lower}, {"finite_interval", finite}, {"parabola", par.upper}};
  return r;
}

inline BoundReport deterministic_profile_bounds(ProfileSpec& profile, double s,
                                                double parabola_constant = kParabolaConstantDefault) {
  require_finite(s, "deterministic_profile_bounds");
  if (!profile.resolved) compute_kappa(profile);
  BoundReport r = deterministic_bounds_at(s - profile.kappa, profile.M, profile.epsilon, parabola_constant);
  r.parts.emplace_back("kappa", profile.kappa);
  return r;
}

}  // namespace kpztail::tail_bounds
