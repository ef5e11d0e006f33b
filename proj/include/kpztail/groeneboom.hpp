#pragma once

// Groeneboom's distribution G(x) = P(max_{t in R} (B(t) - t^2/2) >= x) and the
// density of max_t (B(t) - c t^2). The contour integral
//   H(x) = (1/2i) int Hi(z) Ai(z + a) / Ai(z) dz,  a = 2^{1/3} x,
// along a vertical line right of the Airy zeros is the one-sided tail
// P(max_{t >= 0} (B(t) - t^2/2) >= x); the two sides are independent, so
// G = 1 - (1 - H)^2 = H (2 - H).

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "kpztail/core.hpp"
#include "kpztail/quadrature.hpp"
#include "kpztail/special_functions.hpp"

namespace kpztail::groeneboom {

/// Below this x the vertical-line integrand decays too slowly to be practical.
inline constexpr double kXMin = 0.3;

enum class Refinement { fixed, adaptive };

/// Vertical line z = offset + i a v, v in R, with a = 2^{1/3} x.
struct ContourSpec {
  std::optional<double> offset;  // unset: a/3, the saddle-point choice
  double half_extent = 4.0;      // first panel [0, V] in units of v
  int node_count = 64;           // Gauss-Legendre nodes per panel (fixed mode)
  Refinement refinement_policy = Refinement::adaptive;

  [[nodiscard]] double resolved_offset(double x) const { return offset.value_or(constants::cbrt2 * x / 3.0); }

  void validate(double x) const {
    const double off = resolved_offset(x);
    if (!std::isfinite(off) || !(off > constants::airy_zero_1)) {
      throw ContourError("contour offset must lie right of the first Airy zero -2.33810741");
    }
    if (!(half_extent > 0.0) || !std::isfinite(half_extent)) throw ContourError("half_extent must be positive");
    if (node_count < 16) throw ContourError("node_count must be at least 16");
  }
};

namespace detail {

enum class Kind { tail, derivative };

// Integrand Re f(off + i a v) * a, divided by exp(shift).
struct LineIntegrand {
  double x, a, off, shift;
  Kind kind;
  AccuracyPolicy policy;

  double operator()(double v) const {
    const Complex z(off, a * v);
    const auto hi = special::scorer_hi_scaled_repr(z, policy);
    const auto den = special::airy_ai_scaled_repr(z, policy);
    const auto num = kind == Kind::tail ? special::airy_ai_scaled_repr(z + a, policy)
                                        : special::airy_ai_prime_scaled_repr(z + a, policy);
    const Complex log_part = hi.log_scale + num.log_scale - den.log_scale - shift;
    if (log_part.real() < -745.0) return 0.0;
    Complex f = hi.mantissa * num.mantissa / den.mantissa * std::exp(log_part);
    if (kind == Kind::derivative) f *= -constants::cbrt2;
    return f.real() * a;
  }
};

struct LineResult {
  double value = 0.0;  // scaled by exp(-shift)
  double error = 0.0;
  double l1 = 0.0;
  long nodes = 0;
};

inline LineResult fixed_panel(const LineIntegrand& f, double lo, double hi, int n) {
  const auto rule = quadrature::gauss_legendre(static_cast<std::size_t>(n), lo, hi);
  const auto coarse = quadrature::gauss_legendre(static_cast<std::size_t>(n / 2), lo, hi);
  LineResult r;
  double fine_sum = 0.0;
  double coarse_sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double term = rule.weights[i] * f(rule.nodes[i]);
    fine_sum += term;
    r.l1 += std::abs(term);
  }
  for (std::size_t i = 0; i < coarse.nodes.size(); ++i) coarse_sum += coarse.weights[i] * f(coarse.nodes[i]);
  r.value = fine_sum;
  r.error = std::abs(fine_sum - coarse_sum);
  r.nodes = static_cast<long>(rule.nodes.size() + coarse.nodes.size());
  return r;
}

inline LineResult integrate_line(const LineIntegrand& f, const ContourSpec& contour, double rel_tol) {
  constexpr int kMaxDoublings = 48;
  auto panel = [&](double lo, double hi, double abs_tol) {
    if (contour.refinement_policy == Refinement::fixed) return fixed_panel(f, lo, hi, contour.node_count);
    const auto q = quadrature::adaptive(f, lo, hi, rel_tol, abs_tol, 2000);
    return LineResult{q.value, q.error, q.l1, q.evaluations};
  };
  LineResult total = panel(0.0, contour.half_extent, 0.0);
  double lo = contour.half_extent;
  for (int k = 0; k < kMaxDoublings; ++k) {
    // Tail panels only need accuracy relative to the running total.
    const LineResult p = panel(lo, 2.0 * lo, 0.1 * rel_tol * std::abs(total.value));
    total.value += p.value;
    total.error += p.error;
    total.nodes += p.nodes;
    lo *= 2.0;
    // Stop once the newest panel is negligible against the accumulated
    // tolerance; L1 rather than the value so that cancellation cannot stop it early.
    if (p.l1 < 1e-3 * rel_tol * std::abs(total.value)) return total;
  }
  throw NonConvergence("groeneboom: contour truncation did not converge");
}

inline EvalResult evaluate(double x, const ContourSpec& contour, const AccuracyPolicy& policy, Kind kind) {
  require_finite(x, "groeneboom");
  policy.validate();
  if (!(x >= kXMin)) {
    throw DomainError("groeneboom: x must be at least " + std::to_string(kXMin) + " (use the Monte Carlo estimator below)");
  }
  contour.validate(x);
  const double a = constants::cbrt2 * x;
  const double off = contour.resolved_offset(x);
  // Exponential size of the integrand at v = 0; this is the exact G exponent
  // -(4/3) sqrt(2/3) x^{3/2} when off = a/3.
  const double shift = (2.0 * zeta(Complex(off, 0.0)) - zeta(Complex(off + a, 0.0))).real();
  const double rel_tol = std::max(policy.target_rel_tol, 1e-14);
  const LineIntegrand f{x, a, off, shift, kind, policy};
  const LineResult line = integrate_line(f, contour, rel_tol);

  EvalResult out;
  out.nodes_used = line.nodes;
  if (!(line.value > 0.0)) {
    // Cancellation ate the signal; report the bound and flag it.
    out.value = 0.0;
    out.log_value = -std::numeric_limits<double>::infinity();
    out.abs_err_est = line.error * std::exp(shift);
    out.rel_err_est = std::numeric_limits<double>::infinity();
    out.flagged = true;
    return out;
  }
  out.log_value = std::log(line.value) + shift;
  out.value = std::exp(out.log_value);
  out.rel_err_est = line.error / line.value;
  out.abs_err_est = out.rel_err_est * out.value;
  return out;
}

}  // namespace detail

/// One-sided tail H(x) for x >= 0.3, with log_value for exponentially small results.
inline EvalResult g_tail_one_sided(double x, const ContourSpec& contour = {}, const AccuracyPolicy& policy = {}) {
  return detail::evaluate(x, contour, policy, detail::Kind::tail);
}

/// -H'(x) >= 0.
inline EvalResult g_tail_one_sided_derivative(double x, const ContourSpec& contour = {},
                                              const AccuracyPolicy& policy = {}) {
  return detail::evaluate(x, contour, policy, detail::Kind::derivative);
}

/// Two-sided G(x) = H (2 - H) for x >= 0.3.
inline EvalResult g_tail(double x, const ContourSpec& contour = {}, const AccuracyPolicy& policy = {}) {
  EvalResult r = g_tail_one_sided(x, contour, policy);
  if (r.flagged) return r;
  const double h = r.value;
  r.log_value += std::log(2.0 - h);
  r.value = std::exp(r.log_value);
  r.rel_err_est *= (2.0 - 2.0 * h) / (2.0 - h);
  r.abs_err_est = r.rel_err_est * r.value;
  return r;
}

/// -G'(x) = 2 (1 - H) (-H') >= 0.
inline EvalResult g_tail_derivative(double x, const ContourSpec& contour = {}, const AccuracyPolicy& policy = {}) {
  const EvalResult h = g_tail_one_sided(x, contour, policy);
  EvalResult r = g_tail_one_sided_derivative(x, contour, policy);
  r.flagged = r.flagged || h.flagged;
  if (r.flagged) return r;
  r.log_value += std::log(2.0) + std::log1p(-h.value);
  r.value = std::exp(r.log_value);
  r.rel_err_est += h.abs_err_est / (1.0 - h.value);
  r.abs_err_est = r.rel_err_est * r.value;
  r.nodes_used += h.nodes_used;
  return r;
}

namespace detail {
inline EvalResult scale_density(EvalResult r, double k) {
  r.value *= k;
  r.log_value += std::log(k);
  r.abs_err_est *= k;
  return r;
}
}  // namespace detail

/// Density of max_{t in R} (B(t) - c t^2): f_c(x) = (2c)^{1/3} (-G')((2c)^{1/3} x).
inline EvalResult density_fc(double c, double x, const ContourSpec& contour = {}, const AccuracyPolicy& policy = {}) {
  require_finite(c, "density_fc");
  if (!(c > 0.0)) throw DomainError("density_fc: c must be positive");
  const double k = std::cbrt(2.0 * c);
  return detail::scale_density(g_tail_derivative(k * x, contour, policy), k);
}

/// Density of max_{t >= 0} (B(t) - c t^2).
inline EvalResult density_fc_one_sided(double c, double x, const ContourSpec& contour = {},
                                       const AccuracyPolicy& policy = {}) {
  require_finite(c, "density_fc");
  if (!(c > 0.0)) throw DomainError("density_fc: c must be positive");
  const double k = std::cbrt(2.0 * c);
  return detail::scale_density(g_tail_one_sided_derivative(k * x, contour, policy), k);
}

/// Leading large-x terms of the one-sided quantities H, -H' and the one-sided
/// density; the two-sided ones are twice these to leading order. Log variants
/// return natural logs.
inline double g_asymptotic_log(double x) {
  require_finite(x, "g_asymptotic");
  return -0.5 * std::log(3.0) - 4.0 / 3.0 * std::sqrt(2.0 / 3.0) * std::pow(x, 1.5);
}
inline double g_asymptotic(double x) { return std::exp(g_asymptotic_log(x)); }

inline double g_derivative_asymptotic_log(double x) {
  require_finite(x, "g_derivative_asymptotic");
  return std::log(2.0 * std::sqrt(2.0) / 3.0) - 4.0 / 3.0 * std::sqrt(2.0 / 3.0) * std::pow(x, 1.5) + 0.5 * std::log(x);
}
inline double g_derivative_asymptotic(double x) { return std::exp(g_derivative_asymptotic_log(x)); }

inline double density_fc_asymptotic_log(double c, double x) {
  require_finite(x, "density_fc_asymptotic");
  if (!(c > 0.0)) throw DomainError("density_fc_asymptotic: c must be positive");
  return std::log(4.0 / 3.0 * std::sqrt(c)) - 4.0 / 3.0 * std::sqrt(4.0 / 3.0 * c) * std::pow(x, 1.5) + 0.5 * std::log(x);
}
inline double density_fc_asymptotic(double c, double x) { return std::exp(density_fc_asymptotic_log(c, x)); }

}  // namespace kpztail::groeneboom
