#pragma once

// Airy Ai/Ai', Scorer Hi and the exponential integral E1 for real and complex
// arguments.
//
// Ai is evaluated in three regimes:
//   |z| <= kAirySeriesRadius           Maclaurin series
//   |z| >= kAiryAsymptoticRadius       asymptotic expansion in 1/zeta, with the
//                                      connection formula for |arg z| > 2pi/3
//   in between                         Taylor stepping of y'' = z y along the ray
//                                      through z, in the direction in which Ai is
//                                      the dominant solution
//
// Hi is evaluated by its Maclaurin series near the origin, by the saddle-point
// shifted representation
//   Hi(z) e^{-2/3 z^{3/2}} = (1/pi) int_{-sqrt z}^{inf} e^{-u^3/3 - sqrt(z) u^2} du
// in the right half-plane, and by the defining integral on a rotated ray in the
// left half-plane. Only the upper half-plane is computed directly; the lower
// half-plane follows from f(conj z) = conj f(z).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "kpztail/core.hpp"
#include "kpztail/quadrature.hpp"

namespace kpztail::special {

inline constexpr double kAirySeriesRadius = 2.0;
inline constexpr double kAiryAsymptoticRadius = 10.0;
inline constexpr double kHiSeriesRadius = 3.0;

namespace detail {

inline constexpr double kAi0 = 0.35502805388781723926;
inline constexpr double kAip0 = -0.25881940379280679841;
inline constexpr double kEps = 2.220446049250313e-16;

/// Ai and Ai' sharing a common scale factor exp(log_scale).
struct AiryPair {
  Complex ai{};
  Complex aip{};
  Complex log_scale{};
  double rel_err = 0.0;
  long terms = 0;
};

struct TaylorState {
  Complex y{};
  Complex yp{};
  double cond = 1.0;
  long terms = 0;
};

/// One Taylor step of y'' = z y from `center` to `center + h`.
/// Coefficients follow a_{n+2} = (center a_n + a_{n-1}) / ((n+2)(n+1)).
inline TaylorState taylor_step(Complex center, Complex y0, Complex y1, Complex h, int max_terms) {
  TaylorState st;
  // a_{n-1}, a_n, and the running powers h^n.
  Complex a_prev = 0.0;
  Complex a_cur = y0;
  Complex a_next = y1;
  Complex hn = 1.0;  // h^n for a_cur
  Complex sum = y0;
  Complex dsum = 0.0;
  double abs_sum = std::abs(y0);
  int quiet = 0;
  for (int n = 0; n < max_terms; ++n) {
    // a_{n+1} h^{n+1} contributes to y, (n+1) a_{n+1} h^n to y'.
    const Complex hn1 = hn * h;
    const Complex ty = a_next * hn1;
    const Complex typ = static_cast<double>(n + 1) * a_next * hn;
    sum += ty;
    dsum += typ;
    abs_sum += std::abs(ty);
    const double scale = std::max(std::abs(sum), std::abs(dsum));
    if (std::abs(ty) <= kEps * 0.25 * scale && std::abs(typ) <= kEps * 0.25 * scale) {
      if (++quiet >= 3 && n > 4) {
        st.y = sum;
        st.yp = dsum;
        st.cond = abs_sum / std::max(std::abs(sum), 1e-300);
        st.terms = n + 1;
        return st;
      }
    } else {
      quiet = 0;
    }
    const double nn = static_cast<double>(n);
    const Complex a_new = (center * a_cur + a_prev) / ((nn + 2.0) * (nn + 1.0));
    a_prev = a_cur;
    a_cur = a_next;
    a_next = a_new;
    hn = hn1;
  }
  throw NonConvergence("airy: Taylor series did not converge within max_terms");
}

/// Asymptotic expansion of Ai e^{zeta}, Ai' e^{zeta}, valid for |arg z| <= 2pi/3
/// and |z| large. Optimal truncation at the smallest term.
inline AiryPair airy_asymptotic(Complex z, int max_terms) {
  const Complex xi = zeta(z);
  const Complex inv_xi = 1.0 / xi;
  const Complex q = std::sqrt(std::sqrt(z));  // z^{1/4}
  Complex su = 1.0;
  Complex sv = 1.0;
  double u = 1.0;
  Complex p = 1.0;  // (-1/xi)^k
  double last = std::numeric_limits<double>::infinity();
  double tail = 0.0;
  long k = 1;
  for (; k < max_terms; ++k) {
    const double kk = static_cast<double>(k);
    u *= (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) / ((2.0 * kk - 1.0) * 216.0 * kk);
    const double v = -(6.0 * kk + 1.0) / (6.0 * kk - 1.0) * u;
    p *= -inv_xi;
    const double mag = std::abs(u * p);
    if (mag >= last) {
      tail = last;
      break;
    }
    su += u * p;
    sv += v * p;
    last = mag;
    tail = mag;
    if (mag < kEps * 0.01) break;
  }
  AiryPair out;
  out.ai = su / (2.0 * constants::sqrt_pi * q);
  out.aip = -sv * q / (2.0 * constants::sqrt_pi);
  out.log_scale = -xi;
  out.rel_err = tail + 4.0 * kEps;
  out.terms = k;
  return out;
}

/// Taylor-step the pair (y, y') from `from` to `to` along a straight segment.
inline TaylorState integrate_ray(Complex from, Complex y, Complex yp, Complex to, int max_terms) {
  const Complex delta = to - from;
  const double len = std::abs(delta);
  const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
  const Complex h = delta / static_cast<double>(steps);
  TaylorState acc{y, yp, 1.0, 0};
  double cond = 1.0;
  long terms = 0;
  Complex c = from;
  for (int i = 0; i < steps; ++i) {
    TaylorState st = taylor_step(c, acc.y, acc.yp, h, max_terms);
    cond = std::max(cond, st.cond);
    terms += st.terms;
    acc.y = st.y;
    acc.yp = st.yp;
    c = from + static_cast<double>(i + 1) * h;
  }
  acc.cond = cond * static_cast<double>(steps);
  acc.terms = terms;
  return acc;
}

/// Ai and Ai' for Im z >= 0.
inline AiryPair airy_upper(Complex z, int max_terms) {
  const double r = std::abs(z);
  const double theta = std::arg(z);
  if (r <= kAirySeriesRadius) {
    TaylorState st = taylor_step(0.0, kAi0, kAip0, z, max_terms);
    return {st.y, st.yp, 0.0, st.cond * kEps, st.terms};
  }
  if (r >= kAiryAsymptoticRadius) {
    if (theta <= 2.0 * constants::pi / 3.0) return airy_asymptotic(z, max_terms);
    // Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z), Ai'(z) = -w^2 Ai'(wz) - w Ai'(w^2 z).
    const Complex w = std::polar(1.0, 2.0 * constants::pi / 3.0);
    const Complex w2 = w * w;
    const AiryPair a = airy_asymptotic(w * z, max_terms);
    const AiryPair b = airy_asymptotic(w2 * z, max_terms);
    const Complex s = a.log_scale.real() >= b.log_scale.real() ? a.log_scale : b.log_scale;
    const Complex ea = std::exp(a.log_scale - s);
    const Complex eb = std::exp(b.log_scale - s);
    AiryPair out;
    out.ai = -w * a.ai * ea - w2 * b.ai * eb;
    out.aip = -w2 * a.aip * ea - w * b.aip * eb;
    out.log_scale = s;
    const double mag = std::abs(a.ai * ea) + std::abs(b.ai * eb);
    out.rel_err = std::max(a.rel_err, b.rel_err) * mag / std::max(std::abs(out.ai), 1e-300);
    out.terms = a.terms + b.terms;
    return out;
  }
  const Complex dir = std::polar(1.0, theta);
  if (theta <= constants::pi / 3.0) {
    // Ai is recessive outward here, so integrate inward from the asymptotic
    // anchor where it is known to full precision.
    const Complex anchor = kAiryAsymptoticRadius * dir;
    const AiryPair a = airy_asymptotic(anchor, max_terms);
    TaylorState st = integrate_ray(anchor, a.ai, a.aip, z, max_terms);
    return {st.y, st.yp, a.log_scale, a.rel_err + st.cond * kEps, a.terms + st.terms};
  }
  // Ai is dominant outward: integrate from the series disk.
  const Complex start = kAirySeriesRadius * dir;
  TaylorState s0 = taylor_step(0.0, kAi0, kAip0, start, max_terms);
  TaylorState st = integrate_ray(start, s0.y, s0.yp, z, max_terms);
  return {st.y, st.yp, 0.0, (s0.cond + st.cond) * kEps, s0.terms + st.terms};
}

inline AiryPair airy_pair(Complex z, int max_terms) {
  if (z.imag() >= 0.0) {
    AiryPair p = airy_upper(z, max_terms);
    if (z.imag() == 0.0 && z.real() >= 0.0) {
      p.ai.imag(0.0);
      p.aip.imag(0.0);
    } else if (z.imag() == 0.0) {
      // Negative real axis: fold any imaginary rounding into a real scale.
      const Complex v = p.ai * std::exp(p.log_scale);
      const Complex vp = p.aip * std::exp(p.log_scale);
      if (is_finite(v) && is_finite(vp)) {
        p.ai = v.real();
        p.aip = vp.real();
        p.log_scale = 0.0;
      }
    }
    return p;
  }
  AiryPair p = airy_upper(std::conj(z), max_terms);
  p.ai = std::conj(p.ai);
  p.aip = std::conj(p.aip);
  p.log_scale = std::conj(p.log_scale);
  return p;
}

// ---------------------------------------------------------------------------
// Scorer Hi

struct HiValue {
  ScaledComplex value;
  double rel_err = 0.0;
  long nodes = 0;
};

/// Maclaurin series Hi(z) = (1/pi) sum 3^{(k-2)/3} Gamma((k+1)/3) z^k / k!,
/// summed as three interleaved sequences with T_{k+3}/T_k = z^3/((k+2)(k+3)).
inline HiValue hi_series(Complex z, int max_terms) {
  const Complex z3 = z * z * z;
  std::array<Complex, 3> t = {std::pow(3.0, -2.0 / 3.0) * std::tgamma(1.0 / 3.0),
                              std::pow(3.0, -1.0 / 3.0) * std::tgamma(2.0 / 3.0) * z, 0.5 * z * z};
  Complex sum = t[0] + t[1] + t[2];
  double abs_sum = std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]);
  int quiet = 0;
  long k = 0;
  for (; k < max_terms; k += 3) {
    Complex block = 0.0;
    double block_abs = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double kk = static_cast<double>(k + j);
      t[j] *= z3 / ((kk + 2.0) * (kk + 3.0));
      block += t[j];
      block_abs += std::abs(t[j]);
    }
    sum += block;
    abs_sum += block_abs;
    if (block_abs <= kEps * 0.1 * std::abs(sum)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  if (k >= max_terms) throw NonConvergence("scorer_hi: series did not converge within max_terms");
  HiValue out;
  out.value = {sum / constants::pi, 0.0};
  out.rel_err = kEps * abs_sum / std::max(std::abs(sum), 1e-300);
  out.nodes = k;
  return out;
}

/// Right half-plane: Hi(z) = exp(zeta + shift) * (1/pi) int_Gamma exp(phi(u) - shift) du
/// with phi(u) = -u^3/3 - sqrt(z) u^2 and Gamma = [-sqrt z, -Re sqrt z] U [-Re sqrt z, inf).
inline HiValue hi_shifted(Complex z, double tol) {
  const Complex sz = std::sqrt(z);
  const Complex xi = zeta(z);
  const double shift = std::max(0.0, -xi.real());
  auto phi = [&](Complex u) { return -u * u * u / 3.0 - sz * u * u - shift; };
  Complex total = 0.0;
  double err = 0.0;
  long nodes = 0;
  const double im = sz.imag();
  if (im != 0.0) {
    auto f1 = [&](double lam) {
      const Complex u = -sz + Complex(0.0, lam * im);
      return std::exp(phi(u)) * Complex(0.0, im);
    };
    auto r1 = quadrature::adaptive(f1, 0.0, 1.0, tol);
    total += r1.value;
    err += r1.error;
    nodes += r1.evaluations;
  }
  const double re = sz.real();
  auto f2 = [&](double u) { return std::exp(phi(Complex(u, 0.0))); };
  if (re > 0.0) {
    auto r2 = quadrature::adaptive(f2, -re, 0.0, tol);
    total += r2.value;
    err += r2.error;
    nodes += r2.evaluations;
  }
  // Tail cut where re u^2 + u^3/3 exceeds 90 (beyond e^{-90} of the peak).
  double upper = 1.0;
  while (re * upper * upper + upper * upper * upper / 3.0 < 90.0) upper *= 1.5;
  auto r3 = quadrature::adaptive(f2, 0.0, upper, tol);
  total += r3.value;
  err += r3.error;
  nodes += r3.evaluations;
  HiValue out;
  out.value = {total / constants::pi, xi + shift};
  out.rel_err = err / std::max(std::abs(total), 1e-300) + 4.0 * kEps;
  out.nodes = nodes;
  return out;
}

/// Left half-plane, Im z >= 0: Hi(z) = (e^{i a}/pi) int_0^inf exp(-s^3 e^{3ia}/3 + z e^{ia} s) ds
/// on a ray rotated by a in [0, pi/7] so that z e^{ia} points into Re < 0.
inline HiValue hi_rotated(Complex z, double tol) {
  const double theta = std::arg(z);
  const double rot = std::clamp(constants::pi - theta, 0.0, constants::pi / 7.0);
  const Complex e1 = std::polar(1.0, rot);
  const Complex e3 = std::polar(1.0, 3.0 * rot);
  const Complex ze = z * e1;
  auto f = [&](double s) { return std::exp(-s * s * s * e3 / 3.0 + ze * s); };
  const double decay = -ze.real();
  const double cubic = e3.real() / 3.0;
  double upper = 1.0;
  while (decay * upper + cubic * upper * upper * upper < 90.0) upper *= 1.5;
  auto r = quadrature::adaptive(f, 0.0, upper, tol);
  HiValue out;
  out.value = {e1 * r.value / constants::pi, 0.0};
  out.rel_err = r.error / std::max(std::abs(r.value), 1e-300) + 4.0 * kEps;
  out.nodes = r.evaluations;
  return out;
}

/// Outside the sector |arg z| < pi/3, Hi(z) ~ -(1/(pi z)) sum (3k)!/(k! (3 z^3)^k)
/// up to a term of size exp(Re zeta). Summed to the smallest term; returns
/// false when that term is not below rounding.
inline bool hi_algebraic(Complex z, int max_terms, HiValue& out) {
  const Complex z3 = z * z * z;
  Complex term = 1.0;
  Complex sum = 1.0;
  double prev = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    const double kk = static_cast<double>(k);
    term *= (3.0 * kk + 1.0) * (3.0 * kk + 2.0) / z3;
    const double mag = std::abs(term);
    if (mag > prev) return false;
    sum += term;
    if (mag <= 0.1 * kEps * std::abs(sum)) {
      out.value = {-sum / (constants::pi * z), 0.0};
      out.rel_err = 4.0 * kEps;
      out.nodes = k + 1;
      return true;
    }
    prev = mag;
  }
  return false;
}

// Radius and exponent margin for the algebraic expansion; e^{-40} keeps the
// neglected exponential term below rounding relative to 1/|z|.
inline constexpr double kHiAlgebraicRadius = 12.0;
inline constexpr double kHiAlgebraicMargin = -40.0;

inline HiValue hi_upper(Complex z, const AccuracyPolicy& policy) {
  const double tol = std::clamp(0.1 * policy.target_rel_tol, 1e-15, 1e-6);
  if (std::abs(z) <= kHiSeriesRadius) return hi_series(z, policy.max_terms);
  if (std::abs(z) >= kHiAlgebraicRadius && zeta(z).real() <= kHiAlgebraicMargin) {
    HiValue h;
    if (hi_algebraic(z, policy.max_terms, h)) return h;
  }
  if (z.real() > 0.0) return hi_shifted(z, tol);
  return hi_rotated(z, tol);
}

inline HiValue hi_any(Complex z, const AccuracyPolicy& policy) {
  if (z.imag() >= 0.0) {
    HiValue h = hi_upper(z, policy);
    if (z.imag() == 0.0) {
      // Real axis: Hi is real; drop rounding noise.
      h.value.mantissa.imag(0.0);
      h.value.log_scale.imag(0.0);
    }
    return h;
  }
  HiValue h = hi_upper(std::conj(z), policy);
  h.value.mantissa = std::conj(h.value.mantissa);
  h.value.log_scale = std::conj(h.value.log_scale);
  return h;
}

inline ComplexEvalResult finish(Complex mantissa, Complex log_scale, double rel_err, long nodes, const char* what) {
  ComplexEvalResult out;
  out.log_value = std::log(std::abs(mantissa)) + log_scale.real();
  if (out.log_value > constants::log_max) {
    throw OverflowError(std::string(what) + ": value exceeds the double range; use the scaled variant");
  }
  out.value = mantissa * std::exp(log_scale);
  out.rel_err_est = rel_err;
  out.abs_err_est = rel_err * std::abs(out.value);
  out.nodes_used = nodes;
  return out;
}

}  // namespace detail

/// Ai(z) with the common scale factor kept separate; safe for any finite z.
inline ScaledComplex airy_ai_scaled_repr(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "airy_ai");
  const auto p = detail::airy_pair(z, policy.max_terms);
  return {p.ai, p.log_scale};
}

inline ScaledComplex airy_ai_prime_scaled_repr(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "airy_ai_prime");
  const auto p = detail::airy_pair(z, policy.max_terms);
  return {p.aip, p.log_scale};
}

inline ComplexEvalResult airy_ai(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "airy_ai");
  policy.validate();
  const auto p = detail::airy_pair(z, policy.max_terms);
  return detail::finish(p.ai, p.log_scale, p.rel_err, p.terms, "airy_ai");
}

inline ComplexEvalResult airy_ai_prime(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "airy_ai_prime");
  policy.validate();
  const auto p = detail::airy_pair(z, policy.max_terms);
  return detail::finish(p.aip, p.log_scale, p.rel_err, p.terms, "airy_ai_prime");
}

/// Ai(z) e^{2/3 z^{3/2}}.
inline ComplexEvalResult airy_ai_scaled(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "airy_ai_scaled");
  policy.validate();
  const auto p = detail::airy_pair(z, policy.max_terms);
  return detail::finish(p.ai, p.log_scale + zeta(z), p.rel_err, p.terms, "airy_ai_scaled");
}

/// Real-argument convenience wrappers.
inline double airy_ai(double x) { return airy_ai(Complex(x, 0.0)).value.real(); }
inline double airy_ai_prime(double x) { return airy_ai_prime(Complex(x, 0.0)).value.real(); }

/// Hi(z) as mantissa * exp(log_scale); never overflows.
inline ScaledComplex scorer_hi_scaled_repr(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "scorer_hi");
  return detail::hi_any(z, policy).value;
}

/// Hi(z) = (1/pi) int_0^inf exp(-t^3/3 + z t) dt.
inline ComplexEvalResult scorer_hi(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "scorer_hi");
  policy.validate();
  const auto h = detail::hi_any(z, policy);
  return detail::finish(h.value.mantissa, h.value.log_scale, h.rel_err, h.nodes, "scorer_hi");
}

/// Hi(z) e^{-2/3 z^{3/2}} for |arg z| < pi/3.
inline ComplexEvalResult scorer_hi_scaled(Complex z, const AccuracyPolicy& policy = {}) {
  require_finite(z, "scorer_hi_scaled");
  policy.validate();
  if (!(std::abs(std::arg(z)) < constants::pi / 3.0) || z == Complex(0.0, 0.0)) {
    throw DomainError("scorer_hi_scaled: requires |arg z| < pi/3");
  }
  const auto h = detail::hi_any(z, policy);
  return detail::finish(h.value.mantissa, h.value.log_scale - zeta(z), h.rel_err, h.nodes, "scorer_hi_scaled");
}

/// E1(x) = int_x^inf e^{-w}/w dw for x > 0. Power series below 1, continued
/// fraction (modified Lentz) above.
inline EvalResult exp_integral_e1(double x) {
  require_finite(x, "exp_integral_e1");
  if (!(x > 0.0)) throw DomainError("exp_integral_e1: requires x > 0");
  EvalResult out;
  if (x < 1.0) {
    double term = 1.0;
    double sum = 0.0;
    int k = 1;
    for (; k < 200; ++k) {
      term *= -x / k;
      const double add = -term / k;
      sum += add;
      if (std::abs(add) < detail::kEps * 0.01 * std::abs(sum)) break;
    }
    out.value = -constants::euler_gamma - std::log(x) + sum;
    out.log_value = std::log(out.value);
    out.nodes_used = k;
  } else {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    int i = 1;
    for (; i < 1000; ++i) {
      const double an = -static_cast<double>(i) * i;
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      const double del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < detail::kEps) break;
    }
    if (i >= 1000) throw NonConvergence("exp_integral_e1: continued fraction did not converge");
    out.log_value = -x + std::log(h);
    out.value = std::exp(out.log_value);
    out.nodes_used = i;
  }
  out.rel_err_est = 8.0 * detail::kEps;
  out.abs_err_est = out.rel_err_est * out.value;
  return out;
}

}  // namespace kpztail::special
