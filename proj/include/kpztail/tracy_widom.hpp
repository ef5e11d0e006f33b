#pragma once

// Tracy-Widom GUE and GOE distributions: leading right-tail asymptotics and
// Fredholm determinants of the Airy-type kernels by Gauss-Legendre
// discretization (Nystrom method).

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "kpztail/core.hpp"
#include "kpztail/quadrature.hpp"
#include "kpztail/special_functions.hpp"

namespace kpztail::tracy_widom {

/// Range where the discretized determinant is trusted; outside it the CDFs
/// fall back to tail asymptotics and set `flagged`.
inline constexpr double kRangeLow = -8.0;
inline constexpr double kRangeHigh = 12.0;

enum class Transform {
  algebraic_map,  // affine map of the Gauss-Legendre rule onto the truncated domain
  exp_map,        // nodes clustered exponentially toward the lower end
};

struct FredholmConfig {
  int node_count = 48;     // starting count; doubled until stable
  double domain_cut = 16;  // Airy argument reaches max(s, 0) + domain_cut at the far end
  Transform transform = Transform::algebraic_map;
  int max_doublings = 3;
  double stability_tol = 1e-10;

  void validate() const {
    if (node_count < 8) throw ConfigError("FredholmConfig: node_count must be at least 8");
    if (!(domain_cut > 0.0) || !std::isfinite(domain_cut)) throw ConfigError("FredholmConfig: domain_cut must be positive");
    if (max_doublings < 0) throw ConfigError("FredholmConfig: max_doublings must be non-negative");
  }
};

/// Log of the leading GUE right tail e^{-4/3 s^{3/2}} / (16 pi s^{3/2}).
inline double gue_tail_asymptotic_log(double s) {
  require_finite(s, "gue_tail_asymptotic");
  if (!(s > 0.0)) throw DomainError("gue_tail_asymptotic: s must be positive");
  const double s32 = std::pow(s, 1.5);
  return -4.0 / 3.0 * s32 - std::log(16.0 * constants::pi * s32);
}
inline double gue_tail_asymptotic(double s) { return std::exp(gue_tail_asymptotic_log(s)); }

/// Log of the leading GOE right tail e^{-2/3 x^{3/2}} / (4 sqrt(pi) x^{3/4}).
inline double goe_tail_asymptotic_log(double x) {
  require_finite(x, "goe_tail_asymptotic");
  if (!(x > 0.0)) throw DomainError("goe_tail_asymptotic: x must be positive");
  return -2.0 / 3.0 * std::pow(x, 1.5) - std::log(4.0 * constants::sqrt_pi) - 0.75 * std::log(x);
}
inline double goe_tail_asymptotic(double x) { return std::exp(goe_tail_asymptotic_log(x)); }

/// CDF value together with 1 - F, each carried accurately in its own tail.
struct CdfResult {
  EvalResult cdf;
  EvalResult ccdf;
};

namespace detail {

// zeta'(-1), for the left-tail constants.
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

inline Nodes make_nodes(int n, double lo, double hi, Transform transform) {
  const auto rule = quadrature::gauss_legendre(static_cast<std::size_t>(n), 0.0, 1.0);
  Nodes out;
  out.x.resize(rule.nodes.size());
  out.w.resize(rule.nodes.size());
  // Clustering strength for exp_map.
  constexpr double kappa = 3.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    if (transform == Transform::algebraic_map) {
      out.x[i] = lo + (hi - lo) * u;
      out.w[i] = (hi - lo) * rule.weights[i];
    } else {
      const double scale = (hi - lo) / std::expm1(kappa);
      out.x[i] = lo + scale * std::expm1(kappa * u);
      out.w[i] = scale * kappa * std::exp(kappa * u) * rule.weights[i];
    }
  }
  return out;
}

// log det(I - A) and -expm1 of it, from the eigenvalues of the symmetric A.
struct LogDet {
  double log_det;
  double one_minus;
};

inline LogDet log_det(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw IllConditioned("tracy_widom: eigenvalue solver failed");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lam = eig.eigenvalues()[i];
    if (!(lam < 1.0)) throw IllConditioned("tracy_widom: kernel eigenvalue reached 1");
    acc += std::log1p(-lam);
  }
  return {acc, -std::expm1(acc)};
}

inline LogDet gue_det(double s, int n, const FredholmConfig& cfg) {
  const Nodes nd = make_nodes(n, s, std::max(s, 0.0) + cfg.domain_cut, cfg.transform);
  const std::size_t m = nd.x.size();
  std::vector<double> ai(m), aip(m), sw(m);
  for (std::size_t i = 0; i < m; ++i) {
    ai[i] = special::airy_ai(nd.x[i]);
    aip[i] = special::airy_ai_prime(nd.x[i]);
    sw[i] = std::sqrt(nd.w[i]);
  }
  Eigen::MatrixXd a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    a(i, i) = nd.w[i] * (aip[i] * aip[i] - nd.x[i] * ai[i] * ai[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const double k = (ai[i] * aip[j] - aip[i] * ai[j]) / (nd.x[i] - nd.x[j]);
      a(i, j) = a(j, i) = sw[i] * k * sw[j];
    }
  }
  return log_det(a);
}

inline LogDet goe_det(double s, int n, const FredholmConfig& cfg) {
  // Kernel (1/2) Ai((x+y)/2 + s) on (0, L); the argument reaches max(s,0)+cut.
  const double len = 2.0 * (cfg.domain_cut + std::max(-s, 0.0));
  const Nodes nd = make_nodes(n, 0.0, len, cfg.transform);
  const std::size_t m = nd.x.size();
  Eigen::MatrixXd a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double k = 0.5 * special::airy_ai(0.5 * (nd.x[i] + nd.x[j]) + s);
      a(i, j) = a(j, i) = std::sqrt(nd.w[i] * nd.w[j]) * k;
    }
  }
  return log_det(a);
}

inline CdfResult from_det(const LogDet& d, double change, long nodes) {
  CdfResult r;
  r.cdf.value = std::exp(d.log_det);
  r.cdf.log_value = d.log_det;
  r.cdf.abs_err_est = change;
  r.cdf.rel_err_est = change / std::max(r.cdf.value, 1e-300);
  r.cdf.nodes_used = nodes;
  r.ccdf.value = d.one_minus;
  r.ccdf.log_value = std::log(d.one_minus);
  r.ccdf.abs_err_est = change;
  r.ccdf.rel_err_est = change / std::max(d.one_minus, 1e-300);
  r.ccdf.nodes_used = nodes;
  return r;
}

template <class Det>
CdfResult converge(double s, const FredholmConfig& cfg, Det det) {
  int n = cfg.node_count;
  LogDet prev = det(s, n, cfg);
  long nodes = n;
  for (int k = 0; k < cfg.max_doublings + 1; ++k) {
    n *= 2;
    const LogDet next = det(s, n, cfg);
    nodes += n;
    // Stability measured on whichever of F, 1 - F is smaller.
    const double change = std::min(std::abs(next.one_minus - prev.one_minus),
                                   std::abs(std::exp(next.log_det) - std::exp(prev.log_det)));
    const double scale = std::min(next.one_minus, std::exp(next.log_det));
    if (change <= cfg.stability_tol * scale || change < 1e-15) return from_det(next, change, nodes);
    prev = next;
  }
  throw NonConvergence("tracy_widom: node doubling did not stabilize");
}

inline CdfResult asymptotic_right(double log_tail) {
  LogDet d{std::log1p(-std::exp(log_tail)), std::exp(log_tail)};
  CdfResult r = from_det(d, 0.0, 0);
  r.cdf.flagged = r.ccdf.flagged = true;
  return r;
}

inline CdfResult asymptotic_left(double log_cdf) {
  LogDet d{log_cdf, -std::expm1(log_cdf)};
  CdfResult r = from_det(d, 0.0, 0);
  r.cdf.flagged = r.ccdf.flagged = true;
  return r;
}

}  // namespace detail

/// F_GUE(s) and 1 - F_GUE(s).
inline CdfResult gue_distribution(double s, const FredholmConfig& cfg = {}) {
  require_finite(s, "gue_cdf");
  cfg.validate();
  if (s > kRangeHigh) return detail::asymptotic_right(gue_tail_asymptotic_log(s));
  if (s < kRangeLow) {
    // F ~ 2^{1/24} e^{zeta'(-1)} |s|^{-1/8} e^{-|s|^3/12}.
    const double t = -s;
    return detail::asymptotic_left(std::log(2.0) / 24.0 + detail::kZetaPrimeMinus1 - std::log(t) / 8.0 - t * t * t / 12.0);
  }
  return detail::converge(s, cfg, detail::gue_det);
}

/// F_GOE(x) and 1 - F_GOE(x).
inline CdfResult goe_distribution(double x, const FredholmConfig& cfg = {}) {
  require_finite(x, "goe_cdf");
  cfg.validate();
  if (x > kRangeHigh) return detail::asymptotic_right(goe_tail_asymptotic_log(x));
  if (x < kRangeLow) {
    // F ~ 2^{-11/48} e^{zeta'(-1)/2} |x|^{-1/16} e^{-|x|^3/24 - |x|^{3/2}/(3 sqrt 2)}.
    const double t = -x;
    return detail::asymptotic_left(-11.0 / 48.0 * std::log(2.0) + 0.5 * detail::kZetaPrimeMinus1 - std::log(t) / 16.0 -
                                   t * t * t / 24.0 - std::pow(t, 1.5) / (3.0 * std::sqrt(2.0)));
  }
  return detail::converge(x, cfg, detail::goe_det);
}

inline EvalResult gue_cdf(double s, const FredholmConfig& cfg = {}) { return gue_distribution(s, cfg).cdf; }
inline EvalResult goe_cdf(double x, const FredholmConfig& cfg = {}) { return goe_distribution(x, cfg).cdf; }
inline EvalResult gue_ccdf(double s, const FredholmConfig& cfg = {}) { return gue_distribution(s, cfg).ccdf; }
inline EvalResult goe_ccdf(double x, const FredholmConfig& cfg = {}) { return goe_distribution(x, cfg).ccdf; }

}  // namespace kpztail::tracy_widom
