#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "kpztail/core.hpp"

namespace kpztail::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: n must be positive");
  if (n == 1) return {{0.0}, {2.0}};
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(constants::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Affine image of a Gauss-Legendre rule on [a, b].
inline GaussLegendreRule gauss_legendre(std::size_t n, double a, double b) {
  GaussLegendreRule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

template <class T>
struct Integral {
  T value{};
  double error = 0.0;
  double l1 = 0.0;
  long evaluations = 0;
};

namespace detail {

template <class T>
struct Panel {
  double a, b;
  T value;
  double error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto kronrod_panel(F& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  using T = decltype(f(a));
  const auto& x = Rule::abscissa();
  const auto& wk = Rule::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Seven-point Gauss has an odd order so node 0 is shared with the Gauss rule.
  T f0 = f(mid);
  T kr = f0 * wk[0];
  T ga = f0 * wg[0];
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const T fp = f(mid + half * x[i]);
    const T fm = f(mid - half * x[i]);
    kr += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 0) ga += (fp + fm) * wg[i / 2];
  }
  Panel<T> p{a, b, kr * half, std::abs((kr - ga) * half), l1 * std::abs(half)};
  // Floor the estimate at the rounding level of the panel.
  p.error = std::max(p.error, 50.0 * std::numeric_limits<double>::epsilon() * p.l1);
  return p;
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod on [a, b] for real or complex
/// integrands. The panel with the largest error estimate is bisected until the
/// summed estimate drops below max(rel_tol * |I|, abs_tol) or the panel budget
/// runs out.
template <class F>
auto adaptive(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0, std::size_t max_panels = 4000) {
  using T = decltype(f(a));
  Integral<T> out;
  long count = 0;
  auto counted = [&](double t) {
    ++count;
    return f(t);
  };
  std::priority_queue<detail::Panel<T>> heap;
  heap.push(detail::kronrod_panel(counted, a, b));
  T total = heap.top().value;
  double err = heap.top().error;
  double l1 = heap.top().l1;
  // Rounding floors stop the loop once every panel is at machine precision.
  while (heap.size() < max_panels && err > std::max(rel_tol * std::abs(total), abs_tol)) {
    const auto worst = heap.top();
    if (worst.error <= 50.0 * std::numeric_limits<double>::epsilon() * worst.l1) break;
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod_panel(counted, worst.a, m);
    auto right = detail::kronrod_panel(counted, m, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed drift from the running updates.
  T sum{};
  double esum = 0.0;
  double lsum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    lsum += heap.top().l1;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  out.l1 = lsum;
  out.evaluations = count;
  return out;
}

}  // namespace kpztail::quadrature
