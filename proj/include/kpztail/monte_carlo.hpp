#pragma once

// Monte Carlo for the maximum of two-sided Brownian motion minus a parabola,
// exponential last-passage percolation with random-walk initial data, and the
// empirical-distribution utilities used to compare them with the analytic side.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "kpztail/core.hpp"
#include "kpztail/random.hpp"

namespace kpztail::monte_carlo {

using random::RngSpec;

// ---------------------------------------------------------------------------
// Parallel execution

/// Worker count: KPZTAIL_WORKERS if set and positive, otherwise the hardware count.
inline unsigned worker_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KPZTAIL_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, n) over contiguous chunks. fn must only write to
/// slot i of its output, which keeps results independent of the schedule.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned workers = 0) {
  const unsigned w = std::min<std::size_t>(worker_count(workers), std::max<std::size_t>(n, 1));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + w - 1) / w;
  for (unsigned k = 0; k < w; ++k) {
    const std::size_t lo = k * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Empirical distributions

struct EmpiricalDistribution {
  std::vector<double> samples;  // ascending

  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> xs) : samples(std::move(xs)) {
    std::sort(samples.begin(), samples.end());
  }

  [[nodiscard]] std::size_t count() const { return samples.size(); }

  [[nodiscard]] double cdf(double x) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
  }

  [[nodiscard]] double mean() const {
    double m = 0.0;
    for (double v : samples) m += v;
    return m / static_cast<double>(samples.size());
  }

  [[nodiscard]] double variance() const {
    const double m = mean();
    double v = 0.0;
    for (double x : samples) v += (x - m) * (x - m);
    return v / static_cast<double>(samples.size() - 1);
  }

  /// sup_x |F_n(x) - F(x)| for a continuous reference CDF.
  [[nodiscard]] double ks_statistic(const std::function<double(double)>& ref) const {
    if (samples.empty()) throw ConfigError("ks_statistic: empty sample");
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double f = ref(samples[i]);
      d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
  }
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
inline double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic;
  double p_value;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// (Stephens' small-sample correction).
inline KsResult ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.count() == 0 || b.count() == 0) throw ConfigError("ks_two_sample: empty sample");
  const auto& x = a.samples;
  const auto& y = b.samples;
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

struct TailEstimate {
  double estimate;
  double std_error;
};

/// Fraction of samples strictly above x with its binomial standard error.
inline TailEstimate empirical_tail(const EmpiricalDistribution& dist, double x) {
  if (dist.count() == 0) throw ConfigError("empirical_tail: empty sample");
  const double p = 1.0 - dist.cdf(x);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(dist.count()))};
}

inline TailEstimate empirical_tail(const std::vector<double>& samples, double x) {
  if (samples.empty()) throw ConfigError("empirical_tail: empty sample");
  std::size_t above = 0;
  for (double v : samples) above += (v > x);
  const double p = static_cast<double>(above) / static_cast<double>(samples.size());
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples.size()))};
}

// ---------------------------------------------------------------------------
// Tail exponent fits

/// log_tail = const + power ln s + log_power ln ln s - coefficient s^{3/2}.
struct PrefactorModel {
  double power = 0.0;
  double log_power = 0.0;
};

struct TailFit {
  double coefficient;
  double ci_low;
  double ci_high;
  double intercept;
  double std_error;
};

inline TailFit fit_tail_exponent(const std::vector<std::pair<double, double>>& points, const PrefactorModel& model = {},
                                 double confidence = 0.95) {
  if (points.size() < 4) throw IllConditioned("fit_tail_exponent: need at least 4 points");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [s, lt] = points[i];
    if (i > 0 && !(s > points[i - 1].first)) throw IllConditioned("fit_tail_exponent: s must be increasing");
    if (!(s > 1.0) && model.log_power != 0.0) throw DomainError("fit_tail_exponent: ln ln s needs s > 1");
    if (!(s > 0.0)) throw DomainError("fit_tail_exponent: s must be positive");
    double adj = lt - model.power * std::log(s);
    if (model.log_power != 0.0) adj -= model.log_power * std::log(std::log(s));
    x.push_back(std::pow(s, 1.5));
    y.push_back(-adj);
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 1e-12 * mx * mx)) throw IllConditioned("fit_tail_exponent: degenerate design");
  const double b = sxy / sxx;
  const double a = my - b * mx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) rss += std::pow(y[i] - a - b * x[i], 2);
  const double se = std::sqrt(rss / (n - 2.0) / sxx);
  const boost::math::students_t t(n - 2.0);
  const double q = boost::math::quantile(t, 0.5 + 0.5 * confidence);
  return {b, b - q * se, b + q * se, -a, se};
}

// ---------------------------------------------------------------------------
// Brownian motion minus a parabola

struct PathSample {
  double grid_step;
  double domain_radius;
  double max_value;
  double argmax;
  bool bridge_corrected;
  bool boundary_flag;  // maximizer within 5% of the domain edge
};

/// P(sup_{|t| >= T} W(t) - c t^2 >= 0) <= 2 sum_k erfc(c T_k^2 / sqrt(2 T_{k+1})), T_k = T + k.
/// Since the value at 0 is 0, this bounds the probability that truncation changes M_c.
inline double truncation_bound(double c, double radius) {
  double sum = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double a = radius + k;
    const double term = std::erfc(c * a * a / std::sqrt(2.0 * (a + 1.0)));
    sum += term;
    if (term < 1e-30 * std::max(sum, 1e-300) || term == 0.0) break;
  }
  return 2.0 * sum;
}

inline constexpr double kTruncationTolerance = 1e-4;

/// Smallest radius >= max(4, 4/sqrt(c)), in steps of 25%, that passes the certificate.
inline double default_radius(double c) {
  double t = std::max(4.0, 4.0 / std::sqrt(c));
  while (truncation_bound(c, t) > kTruncationTolerance) t *= 1.25;
  return t;
}

struct SamplerConfig {
  double c = 0.5;
  double grid_step = 1e-4;
  std::optional<double> domain_radius;
  bool bridge_correction = true;
  // Intervals whose endpoints come within this many sqrt(h) of the running
  // maximum are bisected down to grid_step.
  double refine_sigmas = 4.0;

  [[nodiscard]] double radius() const { return domain_radius ? *domain_radius : default_radius(c); }

  void validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("sampler: c must be positive");
    if (!(grid_step > 0.0 && grid_step <= 1e-3)) throw ConfigError("sampler: grid_step must lie in (0, 1e-3]");
    const double t = radius();
    if (!(t >= std::max(4.0, 4.0 / std::sqrt(c)))) throw ConfigError("sampler: domain_radius below max(4, 4/sqrt(c))");
    if (truncation_bound(c, t) > kTruncationTolerance) {
      throw ConfigError("sampler: truncation certificate fails at domain_radius " + std::to_string(t));
    }
    if (!(refine_sigmas > 0.0)) throw ConfigError("sampler: refine_sigmas must be positive");
  }
};

namespace detail {

struct SideResult {
  double max;
  double argmax;
};

// Maximum of W(t) - c t^2 on [0, T]. W is drawn on a coarse grid with step
// grid_step * 2^L; intervals that might hold the maximum are bisected by
// Brownian-bridge midpoints down to grid_step, and every terminal interval
// contributes an exact draw of its bridge maximum (the parabola is replaced by
// its chord there, an error below c h^2 / 4).
template <class Engine>
class SideSampler {
public:
  SideSampler(const SamplerConfig& cfg, double radius, Engine& eng) : cfg_(cfg), eng_(eng) {
    levels_ = 0;
    h0_ = cfg.grid_step;
    while (h0_ * 2.0 <= 0.01) {
      h0_ *= 2.0;
      ++levels_;
    }
    n0_ = static_cast<std::size_t>(std::ceil(radius / h0_));
  }

  SideResult run() {
    nodes_.resize(n0_ + 1);
    nodes_[0] = 0.0;
    const double sd = std::sqrt(h0_);
    best_ = {0.0, 0.0};
    for (std::size_t k = 1; k <= n0_; ++k) {
      nodes_[k] = nodes_[k - 1] + sd * normal_(eng_);
      const double t = static_cast<double>(k) * h0_;
      const double x = nodes_[k] - cfg_.c * t * t;
      if (x > best_.max) best_ = {x, t};
    }
    for (std::size_t k = 0; k < n0_; ++k) {
      const double ta = static_cast<double>(k) * h0_;
      const double tb = static_cast<double>(k + 1) * h0_;
      interval(ta, nodes_[k] - cfg_.c * ta * ta, tb, nodes_[k + 1] - cfg_.c * tb * tb, h0_, 0);
    }
    return best_;
  }

private:
  void interval(double ta, double xa, double tb, double xb, double h, int level) {
    if (level < levels_ && std::max(xa, xb) + cfg_.refine_sigmas * std::sqrt(h) >= best_.max) {
      const double tm = 0.5 * (ta + tb);
      // Midpoint of W given the endpoints; the chord of c t^2 is added back.
      const double wa = xa + cfg_.c * ta * ta;
      const double wb = xb + cfg_.c * tb * tb;
      const double wm = 0.5 * (wa + wb) + 0.5 * std::sqrt(h) * normal_(eng_);
      const double xm = wm - cfg_.c * tm * tm;
      if (xm > best_.max) best_ = {xm, tm};
      if (xa >= xb) {
        interval(ta, xa, tm, xm, 0.5 * h, level + 1);
        interval(tm, xm, tb, xb, 0.5 * h, level + 1);
      } else {
        interval(tm, xm, tb, xb, 0.5 * h, level + 1);
        interval(ta, xa, tm, xm, 0.5 * h, level + 1);
      }
      return;
    }
    if (!cfg_.bridge_correction) return;
    const double u = random::uniform_open0(eng_);
    const double m = 0.5 * (xa + xb + std::sqrt((xb - xa) * (xb - xa) - 2.0 * h * std::log(u)));
    if (m > best_.max) best_ = {m, 0.5 * (ta + tb)};
  }

  const SamplerConfig& cfg_;
  Engine& eng_;
  boost::random::normal_distribution<double> normal_;
  std::vector<double> nodes_;
  double h0_;
  int levels_;
  std::size_t n0_;
  SideResult best_{0.0, 0.0};
};

}  // namespace detail

/// One replicate: the sample depends only on (rng, replicate).
inline PathSample sample_one(const SamplerConfig& cfg, double radius, const RngSpec& rng, std::uint64_t replicate) {
  auto eng = random::replicate_engine(rng, replicate);
  detail::SideSampler<random::Philox> right(cfg, radius, eng);
  const auto r = right.run();
  detail::SideSampler<random::Philox> left(cfg, radius, eng);
  const auto l = left.run();
  PathSample s{cfg.grid_step, radius, r.max, r.argmax, cfg.bridge_correction, false};
  if (l.max > r.max) {
    s.max_value = l.max;
    s.argmax = -l.argmax;
  }
  s.boundary_flag = std::abs(s.argmax) > 0.95 * radius;
  return s;
}

/// n samples of (M_c, tau_c) for W(t) - c t^2 with standard two-sided W.
inline std::vector<PathSample> sample_bm_parabola_max(const SamplerConfig& cfg, std::size_t n, const RngSpec& rng,
                                                      unsigned workers = 0) {
  cfg.validate();
  const double radius = cfg.radius();
  std::vector<PathSample> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = sample_one(cfg, radius, rng, i); }, workers);
  return out;
}

inline std::vector<double> max_values(const std::vector<PathSample>& xs) {
  std::vector<double> v;
  v.reserve(xs.size());
  for (const auto& s : xs) v.push_back(s.max_value);
  return v;
}

inline std::vector<double> argmax_values(const std::vector<PathSample>& xs) {
  std::vector<double> v;
  v.reserve(xs.size());
  for (const auto& s : xs) v.push_back(s.argmax);
  return v;
}

// ---------------------------------------------------------------------------
// Last-passage percolation

enum class WeightLaw { exponential_rate1 };

/// Exponential LPP scaling with N = n + 1 sites per axis from the line to (n, n):
/// L ~ 4N + 2^{4/3} N^{1/3} chi, lateral u = 2^{2/3} N^{2/3} t.
inline double lpp_rescale(double value, int n) {
  const double big_n = n + 1.0;
  return (value - 4.0 * big_n) / (std::pow(2.0, 4.0 / 3.0) * std::cbrt(big_n));
}

/// Gaussian boundary increments of this variance per lattice step give
/// sqrt(2) sigma B(t) after rescaling.
inline double boundary_step_variance(double sigma) { return 8.0 * sigma * sigma; }

struct LppConfig {
  int lattice_size = 2000;
  double sigma = 0.0;
  std::size_t replications = 1;
  WeightLaw weight_law = WeightLaw::exponential_rate1;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;

  void validate() const {
    if (lattice_size < 64) throw ConfigError("LppConfig: lattice_size must be >= 64");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("LppConfig: sigma must be >= 0");
    if (replications < 1) throw ConfigError("LppConfig: replications must be >= 1");
    if (required_bytes() > memory_budget_bytes) throw ResourceError("LppConfig: lattice exceeds the memory budget");
  }

  // Two rows of the wavefront per worker.
  [[nodiscard]] std::size_t required_bytes() const {
    return 2 * (2 * static_cast<std::size_t>(lattice_size) + 1) * sizeof(double) * worker_count();
  }
};

/// Last-passage value from the antidiagonal i + j = 0 (sites (u, -u), |u| <= n,
/// starting height h0[u + n]) to (n, n); weight(i, j) supplies site weights.
template <class Weight>
double last_passage(int n, const std::vector<double>& h0, Weight&& weight) {
  if (h0.size() != static_cast<std::size_t>(2 * n + 1)) throw ConfigError("last_passage: h0 must have 2n+1 entries");
  std::vector<double> row(2 * static_cast<std::size_t>(n) + 1);
  auto at = [&](int i) -> double& { return row[static_cast<std::size_t>(i + n)]; };
  for (int j = -n; j <= n; ++j) {
    at(-j) = h0[static_cast<std::size_t>(-j + n)] + weight(-j, j);
    for (int i = -j + 1; i <= n; ++i) at(i) = weight(i, j) + std::max(at(i - 1), at(i));
  }
  return at(n);
}

/// Rescaled height of one replicate.
inline double lpp_replicate(const LppConfig& cfg, const RngSpec& rng, std::uint64_t replicate) {
  auto eng = random::replicate_engine(rng, replicate);
  const int n = cfg.lattice_size;
  std::vector<double> h0(2 * static_cast<std::size_t>(n) + 1, 0.0);
  if (cfg.sigma > 0.0) {
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(boundary_step_variance(cfg.sigma)));
    for (int u = 1; u <= n; ++u) h0[static_cast<std::size_t>(n + u)] = h0[static_cast<std::size_t>(n + u - 1)] + normal(eng);
    for (int u = 1; u <= n; ++u) h0[static_cast<std::size_t>(n - u)] = h0[static_cast<std::size_t>(n - u + 1)] + normal(eng);
  }
  boost::random::exponential_distribution<double> expo(1.0);
  return lpp_rescale(last_passage(n, h0, [&](int, int) { return expo(eng); }), n);
}

inline EmpiricalDistribution simulate_lpp_height(const LppConfig& cfg, const RngSpec& rng, unsigned workers = 0) {
  cfg.validate();
  std::vector<double> out(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t i) { out[i] = lpp_replicate(cfg, rng, i); }, workers);
  return EmpiricalDistribution(std::move(out));
}

}  // namespace kpztail::monte_carlo
