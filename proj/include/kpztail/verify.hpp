#pragma once

// Verification suites: the acceptance criteria plus a few invariants, shared by
// `kpztail verify` and the acceptance binary. Every check is deterministic for
// a given seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kpztail/groeneboom.hpp"
#include "kpztail/io.hpp"
#include "kpztail/monte_carlo.hpp"
#include "kpztail/random.hpp"
#include "kpztail/special_functions.hpp"
#include "kpztail/tail_bounds.hpp"
#include "kpztail/tracy_widom.hpp"

#ifndef KPZTAIL_PROFILE_DIR
#define KPZTAIL_PROFILE_DIR "profiles"
#endif

namespace kpztail::verify {

struct Options {
  std::uint64_t seed = 42;
  bool slow = false;   // run the LPP universality check at full size
  bool quick = false;  // smaller Monte Carlo sizes
  unsigned workers = 0;
  std::string profile_dir = KPZTAIL_PROFILE_DIR;
};

enum class Status { pass, fail, skip };

struct Check {
  std::string suite;
  std::string name;
  Status status;
  std::string detail;
};

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
  }
  return "?";
}

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline Status ok(bool b) { return b ? Status::pass : Status::fail; }

inline std::vector<tail_bounds::ProfileSpec> shipped_profiles(const std::string& dir, std::vector<std::string>& names) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<tail_bounds::ProfileSpec> out;
  for (const auto& f : files) {
    out.push_back(io::load_profile(f.string()));
    names.push_back(f.stem().string());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Acceptance criteria

/// 1. G(x) against bridge-corrected Monte Carlo of the two-sided maximum.
inline Check criterion_1(const Options& o) {
  const std::size_t n = o.quick ? 100000 : 1000000;
  monte_carlo::SamplerConfig cfg;
  cfg.c = 0.5;
  cfg.grid_step = 1e-4;
  const auto m = monte_carlo::max_values(monte_carlo::sample_bm_parabola_max(cfg, n, {o.seed, 1}, o.workers));
  bool pass = true;
  std::string d = "n=" + std::to_string(n);
  for (double x : {0.5, 1.0, 1.5, 2.0}) {
    const auto e = monte_carlo::empirical_tail(m, x);
    const auto g = groeneboom::g_tail(x);
    const double se = std::hypot(e.std_error, g.abs_err_est);
    const double z = std::abs(e.estimate - g.value) / se;
    pass = pass && z <= 3.0;
    d += "; x=" + detail::num(x) + " mc=" + detail::num(e.estimate) + " G=" + detail::num(g.value) +
         " z=" + detail::num(z);
  }
  return {"monte_carlo", "criterion 1: G(x) vs Monte Carlo", detail::ok(pass), d};
}

/// 2. Large-x expansions of G, -G' and f_c.
inline Check criterion_2(const Options&) {
  bool pass = true;
  std::string d;
  struct Series {
    const char* name;
    std::function<double(double)> dev;
  };
  const std::vector<Series> series = {
      {"H", [](double x) { return std::abs(std::exp(groeneboom::g_tail_one_sided(x).log_value - groeneboom::g_asymptotic_log(x)) - 1.0); }},
      {"-H'", [](double x) {
         return std::abs(std::exp(groeneboom::g_tail_one_sided_derivative(x).log_value - groeneboom::g_derivative_asymptotic_log(x)) - 1.0);
       }},
      {"f_1 one-sided", [](double x) {
         return std::abs(std::exp(groeneboom::density_fc_one_sided(1.0, x).log_value - groeneboom::density_fc_asymptotic_log(1.0, x)) - 1.0);
       }},
      {"G vs 2x", [](double x) {
         return std::abs(std::exp(groeneboom::g_tail(x).log_value - std::log(2.0) - groeneboom::g_asymptotic_log(x)) - 1.0);
       }},
      {"-G' vs 2x", [](double x) {
         return std::abs(std::exp(groeneboom::g_tail_derivative(x).log_value - std::log(2.0) - groeneboom::g_derivative_asymptotic_log(x)) - 1.0);
       }},
      {"f_1 vs 2x", [](double x) {
         return std::abs(std::exp(groeneboom::density_fc(1.0, x).log_value - std::log(2.0) - groeneboom::density_fc_asymptotic_log(1.0, x)) - 1.0);
       }},
  };
  for (const auto& s : series) {
    double prev = INFINITY;
    d += std::string(d.empty() ? "" : "; ") + s.name + ":";
    for (double x : {8.0, 12.0, 16.0, 20.0}) {
      const double dev = s.dev(x);
      pass = pass && dev < prev && dev <= 5.0 * std::pow(x, -0.25);
      prev = dev;
      d += " " + detail::num(dev);
    }
  }
  return {"groeneboom", "criterion 2: asymptotic expansions", detail::ok(pass), d};
}

/// 3. Hi modulus bound and scaled asymptotic.
inline Check criterion_3(const Options& o) {
  auto eng = random::replicate_engine({o.seed, 3}, 0);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -5.0 + 15.0 * random::uniform_open0(eng);
    const double theta = constants::pi * (0.5 + random::uniform_open0(eng));
    const double y = 40.0 * random::uniform_open0(eng);
    const double bound = special::scorer_hi(Complex(x, 0.0)).value.real();
    const double mod = std::abs(special::scorer_hi(x + std::polar(y, theta)).value);
    if (mod > bound * (1.0 + 1e-10)) ++violations;
  }
  double k = 0.0;
  for (double theta : {0.0, constants::pi / 6.0, 0.3 * constants::pi}) {
    for (double r : {25.0, 50.0, 100.0}) {
      const Complex z = std::polar(r, theta);
      const Complex lead = std::pow(constants::pi, -0.5) * std::pow(z, -0.25);
      k = std::max(k, std::abs(special::scorer_hi_scaled(z).value - lead) * std::sqrt(r));
    }
  }
  return {"special", "criterion 3: Hi modulus bound and asymptotic", detail::ok(violations == 0 && k <= 5.0),
          "violations=" + std::to_string(violations) + "/10000; fitted K=" + detail::num(k)};
}

/// 4. Tracy-Widom right tails and node-doubling stability.
inline Check criterion_4(const Options&) {
  auto rel = [](double a, double b) { return std::abs(a / b - 1.0); };
  const double g6 = rel(tracy_widom::gue_ccdf(6.0).value, tracy_widom::gue_tail_asymptotic(6.0));
  const double g7 = rel(tracy_widom::gue_ccdf(7.0).value, tracy_widom::gue_tail_asymptotic(7.0));
  const double o7 = rel(tracy_widom::goe_ccdf(7.0).value, tracy_widom::goe_tail_asymptotic(7.0));
  double drift = 0.0;
  for (double s : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
    tracy_widom::FredholmConfig a;
    a.node_count = 64;
    a.max_doublings = 0;
    auto b = a;
    b.node_count = 128;
    drift = std::max(drift, std::abs(tracy_widom::gue_cdf(s, a).value - tracy_widom::gue_cdf(s, b).value));
    drift = std::max(drift, std::abs(tracy_widom::goe_cdf(s, a).value - tracy_widom::goe_cdf(s, b).value));
  }
  const bool pass = g6 <= 0.15 && g7 < g6 && o7 <= 0.20 && drift < 1e-8;
  return {"tracy_widom", "criterion 4: Tracy-Widom tails", detail::ok(pass),
          "GUE rel err s=6 " + detail::num(g6) + ", s=7 " + detail::num(g7) + "; GOE x=7 " + detail::num(o7) +
              "; doubling drift " + detail::num(drift)};
}

/// 5. Exponent of both Brownian-data bounds and the sandwich ordering.
inline Check criterion_5(const Options&) {
  bool pass = true;
  std::string d;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const double target = tail_bounds::brownian_exponent_coeff(sigma);
    std::vector<std::pair<double, double>> lo, up;
    for (double s = 15.0; s <= 40.0; s += 1.0) {
      const auto b = tail_bounds::fsigma_bounds(sigma, s);
      pass = pass && b.lower <= b.upper;
      lo.emplace_back(s, b.lower);
      up.emplace_back(s, b.upper);
    }
    const double kl = monte_carlo::fit_tail_exponent(lo, {-0.75, 0.0}).coefficient;
    const double ku = monte_carlo::fit_tail_exponent(up, {0.75, 1.0}).coefficient;
    pass = pass && std::abs(kl / target - 1.0) <= 0.03 && std::abs(ku / target - 1.0) <= 0.03;
    d += std::string(d.empty() ? "" : "; ") + "sigma=" + detail::num(sigma) + " target " + detail::num(target) +
         " lower " + detail::num(kl) + " upper " + detail::num(ku);
  }
  return {"tail_bounds", "criterion 5: Brownian-data exponent", detail::ok(pass), d};
}

/// 6. Geometric-exponential sum bound.
inline Check criterion_6(const Options&) {
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    const double alpha = 1.01 * std::pow(10.0 / 1.01, i / 49.0);
    for (int j = 0; j < 50; ++j) {
      const auto g = tail_bounds::geometric_exp_sum_bound(alpha, 1e-6 * std::pow(1e7, j / 49.0));
      violations += g.direct_sum > g.bound;
    }
  }
  const double ref = tail_bounds::geometric_exp_sum_bound(2.0, 1.0).direct_sum;
  return {"tail_bounds", "criterion 6: geometric sum bound", detail::ok(violations == 0 && std::abs(ref - 0.52187) <= 1e-5),
          "violations=" + std::to_string(violations) + "/2500; sum(2,1)=" + detail::num(ref)};
}

/// 7. Brownian scaling of M_c across c.
inline Check criterion_7(const Options& o) {
  const std::size_t n = o.quick ? 20000 : 100000;
  std::vector<monte_carlo::EmpiricalDistribution> d;
  std::uint64_t stream = 70;
  for (double c : {0.5, 1.0, 2.0}) {
    monte_carlo::SamplerConfig cfg;
    cfg.c = c;
    auto m = monte_carlo::max_values(monte_carlo::sample_bm_parabola_max(cfg, n, {o.seed, stream++}, o.workers));
    for (double& v : m) v *= std::cbrt(2.0 * c);
    d.emplace_back(std::move(m));
  }
  bool pass = true;
  std::string det = "n=" + std::to_string(n);
  const char* names[] = {"1/2", "1", "2"};
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const auto ks = monte_carlo::ks_two_sample(d[i], d[j]);
      pass = pass && ks.p_value > 0.01;
      det += std::string("; c=") + names[i] + " vs " + names[j] + " D=" + detail::num(ks.statistic) +
             " p=" + detail::num(ks.p_value);
    }
  }
  return {"monte_carlo", "criterion 7: scaling law", detail::ok(pass), det};
}

/// 8. Flat LPP against F_GOE(2^{2/3} s).
inline Check criterion_8(const Options& o) {
  if (!o.slow) return {"lpp", "criterion 8: flat LPP universality", Status::skip, "slow; enable with --slow"};
  monte_carlo::LppConfig cfg;
  cfg.lattice_size = 2000;
  cfg.replications = 10000;
  const auto d = monte_carlo::simulate_lpp_height(cfg, {o.seed, 8}, o.workers);
  const double k = std::pow(2.0, 2.0 / 3.0);
  const double ks = d.ks_statistic([&](double s) { return tracy_widom::goe_cdf(k * s).value; });
  return {"lpp", "criterion 8: flat LPP universality", detail::ok(ks <= 0.08),
          "n=2000 reps=10000 KS=" + detail::num(ks) + " mean=" + detail::num(d.mean())};
}

/// 9. Deterministic profiles: shift property and ordering.
inline Check criterion_9(const Options& o) {
  std::vector<std::string> names;
  auto profiles = detail::shipped_profiles(o.profile_dir, names);
  if (profiles.empty()) {
    return {"tail_bounds", "criterion 9: deterministic profiles", Status::fail, "no profiles found in " + o.profile_dir};
  }
  bool pass = true;
  double worst_shift = 0.0;
  for (auto& p : profiles) {
    tail_bounds::compute_kappa(p);
    auto moved = p.shifted(1.0);
    const auto a = tail_bounds::deterministic_profile_bounds(p, p.kappa + 8.0);
    const auto b = tail_bounds::deterministic_profile_bounds(moved, p.kappa + 9.0);
    pass = pass && std::abs(moved.kappa - p.kappa - 1.0) <= 1e-12;
    worst_shift = std::max({worst_shift, std::abs(a.lower - b.lower) / std::abs(a.lower),
                            std::abs(a.upper - b.upper) / std::abs(a.upper)});
    for (double u = 6.0; u <= 30.0; u += 0.5) {
      const auto r = tail_bounds::deterministic_profile_bounds(p, p.kappa + u);
      pass = pass && r.lower <= r.upper;
    }
  }
  pass = pass && worst_shift <= 1e-12;
  std::string list;
  for (const auto& n : names) list += (list.empty() ? "" : ",") + n;
  return {"tail_bounds", "criterion 9: deterministic profiles", detail::ok(pass),
          "profiles=" + list + "; max relative shift mismatch " + detail::num(worst_shift)};
}

// ---------------------------------------------------------------------------
// Further invariants

inline Check laplace_saddle(const Options&) {
  double worst = 0.0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto l = tail_bounds::laplace_analysis(sigma, 1.0);
    double best = -INFINITY, arg = 0.0;
    for (long i = 0; i <= 1000000; ++i) {
      const double g = tail_bounds::laplace_exponent(sigma, 1.0, i * 1e-6);
      if (g > best) {
        best = g;
        arg = i * 1e-6;
      }
    }
    worst = std::max(worst, std::abs(arg - l.mu0));
  }
  return {"tail_bounds", "Laplace saddle equals grid argmax", detail::ok(worst <= 1e-6), "max |argmax - mu0| " + detail::num(worst)};
}

inline Check contour_independence(const Options&) {
  double worst = 0.0;
  for (double x : {1.0, 2.0}) {
    const auto a = groeneboom::g_tail(x);
    groeneboom::ContourSpec cs;
    cs.offset = 1.5;
    const auto b = groeneboom::g_tail(x, cs);
    worst = std::max(worst, std::abs(a.value - b.value) / (a.abs_err_est + b.abs_err_est));
  }
  return {"groeneboom", "contour independence", detail::ok(worst <= 5.0), "max |diff|/err " + detail::num(worst)};
}

inline Check cdf_monotone(const Options&) {
  double prev_gue = 0.0, prev_goe = 0.0;
  bool pass = true;
  for (double s = -7.0; s <= 10.0; s += 0.25) {
    const double a = tracy_widom::gue_cdf(s).value;
    const double b = tracy_widom::goe_cdf(s).value;
    pass = pass && a >= prev_gue - 1e-14 && b >= prev_goe - 1e-14 && a <= 1.0 && b <= 1.0;
    prev_gue = a;
    prev_goe = b;
  }
  return {"tracy_widom", "CDFs monotone in [0, 1]", detail::ok(pass), "s in [-7, 10] step 0.25"};
}

inline Check argmax_symmetry(const Options& o) {
  monte_carlo::SamplerConfig cfg;
  auto tau = monte_carlo::argmax_values(monte_carlo::sample_bm_parabola_max(cfg, o.quick ? 10000 : 50000, {o.seed, 11}, o.workers));
  std::vector<double> neg;
  for (double t : tau) neg.push_back(-t);
  const auto ks = monte_carlo::ks_two_sample(monte_carlo::EmpiricalDistribution(tau), monte_carlo::EmpiricalDistribution(neg));
  return {"monte_carlo", "argmax symmetric about 0", detail::ok(ks.p_value > 0.01),
          "D=" + detail::num(ks.statistic) + " p=" + detail::num(ks.p_value)};
}

inline Check grid_halving(const Options& o) {
  const std::size_t n = o.quick ? 20000 : 100000;
  monte_carlo::SamplerConfig a;
  a.grid_step = 1e-4;
  auto b = a;
  b.grid_step = 5e-5;
  const auto ea = monte_carlo::empirical_tail(monte_carlo::max_values(monte_carlo::sample_bm_parabola_max(a, n, {o.seed, 12}, o.workers)), 1.0);
  // Same stream: both step sizes share the coarse grid, so paths are partly coupled.
  const auto eb = monte_carlo::empirical_tail(monte_carlo::max_values(monte_carlo::sample_bm_parabola_max(b, n, {o.seed, 12}, o.workers)), 1.0);
  const double diff = std::abs(ea.estimate - eb.estimate);
  const double se = std::hypot(ea.std_error, eb.std_error);
  return {"monte_carlo", "halving grid_step within one standard error", detail::ok(diff <= se),
          "P(M>=1): " + detail::num(ea.estimate) + " vs " + detail::num(eb.estimate) + ", se " + detail::num(se)};
}

inline Check lpp_coupling(const Options& o) {
  const int n = 10;
  auto eng = random::replicate_engine({o.seed, 14}, 0);
  std::vector<double> w((2 * n + 1) * (2 * n + 1));
  for (double& v : w) v = -std::log(random::uniform_open0(eng));
  auto weight = [&](int i, int j) { return w[static_cast<std::size_t>((i + n) * (2 * n + 1) + (j + n))]; };
  std::vector<double> h0(2 * n + 1, 0.0);
  const double base = monte_carlo::last_passage(n, h0, weight);
  int violations = 0;
  for (int i = -n; i <= n; ++i) {
    for (int j = -i; j <= n; ++j) {
      const double v = monte_carlo::last_passage(n, h0, [&](int a, int b) { return weight(a, b) + (a == i && b == j ? 0.5 : 0.0); });
      violations += v < base;
    }
  }
  return {"lpp", "monotone coupling", detail::ok(violations == 0), "violations=" + std::to_string(violations)};
}

inline Check lpp_variance_in_sigma(const Options& o) {
  double prev = 0.0;
  bool pass = true;
  std::string d;
  std::uint64_t stream = 15;
  for (double sigma : {0.0, 0.5, 1.0}) {
    monte_carlo::LppConfig cfg;
    cfg.lattice_size = 128;
    cfg.sigma = sigma;
    cfg.replications = o.quick ? 1000 : 2000;
    const double v = monte_carlo::simulate_lpp_height(cfg, {o.seed, stream++}, o.workers).variance();
    pass = pass && v >= prev;
    prev = v;
    d += (d.empty() ? "" : ", ") + std::string("var(") + detail::num(sigma) + ")=" + detail::num(v);
  }
  return {"lpp", "variance nondecreasing in sigma", detail::ok(pass), d};
}

// ---------------------------------------------------------------------------
// Suites

using CheckFn = Check (*)(const Options&);

inline const std::map<std::string, std::vector<CheckFn>>& suites() {
  static const std::map<std::string, std::vector<CheckFn>> s = {
      {"special", {criterion_3}},
      {"groeneboom", {criterion_2, contour_independence}},
      {"tracy_widom", {criterion_4, cdf_monotone}},
      {"tail_bounds", {criterion_5, criterion_6, criterion_9, laplace_saddle}},
      {"monte_carlo", {criterion_1, criterion_7, argmax_symmetry, grid_halving}},
      {"lpp", {lpp_coupling, lpp_variance_in_sigma, criterion_8}},
      {"acceptance", {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
                      criterion_8, criterion_9}},
  };
  return s;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> n = {"all"};
  for (const auto& [k, v] : suites()) n.push_back(k);
  return n;
}

inline std::vector<Check> run_suite(const std::string& name, const Options& o) {
  std::vector<CheckFn> fns;
  if (name == "all") {
    for (const char* s : {"special", "groeneboom", "tracy_widom", "tail_bounds", "monte_carlo", "lpp"}) {
      for (auto f : suites().at(s)) fns.push_back(f);
    }
  } else {
    const auto it = suites().find(name);
    if (it == suites().end()) throw ConfigError("unknown suite '" + name + "'");
    fns = it->second;
  }
  std::vector<Check> out;
  for (auto f : fns) {
    try {
      out.push_back(f(o));
    } catch (const Error& e) {
      out.push_back({"error", "check raised", Status::fail, e.what()});
    }
  }
  return out;
}

}  // namespace kpztail::verify
