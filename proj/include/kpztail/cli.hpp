#pragma once

// Command-line front end. Every option is registered together with a printer
// for its resolved value, so each run can write a manifest from which the same
// command line is rebuilt (`kpztail replay`).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpztail/groeneboom.hpp"
#include "kpztail/io.hpp"
#include "kpztail/monte_carlo.hpp"
#include "kpztail/special_functions.hpp"
#include "kpztail/tail_bounds.hpp"
#include "kpztail/tracy_widom.hpp"
#include "kpztail/verify.hpp"

namespace kpztail::cli {

inline constexpr const char* kManifestSchema = "kpztail-manifest";
inline constexpr int kManifestVersion = 1;

enum ExitCode { kOk = 0, kChecksFailed = 1, kValidation = 2, kNumerical = 3 };

namespace detail {

using Rows = std::vector<std::vector<std::string>>;

/// Options of one subcommand plus how to echo their resolved values.
class Registry {
public:
  explicit Registry(CLI::App* app) : app_(app) {}

  CLI::Option* value(const std::string& name, double& v, const std::string& help) {
    items_.push_back({name, [&v] { return nlohmann::json(io::exact(v)); }, false});
    return app_->add_option("--" + name, v, help)->capture_default_str();
  }
  CLI::Option* value(const std::string& name, std::string& v, const std::string& help) {
    items_.push_back({name, [&v] { return nlohmann::json(v); }, false});
    return app_->add_option("--" + name, v, help)->capture_default_str();
  }
  template <class Int>
  CLI::Option* integer(const std::string& name, Int& v, const std::string& help) {
    items_.push_back({name, [&v] { return nlohmann::json(std::to_string(v)); }, false});
    return app_->add_option("--" + name, v, help)->capture_default_str();
  }
  CLI::Option* flag(const std::string& name, bool& v, const std::string& help) {
    items_.push_back({name, [&v] { return nlohmann::json(v); }, false});
    return app_->add_flag("--" + name, v, help);
  }
  CLI::Option* positional(const std::string& name, std::string& v, const std::string& help) {
    items_.push_back({name, [&v] { return nlohmann::json(v); }, true});
    return app_->add_option(name, v, help)->required();
  }

  [[nodiscard]] nlohmann::json config() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& it : items_) j[it.name] = it.print();
    return j;
  }

private:
  struct Item {
    std::string name;
    std::function<nlohmann::json()> print;
    bool positional;
  };
  CLI::App* app_;
  std::vector<Item> items_;
};

/// Options shared by every subcommand.
struct Common {
  std::string out = "-";
  std::string manifest;
  unsigned workers = 0;
};

inline void add_common(CLI::App* app, Registry& reg, Common& c, const char* out_help) {
  reg.value("out", c.out, out_help);
  app->add_option("--manifest", c.manifest,
                  "Manifest path (default: <out>.manifest.json, or kpztail_run.manifest.json when writing to stdout)");
  app->add_option("--workers", c.workers, "Worker threads; 0 uses KPZTAIL_WORKERS or the hardware count")
      ->capture_default_str();
}

inline std::string manifest_path(const Common& c) {
  if (!c.manifest.empty()) return c.manifest;
  if (c.out.empty() || c.out == "-") return "kpztail_run.manifest.json";
  return c.out + ".manifest.json";
}

inline void write_manifest(const std::string& subcommand, const Registry& reg, const Common& c, std::size_t rows) {
  nlohmann::json m;
  m["schema"] = kManifestSchema;
  m["schema_version"] = kManifestVersion;
  m["subcommand"] = subcommand;
  m["config"] = reg.config();
  m["outputs"] = {{"csv", c.out.empty() ? "-" : c.out}, {"rows", rows}};
  std::ofstream f(manifest_path(c));
  if (!f) throw ConfigError("cannot write manifest " + manifest_path(c));
  f << m.dump(2) << '\n';
}

inline void emit(const std::string& path, const std::vector<std::string>& header, const Rows& rows) {
  io::CsvWriter w(path, header);
  for (const auto& r : rows) w.row_strings(r);
}

/// Rows computed in parallel, written in grid order.
template <class Fn>
Rows sweep(std::size_t n, unsigned workers, Fn&& fn) {
  Rows rows(n);
  monte_carlo::parallel_for(n, [&](std::size_t i) { rows[i] = fn(i); }, workers);
  return rows;
}

inline std::string f(double v) { return io::fmt(v); }
inline std::string b(bool v) { return v ? "1" : "0"; }

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string target;
  std::string x = "1";
  double y = 0.0;
  double c = 0.5;
  double rel_tol = 1e-12;
  double offset = 1.0;
  int nodes = 48;
};

inline std::size_t run_eval(const EvalArgs& a, const Common& c) {
  const auto xs = io::parse_grid(a.x);
  AccuracyPolicy policy;
  policy.target_rel_tol = a.rel_tol;
  policy.validate();
  groeneboom::ContourSpec contour;
  contour.offset = a.offset;
  tracy_widom::FredholmConfig fred;
  fred.node_count = a.nodes;
  fred.validate();

  const std::vector<std::string> real_header = {"x", "value", "log_value", "abs_err", "rel_err", "nodes"};
  auto real_row = [](double x, const EvalResult& r) {
    return std::vector<std::string>{f(x), f(r.value), f(r.log_value), f(r.abs_err_est), f(r.rel_err_est), std::to_string(r.nodes_used)};
  };
  const std::map<std::string, std::function<EvalResult(double)>> real = {
      {"groeneboom", [&](double x) { return groeneboom::g_tail(x, contour, policy); }},
      {"groeneboom-one-sided", [&](double x) { return groeneboom::g_tail_one_sided(x, contour, policy); }},
      {"groeneboom-derivative", [&](double x) { return groeneboom::g_tail_derivative(x, contour, policy); }},
      {"density", [&](double x) { return groeneboom::density_fc(a.c, x, contour, policy); }},
      {"e1", [&](double x) { return special::exp_integral_e1(x); }},
  };
  if (const auto it = real.find(a.target); it != real.end()) {
    const auto rows = sweep(xs.size(), c.workers, [&](std::size_t i) { return real_row(xs[i], it->second(xs[i])); });
    emit(c.out, real_header, rows);
    return rows.size();
  }

  if (a.target == "gue" || a.target == "goe") {
    const bool gue = a.target == "gue";
    const auto rows = sweep(xs.size(), c.workers, [&](std::size_t i) {
      const double s = xs[i];
      const auto d = gue ? tracy_widom::gue_distribution(s, fred) : tracy_widom::goe_distribution(s, fred);
      std::string asym = "nan", dev = "nan";
      if (s > 0.0) {
        const double la = gue ? tracy_widom::gue_tail_asymptotic_log(s) : tracy_widom::goe_tail_asymptotic_log(s);
        asym = f(std::exp(la));
        dev = f(std::exp(d.ccdf.log_value - la) - 1.0);
      }
      return std::vector<std::string>{f(s), f(d.cdf.value), f(d.ccdf.value), f(d.ccdf.log_value), asym, dev, b(d.cdf.flagged)};
    });
    emit(c.out, {"s", "cdf", "one_minus_cdf", "log_one_minus_cdf", "asymptotic", "rel_dev", "flagged"}, rows);
    return rows.size();
  }

  const std::map<std::string, std::function<ComplexEvalResult(Complex)>> complex = {
      {"airy", [&](Complex z) { return special::airy_ai(z, policy); }},
      {"airy-prime", [&](Complex z) { return special::airy_ai_prime(z, policy); }},
      {"hi", [&](Complex z) { return special::scorer_hi(z, policy); }},
      {"hi-scaled", [&](Complex z) { return special::scorer_hi_scaled(z, policy); }},
  };
  const auto it = complex.find(a.target);
  if (it == complex.end()) throw ConfigError("eval: unknown target '" + a.target + "'");
  const auto rows = sweep(xs.size(), c.workers, [&](std::size_t i) {
    const auto r = it->second(Complex(xs[i], a.y));
    return std::vector<std::string>{f(xs[i]), f(a.y), f(r.value.real()), f(r.value.imag()), f(r.log_value), f(r.rel_err_est)};
  });
  emit(c.out, {"x", "y", "re", "im", "log_abs", "rel_err"}, rows);
  return rows.size();
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::string kind;
  std::string s_grid = "15:40:1";
  double sigma = 1.0;
  double c = 0.5;
  double a = 1.0;
  std::string alpha = "2";
  std::string beta = "1";
  std::string sigma_grid = "0.5:2:0.5";
  std::string profile;
  bool quadrature = false;
  double brownian_constant = tail_bounds::kBrownianUpperConstantDefault;
  double parabola_constant = tail_bounds::kParabolaConstantDefault;
};

inline std::size_t run_bounds(const BoundsArgs& a, const Common& c) {
  Rows rows;
  std::vector<std::string> header;
  if (a.kind == "geometric") {
    const auto al = io::parse_grid(a.alpha);
    const auto be = io::parse_grid(a.beta);
    rows = sweep(al.size() * be.size(), c.workers, [&](std::size_t k) {
      const double x = al[k / be.size()], y = be[k % be.size()];
      const auto g = tail_bounds::geometric_exp_sum_bound(x, y);
      return std::vector<std::string>{f(x), f(y), f(g.direct_sum), f(g.bound), b(g.direct_sum <= g.bound)};
    });
    header = {"alpha", "beta", "direct_sum", "bound", "holds"};
  } else if (a.kind == "laplace") {
    const auto sg = io::parse_grid(a.sigma_grid);
    rows = sweep(sg.size(), c.workers, [&](std::size_t i) {
      const auto l = tail_bounds::laplace_analysis(sg[i], a.c);
      return std::vector<std::string>{f(sg[i]), f(l.mu0), f(l.g_at_mu0), f(l.curvature_alpha),
                                      f(tail_bounds::brownian_exponent_coeff(sg[i]))};
    });
    header = {"sigma", "mu0", "g_at_mu0", "curvature", "exponent_coeff"};
  } else {
    const auto ss = io::parse_grid(a.s_grid);
    if (a.kind == "fsigma") {
      const tail_bounds::LowerOptions lo{a.quadrature};
      const tail_bounds::UpperOptions up{a.brownian_constant, a.parabola_constant};
      rows = sweep(ss.size(), c.workers, [&](std::size_t i) {
        const auto r = tail_bounds::fsigma_bounds(a.sigma, ss[i], lo, up);
        return std::vector<std::string>{f(ss[i]), f(r.lower), f(r.upper), f(std::exp(r.lower)), f(std::exp(r.upper)),
                                        f(r.exponent_coeff), b(tail_bounds::in_regime(a.sigma, ss[i])), b(r.flagged)};
      });
      header = {"s", "lower_log", "upper_log", "lower", "upper", "exponent_coeff", "in_regime", "flagged"};
    } else if (a.kind == "parabola") {
      rows = sweep(ss.size(), c.workers, [&](std::size_t i) {
        const auto r = tail_bounds::airy_parabola_upper_bound(a.c, ss[i], a.parabola_constant);
        return std::vector<std::string>{f(ss[i]), f(r.upper), f(std::exp(r.upper)), f(r.part("closed_form")),
                                        f(r.part("gue_lower"))};
      });
      header = {"s", "upper_log", "upper", "closed_form_log", "gue_lower_log"};
    } else if (a.kind == "finite") {
      rows = sweep(ss.size(), c.workers, [&](std::size_t i) {
        const double v = tail_bounds::airy_finite_interval_bound(a.a, ss[i]);
        const double sharp = tail_bounds::airy_finite_interval_bound_sharp_log(a.a, ss[i]);
        return std::vector<std::string>{f(ss[i]), f(std::log(v)), f(v), f(sharp), f(std::exp(sharp))};
      });
      header = {"s", "bound_log", "bound", "sharp_log", "sharp"};
    } else if (a.kind == "profile") {
      if (a.profile.empty()) throw ConfigError("bounds profile: --profile is required");
      auto p = io::load_profile(a.profile);
      tail_bounds::compute_kappa(p);
      rows = sweep(ss.size(), c.workers, [&](std::size_t i) {
        auto local = p;
        const auto r = tail_bounds::deterministic_profile_bounds(local, ss[i], a.parabola_constant);
        return std::vector<std::string>{f(ss[i]), f(p.kappa), f(p.M), f(r.lower), f(r.upper), f(std::exp(r.lower)),
                                        f(std::exp(r.upper))};
      });
      header = {"s", "kappa", "M", "lower_log", "upper_log", "lower", "upper"};
    } else {
      throw ConfigError("bounds: unknown kind '" + a.kind + "'");
    }
  }
  emit(c.out, header, rows);
  return rows.size();
}

// ---------------------------------------------------------------------------
// mc and lpp

struct McArgs {
  double c = 0.5;
  double grid_step = 1e-4;
  double radius = 0.0;
  bool no_bridge = false;
  double refine_sigmas = 4.0;
  std::size_t n = 10000;
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  std::string tail_x;
};

inline std::size_t run_mc(const McArgs& a, const Common& c) {
  monte_carlo::SamplerConfig cfg;
  cfg.c = a.c;
  cfg.grid_step = a.grid_step;
  if (a.radius > 0.0) cfg.domain_radius = a.radius;
  cfg.bridge_correction = !a.no_bridge;
  cfg.refine_sigmas = a.refine_sigmas;
  cfg.validate();
  const auto xs = a.tail_x.empty() ? std::vector<double>{} : io::parse_grid(a.tail_x);
  const auto paths = monte_carlo::sample_bm_parabola_max(cfg, a.n, {a.seed, a.stream}, c.workers);
  io::CsvWriter w(c.out, {"replicate", "M", "tau", "boundary_flag"});
  for (std::size_t i = 0; i < paths.size(); ++i) w.row(i, paths[i].max_value, paths[i].argmax, paths[i].boundary_flag);
  if (!xs.empty()) {
    const monte_carlo::EmpiricalDistribution d(monte_carlo::max_values(paths));
    std::cerr << "x,tail,std_error\n";
    for (double x : xs) {
      const auto e = monte_carlo::empirical_tail(d, x);
      std::cerr << io::fmt(x) << ',' << io::fmt(e.estimate) << ',' << io::fmt(e.std_error) << '\n';
    }
  }
  return paths.size();
}

struct LppArgs {
  int n = 2000;
  double sigma = 0.0;
  std::size_t reps = 100;
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  double memory_gib = 1.0;
};

inline std::size_t run_lpp(const LppArgs& a, const Common& c) {
  monte_carlo::LppConfig cfg;
  cfg.lattice_size = a.n;
  cfg.sigma = a.sigma;
  cfg.replications = a.reps;
  if (!(a.memory_gib > 0.0)) throw ConfigError("lpp: --memory-gib must be positive");
  cfg.memory_budget_bytes = static_cast<std::size_t>(a.memory_gib * double(std::size_t{1} << 30));
  cfg.validate();
  std::vector<double> h(a.reps);
  monte_carlo::parallel_for(a.reps, [&](std::size_t i) { h[i] = monte_carlo::lpp_replicate(cfg, {a.seed, a.stream}, i); }, c.workers);
  io::CsvWriter w(c.out, {"replicate", "rescaled_height"});
  for (std::size_t i = 0; i < h.size(); ++i) w.row(i, h[i]);
  return h.size();
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 42;
  bool slow = false;
  bool quick = false;
  std::string profile_dir = KPZTAIL_PROFILE_DIR;
};

inline std::size_t run_verify(const VerifyArgs& a, const Common& c, bool& failed) {
  verify::Options o;
  o.seed = a.seed;
  o.slow = a.slow;
  o.quick = a.quick;
  o.workers = c.workers;
  o.profile_dir = a.profile_dir;
  const auto checks = verify::run_suite(a.suite, o);
  std::ostream& table = (c.out == "-") ? std::cerr : std::cout;
  std::size_t passed = 0, failures = 0;
  for (const auto& ch : checks) {
    table << '[' << verify::status_name(ch.status) << "] " << ch.suite << ": " << ch.name << "  (" << ch.detail << ")\n";
    passed += ch.status == verify::Status::pass;
    failures += ch.status == verify::Status::fail;
  }
  table << passed << " passed, " << failures << " failed, " << checks.size() - passed - failures << " skipped\n";
  if (!c.out.empty()) {
    io::CsvWriter w(c.out, {"suite", "check", "status", "detail"});
    for (const auto& ch : checks) w.row(ch.suite, ch.name, verify::status_name(ch.status), ch.detail);
  }
  failed = failures > 0;
  return checks.size();
}

}  // namespace detail

/// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv) {
  using namespace detail;
  CLI::App app{"kpztail: KPZ right-tail functions, bounds and Monte Carlo checks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  // eval
  EvalArgs ea;
  Common ce;
  auto* eval = app.add_subcommand("eval", "Evaluate a special function or distribution on a grid");
  Registry reg_eval(eval);
  reg_eval.positional("target", ea.target,
                      "groeneboom | groeneboom-one-sided | groeneboom-derivative | density | gue | goe | airy | "
                      "airy-prime | hi | hi-scaled | e1");
  reg_eval.value("x", ea.x, "Real argument grid, start:stop:step inclusive or a single value (s for gue/goe)");
  reg_eval.value("y", ea.y, "Imaginary part for complex targets");
  reg_eval.value("c", ea.c, "Parabola coefficient c > 0 for the density of max(B(t) - c t^2)");
  reg_eval.value("rel-tol", ea.rel_tol, "Target relative tolerance");
  reg_eval.value("offset", ea.offset, "Contour offset for the Groeneboom integral");
  reg_eval.integer("nodes", ea.nodes, "Starting quadrature node count for Fredholm determinants");
  add_common(eval, reg_eval, ce, "CSV output path, '-' for stdout");

  // bounds
  BoundsArgs ba;
  Common cb;
  auto* bounds = app.add_subcommand("bounds", "Tail bounds on a grid; every probability also given as its natural log");
  Registry reg_bounds(bounds);
  reg_bounds.positional("kind", ba.kind, "fsigma | parabola | finite | geometric | laplace | profile");
  reg_bounds.value("s-grid", ba.s_grid, "Grid of tail levels s");
  reg_bounds.value("sigma", ba.sigma, "Brownian data strength sigma > 0 (fsigma)");
  reg_bounds.value("c", ba.c, "Parabola coefficient in (0, 1) (parabola), or c in (0, 1] (laplace)");
  reg_bounds.value("a", ba.a, "Half-width of the interval in units of sqrt(s) (finite)");
  reg_bounds.value("alpha", ba.alpha, "Grid of alpha > 1 (geometric)");
  reg_bounds.value("beta", ba.beta, "Grid of beta > 0 (geometric)");
  reg_bounds.value("sigma-grid", ba.sigma_grid, "Grid of sigma (laplace)");
  reg_bounds.value("profile", ba.profile, "Profile JSON {samples: [[t, h0]], A, epsilon} (profile)");
  reg_bounds.flag("quadrature", ba.quadrature, "Lower bound by quadrature over the Groeneboom density (fsigma)");
  reg_bounds.value("brownian-constant", ba.brownian_constant, "Constant in the closed-form Brownian upper bound");
  reg_bounds.value("parabola-constant", ba.parabola_constant, "Constant in the closed-form parabola bound");
  add_common(bounds, reg_bounds, cb, "CSV output path, '-' for stdout");

  // mc
  McArgs ma;
  Common cm;
  auto* mc = app.add_subcommand("mc", "Sample M = max(B(t) - c t^2) for two-sided Brownian motion B");
  Registry reg_mc(mc);
  reg_mc.value("c", ma.c, "Parabola coefficient c > 0");
  reg_mc.value("grid-step", ma.grid_step, "Time resolution h in (0, 1e-3]");
  reg_mc.value("radius", ma.radius, "Half-width T of the time window; 0 picks the smallest certified radius");
  reg_mc.flag("no-bridge", ma.no_bridge, "Disable the Brownian-bridge maximum correction (biased low)");
  reg_mc.value("refine-sigmas", ma.refine_sigmas, "Refinement threshold in units of sqrt(h)");
  reg_mc.integer("n", ma.n, "Number of paths");
  reg_mc.integer("seed", ma.seed, "Master seed");
  reg_mc.integer("stream", ma.stream, "Stream id");
  reg_mc.value("tail-x", ma.tail_x, "Optional grid of x; prints P(M > x) with standard errors to stderr");
  add_common(mc, reg_mc, cm, "CSV output path (replicate, M, tau, boundary_flag), '-' for stdout");

  // lpp
  LppArgs la;
  Common cl;
  auto* lpp = app.add_subcommand("lpp", "Exponential last-passage percolation from a line, rescaled heights");
  Registry reg_lpp(lpp);
  reg_lpp.integer("n", la.n, "Lattice size (>= 64); the endpoint is (n, n)");
  reg_lpp.value("sigma", la.sigma, "Boundary random-walk strength; 0 is flat");
  reg_lpp.integer("reps", la.reps, "Replications");
  reg_lpp.integer("seed", la.seed, "Master seed");
  reg_lpp.integer("stream", la.stream, "Stream id");
  reg_lpp.value("memory-gib", la.memory_gib, "Memory budget in GiB");
  add_common(lpp, reg_lpp, cl, "CSV output path (replicate, rescaled_height), '-' for stdout");

  // verify
  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run verification suites; exit 1 if any check fails");
  Registry reg_ver(ver);
  reg_ver.value("suite", va.suite, "all | acceptance | special | groeneboom | tracy_widom | tail_bounds | monte_carlo | lpp")
      ->check(CLI::IsMember(verify::suite_names()));
  reg_ver.integer("seed", va.seed, "Master seed");
  reg_ver.flag("slow", va.slow, "Include the full-size LPP universality check (tens of minutes)");
  reg_ver.flag("quick", va.quick, "Smaller Monte Carlo sizes");
  reg_ver.value("profile-dir", va.profile_dir, "Directory of profile JSON files");
  Common cv;
  cv.out.clear();
  add_common(ver, reg_ver, cv, "Optional CSV of check results; the table goes to stdout");

  // replay
  std::string replay_manifest, replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", replay_manifest, "Manifest JSON written by an earlier run")->required();
  replay->add_option("--out", replay_out, "Override the recorded output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*replay) {
      std::ifstream in(replay_manifest);
      if (!in) throw ConfigError("cannot read manifest " + replay_manifest);
      nlohmann::json m;
      try {
        in >> m;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("manifest: ") + e.what());
      }
      if (m.value("schema", "") != kManifestSchema) throw ConfigError("manifest: unknown schema");
      if (m.value("schema_version", 0) != kManifestVersion) throw ConfigError("manifest: unsupported schema_version");
      std::vector<std::string> args = {argv[0], m.at("subcommand").get<std::string>()};
      for (const char* pos : {"target", "kind"}) {
        if (m["config"].contains(pos)) args.push_back(m["config"][pos].get<std::string>());
      }
      for (const auto& [k, v] : m.at("config").items()) {
        if (k == "target" || k == "kind") continue;
        if (k == "out" && !replay_out.empty()) continue;
        if (v.is_boolean()) {
          if (v.get<bool>()) args.push_back("--" + k);
        } else {
          const auto s = v.get<std::string>();
          if (k == "out" && s.empty()) continue;
          args.push_back("--" + k);
          args.push_back(s);
        }
      }
      if (!replay_out.empty()) {
        args.push_back("--out");
        args.push_back(replay_out);
      }
      std::vector<const char*> av;
      for (const auto& s : args) av.push_back(s.c_str());
      return run(static_cast<int>(av.size()), av.data());
    }

    std::size_t rows = 0;
    bool failed = false;
    if (*eval) {
      rows = run_eval(ea, ce);
      write_manifest("eval", reg_eval, ce, rows);
    } else if (*bounds) {
      rows = run_bounds(ba, cb);
      write_manifest("bounds", reg_bounds, cb, rows);
    } else if (*mc) {
      rows = run_mc(ma, cm);
      write_manifest("mc", reg_mc, cm, rows);
    } else if (*lpp) {
      rows = run_lpp(la, cl);
      write_manifest("lpp", reg_lpp, cl, rows);
    } else if (*ver) {
      rows = run_verify(va, cv, failed);
      write_manifest("verify", reg_ver, cv, rows);
    }
    return failed ? kChecksFailed : kOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace kpztail::cli
