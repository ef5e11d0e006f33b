#pragma once

// Grid syntax, CSV output and profile files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kpztail/core.hpp"
#include "kpztail/tail_bounds.hpp"

namespace kpztail::io {

/// "start:stop:step" (inclusive) or a single number.
inline std::vector<double> parse_grid(const std::string& spec) {
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("grid '" + spec + "': '" + s + "' is not a number");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("grid '" + spec + "': '" + s + "' is not a number");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() != 3) throw ConfigError("grid '" + spec + "': expected start:stop:step");
  const double a = num(parts[0]);
  const double b = num(parts[1]);
  const double h = num(parts[2]);
  if (!(h > 0.0)) throw ConfigError("grid '" + spec + "': step must be positive");
  if (b < a) throw ConfigError("grid '" + spec + "': stop is below start");
  const double count = std::floor((b - a) / h * (1.0 + 1e-12) + 1e-9);
  if (count > 1e7) throw ConfigError("grid '" + spec + "': more than 1e7 points");
  std::vector<double> out;
  for (long i = 0; i <= static_cast<long>(count); ++i) out.push_back(a + static_cast<double>(i) * h);
  return out;
}

/// Scientific notation with 15 significant digits.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

/// Round-trip representation for manifests.
inline std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
public:
  /// path "-" writes to stdout.
  CsvWriter(const std::string& path, const std::vector<std::string>& header) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open " + path + " for writing");
    }
    row_strings(header);
  }

  template <class... Ts>
  void row(const Ts&... fields) {
    std::vector<std::string> cells;
    (cells.push_back(cell(fields)), ...);
    row_strings(cells);
  }

  void row_strings(const std::vector<std::string>& cells) {
    std::ostream& os = file_ ? *file_ : std::cout;
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }

private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char ch : v) q += (ch == '"' ? std::string("\"\"") : std::string(1, ch));
    return q + "\"";
  }
  static std::string cell(const char* v) { return cell(std::string(v)); }

  std::unique_ptr<std::ofstream> file_;
};

/// {"samples": [[t, h0], ...], "A": real, "epsilon": real}
inline tail_bounds::ProfileSpec profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("profile: expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (k != "samples" && k != "A" && k != "epsilon" && k != "name") throw ConfigError("profile: unknown key '" + k + "'");
  }
  if (!j.contains("samples") || !j.contains("A") || !j.contains("epsilon")) {
    throw ConfigError("profile: needs samples, A and epsilon");
  }
  std::vector<std::pair<double, double>> samples;
  for (const auto& p : j.at("samples")) {
    if (!p.is_array() || p.size() != 2) throw ConfigError("profile: each sample must be [t, h0]");
    samples.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  const double eps = j.at("epsilon").get<double>();
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("profile: epsilon must lie in (0, 1)");
  return tail_bounds::ProfileSpec::from_samples(std::move(samples), j.at("A").get<double>(), eps);
}

inline tail_bounds::ProfileSpec load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read profile " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("profile " + path + ": " + e.what());
  }
  return profile_from_json(j);
}

}  // namespace kpztail::io
