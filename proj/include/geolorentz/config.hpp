#pragma once

// Scenario configuration: a line-oriented `key = value` format.
//
//   # comment
//   scenario  = hyperbolic
//   uniform_E = 1 0 0          # triples are three space-separated reals
//   steps     = 1000
//
// Keys (defaults in brackets):
//   scenario       name used in reports                     [custom]
//   uniform_E, E   uniform electric field triple            [unset]
//   uniform_B, B   uniform magnetic field triple            [unset]
//   coulomb_q      point source strength at unit radius     [unset]
//   coulomb_r_min  singular radius of the point source      [1e-6]
//   k              charge-to-mass ratio                     [1]
//   u              spatial part of the initial four-velocity [0 0 0]
//   velocity       initial three-velocity, |v| < 1 (alternative to u)
//   position       initial spatial position                 [0 0 0]
//   dtau           proper-time step, > 0                    [1e-3]
//   steps          number of steps, >= 0                    [required]
//   stepper        expmap | euler | rk4                     [expmap]
//   output         trajectory CSV path                      [trajectory.csv]
//   stride         write every n-th sample, >= 1            [1]
//
// At least one of uniform_E, uniform_B, coulomb_q is required. A uniform
// field together with coulomb_q yields a superposition of both.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "geolorentz/dynamics.hpp"
#include "geolorentz/error.hpp"
#include "geolorentz/fields.hpp"
#include "geolorentz/frames.hpp"
#include "geolorentz/minkowski.hpp"

namespace geolorentz {

struct ConfigIssue {
  int line = 0;  ///< 1-based; 0 for keys that are missing altogether
  std::string key;
  std::string message;
};

/// Every violation found in a config text, reported together.
class ConfigError : public InvalidArgument {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : InvalidArgument(format(issues)), issues_(std::move(issues)) {}

  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  static std::string format(const std::vector<ConfigIssue>& issues) {
    std::string out = "invalid config:";
    for (const auto& i : issues) {
      out += "\n  ";
      if (i.line > 0) out += "line " + std::to_string(i.line) + ": ";
      out += "key '" + i.key + "': " + i.message;
    }
    return out;
  }

  std::vector<ConfigIssue> issues_;
};

struct ScenarioConfig {
  std::string name = "custom";
  std::optional<ThreeVector> uniform_E;
  std::optional<ThreeVector> uniform_B;
  std::optional<double> coulomb_q;
  double coulomb_r_min = kDefaultCoulombRMin;
  double k = 1.0;
  ThreeVector u_spatial;
  ThreeVector position;
  double dtau = 1e-3;
  std::int64_t steps = 0;
  StepperKind stepper = StepperKind::ExpMap;
  std::string output = "trajectory.csv";
  std::int64_t stride = 1;

  FourVector initial_velocity() const { return four_velocity_from_spatial(u_spatial); }

  ParticleState initial_state() const {
    ParticleState s;
    s.position = FourVector(0.0, position);
    s.u = initial_velocity();
    return s;
  }

  FieldProvider provider() const {
    std::optional<FieldProvider> uniform;
    if (uniform_E || uniform_B) {
      uniform = UniformField{{uniform_E.value_or(ThreeVector{}), uniform_B.value_or(ThreeVector{})}};
    }
    if (!coulomb_q) return uniform.value_or(FieldProvider{});
    CoulombField c{*coulomb_q, coulomb_r_min};
    if (!uniform) return c;
    return FieldProvider::Superposition{*uniform, FieldProvider(c)};
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_real(std::string_view s) {
  double x = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return x;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

inline std::optional<StepperKind> parse_stepper(std::string_view s) {
  if (s == "expmap") return StepperKind::ExpMap;
  if (s == "euler") return StepperKind::Euler;
  if (s == "rk4") return StepperKind::RK4;
  return std::nullopt;
}

inline ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::vector<ConfigIssue> issues;
  std::map<std::string, int> seen;  // canonical key -> line
  std::optional<ThreeVector> velocity;
  int velocity_line = 0;

  static const std::map<std::string, std::string, std::less<>> kAliases = {
      {"scenario", "scenario"},   {"uniform_E", "uniform_E"},
      {"E", "uniform_E"},         {"uniform_B", "uniform_B"},
      {"B", "uniform_B"},         {"coulomb_q", "coulomb_q"},
      {"coulomb_r_min", "coulomb_r_min"}, {"k", "k"},
      {"u", "u"},                 {"velocity", "velocity"},
      {"position", "position"},   {"dtau", "dtau"},
      {"steps", "steps"},         {"stepper", "stepper"},
      {"output", "output"},       {"stride", "stride"},
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({line_no, std::string(line), "expected `key = value`"});
      continue;
    }
    const std::string raw_key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    const auto alias = kAliases.find(raw_key);
    if (alias == kAliases.end()) {
      issues.push_back({line_no, raw_key, "unknown key"});
      continue;
    }
    const std::string& key = alias->second;
    if (auto prev = seen.find(key); prev != seen.end()) {
      issues.push_back({line_no, raw_key,
                        "duplicate of line " + std::to_string(prev->second)});
      continue;
    }
    seen[key] = line_no;

    auto bad = [&](const std::string& msg) { issues.push_back({line_no, raw_key, msg}); };
    auto real = [&]() -> std::optional<double> {
      const auto x = detail::parse_real(value);
      if (!x) {
        bad("expected a real number, got '" + std::string(value) + "'");
        return std::nullopt;
      }
      if (!std::isfinite(*x)) {
        bad("value must be finite");
        return std::nullopt;
      }
      return x;
    };
    auto triple = [&]() -> std::optional<ThreeVector> {
      const auto parts = detail::split_ws(value);
      if (parts.size() != 3) {
        bad("expected three space-separated reals");
        return std::nullopt;
      }
      ThreeVector t;
      for (std::size_t i = 0; i < 3; ++i) {
        const auto x = detail::parse_real(parts[i]);
        if (!x) {
          bad("expected a real number, got '" + std::string(parts[i]) + "'");
          return std::nullopt;
        }
        if (!std::isfinite(*x)) {
          bad("value must be finite");
          return std::nullopt;
        }
        t[i] = *x;
      }
      return t;
    };
    auto integer = [&]() -> std::optional<std::int64_t> {
      std::int64_t n = 0;
      const auto* end = value.data() + value.size();
      const auto [ptr, ec] = std::from_chars(value.data(), end, n);
      if (ec != std::errc() || ptr != end) {
        bad("expected an integer, got '" + std::string(value) + "'");
        return std::nullopt;
      }
      return n;
    };

    if (key == "scenario") {
      if (value.empty()) bad("must not be empty");
      else cfg.name = std::string(value);
    } else if (key == "uniform_E") {
      cfg.uniform_E = triple();
    } else if (key == "uniform_B") {
      cfg.uniform_B = triple();
    } else if (key == "coulomb_q") {
      cfg.coulomb_q = real();
    } else if (key == "coulomb_r_min") {
      if (auto x = real()) {
        if (*x > 0.0) cfg.coulomb_r_min = *x;
        else bad("must be positive");
      }
    } else if (key == "k") {
      if (auto x = real()) cfg.k = *x;
    } else if (key == "u") {
      if (auto t = triple()) cfg.u_spatial = *t;
    } else if (key == "velocity") {
      if (auto t = triple()) {
        if (norm(*t) < 1.0) {
          velocity = *t;
          velocity_line = line_no;
        } else {
          bad("superluminal velocity, |v| = " + std::to_string(norm(*t)));
        }
      }
    } else if (key == "position") {
      if (auto t = triple()) cfg.position = *t;
    } else if (key == "dtau") {
      if (auto x = real()) {
        if (*x > 0.0) cfg.dtau = *x;
        else bad("must be positive");
      }
    } else if (key == "steps") {
      if (auto n = integer()) {
        if (*n >= 0) cfg.steps = *n;
        else bad("must be non-negative");
      }
    } else if (key == "stepper") {
      if (auto kind = parse_stepper(value)) cfg.stepper = *kind;
      else bad("expected expmap, euler or rk4");
    } else if (key == "output") {
      if (value.empty()) bad("must not be empty");
      else cfg.output = std::string(value);
    } else if (key == "stride") {
      if (auto n = integer()) {
        if (*n >= 1) cfg.stride = *n;
        else bad("must be at least 1");
      }
    }
  }

  if (velocity) {
    if (seen.count("u")) {
      issues.push_back({velocity_line, "velocity", "conflicts with key 'u' on line " +
                                                       std::to_string(seen["u"])});
    } else {
      cfg.u_spatial = lorentz_gamma(norm(*velocity)) * *velocity;
    }
  }
  if (!seen.count("steps")) issues.push_back({0, "steps", "missing required key"});
  if (!seen.count("uniform_E") && !seen.count("uniform_B") && !seen.count("coulomb_q")) {
    issues.push_back({0, "uniform_E", "missing field spec (uniform_E, uniform_B or coulomb_q)"});
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

/// Built-in scenarios.
inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"free", "hyperbolic", "cyclotron", "crossed",
                                                 "coulomb-orbit"};
  return names;
}

/// Steps per revolution of the coulomb-orbit preset.
inline constexpr std::int64_t kCoulombOrbitSteps = 200000;

inline ScenarioConfig preset_config(std::string_view name) {
  ScenarioConfig cfg;
  cfg.name = std::string(name);
  cfg.output = std::string(name) + ".csv";
  if (name == "free") {
    cfg.uniform_E = ThreeVector{};
    cfg.uniform_B = ThreeVector{};
    cfg.u_spatial = {0.3, -0.2, 0.5};
    cfg.steps = 1000;
  } else if (name == "hyperbolic") {
    cfg.uniform_E = ThreeVector{1.0, 0.0, 0.0};
    cfg.steps = 1000;
  } else if (name == "cyclotron") {
    cfg.uniform_B = ThreeVector{0.0, 0.0, 2.0};
    cfg.u_spatial = {1.0, 0.0, 0.0};
    cfg.steps = 10000;
  } else if (name == "crossed") {
    // E x B drift at speed |E|/|B| = 0.5 along x1.
    cfg.uniform_E = ThreeVector{0.0, 0.5, 0.0};
    cfg.uniform_B = ThreeVector{0.0, 0.0, 1.0};
    cfg.steps = 10000;
  } else if (name == "coulomb-orbit") {
    // One revolution at unit radius about an attracting source, k q = -1.
    cfg.coulomb_q = -1.0;
    cfg.position = {1.0, 0.0, 0.0};
    cfg.u_spatial = {0.0, circular_orbit_speed(-1.0, 1.0), 0.0};
    cfg.steps = kCoulombOrbitSteps;
    cfg.dtau = circular_orbit_period(-1.0, 1.0) / static_cast<double>(kCoulombOrbitSteps);
    cfg.stride = 100;
  } else {
    throw InvalidArgument("unknown scenario preset '" + std::string(name) + "'");
  }
  return cfg;
}

}  // namespace geolorentz
