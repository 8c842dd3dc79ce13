// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geolorentz/geolorentz.hpp"
#include "test_support.hpp"

using namespace geolorentz;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ParticleState moving(const ThreeVector& u_spatial, const ThreeVector& x = {}) {
  ParticleState s;
  s.u = four_velocity_from_spatial(u_spatial);
  s.position = FourVector(0.0, x);
  return s;
}

// 1. Generators reproduce the integer boost and rotation matrices exactly.
Outcome generator_fidelity() {
  Outcome o;
  const double k[3][16] = {{0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0}};
  const double s[3][16] = {{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0},
                           {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0},
                           {0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0}};
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 16; ++e) {
      o.require(boost_generator(i + 1).data()[e] == k[i][e], "K" + std::to_string(i + 1));
      o.require(rotation_generator(i + 1).data()[e] == s[i][e], "S" + std::to_string(i + 1));
    }
  }
  return o;
}

// 2. All commutators [K,K] = -S, [S,S] = S, [S,K] = K hold exactly.
Outcome structure_constants() {
  Outcome o;
  auto eps = [](int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; };
  int exact = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Matrix4 kk, ss, sk;
      for (int k = 1; k <= 3; ++k) {
        kk += static_cast<double>(-eps(i, j, k)) * rotation_generator(k);
        ss += static_cast<double>(eps(i, j, k)) * rotation_generator(k);
        sk += static_cast<double>(eps(i, j, k)) * boost_generator(k);
      }
      const bool ok = commutator(boost_generator(i), boost_generator(j)) == kk &&
                      commutator(rotation_generator(i), rotation_generator(j)) == ss &&
                      commutator(rotation_generator(i), boost_generator(j)) == sk;
      o.require(ok, "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      exact += ok ? 1 : 0;
    }
  if (o.passed) o.detail = std::to_string(exact) + "/9 index pairs exact for all three families";
  return o;
}

// 3. Parameter transformation closed forms and the two-frame linear system.
Outcome parameter_closed_forms() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double v = oracle::uniform(rng, -0.99, 0.99);
    const double g = 1.0 / std::sqrt(1.0 - v * v);
    const LieParams p{oracle::random3(rng), oracle::random3(rng)};
    const LieParams got = transform_params(p, {v, 0, 0});
    const ThreeVector& e = p.boost;
    const ThreeVector& b = p.rotation;
    // Full axis-1 closed form; its components are the individual closed forms
    // for transverse boosts, rotations, longitudinal parts and mixed input.
    const double want[6] = {e[0], g * (e[1] + v * b[2]), g * (e[2] - v * b[1]),
                            b[0], g * (b[1] - v * e[2]), g * (b[2] + v * e[1])};
    const double have[6] = {got.boost[0], got.boost[1], got.boost[2],
                            got.rotation[0], got.rotation[1], got.rotation[2]};
    for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(have[i] - want[i]));
    // Pure inputs, one closed form at a time.
    const double d = oracle::uniform(rng, -1, 1);
    const LieParams tb = transform_params({{0, d, 0}, {}}, {v, 0, 0});
    const LieParams tr = transform_params({{}, {0, 0, d}}, {v, 0, 0});
    const LieParams lb = transform_params({{d, 0, 0}, {}}, {v, 0, 0});
    const LieParams lr = transform_params({{}, {d, 0, 0}}, {v, 0, 0});
    worst = std::max({worst, std::abs(tb.boost[1] - g * d), std::abs(tb.rotation[2] - g * v * d),
                      std::abs(tr.boost[1] - g * v * d), std::abs(tr.rotation[2] - g * d),
                      std::abs(lb.boost[0] - d), std::abs(lr.rotation[0] - d)});
  }
  o.require(worst <= 1e-12, "closed-form max error " + sci(worst) + " > 1e-12");

  const double ds[3] = {1e-4, 1e-5, 1e-6};
  std::vector<double> errs;
  for (double d : ds) {
    const auto r = two_frame_scenario(0.6, {std::sqrt(2.0), 0, 1, 0}, d);
    const LieParams p = transform_params({{0, d, 0}, {}}, {0.6, 0, 0});
    errs.push_back(std::max(std::abs(r.delta_v2 - p.boost[1]), std::abs(r.delta_phi3 - p.rotation[2])));
  }
  const auto orders = oracle::observed_orders(errs, 10.0);
  for (double ord : orders) o.require(std::abs(ord - 2.0) <= 0.2, "observed order " + sci(ord));
  if (o.passed) {
    o.detail = "closed forms max err " + sci(worst) + "; linear-system orders " + sci(orders[0]) +
               ", " + sci(orders[1]);
  }
  return o;
}

// 4. Closed-form field transform equals the adjoint route; invariants preserved.
Outcome equivalence_theorem() {
  Outcome o;
  std::mt19937_64 rng(4242);
  double equiv = 0.0, inv_dot = 0.0, inv_norm = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const EMField f{oracle::random3(rng), oracle::random3(rng)};
    const double v = oracle::uniform(rng, -0.99, 0.99);
    const EMField a = transform_field_axis1(f, v);
    const EMField b =
        to_field(extract_params(adjoint(finite_boost({v, 0, 0}), field_matrix(f))));
    for (std::size_t i = 0; i < 3; ++i) {
      equiv = std::max({equiv, std::abs(a.E[i] - b.E[i]), std::abs(a.B[i] - b.B[i])});
    }
    const EMField g = transform_field_general(f, oracle::random_velocity(rng, 0.99));
    inv_dot = std::max(inv_dot, std::abs(field_invariant_dot(g) - field_invariant_dot(f)));
    inv_norm = std::max(inv_norm, std::abs(field_invariant_norm(g) - field_invariant_norm(f)));
  }
  o.require(equiv <= 1e-12, "equivalence error " + sci(equiv));
  o.require(inv_dot <= 1e-10, "E.B drift " + sci(inv_dot));
  o.require(inv_norm <= 1e-10, "|E|^2-|B|^2 drift " + sci(inv_norm));
  if (o.passed) {
    o.detail = "equivalence " + sci(equiv) + ", E.B " + sci(inv_dot) + ", |E|^2-|B|^2 " + sci(inv_norm);
  }
  return o;
}

double hyperbolic_error(StepperKind kind, double dtau) {
  const auto steps = static_cast<std::int64_t>(std::llround(1.0 / dtau));
  const Trajectory t = simulate(ParticleState{}, UniformField{{{1, 0, 0}, {}}}, ChargeRatio{1.0},
                                dtau, steps, kind);
  const FourVector& u = t.samples.back().state.u;
  return std::max({std::abs(u[0] - std::cosh(1.0)), std::abs(u[1] - std::sinh(1.0)),
                   std::abs(u[2]), std::abs(u[3])});
}

// 5. Hyperbolic motion, expmap accuracy and RK4 order.
Outcome hyperbolic_motion() {
  Outcome o;
  const double e = hyperbolic_error(StepperKind::ExpMap, 1e-3);
  o.require(e <= 1e-9, "expmap error " + sci(e));
  std::vector<double> errs;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) errs.push_back(hyperbolic_error(StepperKind::RK4, h));
  const auto orders = oracle::observed_orders(errs);
  for (double ord : orders) o.require(std::abs(ord - 4.0) <= 0.2, "RK4 order " + sci(ord));
  if (o.passed) {
    o.detail = "expmap err " + sci(e) + "; RK4 orders " + sci(orders[0]) + ", " + sci(orders[1]) +
               ", " + sci(orders[2]);
  }
  return o;
}

// 6. Cyclotron period, radius and energy.
Outcome cyclotron() {
  Outcome o;
  const Trajectory t = simulate(moving({1, 0, 0}), UniformField{{{}, {0, 0, 2}}}, ChargeRatio{1.0},
                                1e-3, 10000, StepperKind::ExpMap);
  std::vector<double> xs, ys;
  double angle = 0.0;
  double prev = std::atan2(t.samples[0].state.u[2], t.samples[0].state.u[1]);
  double drift = 0.0;
  for (const auto& s : t.samples) {
    xs.push_back(s.state.position[1]);
    ys.push_back(s.state.position[2]);
    const double a = std::atan2(s.state.u[2], s.state.u[1]);
    double d = a - prev;
    if (d > kPi) d -= 2 * kPi;
    if (d < -kPi) d += 2 * kPi;
    angle += d;
    prev = a;
    drift = std::max(drift, std::abs(s.state.u[0] - std::sqrt(2.0)));
  }
  const double period = 2 * kPi * t.samples.back().state.tau / std::abs(angle);
  const double radius = oracle::fit_circle(xs, ys).radius;
  o.require(std::abs(period - kPi) <= 1e-8, "period error " + sci(period - kPi));
  o.require(std::abs(radius - 0.5) <= 1e-6, "radius error " + sci(radius - 0.5));
  o.require(drift < 1e-10, "energy drift " + sci(drift));
  if (o.passed) {
    o.detail = "period err " + sci(period - kPi) + ", radius err " + sci(radius - 0.5) +
               ", energy drift " + sci(drift);
  }
  return o;
}

// 7. Norm preservation over a million steps; Euler drifts far more.
Outcome structure_preservation() {
  Outcome o;
  struct Run {
    const char* name;
    EMField field;
    ThreeVector u;
    double dtau;
  };
  const Run runs[] = {{"cyclotron", {{}, {0, 0, 2}}, {1, 0, 0}, 1e-3},
                      {"crossed", {{0, 0.5, 0}, {0, 0, 1}}, {0.3, -0.2, 0.4}, 1e-2}};
  double worst = 0.0;
  for (const auto& r : runs) {
    InvariantMonitor m;
    simulate_each(moving(r.u), UniformField{r.field}, ChargeRatio{1.0}, r.dtau, 1000000,
                  StepperKind::ExpMap, [&](const Sample& s) { m.add(s); });
    o.require(m.report().max_norm_err <= 1e-10,
              std::string(r.name) + " norm err " + sci(m.report().max_norm_err));
    worst = std::max(worst, m.report().max_norm_err);
  }
  const UniformField cyc{{{}, {0, 0, 2}}};
  const auto ex = invariant_report(simulate(moving({1, 0, 0}), cyc, ChargeRatio{1.0}, 1e-3, 10000, StepperKind::ExpMap));
  const auto eu = invariant_report(simulate(moving({1, 0, 0}), cyc, ChargeRatio{1.0}, 1e-3, 10000, StepperKind::Euler));
  o.require(eu.max_norm_err >= 10 * ex.max_norm_err && eu.max_norm_err > 0.0,
            "euler drift " + sci(eu.max_norm_err) + " vs expmap " + sci(ex.max_norm_err));
  if (o.passed) {
    o.detail = "1e6-step max |u.u-1| " + sci(worst) + "; cyclotron euler " + sci(eu.max_norm_err) +
               " vs expmap " + sci(ex.max_norm_err);
  }
  return o;
}

// 8. Circular orbit about an attracting point source keeps u0 constant.
Outcome continuous_fall() {
  Outcome o;
  const double kq = -1.0, r = 1.0;
  const double w = oracle::bisect(
      [&](double x) { return x * x / r + kq * std::sqrt(1 + x * x) / (r * r); }, 0.0, 10.0);
  const double period = 2 * kPi * r / w;
  const std::int64_t steps = 200000;
  InvariantMonitor m;
  double max_e_dot_u = 0.0;
  simulate_each(moving({0, w, 0}, {r, 0, 0}), CoulombField{kq}, ChargeRatio{1.0}, period / steps,
                steps, StepperKind::ExpMap, [&](const Sample& s) {
                  m.add(s);
                  const EMField f = coulomb_field(s.state.position, kq);
                  max_e_dot_u = std::max(max_e_dot_u, std::abs(dot(f.E, s.state.u.space())));
                });
  const double drift = m.report().max_energy_drift;
  o.require(drift <= 1e-8, "u0 drift " + sci(drift));
  if (o.passed) {
    o.detail = "u0 drift " + sci(drift) + " over one period (" + std::to_string(steps) +
               " steps), max |E.u| " + sci(max_e_dot_u);
  }
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GEOLORENTZ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

// 9. CLI determinism and CSV round trip.
Outcome cli_determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("geolorentz_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto r1 = dir / "verify1.txt", r2 = dir / "verify2.txt";
  o.require(run_cli("verify --seed 42 --out " + r1.string()) == 0, "verify run 1 failed");
  o.require(run_cli("verify --seed 42 --out " + r2.string()) == 0, "verify run 2 failed");
  const std::string a = read_file(r1), b = read_file(r2);
  o.require(!a.empty() && a == b, "verify reports differ");

  const auto csv = dir / "hyperbolic.csv";
  o.require(run_cli("simulate --scenario hyperbolic --out " + csv.string()) == 0, "simulate failed");
  std::istringstream is(read_file(csv));
  std::string line, last;
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  std::vector<std::string> cells;
  std::istringstream ls(last);
  for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
  if (cells.size() != 11) {
    o.require(false, "final row has " + std::to_string(cells.size()) + " columns");
  } else {
    const double u0 = std::strtod(cells[5].c_str(), nullptr);
    const double u1 = std::strtod(cells[6].c_str(), nullptr);
    o.require(std::abs(u0 - std::cosh(1.0)) <= 1e-9, "u0 error " + sci(u0 - std::cosh(1.0)));
    o.require(std::abs(u1 - std::sinh(1.0)) <= 1e-9, "u1 error " + sci(u1 - std::sinh(1.0)));
    for (const auto& c : cells) {
      o.require(format_real(std::strtod(c.c_str(), nullptr)) == c, "cell " + c + " does not round-trip");
    }
    if (o.passed) {
      o.detail = "verify reports identical (" + std::to_string(a.size()) + " bytes); final u0 err " +
                 sci(u0 - std::cosh(1.0)) + ", u1 err " + sci(u1 - std::sinh(1.0));
    }
  }
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"generator fidelity", 1.0, generator_fidelity},
      {"structure constants", 1.0, structure_constants},
      {"frame parameter closed forms", 1.0, parameter_closed_forms},
      {"field transformation equivalence", 1.0, equivalence_theorem},
      {"hyperbolic motion", 1.0, hyperbolic_motion},
      {"cyclotron motion", 1.0, cyclotron},
      {"structure preservation", 30.0, structure_preservation},
      {"coulomb continuous fall", 5.0, continuous_fall},
      {"cli determinism", 5.0, cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].budget_seconds) {
      o.require(false, "took " + sci(secs) + " s, budget " + sci(criteria[i].budget_seconds) + " s");
    }
    std::printf("[%s] criterion %zu: %-34s (%.2f s) %s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].name, secs, o.detail.c_str());
    failed += o.passed ? 0 : 1;
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
