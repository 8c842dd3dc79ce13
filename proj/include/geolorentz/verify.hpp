#pragma once

// Identity suite behind `geolorentz verify`: checks that the generator
// algebra, the parameter transformation between frames and the field
// transformation agree, on seeded random samples.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geolorentz/fields.hpp"
#include "geolorentz/frames.hpp"
#include "geolorentz/lie.hpp"
#include "geolorentz/minkowski.hpp"

namespace geolorentz {

/// Deliberate defects for exercising the harness itself.
enum class InjectedFault {
  None,
  FlipB3Sign,  ///< closed-form field transform uses B3 = g (B3' - v E2')
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int samples = 1000;
  InjectedFault fault = InjectedFault::None;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double max_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  std::string detail;  ///< failing components and worst input, empty on success
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  std::string text() const {
    std::ostringstream os;
    char buf[256];
    os << "geolorentz identity suite, seed " << seed << '\n';
    for (const auto& c : checks) {
      std::snprintf(buf, sizeof buf, "%s  %-58s n=%-5d max_err=%.3e tol=%.1e\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.cases, c.max_error,
                    c.tolerance);
      os << buf;
      if (!c.detail.empty()) os << "      " << c.detail << '\n';
    }
    int failed = 0;
    for (const auto& c : checks) failed += c.passed ? 0 : 1;
    os << (failed == 0 ? "all " + std::to_string(checks.size()) + " identities passed"
                       : std::to_string(failed) + " of " + std::to_string(checks.size()) +
                             " identities FAILED")
       << '\n';
    return os.str();
  }
};

namespace detail {

inline std::string fmt_vec(const ThreeVector& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", v[0], v[1], v[2]);
  return buf;
}

/// Compares six named components and keeps the worst case.
class ComponentCheck {
 public:
  ComponentCheck(std::string name, double tol, std::array<const char*, 6> labels)
      : labels_(labels) {
    r_.name = std::move(name);
    r_.tolerance = tol;
  }

  void add(const std::array<double, 6>& got, const std::array<double, 6>& want,
           const std::function<std::string()>& describe_input) {
    ++r_.cases;
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      const double e = std::abs(got[i] - want[i]);
      worst = std::max(worst, e);
      if (!(e <= r_.tolerance)) failing_[i] = true;
    }
    if (!(worst <= r_.max_error)) {
      r_.max_error = worst;
      if (!(worst <= r_.tolerance)) worst_input_ = describe_input();
    }
  }

  CheckResult finish() {
    r_.passed = true;
    std::string comps;
    for (std::size_t i = 0; i < 6; ++i) {
      if (failing_[i]) {
        r_.passed = false;
        comps += comps.empty() ? "" : ",";
        comps += labels_[i];
      }
    }
    if (!r_.passed) r_.detail = "failing components: " + comps + "; worst input: " + worst_input_;
    return r_;
  }

 private:
  CheckResult r_;
  std::array<const char*, 6> labels_;
  std::array<bool, 6> failing_{};
  std::string worst_input_;
};

inline std::array<double, 6> flat(const LieParams& p) {
  return {p.boost[0], p.boost[1], p.boost[2], p.rotation[0], p.rotation[1], p.rotation[2]};
}

inline std::array<double, 6> flat(const EMField& f) { return flat(to_params(f)); }

inline constexpr std::array<const char*, 6> kParamLabels = {"e1", "e2", "e3", "b1", "b2", "b3"};
inline constexpr std::array<const char*, 6> kFieldLabels = {"E1", "E2", "E3", "B1", "B2", "B3"};

inline CheckResult exact_matrix_check(const std::string& name,
                                      const std::vector<std::pair<Matrix4, Matrix4>>& pairs) {
  CheckResult r;
  r.name = name;
  r.tolerance = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ++r.cases;
    const double e = max_abs_diff(pairs[i].first, pairs[i].second);
    r.max_error = std::max(r.max_error, e);
    if (e != 0.0 && r.passed) {
      r.passed = false;
      r.detail = "first mismatch at case " + std::to_string(i);
    }
  }
  return r;
}

inline int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

}  // namespace detail

inline VerifyReport verify_identities(const VerifyOptions& opt = {}) {
  using detail::ComponentCheck;
  VerifyReport report;
  report.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> speed(-0.99, 0.99);
  auto rand3 = [&] { return ThreeVector{unit(rng), unit(rng), unit(rng)}; };
  auto rand_velocity = [&] {
    // Uniform direction, |v| <= 0.99.
    ThreeVector v;
    do {
      v = rand3();
    } while (norm(v) > 1.0 || norm(v) == 0.0);
    return (0.99 * std::abs(unit(rng)) / norm(v)) * v;
  };

  // Generators against literal integer tables.
  {
    const std::array<Matrix4, 3> k_lit = {
        Matrix4({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
        Matrix4({0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0}),
        Matrix4({0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0})};
    const std::array<Matrix4, 3> s_lit = {
        Matrix4({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0}),
        Matrix4({0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0}),
        Matrix4({0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0})};
    std::vector<std::pair<Matrix4, Matrix4>> kp, sp;
    for (int i = 0; i < 3; ++i) {
      kp.emplace_back(boost_generator(i + 1), k_lit[i]);
      sp.emplace_back(rotation_generator(i + 1), s_lit[i]);
    }
    report.checks.push_back(detail::exact_matrix_check("generators: boost K1..K3", kp));
    report.checks.push_back(detail::exact_matrix_check("generators: rotation S1..S3", sp));
  }

  // Structure constants, all index pairs.
  {
    std::vector<std::pair<Matrix4, Matrix4>> kk, ss, sk;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        Matrix4 want_kk, want_ss, want_sk;
        for (int k = 1; k <= 3; ++k) {
          const double e = detail::levi_civita(i, j, k);
          want_kk += -e * rotation_generator(k);
          want_ss += e * rotation_generator(k);
          want_sk += e * boost_generator(k);
        }
        kk.emplace_back(commutator(boost_generator(i), boost_generator(j)), want_kk);
        ss.emplace_back(commutator(rotation_generator(i), rotation_generator(j)), want_ss);
        sk.emplace_back(commutator(rotation_generator(i), boost_generator(j)), want_sk);
      }
    report.checks.push_back(detail::exact_matrix_check("commutators: [K_i,K_j] = -eps_ijk S_k", kk));
    report.checks.push_back(detail::exact_matrix_check("commutators: [S_i,S_j] = eps_ijk S_k", ss));
    report.checks.push_back(detail::exact_matrix_check("commutators: [S_i,K_j] = eps_ijk K_k", sk));
  }

  // Parameter transformation along x1 against the closed forms.
  {
    constexpr double tol = 1e-12;
    ComponentCheck transverse_boost("params: x2 boost -> x2 boost + x3 rotation", tol,
                                    detail::kParamLabels);
    ComponentCheck transverse_rot("params: x3 rotation -> x2 boost + x3 rotation", tol,
                                  detail::kParamLabels);
    ComponentCheck long_boost("params: x1 boost unchanged", tol, detail::kParamLabels);
    ComponentCheck long_rot("params: x1 rotation unchanged", tol, detail::kParamLabels);
    ComponentCheck mixed("params: x2 boost + x3 rotation closed form", tol, detail::kParamLabels);
    ComponentCheck no_long("params: no x1 boost appears without one in S'", tol,
                           detail::kParamLabels);
    for (int n = 0; n < opt.samples; ++n) {
      const double v = speed(rng);
      const double g = lorentz_gamma(v);
      const double a = unit(rng);
      const double b = unit(rng);
      const ThreeVector fv{v, 0.0, 0.0};
      auto input = [&] {
        char buf[96];
        std::snprintf(buf, sizeof buf, "v=%.17g a=%.17g b=%.17g", v, a, b);
        return std::string(buf);
      };
      transverse_boost.add(detail::flat(transform_params({{0, a, 0}, {}}, fv)),
                           {0, g * a, 0, 0, 0, g * v * a}, input);
      transverse_rot.add(detail::flat(transform_params({{}, {0, 0, a}}, fv)),
                         {0, g * v * a, 0, 0, 0, g * a}, input);
      long_boost.add(detail::flat(transform_params({{a, 0, 0}, {}}, fv)), {a, 0, 0, 0, 0, 0},
                     input);
      long_rot.add(detail::flat(transform_params({{}, {a, 0, 0}}, fv)), {0, 0, 0, a, 0, 0},
                   input);
      mixed.add(detail::flat(transform_params({{0, a, 0}, {0, 0, b}}, fv)),
                {0, g * (a + v * b), 0, 0, 0, g * (v * a + b)}, input);
      const LieParams p{{0.0, unit(rng), unit(rng)}, rand3()};
      auto got = detail::flat(transform_params(p, fv));
      no_long.add({got[0], 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, input);
    }
    for (auto* c : {&transverse_boost, &transverse_rot, &long_boost, &long_rot, &mixed, &no_long})
      report.checks.push_back(c->finish());
  }

  // Closed-form field transform against the adjoint route.
  {
    ComponentCheck equiv("fields: closed-form x1 transform == adjoint route", 1e-12,
                         detail::kFieldLabels);
    CheckResult dot_inv{"fields: E.B invariant under general boosts", true, 0.0, 1e-10, 0, ""};
    CheckResult norm_inv{"fields: |E|^2-|B|^2 invariant under general boosts", true, 0.0, 1e-10,
                         0, ""};
    ComponentCheck round_trip("fields: transform by v then -v is the identity", 1e-12,
                              detail::kFieldLabels);
    for (int n = 0; n < opt.samples; ++n) {
      const EMField f{rand3(), rand3()};
      const double v = speed(rng);
      EMField closed = transform_field_axis1(f, v);
      if (opt.fault == InjectedFault::FlipB3Sign) {
        closed.B[2] = lorentz_gamma(v) * (f.B[2] - v * f.E[1]);
      }
      const EMField adj = transform_field_general(f, {v, 0.0, 0.0});
      equiv.add(detail::flat(closed), detail::flat(adj), [&] {
        char buf[32];
        std::snprintf(buf, sizeof buf, "v=%.17g", v);
        return "E'=" + detail::fmt_vec(f.E) + " B'=" + detail::fmt_vec(f.B) + " " + buf;
      });

      const ThreeVector w = rand_velocity();
      const EMField moved = transform_field_general(f, w);
      const double e_dot = std::abs(field_invariant_dot(moved) - field_invariant_dot(f));
      const double e_norm = std::abs(field_invariant_norm(moved) - field_invariant_norm(f));
      ++dot_inv.cases;
      ++norm_inv.cases;
      dot_inv.max_error = std::max(dot_inv.max_error, e_dot);
      norm_inv.max_error = std::max(norm_inv.max_error, e_norm);
      if (!(e_dot <= dot_inv.tolerance) && dot_inv.passed) {
        dot_inv.passed = false;
        dot_inv.detail = "E'=" + detail::fmt_vec(f.E) + " B'=" + detail::fmt_vec(f.B) +
                         " v=" + detail::fmt_vec(w);
      }
      if (!(e_norm <= norm_inv.tolerance) && norm_inv.passed) {
        norm_inv.passed = false;
        norm_inv.detail = "E'=" + detail::fmt_vec(f.E) + " B'=" + detail::fmt_vec(f.B) +
                          " v=" + detail::fmt_vec(w);
      }
      round_trip.add(detail::flat(transform_field_general(moved, -w)), detail::flat(f),
                     [&] { return "v=" + detail::fmt_vec(w); });
    }
    report.checks.push_back(equiv.finish());
    report.checks.push_back(dot_inv);
    report.checks.push_back(norm_inv);
    report.checks.push_back(round_trip.finish());
  }

  // Exponentials of algebra elements preserve the metric.
  {
    CheckResult r{"exp: transpose(X) eta X = eta for X = exp(t Lambda)", true, 0.0, 1e-12, 0, ""};
    std::uniform_real_distribution<double> tdist(-2.0, 2.0);
    for (int n = 0; n < opt.samples; ++n) {
      const LieParams p{rand3(), rand3()};
      const double t = tdist(rng);
      const Matrix4 x = mat_exp(lie_matrix(p), t);
      const double e = max_abs_diff(x.transpose() * kMetric * x, kMetric);
      ++r.cases;
      r.max_error = std::max(r.max_error, e);
      if (!(e <= r.tolerance) && r.passed) {
        r.passed = false;
        r.detail = "boost=" + detail::fmt_vec(p.boost) + " rotation=" +
                   detail::fmt_vec(p.rotation) + " t=" + std::to_string(t);
      }
    }
    report.checks.push_back(r);
  }

  // Two-frame linear-system route against the adjoint route: second order in d.
  {
    CheckResult r{"two-frame experiment: discrepancy order in d (expect 2)", true, 0.0, 0.2, 0, ""};
    const double v = 0.6;
    const FourVector u_prime{std::sqrt(2.0), 0.0, 1.0, 0.0};
    std::array<double, 3> err{};
    const std::array<double, 3> ds = {1e-4, 1e-5, 1e-6};
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto s3 = two_frame_scenario(v, u_prime, ds[i]);
      const auto tp = transform_params({{0, ds[i], 0}, {}}, {v, 0, 0});
      err[i] = std::max(std::abs(s3.delta_v2 - tp.boost[1]),
                        std::abs(s3.delta_phi3 - tp.rotation[2]));
      ++r.cases;
    }
    for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
      const double order = std::log10(err[i] / err[i + 1]);
      r.max_error = std::max(r.max_error, std::abs(order - 2.0));
    }
    if (!(r.max_error <= r.tolerance)) {
      r.passed = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "discrepancies %.3e %.3e %.3e", err[0], err[1], err[2]);
      r.detail = buf;
    }
    report.checks.push_back(r);
  }

  return report;
}

}  // namespace geolorentz
