#pragma once

// Charged-particle evolution as a succession of infinitesimal Lorentz
// transformations.
//
// The four-velocity obeys du/dtau = k F(x) u with F = field_matrix(E, B).
// step_expmap advances u by exp(k dtau F), which is itself a Lorentz
// transformation, so u.u = 1 is kept to rounding. step_euler applies the
// truncated operator I + k dtau F and step_rk4 is a classical reference.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "geolorentz/error.hpp"
#include "geolorentz/fields.hpp"
#include "geolorentz/lie.hpp"
#include "geolorentz/minkowski.hpp"

namespace geolorentz {

/// Coupling k = e/m.
struct ChargeRatio {
  double k = 1.0;
};

enum class StepperKind { ExpMap, Euler, RK4 };

inline const char* to_string(StepperKind kind) {
  switch (kind) {
    case StepperKind::ExpMap: return "expmap";
    case StepperKind::Euler: return "euler";
    case StepperKind::RK4: return "rk4";
  }
  return "?";
}

struct ParticleState {
  double tau = 0.0;
  FourVector position;
  FourVector u{1.0, 0.0, 0.0, 0.0};
};

/// |u.u - 1|
inline double norm_error(const FourVector& u) { return std::abs(minkowski_dot(u, u) - 1.0); }

struct Sample {
  ParticleState state;
  double norm_err = 0.0;
  double energy = 0.0;  ///< u^0
};

struct Trajectory {
  double dtau = 0.0;
  StepperKind kind = StepperKind::ExpMap;
  std::vector<Sample> samples;
};

namespace detail {

inline void check_step(double dtau) {
  if (!(dtau > 0.0) || !std::isfinite(dtau)) {
    throw InvalidArgument("dtau must be positive and finite, got " + std::to_string(dtau));
  }
}

}  // namespace detail

/// Exponential-map step. The field is sampled at the event reached after half
/// a step with the old four-velocity; the position advances with the mean of
/// the old and new four-velocities. Exact in u for uniform fields.
template <FieldSource Provider>
ParticleState step_expmap(const ParticleState& s, const Provider& fp, ChargeRatio k,
                          double dtau) {
  detail::check_step(dtau);
  const FourVector mid = s.position + (0.5 * dtau) * s.u;
  const EMField f = fp(mid);
  const Matrix4 change = mat_expm1(k.k * field_matrix(f), dtau);
  ParticleState out;
  out.u = s.u + change * s.u;
  out.position = s.position + (0.5 * dtau) * (s.u + out.u);
  out.tau = s.tau + dtau;
  return out;
}

/// First-order step u <- (I + k dtau F(x)) u, x <- x + u dtau, field at the
/// current event.
template <FieldSource Provider>
ParticleState step_euler(const ParticleState& s, const Provider& fp, ChargeRatio k,
                         double dtau) {
  detail::check_step(dtau);
  const EMField f = fp(s.position);
  ParticleState out;
  out.u = s.u + (k.k * dtau) * (field_matrix(f) * s.u);
  out.position = s.position + dtau * s.u;
  out.tau = s.tau + dtau;
  return out;
}

/// Classical RK4 on (x, u) with dx/dtau = u, du/dtau = k F(x) u.
template <FieldSource Provider>
ParticleState step_rk4(const ParticleState& s, const Provider& fp, ChargeRatio k,
                       double dtau) {
  detail::check_step(dtau);
  auto accel = [&](const FourVector& x, const FourVector& u) {
    return k.k * (field_matrix(fp(x)) * u);
  };
  const double h = dtau;
  const FourVector kx1 = s.u;
  const FourVector ku1 = accel(s.position, s.u);
  const FourVector kx2 = s.u + (0.5 * h) * ku1;
  const FourVector ku2 = accel(s.position + (0.5 * h) * kx1, kx2);
  const FourVector kx3 = s.u + (0.5 * h) * ku2;
  const FourVector ku3 = accel(s.position + (0.5 * h) * kx2, kx3);
  const FourVector kx4 = s.u + h * ku3;
  const FourVector ku4 = accel(s.position + h * kx3, kx4);
  ParticleState out;
  out.position = s.position + (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
  out.u = s.u + (h / 6.0) * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
  out.tau = s.tau + dtau;
  return out;
}

template <FieldSource Provider>
ParticleState step(StepperKind kind, const ParticleState& s, const Provider& fp,
                   ChargeRatio k, double dtau) {
  switch (kind) {
    case StepperKind::ExpMap: return step_expmap(s, fp, k, dtau);
    case StepperKind::Euler: return step_euler(s, fp, k, dtau);
    case StepperKind::RK4: return step_rk4(s, fp, k, dtau);
  }
  throw InvalidArgument("unknown stepper kind");
}

/// Accepts u when |u.u - 1| <= 1e-9 and u^0 > 0, returning it with u^0
/// recomputed from the spatial part. Anything else throws InvalidArgument.
inline FourVector normalized_initial_velocity(const FourVector& u) {
  for (double x : u.c)
    if (!std::isfinite(x)) throw InvalidArgument("initial four-velocity is not finite");
  if (!(u[0] > 0.0)) throw InvalidArgument("initial four-velocity is not future-pointing");
  const double err = norm_error(u);
  if (!(err <= 1e-9)) {
    throw InvalidArgument("initial four-velocity is not unit-normalized: |u.u - 1| = " +
                          std::to_string(err));
  }
  return four_velocity_from_spatial(u.space());
}

inline Sample make_sample(const ParticleState& s) {
  return {s, norm_error(s.u), s.u[0]};
}

/// Runs `steps` steps and hands each of the steps + 1 samples to `visit` in
/// order, without storing them. Sample n has tau = initial.tau + n dtau.
template <FieldSource Provider, class Visitor>
void simulate_each(const ParticleState& initial, const Provider& fp, ChargeRatio k,
                   double dtau, std::int64_t steps, StepperKind kind, Visitor&& visit) {
  detail::check_step(dtau);
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  if (!std::isfinite(k.k)) throw InvalidArgument("charge ratio k must be finite");
  ParticleState s = initial;
  s.u = normalized_initial_velocity(initial.u);
  visit(make_sample(s));
  for (std::int64_t n = 0; n < steps; ++n) {
    ParticleState next;
    try {
      next = step(kind, s, fp, k, dtau);
    } catch (const Error& e) {
      throw SimulationError(n, e.what());
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!std::isfinite(next.u[i]) || !std::isfinite(next.position[i]))
        throw SimulationError(n, "state became non-finite");
    }
    next.tau = initial.tau + static_cast<double>(n + 1) * dtau;
    s = next;
    visit(make_sample(s));
  }
}

template <FieldSource Provider>
Trajectory simulate(const ParticleState& initial, const Provider& fp, ChargeRatio k,
                    double dtau, std::int64_t steps, StepperKind kind) {
  Trajectory t;
  t.dtau = dtau;
  t.kind = kind;
  if (steps >= 0) t.samples.reserve(static_cast<std::size_t>(steps) + 1);
  simulate_each(initial, fp, k, dtau, steps, kind,
                [&](const Sample& s) { t.samples.push_back(s); });
  return t;
}

struct InvariantReport {
  std::size_t samples = 0;
  double max_norm_err = 0.0;        ///< max |u.u - 1|
  double max_orthogonality = 0.0;   ///< max |(du/dtau) . u_mid| by finite differences
  double max_energy_drift = 0.0;    ///< max |u^0 - u^0(0)|
};

/// Streaming accumulator behind invariant_report, usable with simulate_each.
class InvariantMonitor {
 public:
  void add(const Sample& s) {
    if (report_.samples == 0) {
      u0_start_ = s.state.u[0];
    } else {
      const FourVector du = (1.0 / (s.state.tau - prev_.tau)) * (s.state.u - prev_.u);
      const FourVector mid = 0.5 * (s.state.u + prev_.u);
      report_.max_orthogonality =
          std::max(report_.max_orthogonality, std::abs(minkowski_dot(du, mid)));
    }
    report_.max_norm_err = std::max(report_.max_norm_err, s.norm_err);
    report_.max_energy_drift =
        std::max(report_.max_energy_drift, std::abs(s.state.u[0] - u0_start_));
    prev_ = s.state;
    ++report_.samples;
  }

  const InvariantReport& report() const { return report_; }

 private:
  InvariantReport report_;
  ParticleState prev_;
  double u0_start_ = 0.0;
};

inline InvariantReport invariant_report(const Trajectory& t) {
  if (t.samples.empty()) throw InvalidArgument("invariant_report: empty trajectory");
  InvariantMonitor m;
  for (const auto& s : t.samples) m.add(s);
  return m.report();
}

/// Spatial four-velocity magnitude |u| for a circular orbit of radius r about
/// an attracting point source (k q < 0): force balance |u|^2 / r = -k q u^0 / r^2.
inline double circular_orbit_speed(double kq, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("circular_orbit_speed: radius must be positive");
  if (!(kq < 0.0)) throw InvalidArgument("circular_orbit_speed: needs an attracting source (k q < 0)");
  const double a = -kq / radius;
  const double a2 = a * a;
  return std::sqrt(0.5 * (a2 + std::sqrt(a2 * a2 + 4.0 * a2)));
}

/// Proper-time period of that circular orbit.
inline double circular_orbit_period(double kq, double radius) {
  return 2.0 * std::numbers::pi * radius / circular_orbit_speed(kq, radius);
}

}  // namespace geolorentz
