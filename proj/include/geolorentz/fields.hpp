#pragma once

// Electromagnetic fields as Lie algebra elements.
//
// The mixed tensor F^a_b used in du/dtau = k F u is lie_matrix(E, B): the
// electric field plays the role of the boost rate and the magnetic field the
// rotation rate. Field providers map an event to the field there.

#include <cmath>
#include <concepts>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "geolorentz/error.hpp"
#include "geolorentz/frames.hpp"
#include "geolorentz/lie.hpp"
#include "geolorentz/minkowski.hpp"

namespace geolorentz {

struct EMField {
  ThreeVector E;
  ThreeVector B;

  EMField& operator+=(const EMField& o) {
    E += o.E;
    B += o.B;
    return *this;
  }

  friend constexpr bool operator==(const EMField&, const EMField&) = default;
};

inline LieParams to_params(const EMField& f) { return {f.E, f.B}; }
inline EMField to_field(const LieParams& p) { return {p.boost, p.rotation}; }

inline Matrix4 field_matrix(const EMField& f) { return lie_matrix(to_params(f)); }

/// F_ab = eta F^a_b; antisymmetric by construction.
inline Matrix4 covariant_field_tensor(const EMField& f) { return kMetric * field_matrix(f); }

/// Fields in S from fields in S', with S' moving at +v along x1.
inline EMField transform_field_axis1(const EMField& f, double v) {
  const double g = lorentz_gamma(v);
  const ThreeVector& e = f.E;
  const ThreeVector& b = f.B;
  EMField out;
  out.E = {e[0], g * (e[1] + v * b[2]), g * (e[2] - v * b[1])};
  out.B = {b[0], g * (b[1] - v * e[2]), g * (b[2] + v * e[1])};
  return out;
}

/// Fields in S from fields in S' for an arbitrary frame velocity, computed by
/// conjugating the field matrix with the finite boost.
inline EMField transform_field_general(const EMField& f, const ThreeVector& frame_velocity) {
  const Matrix4 conj = adjoint(finite_boost(frame_velocity), field_matrix(f));
  try {
    return to_field(extract_params(conj));
  } catch (const NotLieElement& e) {
    throw InternalConsistency(std::string("transform_field_general: ") + e.what());
  }
}

/// E . B, invariant under frame changes.
inline double field_invariant_dot(const EMField& f) { return dot(f.E, f.B); }

/// |E|^2 - |B|^2, invariant under frame changes.
inline double field_invariant_norm(const EMField& f) { return dot(f.E, f.E) - dot(f.B, f.B); }

inline constexpr double kDefaultCoulombRMin = 1e-6;

/// Static point source at the spatial origin: E = q r_hat / r^2, B = 0.
/// q is the field strength at unit radius. Throws FieldSingularity for r < r_min.
inline EMField coulomb_field(const FourVector& event, double q,
                             double r_min = kDefaultCoulombRMin) {
  const ThreeVector x = event.space();
  const double r = norm(x);
  if (!(r >= r_min) || r == 0.0) {
    throw FieldSingularity("coulomb_field: radius " + std::to_string(r) +
                           " is inside the singular region r < " + std::to_string(r_min));
  }
  return {(q / (r * r * r)) * x, {}};
}

/// Anything that yields the field at an event.
template <class F>
concept FieldSource = requires(const F& f, const FourVector& event) {
  { f(event) } -> std::convertible_to<EMField>;
};

struct UniformField {
  EMField field;
  EMField operator()(const FourVector&) const { return field; }
};

struct CoulombField {
  double q = 0.0;
  double r_min = kDefaultCoulombRMin;
  EMField operator()(const FourVector& event) const { return coulomb_field(event, q, r_min); }
};

/// Immutable field configuration: uniform, Coulomb, or a sum of providers.
class FieldProvider {
 public:
  using Superposition = std::vector<FieldProvider>;

  FieldProvider() : node_(std::make_shared<Node>(UniformField{})) {}
  FieldProvider(UniformField u) : node_(std::make_shared<Node>(u)) {}  // NOLINT
  FieldProvider(CoulombField c) : node_(std::make_shared<Node>(c)) {}  // NOLINT
  FieldProvider(Superposition parts)                                   // NOLINT
      : node_(std::make_shared<Node>(std::move(parts))) {}

  EMField operator()(const FourVector& event) const {
    return std::visit(
        [&](const auto& alt) -> EMField {
          using T = std::decay_t<decltype(alt)>;
          if constexpr (std::is_same_v<T, Superposition>) {
            EMField sum;
            for (const auto& part : alt) sum += part(event);
            return sum;
          } else {
            return alt(event);
          }
        },
        *node_);
  }

  /// True when the field does not depend on the event.
  bool is_uniform() const {
    return std::visit(
        [](const auto& alt) {
          using T = std::decay_t<decltype(alt)>;
          if constexpr (std::is_same_v<T, UniformField>) {
            return true;
          } else if constexpr (std::is_same_v<T, CoulombField>) {
            return false;
          } else {
            for (const auto& part : alt)
              if (!part.is_uniform()) return false;
            return true;
          }
        },
        *node_);
  }

  bool is_superposition() const { return std::holds_alternative<Superposition>(*node_); }

 private:
  using Node = std::variant<UniformField, CoulombField, Superposition>;
  std::shared_ptr<const Node> node_;
};

static_assert(FieldSource<FieldProvider>);
static_assert(FieldSource<UniformField>);

}  // namespace geolorentz
