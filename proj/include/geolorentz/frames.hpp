#pragma once

// Finite boosts between inertial frames and the transformation of
// infinitesimal boost/rotation parameters from a moving frame S' into S.
//
// Orientation: S' moves with velocity v as seen from S, axes parallel.
// finite_boost(v) maps S' components to S components.

#include <cmath>
#include <string>

#include "geolorentz/error.hpp"
#include "geolorentz/lie.hpp"
#include "geolorentz/minkowski.hpp"

namespace geolorentz {

/// (1 - v^2)^(-1/2); throws Superluminal unless |speed| < 1.
inline double lorentz_gamma(double speed) {
  const double s = std::abs(speed);
  if (!(s < 1.0)) {
    throw Superluminal("speed " + std::to_string(speed) + " is not below light speed");
  }
  return 1.0 / std::sqrt((1.0 - s) * (1.0 + s));
}

inline Matrix4 finite_boost(const ThreeVector& v) {
  const double speed = std::hypot(v[0], v[1], v[2]);
  if (!(speed < 1.0)) {
    throw Superluminal("finite_boost: |v| = " + std::to_string(speed) + " is not below 1");
  }
  Matrix4 l = Matrix4::identity();
  if (speed == 0.0) return l;
  const double g = lorentz_gamma(speed);
  for (std::size_t i = 0; i < 3; ++i) {
    l(0, i + 1) = g * v[i];
    l(i + 1, 0) = g * v[i];
  }
  int nonzero = 0;
  for (std::size_t i = 0; i < 3; ++i) nonzero += v[i] != 0.0 ? 1 : 0;
  if (nonzero == 1) {
    for (std::size_t i = 0; i < 3; ++i)
      if (v[i] != 0.0) l(i + 1, i + 1) = g;
    l(0, 0) = g;
    return l;
  }
  const ThreeVector n = (1.0 / speed) * v;
  l(0, 0) = g;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) l(i + 1, j + 1) += (g - 1.0) * n[i] * n[j];
  return l;
}

/// How an observer in S sees the infinitesimal transformation `p` performed in
/// S', where S' moves with `frame_velocity` relative to S.
inline LieParams transform_params(const LieParams& p, const ThreeVector& frame_velocity) {
  return extract_params(adjoint(finite_boost(frame_velocity), lie_matrix(p)));
}

struct TwoFrameResult {
  double delta_v2 = 0.0;
  double delta_phi3 = 0.0;
  double residual = 0.0;  ///< 2-norm of the least-squares residual
};

/// Two-frame experiment: a particle with four-velocity `u_prime` (components 1
/// and 3 zero) is boosted along x'2 by `delta_v_prime2` in S', where S' moves
/// along +x1 with speed `v`. Both four-velocities are carried to S and the
/// change there is fitted with a boost along x2 plus a rotation about x3,
/// solving (dv2 K2 - dphi3 S3) u = du in the least-squares sense.
///
/// The S' evolution uses the exact finite boost, so the fitted parameters
/// differ from gamma d and gamma v d at O(d^2). Throws Underdetermined when
/// the two fitting columns are parallel (e.g. a particle at rest with v = 0).
inline TwoFrameResult two_frame_scenario(double v, const FourVector& u_prime,
                                        double delta_v_prime2) {
  if (u_prime[1] != 0.0 || u_prime[3] != 0.0) {
    throw InvalidArgument("two_frame_scenario: u' must have zero components 1 and 3");
  }
  const Matrix4 to_s = finite_boost({v, 0.0, 0.0});
  const FourVector after_prime = mat_exp(boost_generator(2), delta_v_prime2) * u_prime;
  const FourVector before = to_s * u_prime;
  const FourVector change = to_s * after_prime - before;

  const FourVector col_boost = boost_generator(2) * before;
  const FourVector col_rot = -rotation_generator(3) * before;

  // Normal equations for the 2x2 least-squares problem over rows 0..2; row 3
  // is identically zero on both sides.
  double aa = 0.0, ab = 0.0, bb = 0.0, ar = 0.0, br = 0.0;
  for (std::size_t r = 0; r < 3; ++r) {
    aa += col_boost[r] * col_boost[r];
    ab += col_boost[r] * col_rot[r];
    bb += col_rot[r] * col_rot[r];
    ar += col_boost[r] * change[r];
    br += col_rot[r] * change[r];
  }
  const double det = aa * bb - ab * ab;
  if (!(det > 1e-24 * aa * bb) || aa == 0.0 || bb == 0.0) {
    throw Underdetermined("two_frame_scenario: boost and rotation columns are parallel");
  }
  TwoFrameResult out;
  out.delta_v2 = (bb * ar - ab * br) / det;
  out.delta_phi3 = (aa * br - ab * ar) / det;

  double res2 = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    const double e = out.delta_v2 * col_boost[r] + out.delta_phi3 * col_rot[r] - change[r];
    res2 += e * e;
  }
  out.residual = std::sqrt(res2);

  // The mismatch is second order in d; anything larger means a convention error.
  double scale = 0.0;
  for (std::size_t r = 0; r < 4; ++r) scale = std::max(scale, std::abs(before[r]));
  const double tol =
      1e-10 + delta_v_prime2 * delta_v_prime2 * scale * scale / std::abs(before[2]);
  if (!(out.residual <= tol)) {
    throw InternalConsistency("two_frame_scenario: residual " + std::to_string(out.residual) +
                              " exceeds " + std::to_string(tol));
  }
  return out;
}

}  // namespace geolorentz
