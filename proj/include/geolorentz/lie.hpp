#pragma once

// Generators of the Lorentz group and elements of its Lie algebra.
//
// Boost generators K_i are symmetric and couple time with axis i. Rotation
// generators S_i are antisymmetric spatial blocks. A Lie element is written
// in the basis
//
//     Lambda = boost . K - rotation . S
//
// whose explicit layout is
//
//     [ 0   e1   e2   e3 ]
//     [ e1   0   b3  -b2 ]
//     [ e2 -b3    0   b1 ]
//     [ e3  b2  -b1    0 ]
//
// with e = boost and b = rotation. Every other module converts between
// matrices and parameters through lie_matrix/extract_params only.

#include <cmath>
#include <cstddef>
#include <string>

#include "geolorentz/error.hpp"
#include "geolorentz/minkowski.hpp"

namespace geolorentz {

/// Boost triple and rotation triple identifying one Lie algebra element.
struct LieParams {
  ThreeVector boost;
  ThreeVector rotation;

  friend constexpr bool operator==(const LieParams&, const LieParams&) = default;
};

namespace detail {

inline void check_axis(int axis, const char* who) {
  if (axis < 1 || axis > 3) {
    throw InvalidArgument(std::string(who) + ": axis must be 1, 2 or 3, got " +
                          std::to_string(axis));
  }
}

}  // namespace detail

inline Matrix4 boost_generator(int axis) {
  detail::check_axis(axis, "boost_generator");
  Matrix4 k;
  const auto i = static_cast<std::size_t>(axis);
  k(0, i) = 1.0;
  k(i, 0) = 1.0;
  return k;
}

inline Matrix4 rotation_generator(int axis) {
  detail::check_axis(axis, "rotation_generator");
  // S_i has -1 at (j, k) and +1 at (k, j) with (i, j, k) cyclic.
  const auto i = static_cast<std::size_t>(axis);
  const std::size_t j = i % 3 + 1;
  const std::size_t k = j % 3 + 1;
  Matrix4 s;
  s(j, k) = -1.0;
  s(k, j) = 1.0;
  return s;
}

inline Matrix4 lie_matrix(const LieParams& p) {
  const ThreeVector& e = p.boost;
  const ThreeVector& b = p.rotation;
  return Matrix4({0.0,  e[0],  e[1],  e[2],
                  e[0], 0.0,   b[2],  -b[1],
                  e[1], -b[2], 0.0,   b[0],
                  e[2], b[1],  -b[0], 0.0});
}

/// Inverse of lie_matrix. Throws NotLieElement when the diagonal is nonzero,
/// the time row and column differ, or the spatial block is not antisymmetric,
/// each beyond `tol`.
inline LieParams extract_params(const Matrix4& m, double tol = 1e-9) {
  auto fail = [&](const std::string& why) {
    throw NotLieElement("not a Lorentz algebra element in the boost/rotation basis: " + why);
  };
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(std::abs(m(i, i)) <= tol)) fail("diagonal entry " + std::to_string(i) + " is nonzero");
  }
  for (std::size_t i = 1; i < 4; ++i) {
    if (!(std::abs(m(0, i) - m(i, 0)) <= tol))
      fail("time row and column differ at index " + std::to_string(i));
  }
  for (std::size_t r = 1; r < 4; ++r)
    for (std::size_t c = r + 1; c < 4; ++c) {
      if (!(std::abs(m(r, c) + m(c, r)) <= tol))
        fail("spatial block not antisymmetric at (" + std::to_string(r) + "," +
             std::to_string(c) + ")");
    }
  LieParams p;
  p.boost = {m(0, 1), m(0, 2), m(0, 3)};
  p.rotation = {m(2, 3), -m(1, 3), m(1, 2)};
  return p;
}

inline Matrix4 commutator(const Matrix4& a, const Matrix4& b) { return a * b - b * a; }

/// L M L^-1: the same algebra element seen through the finite transformation L.
inline Matrix4 adjoint(const Matrix4& l, const Matrix4& m) { return l * m * mat_inverse(l); }

/// Largest ||t M||_1 that mat_exp accepts.
inline constexpr double kMatExpMaxNorm = 10.0;

/// exp(t M) - I by scaling and squaring of a truncated Taylor series.
///
/// Carrying the difference from the identity keeps small steps accurate to
/// relative precision in their small entries; repeated application of
/// u + D u then does not accumulate the defect that I + D would carry after
/// rounding. Throws NormOverflow when ||t M||_1 exceeds kMatExpMaxNorm or the
/// argument is not finite.
inline Matrix4 mat_expm1(const Matrix4& m, double t) {
  const Matrix4 x = t * m;
  for (double e : x.data())
    if (!std::isfinite(e)) throw NormOverflow("mat_exp: argument is not finite");
  const double n1 = norm_one(x);
  if (n1 > kMatExpMaxNorm) {
    throw NormOverflow("mat_exp: ||t M||_1 = " + std::to_string(n1) + " exceeds limit " +
                       std::to_string(kMatExpMaxNorm));
  }
  int squarings = 0;
  double scaled = n1;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const Matrix4 y = std::ldexp(1.0, -squarings) * x;

  // ||y|| <= 0.5, so 0.5^n / n! drops below 1e-20 before n = 20.
  Matrix4 sum = y;
  Matrix4 term = y;
  for (int n = 2; n <= 20; ++n) {
    term = (1.0 / n) * (term * y);
    sum += term;
    if (max_abs(term) <= 1e-20 * std::max(1.0, max_abs(sum))) break;
  }
  // (I + D)^2 = I + (2 D + D^2)
  for (int i = 0; i < squarings; ++i) sum = 2.0 * sum + sum * sum;
  return sum;
}

/// exp(t M); entries accurate to about 1e-13 relative for ||t M||_1 <= kMatExpMaxNorm.
inline Matrix4 mat_exp(const Matrix4& m, double t) { return Matrix4::identity() + mat_expm1(m, t); }

}  // namespace geolorentz
