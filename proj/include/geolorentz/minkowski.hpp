#pragma once

// Four-vectors, three-vectors and 4x4 matrices over the (+,-,-,-) metric, c = 1.
//
// Matrix4 is row-major and acts on column vectors: element (r, c) multiplies
// component c of the vector and contributes to component r of the result.
// Component 0 is the time component throughout.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "geolorentz/error.hpp"

namespace geolorentz {

struct ThreeVector {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr ThreeVector() = default;
  constexpr ThreeVector(double x, double y, double z) : v{x, y, z} {}

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }

  constexpr ThreeVector& operator+=(const ThreeVector& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr ThreeVector& operator-=(const ThreeVector& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr ThreeVector& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }

  friend constexpr bool operator==(const ThreeVector&, const ThreeVector&) = default;
};

constexpr ThreeVector operator+(ThreeVector a, const ThreeVector& b) { return a += b; }
constexpr ThreeVector operator-(ThreeVector a, const ThreeVector& b) { return a -= b; }
constexpr ThreeVector operator*(double s, ThreeVector a) { return a *= s; }
constexpr ThreeVector operator*(ThreeVector a, double s) { return a *= s; }
constexpr ThreeVector operator-(ThreeVector a) { return a *= -1.0; }

constexpr double dot(const ThreeVector& a, const ThreeVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

constexpr ThreeVector cross(const ThreeVector& a, const ThreeVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const ThreeVector& a) { return std::sqrt(dot(a, a)); }

struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  constexpr FourVector() = default;
  constexpr FourVector(double c0, double c1, double c2, double c3) : c{c0, c1, c2, c3} {}
  constexpr FourVector(double time, const ThreeVector& space)
      : c{time, space[0], space[1], space[2]} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr double time() const { return c[0]; }
  constexpr ThreeVector space() const { return {c[1], c[2], c[3]}; }

  constexpr FourVector& operator+=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr FourVector& operator-=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr FourVector& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

constexpr FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
constexpr FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
constexpr FourVector operator*(double s, FourVector a) { return a *= s; }
constexpr FourVector operator*(FourVector a, double s) { return a *= s; }

/// a0 b0 - a1 b1 - a2 b2 - a3 b3
constexpr double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// Future-pointing unit four-velocity with the given spatial part.
inline FourVector four_velocity_from_spatial(const ThreeVector& u) {
  return {std::sqrt(1.0 + dot(u, u)), u};
}

class Matrix4 {
 public:
  constexpr Matrix4() = default;
  explicit constexpr Matrix4(const std::array<double, 16>& row_major) : a_(row_major) {}

  static constexpr Matrix4 identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
  static constexpr Matrix4 zero() { return {}; }
  static constexpr Matrix4 diagonal(double d0, double d1, double d2, double d3) {
    Matrix4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
  }

  constexpr double& operator()(std::size_t r, std::size_t c) { return a_[4 * r + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const { return a_[4 * r + c]; }

  constexpr const std::array<double, 16>& data() const { return a_; }

  constexpr Matrix4 transpose() const {
    Matrix4 t;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  constexpr Matrix4& operator+=(const Matrix4& o) {
    for (std::size_t i = 0; i < 16; ++i) a_[i] += o.a_[i];
    return *this;
  }
  constexpr Matrix4& operator-=(const Matrix4& o) {
    for (std::size_t i = 0; i < 16; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  constexpr Matrix4& operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend constexpr bool operator==(const Matrix4&, const Matrix4&) = default;

 private:
  std::array<double, 16> a_{};
};

constexpr Matrix4 operator+(Matrix4 a, const Matrix4& b) { return a += b; }
constexpr Matrix4 operator-(Matrix4 a, const Matrix4& b) { return a -= b; }
constexpr Matrix4 operator*(double s, Matrix4 a) { return a *= s; }
constexpr Matrix4 operator*(Matrix4 a, double s) { return a *= s; }
constexpr Matrix4 operator-(Matrix4 a) { return a *= -1.0; }

/// The metric diag(1, -1, -1, -1); also its own inverse.
inline constexpr Matrix4 kMetric = Matrix4::diagonal(1.0, -1.0, -1.0, -1.0);

constexpr FourVector mat_apply(const Matrix4& m, const FourVector& u) {
  FourVector out;
  for (std::size_t r = 0; r < 4; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < 4; ++c) s += m(r, c) * u[c];
    out[r] = s;
  }
  return out;
}

constexpr Matrix4 mat_mul(const Matrix4& a, const Matrix4& b) {
  Matrix4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

constexpr Matrix4 operator*(const Matrix4& a, const Matrix4& b) { return mat_mul(a, b); }
constexpr FourVector operator*(const Matrix4& m, const FourVector& u) { return mat_apply(m, u); }

/// Largest absolute column sum.
inline double norm_one(const Matrix4& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < 4; ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

/// Largest absolute entry; the distance used by all matrix comparisons.
inline double max_abs(const Matrix4& m) {
  double best = 0.0;
  for (double x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

inline double max_abs_diff(const Matrix4& a, const Matrix4& b) { return max_abs(a - b); }

inline double max_abs_diff(const FourVector& a, const FourVector& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < 4; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

/// Gauss-Jordan elimination with partial pivoting. Throws SingularMatrix when
/// a pivot falls below 1e-14 relative to the largest entry of the input.
inline Matrix4 mat_inverse(const Matrix4& m) {
  const double scale = max_abs(m);
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw SingularMatrix("mat_inverse: matrix is zero or non-finite");
  }
  Matrix4 a = m;
  Matrix4 inv = Matrix4::identity();
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 4; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) <= 1e-14 * scale) {
      throw SingularMatrix("mat_inverse: matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < 4; ++c) {
        std::swap(a(col, c), a(pivot, c));
        std::swap(inv(col, c), inv(pivot, c));
      }
    }
    const double p = a(col, col);
    for (std::size_t c = 0; c < 4; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < 4; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace geolorentz
