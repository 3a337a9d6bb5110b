#pragma once

#include <complex>

#include "toruspack/cyclo.hpp"
#include "toruspack/quadext.hpp"

namespace toruspack {

/// Exact planar vector over Q(sqrt(3)). Doubles as a complex number
/// (x + i y) for rotations by exact unit vectors.
struct Vec2Q {
  QuadExt x, y;

  Vec2Q() = default;
  Vec2Q(QuadExt x_, QuadExt y_) : x(std::move(x_)), y(std::move(y_)) {}
  static Vec2Q from_cyclo(const CycloInt& z) { return {z.re(), z.im()}; }

  Vec2Q operator+(const Vec2Q& o) const { return {x + o.x, y + o.y}; }
  Vec2Q operator-(const Vec2Q& o) const { return {x - o.x, y - o.y}; }
  Vec2Q operator-() const { return {-x, -y}; }
  Vec2Q& operator+=(const Vec2Q& o) { x += o.x; y += o.y; return *this; }
  Vec2Q& operator-=(const Vec2Q& o) { x -= o.x; y -= o.y; return *this; }
  Vec2Q operator*(const QuadExt& s) const { return {x * s, y * s}; }
  bool operator==(const Vec2Q& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2Q& o) const { return !(*this == o); }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }

  QuadExt dot(const Vec2Q& o) const { return x * o.x + y * o.y; }
  QuadExt cross(const Vec2Q& o) const { return x * o.y - y * o.x; }
  QuadExt norm_sq() const { return x * x + y * y; }

  /// Complex product (x + iy)(o.x + i o.y); rotation when |o| = 1.
  Vec2Q cmul(const Vec2Q& o) const { return {x * o.x - y * o.y, x * o.y + y * o.x}; }

  std::complex<double> to_complex() const { return {x.to_double(), y.to_double()}; }
};

inline Vec2Q operator*(const QuadExt& s, const Vec2Q& v) { return v * s; }

/// Unit vector e^{2 pi i/3} as an exact Vec2Q; rotating a direction by this
/// steps through one triangle-direction class.
inline Vec2Q omega_unit() { return {QuadExt(Rational(-1, 2)), QuadExt(0, Rational(1, 2))}; }

}  // namespace toruspack
