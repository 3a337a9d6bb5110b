#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "toruspack/rational.hpp"

namespace toruspack {

/// Element of the real quadratic field Q(sqrt(3)), stored as a + b*sqrt(3)
/// with arbitrary-precision rational a, b. This is an ordered field: sign,
/// comparison and division are all exact, which is what the lattice and
/// rigidity code rely on.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  QuadExt(long long a) : a_(a) {}
  QuadExt(int a) : a_(a) {}

  static QuadExt sqrt3() { return QuadExt(0, 1); }
  static QuadExt half() { return QuadExt(Rational(1, 2)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadExt operator-() const { return QuadExt(-a_, -b_); }
  QuadExt operator+(const QuadExt& o) const { return QuadExt(a_ + o.a_, b_ + o.b_); }
  QuadExt operator-(const QuadExt& o) const { return QuadExt(a_ - o.a_, b_ - o.b_); }
  QuadExt operator*(const QuadExt& o) const {
    return QuadExt(a_ * o.a_ + 3 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

  /// Galois conjugate a - b*sqrt(3).
  QuadExt conj() const { return QuadExt(a_, -b_); }

  /// Field norm a^2 - 3 b^2 (rational; zero only for the zero element).
  Rational field_norm() const { return a_ * a_ - 3 * b_ * b_; }

  QuadExt inverse() const {
    Rational n = field_norm();
    if (n == 0) throw std::domain_error("QuadExt: division by zero");
    return QuadExt(a_ / n, -b_ / n);
  }
  QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  /// Exact sign of a + b*sqrt(3). Four cases by the signs of a and b:
  ///   a >= 0, b >= 0 : nonnegative; zero only when a = b = 0.
  ///   a <= 0, b <= 0 : mirror of the above.
  ///   a > 0,  b < 0  : a + b*sqrt(3) > 0  <=>  a > |b|sqrt(3)  <=>  a^2 > 3 b^2.
  ///   a < 0,  b > 0  : a + b*sqrt(3) > 0  <=>  b*sqrt(3) > |a| <=>  3 b^2 > a^2.
  int sign() const {
    int sa = toruspack::sign(a_), sb = toruspack::sign(b_);
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // Mixed signs: compare the squares of the dominant terms.
    int cmp = toruspack::sign(a_ * a_ - 3 * b_ * b_);
    return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
  }

  bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
  bool operator>(const QuadExt& o) const { return (*this - o).sign() > 0; }
  bool operator<=(const QuadExt& o) const { return (*this - o).sign() <= 0; }
  bool operator>=(const QuadExt& o) const { return (*this - o).sign() >= 0; }

  QuadExt abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return toruspack::to_double(a_) + toruspack::to_double(b_) * std::sqrt(3.0); }

  /// Largest integer <= a + b*sqrt(3), computed exactly (double guess, then
  /// exact fix-up against integer bounds).
  Int floor() const {
    Int k(static_cast<long long>(std::floor(to_double())));
    while (*this < QuadExt(Rational(k))) --k;
    while (*this >= QuadExt(Rational(k + 1))) ++k;
    return k;
  }
  Int round() const { return (*this + QuadExt(Rational(1, 2))).floor(); }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& q) {
    os << to_string(q.a_);
    if (q.b_ != 0) os << (q.b_ > 0 ? "+" : "") << to_string(q.b_) << "*sqrt(3)";
    return os;
  }

 private:
  Rational a_, b_;
};

inline QuadExt operator*(const Rational& r, const QuadExt& q) { return QuadExt(r) * q; }

inline int quad_sign(const QuadExt& q) { return q.sign(); }

}  // namespace toruspack
