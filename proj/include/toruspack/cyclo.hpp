#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>

#include "toruspack/quadext.hpp"

namespace toruspack {

/// Element of the ring Z[g] where g = e^{i pi/6} is a primitive twelfth root
/// of unity. The basis is 1, g, g^2, g^3; products reduce through the
/// cyclotomic relation g^4 = g^2 - 1. Tiling vertices and lattice generators
/// live here, so set operations (equality, containment) are exact.
class CycloInt {
 public:
  CycloInt() : c_{0, 0, 0, 0} {}
  CycloInt(long long c0, long long c1, long long c2, long long c3) : c_{c0, c1, c2, c3} {}
  explicit CycloInt(long long n) : c_{n, 0, 0, 0} {}

  static CycloInt one() { return CycloInt(1); }
  /// g^k for any integer k (reduced mod 12).
  static CycloInt g_power(long long k) {
    static const std::array<CycloInt, 12> table = {
        CycloInt(1, 0, 0, 0),  CycloInt(0, 1, 0, 0),   CycloInt(0, 0, 1, 0),
        CycloInt(0, 0, 0, 1),  CycloInt(-1, 0, 1, 0),  CycloInt(0, -1, 0, 1),
        CycloInt(-1, 0, 0, 0), CycloInt(0, -1, 0, 0),  CycloInt(0, 0, -1, 0),
        CycloInt(0, 0, 0, -1), CycloInt(1, 0, -1, 0),  CycloInt(0, 1, 0, -1)};
    return table[static_cast<size_t>(((k % 12) + 12) % 12)];
  }
  /// g_triangle = g^2 = e^{2 pi i/6}, the sixth root generating the
  /// triangular lattice.
  static CycloInt g_delta() { return g_power(2); }

  long long c(int i) const { return c_[static_cast<size_t>(i)]; }
  const std::array<long long, 4>& coeffs() const { return c_; }

  bool operator==(const CycloInt& o) const { return c_ == o.c_; }
  bool operator!=(const CycloInt& o) const { return !(*this == o); }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  CycloInt operator-() const { return CycloInt(-c_[0], -c_[1], -c_[2], -c_[3]); }
  CycloInt operator+(const CycloInt& o) const {
    return CycloInt(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]);
  }
  CycloInt operator-(const CycloInt& o) const { return *this + (-o); }
  CycloInt& operator+=(const CycloInt& o) { return *this = *this + o; }
  CycloInt& operator-=(const CycloInt& o) { return *this = *this - o; }

  CycloInt operator*(long long s) const {
    return CycloInt(c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s);
  }

  /// Ring product, reduced to the four-coefficient basis.
  /// Degrees 4..6 fold back via g^4 = g^2 - 1, g^5 = g^3 - g, g^6 = -1.
  CycloInt operator*(const CycloInt& o) const {
    long long p[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p[i + j] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
    return CycloInt(p[0] - p[4] - p[6], p[1] - p[5], p[2] + p[4], p[3] + p[5]);
  }
  CycloInt& operator*=(const CycloInt& o) { return *this = *this * o; }

  CycloInt pow(unsigned k) const {
    CycloInt r = one(), base = *this;
    while (k) {
      if (k & 1u) r *= base;
      base *= base;
      k >>= 1u;
    }
    return r;
  }

  /// Complex conjugation as a basis map, derived from g^{-1} = g - g^3:
  ///   conj(1) = 1, conj(g) = g - g^3, conj(g^2) = 1 - g^2, conj(g^3) = -g^3.
  CycloInt conj() const {
    return CycloInt(c_[0] + c_[2], c_[1], -c_[2], -c_[1] - c_[3]);
  }

  /// Exact real and imaginary parts in Q(sqrt(3)); denominators divide 2.
  /// Re(g) = sqrt(3)/2, Im(g) = 1/2, Re(g^2) = 1/2, Im(g^2) = sqrt(3)/2,
  /// Re(g^3) = 0, Im(g^3) = 1.
  QuadExt re() const { return QuadExt(Rational(c_[0]) + Rational(c_[2], 2), Rational(c_[1], 2)); }
  QuadExt im() const { return QuadExt(Rational(c_[1], 2) + Rational(c_[3]), Rational(c_[2], 2)); }

  /// |z|^2 = Re^2 + Im^2, exact. For z = n1 + n2 g^2 this is the Loeschian
  /// value n1^2 + n1 n2 + n2^2 with zero sqrt(3) part.
  QuadExt norm_sq() const {
    QuadExt r = re(), i = im();
    return r * r + i * i;
  }

  std::complex<double> to_complex() const { return {re().to_double(), im().to_double()}; }

  friend std::ostream& operator<<(std::ostream& os, const CycloInt& z) {
    os << "(" << z.c_[0] << "," << z.c_[1] << "," << z.c_[2] << "," << z.c_[3] << ")";
    return os;
  }

 private:
  std::array<long long, 4> c_;
};

inline CycloInt operator*(long long s, const CycloInt& z) { return z * s; }

}  // namespace toruspack
