#include "toruspack/lattice.hpp"

#include <cmath>
#include <cstdlib>

namespace toruspack {

Lattice2::Lattice2(Vec2Q g1, Vec2Q g2, bool exact)
    : g1_(std::move(g1)), g2_(std::move(g2)), exact_(exact) {
  int s = g1_.cross(g2_).sign();
  if (s == 0) throw DegenerateLatticeError("lattice generators are dependent");
  orientation_ = s;
}

Lattice2 Lattice2::from_cyclo(const CycloInt& z1, const CycloInt& z2) {
  Lattice2 l(Vec2Q::from_cyclo(z1), Vec2Q::from_cyclo(z2), true);
  l.has_cyclo_ = true;
  l.cyclo_ = {z1, z2};
  return l;
}

Lattice2 Lattice2::from_doubles(double x1, double y1, double x2, double y2) {
  return Lattice2(Vec2Q(QuadExt(rational_from_double(x1)), QuadExt(rational_from_double(y1))),
                  Vec2Q(QuadExt(rational_from_double(x2)), QuadExt(rational_from_double(y2))),
                  false);
}

Lattice2 Lattice2::triangular() {
  return from_cyclo(CycloInt::one(), CycloInt::g_delta());
}

Lattice2 Lattice2::square() {
  return from_cyclo(CycloInt::one(), CycloInt::g_power(3));
}

QuadExt Lattice2::area() const {
  QuadExt cross = g1_.cross(g2_);
  if (cross.sign() == 0) throw DegenerateLatticeError("zero-area lattice");
  return cross.abs();
}

Vec2Q Lattice2::to_lattice(const Vec2Q& point) const {
  QuadExt det = g1_.cross(g2_);
  // Cramer on [g1 g2] * (u, v)^T = point.
  QuadExt u = (point.x * g2_.y - point.y * g2_.x) / det;
  QuadExt v = (g1_.x * point.y - g1_.y * point.x) / det;
  return {u, v};
}

Lattice2 reduce(const Lattice2& l) {
  Vec2Q a = l.g1(), b = l.g2();
  for (int guard = 0; guard < 1000; ++guard) {
    if (b.norm_sq() < a.norm_sq()) std::swap(a, b);
    QuadExt mu = b.dot(a) / a.norm_sq();
    Int m = mu.round();
    if (m == 0) break;
    b -= a * QuadExt(Rational(m));
  }
  if (b.norm_sq() < a.norm_sq()) std::swap(a, b);
  return Lattice2(a, b, l.exact());
}

namespace {

LatticeTag classify_exact(const Vec2Q& a, const Vec2Q& b) {
  QuadExt na = a.norm_sq(), nb = b.norm_sq();
  QuadExt ip = a.dot(b);
  if (na == nb) {
    if (ip.is_zero()) return LatticeTag::Square;
    // Reduced equal-length basis at +-60 or +-120 degrees: 2|<a,b>| == |a|^2.
    if ((ip + ip).abs() == na) return LatticeTag::Triangular;
  }
  return LatticeTag::Generic;
}

LatticeTag classify_float(const Vec2Q& a, const Vec2Q& b) {
  const double tol = 1e-9;
  double na = a.norm_sq().to_double(), nb = b.norm_sq().to_double();
  double ip = a.dot(b).to_double();
  double len_mismatch = std::abs(na - nb) / na;
  double cosang = ip / std::sqrt(na * nb);
  if (len_mismatch <= tol) {
    if (std::abs(cosang) <= tol) return LatticeTag::Square;
    if (std::abs(std::abs(cosang) - 0.5) <= tol) return LatticeTag::Triangular;
  }
  return LatticeTag::Generic;
}

}  // namespace

LatticeShape classify_shape(const Lattice2& l) {
  Lattice2 r = reduce(l);
  LatticeShape shape;
  shape.reduced_g1 = r.g1();
  shape.reduced_g2 = r.g2();
  shape.tag = l.exact() ? classify_exact(r.g1(), r.g2()) : classify_float(r.g1(), r.g2());
  return shape;
}

namespace {

std::optional<std::pair<long long, long long>> triangle_number_search(long long n) {
  if (n == 0) return std::make_pair(0LL, 0LL);
  // Any representation has a sign-normalized one with n1 >= n2 >= 0
  // (substitute (n1, n2) <- (n1 - n2, n2) to clear a mixed sign).
  for (long long n1 = 0; n1 * n1 <= n; ++n1)
    for (long long n2 = 0; n2 <= n1; ++n2) {
      long long q = n1 * n1 + n1 * n2 + n2 * n2;
      if (q == n) return std::make_pair(n1, n2);
      if (q > n) break;
    }
  return std::nullopt;
}

// n > 0 is Loeschian iff every prime p = 2 (mod 3) divides it to an even
// power. Trial division only; inputs are desk-scale.
bool triangle_number_factorization(long long n) {
  if (n == 0) return true;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (p % 3 == 2 && e % 2) return false;
  }
  if (n > 1 && n % 3 == 2) return false;  // leftover prime
  return true;
}

}  // namespace

TriangleNumberResult is_triangle_lattice_number(long long n) {
  if (n < 0) throw std::invalid_argument("triangle lattice numbers are nonnegative");
  auto witness = triangle_number_search(n);
  bool by_factorization = triangle_number_factorization(n);
  if (witness.has_value() != by_factorization)
    throw std::logic_error("triangle-number criteria disagree at n=" + std::to_string(n));
  TriangleNumberResult r;
  r.is_triangle_number = witness.has_value();
  if (witness) {
    r.n1 = witness->first;
    r.n2 = witness->second;
  }
  return r;
}

long long sublattice_index(const Lattice2& sub, const Lattice2& sup) {
  // Integer coordinate matrix of sub's generators in sup's basis.
  Vec2Q c1 = sup.to_lattice(sub.g1());
  Vec2Q c2 = sup.to_lattice(sub.g2());
  long long m[4];
  const QuadExt* entries[4] = {&c1.x, &c1.y, &c2.x, &c2.y};
  for (int i = 0; i < 4; ++i) {
    const QuadExt& q = *entries[i];
    if (!q.is_rational() || denominator(q.a()) != 1)
      throw std::invalid_argument("sublattice_index: lattice is not contained in the superlattice");
    m[i] = q.a().convert_to<long long>();
  }
  long long det = m[0] * m[3] - m[1] * m[2];
  return std::llabs(det);
}

Lattice2 with_cyclo(Lattice2 l, const CycloInt& z1, const CycloInt& z2) {
  l.has_cyclo_ = true;
  l.cyclo_ = {z1, z2};
  return l;
}

}  // namespace toruspack
