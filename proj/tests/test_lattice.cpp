#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "toruspack/lattice.hpp"

using namespace toruspack;

namespace {

Lattice2 unimodular_change(const Lattice2& l, std::mt19937& rng) {
  // Random SL2(Z) element as a short word in the standard generators.
  long long a = 1, b = 0, c = 0, d = 1;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> shift(-3, 3);
  for (int k = 0; k < 6; ++k) {
    if (coin(rng)) {
      long long s = shift(rng);
      b += a * s;
      d += c * s;
    } else {
      long long s = shift(rng);
      a += b * s;
      c += d * s;
    }
  }
  Vec2Q g1 = l.g1() * QuadExt(Rational(a)) + l.g2() * QuadExt(Rational(c));
  Vec2Q g2 = l.g1() * QuadExt(Rational(b)) + l.g2() * QuadExt(Rational(d));
  return Lattice2(g1, g2, l.exact());
}

}  // namespace

TEST_CASE("areas") {
  CHECK(Lattice2::triangular().area() == QuadExt(0, Rational(1, 2)));  // sqrt(3)/2
  CHECK(Lattice2::square().area() == QuadExt(1));
  // Index-7 sublattice of the triangular lattice.
  CycloInt z = CycloInt(2) + CycloInt::g_delta();
  Lattice2 l7 = Lattice2::from_cyclo(z, CycloInt::g_delta() * z);
  CHECK(l7.area() == QuadExt(0, Rational(7, 2)));
  // Absolute value: swapping generators does not flip the sign.
  Lattice2 swapped(l7.g2(), l7.g1());
  CHECK(swapped.area() == l7.area());
  CHECK(swapped.orientation() == -l7.orientation());
  CHECK_THROWS_AS(Lattice2(Vec2Q(QuadExt(1), QuadExt(0)), Vec2Q(QuadExt(2), QuadExt(0))),
                  DegenerateLatticeError);
}

TEST_CASE("Lagrange-Gauss reduction") {
  // Lambda(1, 1+i) reduces to the unit square basis.
  Lattice2 l(Vec2Q(QuadExt(1), QuadExt(0)), Vec2Q(QuadExt(1), QuadExt(1)));
  Lattice2 r = reduce(l);
  CHECK(r.g1().norm_sq() == QuadExt(1));
  CHECK(r.g2().norm_sq() == QuadExt(1));
  CHECK(r.g1().dot(r.g2()) == QuadExt(0));

  // Already-reduced triangular basis is a fixed point up to sign.
  Lattice2 t = reduce(Lattice2::triangular());
  CHECK(t.g1().norm_sq() == QuadExt(1));
  CHECK(t.g2().norm_sq() == QuadExt(1));
  CHECK((t.g1().dot(t.g2()) + t.g1().dot(t.g2())).abs() == QuadExt(1));

  // Brute-force shortest-vector oracle on a skew triangular sublattice:
  // Lambda(5, 5 g_delta + 7) = 5 * Lambda(1, g_delta + 7/5)... kept integral:
  CycloInt g1c = CycloInt(5);
  CycloInt g2c = CycloInt::g_delta() * 5 + CycloInt(7);
  Lattice2 skew = Lattice2::from_cyclo(g1c, g2c);
  Lattice2 red = reduce(skew);
  // Enumerate short vectors over coefficients in [-10, 10]^2.
  QuadExt best1(1000000), best2(1000000);
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) {
      if (a == 0 && b == 0) continue;
      Vec2Q v = skew.g1() * QuadExt(Rational(a)) + skew.g2() * QuadExt(Rational(b));
      QuadExt n = v.norm_sq();
      if (n < best1) {
        best2 = best1;
        best1 = n;
      } else if (n < best2) {
        best2 = n;
      }
    }
  CHECK(red.g1().norm_sq() == best1);
  CHECK(red.g2().norm_sq() == best2);
}

TEST_CASE("shape classification") {
  CHECK(classify_shape(Lattice2::triangular()).tag == LatticeTag::Triangular);
  Lattice2 sq2(Vec2Q(QuadExt(2), QuadExt(0)), Vec2Q(QuadExt(0), QuadExt(2)));
  CHECK(classify_shape(sq2).tag == LatticeTag::Square);
  Lattice2 gen(Vec2Q(QuadExt(1), QuadExt(0)), Vec2Q(QuadExt(0), QuadExt(2)));
  CHECK(classify_shape(gen).tag == LatticeTag::Generic);

  // Invariance under 100 random unimodular basis changes.
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    CHECK(classify_shape(unimodular_change(Lattice2::triangular(), rng)).tag ==
          LatticeTag::Triangular);
    CHECK(classify_shape(unimodular_change(sq2, rng)).tag == LatticeTag::Square);
    CHECK(classify_shape(unimodular_change(gen, rng)).tag == LatticeTag::Generic);
  }

  // Floating path with tolerance.
  Lattice2 ftri = Lattice2::from_doubles(1.0, 0.0, 0.5, std::sqrt(3.0) / 2);
  CHECK_FALSE(ftri.exact());
  CHECK(classify_shape(ftri).tag == LatticeTag::Triangular);
  Lattice2 fgen = Lattice2::from_doubles(1.0, 0.0, 0.5, std::sqrt(3.0) / 2 + 1e-4);
  CHECK(classify_shape(fgen).tag == LatticeTag::Generic);
}

TEST_CASE("area invariances") {
  std::mt19937 rng(13);
  CycloInt z = CycloInt(3) + CycloInt::g_power(1) * 2 - CycloInt::g_power(3);
  Lattice2 l = Lattice2::from_cyclo(z, CycloInt::g_delta() * z * 2);
  QuadExt a0 = l.area();
  for (int k = 0; k < 50; ++k) CHECK(unimodular_change(l, rng).area() == a0);
  // Scaling by s multiplies the area by |s|^2 (s = 3 here).
  Lattice2 scaled(l.g1() * QuadExt(3), l.g2() * QuadExt(3));
  CHECK(scaled.area() == a0 * QuadExt(9));
}

TEST_CASE("triangle lattice numbers: paper list and witness") {
  auto r7 = is_triangle_lattice_number(7);
  CHECK(r7.is_triangle_number);
  CHECK(r7.n1 * r7.n1 + r7.n1 * r7.n2 + r7.n2 * r7.n2 == 7);
  CHECK(r7.n1 == 2);
  CHECK(r7.n2 == 1);
  CHECK_FALSE(is_triangle_lattice_number(2).is_triangle_number);
  CHECK(is_triangle_lattice_number(91).is_triangle_number);  // 7 * 13
  CHECK_THROWS_AS(is_triangle_lattice_number(-1), std::invalid_argument);

  std::vector<long long> expect = {0,  1,  3,  4,  7,  9,  12, 13, 16, 19, 21,
                                   25, 27, 28, 31, 36, 37, 39, 43, 48, 49};
  std::vector<long long> got;
  for (long long n = 0; n <= 49; ++n)
    if (is_triangle_lattice_number(n).is_triangle_number) got.push_back(n);
  CHECK(got == expect);
}

TEST_CASE("triangle numbers: both decision paths agree up to 10000") {
  // is_triangle_lattice_number runs both internally and throws on mismatch.
  long long count = 0;
  for (long long n = 0; n <= 10000; ++n)
    if (is_triangle_lattice_number(n).is_triangle_number) ++count;
  CHECK(count > 0);
}

TEST_CASE("sublattice index") {
  CycloInt z = CycloInt(2) + CycloInt::g_delta();
  Lattice2 sub = Lattice2::from_cyclo(z, CycloInt::g_delta() * z);
  Lattice2 sup = Lattice2::triangular();
  CHECK(sublattice_index(sub, sup) == 7);
  CHECK(sublattice_index(sup, sup) == 1);
  Lattice2 twice = Lattice2::from_cyclo(CycloInt(2), CycloInt::g_delta() * 2);
  CHECK(sublattice_index(twice, sup) == 4);
  CHECK_THROWS_AS(sublattice_index(sup, twice), std::invalid_argument);
}
