#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "toruspack/cyclo.hpp"
#include "toruspack/quadext.hpp"

using namespace toruspack;

namespace {

// Floating oracle: evaluate a ring element at g = e^{i pi/6}.
std::complex<double> eval(const CycloInt& z) {
  std::complex<double> g = std::polar(1.0, M_PI / 6.0);
  std::complex<double> acc = 0;
  std::complex<double> p = 1;
  for (int k = 0; k < 4; ++k) {
    acc += static_cast<double>(z.c(k)) * p;
    p *= g;
  }
  return acc;
}

CycloInt random_elem(std::mt19937& rng) {
  std::uniform_int_distribution<long long> d(-10, 10);
  return CycloInt(d(rng), d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("defining relation and small powers") {
  // g * g^3 = g^4 = g^2 - 1
  CHECK(CycloInt::g_power(1) * CycloInt::g_power(3) == CycloInt(-1, 0, 1, 0));
  // g^6 = -1 by repeated multiplication
  CycloInt g = CycloInt::g_power(1), acc = CycloInt::one();
  for (int i = 0; i < 6; ++i) acc *= g;
  CHECK(acc == CycloInt(-1, 0, 0, 0));
  CHECK(CycloInt::g_power(0) == CycloInt(1, 0, 0, 0));
  CHECK(CycloInt::g_power(6) == CycloInt(-1, 0, 0, 0));
  CHECK(CycloInt::g_power(11) == CycloInt(0, 1, 0, -1));
  CHECK(CycloInt::g_power(-1) == CycloInt::g_power(11));
  // g^{-1} = conj(g) numerically = sqrt(3)/2 - i/2
  auto c = CycloInt::g_power(11).to_complex();
  CHECK(c.real() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(c.imag() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("(1 + g^2)^2 reduces to 3 g^2 (checked against the oracle)") {
  CycloInt x = CycloInt::one() + CycloInt::g_power(2);
  CycloInt sq = x * x;
  auto expect = eval(x) * eval(x);
  auto got = eval(sq);
  CHECK(std::abs(expect - got) < 1e-12);
  CHECK(sq == CycloInt(0, 0, 3, 0));
}

TEST_CASE("power chain: g^12 of anything returns the element") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    CycloInt z = random_elem(rng);
    CycloInt w = z * CycloInt::g_power(1).pow(12);
    CHECK(w == z);
  }
}

TEST_CASE("re/im against definition") {
  CycloInt one(1, 0, 0, 0);
  CHECK(one.re() == QuadExt(1));
  CHECK(one.im() == QuadExt(0));
  CycloInt g(0, 1, 0, 0);
  CHECK(g.re() == QuadExt(0, Rational(1, 2)));
  CHECK(g.im() == QuadExt(Rational(1, 2)));
  // 1 + g_delta = 1 + g^2 -> (3/2, sqrt(3)/2); |1+g_delta|^2 = 3
  CycloInt z = CycloInt::one() + CycloInt::g_delta();
  CHECK(z.re() == QuadExt(Rational(3, 2)));
  CHECK(z.im() == QuadExt(0, Rational(1, 2)));
  CHECK(z.norm_sq() == QuadExt(3));
}

TEST_CASE("norm_sq: Loeschian values and units") {
  CycloInt z = CycloInt(2) + CycloInt::g_delta();  // n1=2, n2=1
  CHECK(z.norm_sq() == QuadExt(7));
  CHECK(CycloInt::g_power(1).norm_sq() == QuadExt(1));
  CycloInt w = CycloInt::one() + CycloInt::g_power(1);
  CHECK(w.norm_sq() == QuadExt(2, 1));  // 2 + sqrt(3)
  double num = std::norm(eval(w));
  CHECK(w.norm_sq().to_double() == doctest::Approx(num).epsilon(1e-12));
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    CycloInt a = random_elem(rng), b = random_elem(rng), c = random_elem(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("conjugation is multiplicative and matches the oracle") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    CycloInt a = random_elem(rng), b = random_elem(rng);
    CHECK((a * b).conj() == a.conj() * b.conj());
    auto ca = eval(a.conj());
    auto expect = std::conj(eval(a));
    CHECK(std::abs(ca - expect) < 1e-9);
    // re_im(x conj(x)) is real and equals norm_sq(x)
    CycloInt n = a * a.conj();
    CHECK(n.im() == QuadExt(0));
    CHECK(n.re() == a.norm_sq());
  }
}

TEST_CASE("floating oracle for re/im on 1000 random elements") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    CycloInt z = random_elem(rng);
    auto c = eval(z);
    CHECK(std::abs(z.re().to_double() - c.real()) < 1e-9);
    CHECK(std::abs(z.im().to_double() - c.imag()) < 1e-9);
  }
}

TEST_CASE("quad_sign cases") {
  CHECK(quad_sign(QuadExt(0)) == 0);
  // 27 sqrt(3)/4 > 7
  CHECK(quad_sign(QuadExt(Rational(-7), Rational(27, 4))) == +1);
  // 2 - sqrt(3) > 0
  CHECK(quad_sign(QuadExt(2, -1)) == +1);
  CHECK(quad_sign(QuadExt(-2, 1)) == -1);
  CHECK(quad_sign(QuadExt(1, -1)) == -1);  // 1 - sqrt(3) < 0
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> num(-50, 50);
  std::uniform_int_distribution<long long> den(1, 9);
  for (int trial = 0; trial < 2000; ++trial) {
    QuadExt q(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    double v = q.to_double();
    if (std::abs(v) > 1e-9) CHECK(quad_sign(q) == (v > 0 ? 1 : -1));
  }
}

TEST_CASE("QuadExt field operations") {
  QuadExt x(Rational(3, 2), Rational(-1, 3));
  QuadExt y(Rational(0), Rational(2));
  CHECK((x / y) * y == x);
  CHECK(x * x.inverse() == QuadExt(1));
  CHECK_THROWS_AS(QuadExt(0).inverse(), std::domain_error);
  CHECK(QuadExt(2, -1) * QuadExt(2, 1) == QuadExt(1));  // (2-s3)(2+s3) = 1
  CHECK(QuadExt(Rational(5, 2), Rational(-3, 2)).floor() == Int(-1));
  CHECK(QuadExt(0, 1).floor() == Int(1));
  CHECK(QuadExt(0, -1).floor() == Int(-2));
  CHECK(QuadExt(Rational(1, 2)).round() == Int(1));
}
