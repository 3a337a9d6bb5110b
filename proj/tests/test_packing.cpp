#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "toruspack/packing.hpp"

using namespace toruspack;

namespace {

TorusPacking lattice_packing(const Lattice2& l, double radius) {
  TorusPacking p;
  p.lattice = l;
  p.centers = {Vec2Q(QuadExt(0), QuadExt(0))};
  p.radius = QuadExt(rational_from_double(radius));
  p.labels = {"1"};
  return p;
}

constexpr double kMaxDensity = 0.9068996821171089;  // pi / sqrt(12)

}  // namespace

TEST_CASE("density of canonical packings") {
  TorusPacking tri = lattice_packing(Lattice2::triangular(), 0.5);
  tri.radius = QuadExt(Rational(1, 2));
  CHECK(density(tri) == doctest::Approx(kMaxDensity).epsilon(1e-12));

  TorusPacking sq = lattice_packing(Lattice2::square(), 0.5);
  sq.radius = QuadExt(Rational(1, 2));
  CHECK(density(sq) == doctest::Approx(M_PI / 4).epsilon(1e-12));

  TorusPacking seven = build_triangular_packing(2, 1);
  TorusPacking six = remove_disk(seven, 3);
  CHECK(density(six) == doctest::Approx(kMaxDensity * 6.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("validate: tangency and overlap") {
  TorusPacking p = lattice_packing(Lattice2::triangular(), 0.5);
  p.radius = QuadExt(Rational(1, 2));
  auto rep = validate(p, 1e-9);
  CHECK(rep.valid);
  CHECK(rep.min_distance == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(rep.min_distance_sq_exact.has_value());
  CHECK(*rep.min_distance_sq_exact == QuadExt(1));

  p.radius = QuadExt(Rational(51, 100));
  auto bad = validate(p, 1e-9);
  CHECK_FALSE(bad.valid);
  CHECK(bad.worst_overlap == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("contact graph of the one-disk triangular packing") {
  TorusPacking p = lattice_packing(Lattice2::triangular(), 0.5);
  p.radius = QuadExt(Rational(1, 2));
  ContactGraph g = contact_graph(p, 1e-8);
  CHECK(g.n == 1);
  CHECK(g.m() == 3);
  std::set<std::pair<long long, long long>> wraps;
  for (const auto& e : g.edges) {
    CHECK(e.i == 0);
    CHECK(e.j == 0);
    wraps.insert({e.w1, e.w2});
  }
  std::set<std::pair<long long, long long>> expect = {{1, 0}, {0, 1}, {1, -1}};
  CHECK(wraps == expect);
}

TEST_CASE("contact graph on a tall torus has a single wrap class") {
  Lattice2 tall(Vec2Q(QuadExt(1), QuadExt(0)), Vec2Q(QuadExt(0), QuadExt(2)));
  TorusPacking p = lattice_packing(tall, 0.5);
  p.radius = QuadExt(Rational(1, 2));
  ContactGraph g = contact_graph(p, 1e-8);
  REQUIRE(g.m() == 1);
  CHECK(g.edges[0].w1 == 1);
  CHECK(g.edges[0].w2 == 0);
}

TEST_CASE("build_triangular_packing basics") {
  TorusPacking one = build_triangular_packing(1, 0);
  CHECK(one.n() == 1);
  CHECK(density(one) == doctest::Approx(kMaxDensity).epsilon(1e-12));

  TorusPacking seven = build_triangular_packing(2, 1);
  CHECK(seven.n() == 7);
  CHECK(density(seven) == doctest::Approx(kMaxDensity).epsilon(1e-12));
  auto rep = validate(seven, 1e-12);
  CHECK(rep.valid);
  REQUIRE(rep.min_distance_sq_exact.has_value());
  CHECK(*rep.min_distance_sq_exact == QuadExt(1));

  TorusPacking twelve = build_triangular_packing(2, 2);
  CHECK(twelve.n() == 12);

  CHECK_THROWS_AS(build_triangular_packing(0, 0), std::invalid_argument);
}

TEST_CASE("triangular packings: density, contact count, bound (n <= 50)") {
  for (long long n1 = 0; n1 <= 7; ++n1)
    for (long long n2 = 0; n2 <= n1; ++n2) {
      if (n1 == 0 && n2 == 0) continue;
      long long n = n1 * n1 + n1 * n2 + n2 * n2;
      if (n > 50) continue;
      TorusPacking p = build_triangular_packing(n1, n2);
      CHECK(p.n() == n);
      double d = density(p);
      CHECK(d == doctest::Approx(kMaxDensity).epsilon(1e-12));
      CHECK(d <= kMaxDensity + 1e-9);
      ContactGraph g = contact_graph(p, 1e-8);
      CHECK(g.m() == 3 * n);
      for (int deg : g.degrees()) CHECK(deg == 6);
    }
}

TEST_CASE("remove_disk") {
  TorusPacking seven = build_triangular_packing(2, 1);
  std::set<double> densities;
  for (int i = 0; i < 7; ++i) densities.insert(density(remove_disk(seven, i)));
  CHECK(densities.size() == 1);  // label-independent
  CHECK(*densities.begin() == doctest::Approx(kMaxDensity * 6.0 / 7.0).epsilon(1e-12));

  TorusPacking three = build_triangular_packing(1, 1);
  CHECK(density(remove_disk(three, 0)) == doctest::Approx(kMaxDensity * 2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(remove_disk(three, 5), std::out_of_range);
  CHECK_THROWS_AS(remove_disk(lattice_packing(Lattice2::square(), 0.4), 0), std::invalid_argument);
}
