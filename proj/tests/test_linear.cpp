#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "toruspack/linear.hpp"
#include "toruspack/simplex.hpp"

using namespace toruspack;

namespace {
QuadExt q(long long a, long long b = 0) { return QuadExt(Rational(a), Rational(b)); }
}  // namespace

TEST_CASE("rref rank and kernel") {
  MatQ m = {{q(1), q(2), q(3)}, {q(2), q(4), q(6)}, {q(0), q(1), q(1)}};
  CHECK(exact_rank(m) == 2);
  auto ker = kernel_basis(m, 3);
  REQUIRE(ker.size() == 1);
  // Check M k = 0.
  for (const auto& row : m) {
    QuadExt dot(0);
    for (int j = 0; j < 3; ++j) dot += row[static_cast<size_t>(j)] * ker[0][static_cast<size_t>(j)];
    CHECK(dot.is_zero());
  }
}

TEST_CASE("kernel with irrational entries") {
  // x + sqrt(3) y = 0 has kernel (-sqrt(3), 1).
  MatQ m = {{q(1), q(0, 1)}};
  auto ker = kernel_basis(m, 2);
  REQUIRE(ker.size() == 1);
  QuadExt dot = m[0][0] * ker[0][0] + m[0][1] * ker[0][1];
  CHECK(dot.is_zero());
}

TEST_CASE("solve_linear") {
  MatQ a = {{q(2), q(1)}, {q(1), q(-1)}};
  VecQ b = {q(5), q(1)};
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == q(2));
  CHECK((*x)[1] == q(1));
  MatQ bad = {{q(1), q(1)}, {q(1), q(1)}};
  CHECK_FALSE(solve_linear(bad, {q(0), q(1)}).has_value());
}

TEST_CASE("left kernel meets right kernel dimensions") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long long> d(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 4, cols = 6;
    MatQ m(rows, VecQ(cols));
    for (auto& r : m)
      for (auto& e : r) e = QuadExt(Rational(d(rng)), Rational(d(rng)));
    int rank = exact_rank(m);
    CHECK(static_cast<int>(kernel_basis(m, cols).size()) == cols - rank);
    CHECK(static_cast<int>(left_kernel_basis(m, cols).size()) == rows - rank);
  }
}

TEST_CASE("simplex: basic maximization") {
  // max x + y s.t. x <= 2, y <= 3, x + y <= 4.
  std::vector<std::vector<QuadExt>> a = {{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}};
  auto res = simplex_maximize(a, {q(2), q(3), q(4)}, {q(1), q(1)});
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == q(4));
}

TEST_CASE("simplex: negative rhs needs phase one") {
  // max -x s.t. -x <= -2  (x >= 2): optimum x = 2.
  std::vector<std::vector<QuadExt>> a = {{q(-1)}};
  auto res = simplex_maximize(a, {q(-2)}, {q(-1)});
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == q(-2));
  CHECK(res.x[0] == q(2));
}

TEST_CASE("simplex: infeasible and unbounded") {
  // x <= 1 and -x <= -2 cannot both hold.
  std::vector<std::vector<QuadExt>> a = {{q(1)}, {q(-1)}};
  CHECK(simplex_maximize(a, {q(1), q(-2)}, {q(1)}).status == LpStatus::Infeasible);
  std::vector<std::vector<QuadExt>> free = {{q(-1)}};
  CHECK(simplex_maximize(free, {q(0)}, {q(1)}).status == LpStatus::Unbounded);
}

TEST_CASE("simplex: irrational data") {
  // max y s.t. y <= sqrt(3) x cap x <= 1  ->  y = sqrt(3).
  std::vector<std::vector<QuadExt>> a = {{q(0, -1), q(1)}, {q(1), q(0)}};
  auto res = simplex_maximize(a, {q(0), q(1)}, {q(0), q(1)});
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == q(0, 1));
}
