#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

#include "toruspack/geometry.hpp"

namespace toruspack {

struct DegenerateLatticeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class LatticeTag { Triangular, Square, Generic };

/// Rank-2 period lattice in the plane. Generators are stored exactly; a
/// lattice built from floating data keeps the (dyadic-rational) values but is
/// flagged inexact so classification falls back to tolerance comparisons.
class Lattice2 {
 public:
  Lattice2() = default;
  Lattice2(Vec2Q g1, Vec2Q g2, bool exact = true);

  static Lattice2 from_cyclo(const CycloInt& z1, const CycloInt& z2);
  static Lattice2 from_doubles(double x1, double y1, double x2, double y2);
  /// The unit triangular lattice Lambda(1, g_delta).
  static Lattice2 triangular();
  /// The unit square lattice Lambda(1, i).
  static Lattice2 square();

  const Vec2Q& g1() const { return g1_; }
  const Vec2Q& g2() const { return g2_; }
  bool exact() const { return exact_; }
  /// +1 when (g1, g2) is positively oriented, -1 otherwise.
  int orientation() const { return orientation_; }
  const CycloInt& g1_cyclo() const { return cyclo_[0]; }
  const CycloInt& g2_cyclo() const { return cyclo_[1]; }
  bool has_cyclo() const { return has_cyclo_; }

  /// |Im(conj(g1) g2)|, the fundamental-parallelogram area. The absolute
  /// value makes the result independent of generator order.
  QuadExt area() const;
  double area_d() const { return area().to_double(); }

  Vec2Q to_cartesian(const Vec2Q& lattice_coords) const {
    return g1_ * lattice_coords.x + g2_ * lattice_coords.y;
  }
  /// Inverse of to_cartesian (exact 2x2 solve).
  Vec2Q to_lattice(const Vec2Q& point) const;

 private:
  Vec2Q g1_, g2_;
  bool exact_ = true;
  int orientation_ = 1;
  bool has_cyclo_ = false;
  std::array<CycloInt, 2> cyclo_{};

  friend Lattice2 with_cyclo(Lattice2 l, const CycloInt& z1, const CycloInt& z2);
};

struct LatticeShape {
  LatticeTag tag = LatticeTag::Generic;
  Vec2Q reduced_g1, reduced_g2;
};

/// Lagrange-Gauss reduction: returns a basis with |g1| <= |g2| and
/// |<g1, g2>| <= |g1|^2 / 2, i.e. the two successive minima.
Lattice2 reduce(const Lattice2& l);

/// Exact classification for exact lattices, 1e-9 relative tolerances for
/// floating ones.
LatticeShape classify_shape(const Lattice2& l);

/// n = n1^2 + n1 n2 + n2^2 decision with witness. Runs both the bounded
/// search and the prime-factorization criterion; a disagreement means a bug
/// and throws std::logic_error.
struct TriangleNumberResult {
  bool is_triangle_number = false;
  long long n1 = 0, n2 = 0;
};
TriangleNumberResult is_triangle_lattice_number(long long n);

/// Index of `sub` in `sup` = |det| of the integer coordinate matrix.
/// Throws std::invalid_argument when `sub` is not contained in `sup`.
long long sublattice_index(const Lattice2& sub, const Lattice2& sup);

}  // namespace toruspack
