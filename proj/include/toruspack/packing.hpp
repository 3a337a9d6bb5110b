#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toruspack/lattice.hpp"

namespace toruspack {

struct InvalidPackingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Packing of n equal disks on the torus C / lattice. Centers are stored in
/// lattice coordinates (coefficients of g1, g2, kept in [0,1)) so wrap
/// bookkeeping stays integer-exact; Cartesian positions are derived.
struct TorusPacking {
  Lattice2 lattice;
  std::vector<Vec2Q> centers;  // lattice coordinates
  QuadExt radius = QuadExt(Rational(1, 2));
  bool exact = true;  // false once floating data entered the coordinates
  std::vector<std::string> labels;

  int n() const { return static_cast<int>(centers.size()); }
  double radius_d() const { return radius.to_double(); }
  Vec2Q cartesian(int i) const { return lattice.to_cartesian(centers[static_cast<size_t>(i)]); }
};

/// Contact edge (i, j) with wrap vector w: the contact vector is
/// p_j + w1 g1 + w2 g2 - p_i. Canonical form: i < j, or i == j with w
/// lexicographically positive; (i,j,w) and (j,i,-w) are the same contact.
struct ContactEdge {
  int i = 0, j = 0;
  long long w1 = 0, w2 = 0;
};

struct ContactGraph {
  int n = 0;
  std::vector<ContactEdge> edges;

  int m() const { return static_cast<int>(edges.size()); }
  /// Contact degree of a vertex; a self-loop contributes 2.
  std::vector<int> degrees() const;
};

struct ValidationReport {
  bool valid = false;
  double min_distance = 0.0;
  double worst_overlap = 0.0;  // max(0, 2r - min_distance)
  std::optional<QuadExt> min_distance_sq_exact;  // exact path only
};

/// Total disk area over torus area.
double density(const TorusPacking& p);

/// Checks every center pair (including self-pairs) against the neighbor
/// wraps of the reduced basis; wrap coefficients in {-1,0,1}, extended to
/// {-2..2} if the reduced basis is still skew.
ValidationReport validate(const TorusPacking& p, double tol = 1e-9);

/// All pairs at periodic distance within [2r - tol, 2r + tol].
ContactGraph contact_graph(const TorusPacking& p, double tol = 1e-8);

/// Triangular packing on the torus Lambda(z, g_delta z), z = n1 + n2 g_delta:
/// coset representatives of the unit triangular lattice, radius 1/2,
/// n1^2 + n1 n2 + n2^2 disks at density pi/sqrt(12).
TorusPacking build_triangular_packing(long long n1, long long n2);

TorusPacking remove_disk(const TorusPacking& p, int index);

/// Shortest nonzero lattice vector length (from the reduced basis).
double shortest_vector_length(const Lattice2& l);

/// Pairwise periodic minimum distance, and the per-pair displacement search
/// used by both validate and contact_graph.
struct PeriodicPair {
  int i, j;
  long long w1, w2;       // wrap in the original basis
  double distance;
  Vec2Q vector;           // exact contact vector (Cartesian)
};
std::vector<PeriodicPair> periodic_pairs(const TorusPacking& p, double max_distance);

}  // namespace toruspack
