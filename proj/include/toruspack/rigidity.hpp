#pragma once

#include <optional>
#include <vector>

#include "toruspack/linear.hpp"
#include "toruspack/packing.hpp"

namespace toruspack {

/// m x 2n first-order contact matrix. Row for edge (i, j, w) carries the
/// contact vector e = p_j + w1 g1 + w2 g2 - p_i with +e on j's columns and
/// -e on i's columns; self-loop rows are identically zero (the torus lattice
/// is fixed, so a disk touching its own translate constrains nothing to
/// first order).
struct RigidityMatrix {
  int n = 0, m = 0;
  MatQ rows;            // exact entries
  ContactGraph graph;   // edge order matches rows

  std::vector<std::vector<double>> to_double() const;
};

RigidityMatrix rigidity_matrix(const ContactGraph& g, const TorusPacking& p);

/// Kernel of M modulo the two translation vectors (exact path).
std::vector<VecQ> bar_flex_space(const RigidityMatrix& m);

/// Left kernel of M = equilibrium stresses; self-loop rows are zero, so
/// their coordinates come out free, as they should.
std::vector<VecQ> stress_space(const RigidityMatrix& m);

/// Searches span(basis) for a stress with every coordinate <= -1 by exact
/// LP feasibility; nullopt is an exact infeasibility verdict.
std::optional<VecQ> strictly_negative_stress(const std::vector<VecQ>& basis, int m);

enum class RigidityPath { Auto, Exact, Float };

struct RigidityReport {
  int n = 0, m = 0;
  int rank = 0;
  bool exact_path = false;
  bool bar_rigid = false;
  bool contact_count_ok = false;      // m >= 2n - 1
  bool collectively_jammed = false;
  int stress_dim = 0;
  std::vector<std::vector<double>> flex_basis;         // nontrivial flexes
  std::optional<std::vector<double>> negative_stress;  // <= -1 on every edge
  // Exact certificates (exact path only; float path leaves these empty).
  std::vector<VecQ> flex_basis_exact;
  std::optional<VecQ> negative_stress_exact;
};

/// Full jamming analysis: collectively jammed iff the bar framework is
/// infinitesimally rigid and a strictly negative equilibrium stress exists.
RigidityReport analyze(const TorusPacking& p, double tol = 1e-8,
                       RigidityPath path = RigidityPath::Auto);

/// Same, reusing an already-built contact graph.
RigidityReport analyze_graph(const ContactGraph& g, const TorusPacking& p,
                             RigidityPath path = RigidityPath::Auto);

}  // namespace toruspack
