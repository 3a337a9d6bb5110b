#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "toruspack/packing.hpp"

namespace toruspack {

struct TilingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a statement the source theorems guarantee fails; it signals a
/// bug in the caller or in this library, never a data error.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Directed edge of a torus tiling. Geometrically
///   pos[to] + w1 t1 + w2 t2 - pos[from] = dir,
/// where dir is a unit vector; power is its exponent when dir is a power of
/// g = e^{i pi/6}, else -1.
struct TilingEdge {
  int from = 0, to = 0;
  long long w1 = 0, w2 = 0;
  Vec2Q dir;
  int power = -1;
};

/// Edge-to-edge tiling of a torus by unit-edge faces, stored face-complete.
/// face_sides[f][k] = (edge index, +-1) resolves side k of face f to an edge
/// record and its traversal orientation.
struct EdgeTiling {
  std::vector<Vec2Q> vertices;  // lift representatives
  Vec2Q t1, t2;                 // period generators
  std::vector<TilingEdge> edges;
  std::vector<std::vector<int>> faces;  // ccw vertex cycles
  std::vector<std::vector<std::pair<int, int>>> face_sides;

  bool cyclotomic = false;  // all vertices in Z[g], all edges powers of g
  std::vector<CycloInt> vertices_cyclo;
  CycloInt t1_cyclo, t2_cyclo;

  int n() const { return static_cast<int>(vertices.size()); }
  int e() const { return static_cast<int>(edges.size()); }
  int f() const { return static_cast<int>(faces.size()); }

  Lattice2 period() const;
  std::vector<int> vertex_degrees() const;  // self-loops count twice
  /// Lift positions of the corners of face f (closed ccw polygon).
  std::vector<Vec2Q> face_lift(int f) const;
};

/// Disks of radius 1/2 at the tiling vertices.
TorusPacking tiling_packing(const EdgeTiling& t);

/// Builds a tiling from faces given as lift polygons. Consecutive corners
/// must differ by unit vectors; vertices are identified modulo the period
/// lattice. seed_vertices (optional) pins the vertex numbering.
EdgeTiling assemble_tiling(const std::vector<std::vector<Vec2Q>>& face_lifts, const Vec2Q& t1,
                           const Vec2Q& t2, const std::vector<Vec2Q>& seed_vertices = {});

/// Cyclotomic variant; keeps exact Z[g] coordinates alongside.
EdgeTiling assemble_cyclotomic_tiling(const std::vector<std::vector<CycloInt>>& face_lifts,
                                      const CycloInt& t1, const CycloInt& t2,
                                      const std::vector<CycloInt>& seed_vertices = {});

// ---------------------------------------------------------------------------
// Square/triangle sublattice structure (conductor-12 tilings).

struct EdgeClassification {
  std::vector<int> lambda1_edges;  // even powers of g
  std::vector<int> lambda2_edges;  // odd powers of g
};

/// Splits edges between the sublattices Lambda(1, g^2) and Lambda(g, g^3) by
/// direction parity and validates that edge-adjacent triangles agree.
EdgeClassification classify_edges(const EdgeTiling& t);

// ---------------------------------------------------------------------------
// Strips.

struct Strip {
  std::vector<int> faces;  // cyclic chain of quad faces
};

/// Maximal cyclic chains of quadrilaterals glued along opposite edges.
std::vector<Strip> detect_strips(const EdgeTiling& t);

// ---------------------------------------------------------------------------
// The one-parameter rotation flex.

/// Splits the undirected edge directions into the two rotation classes
/// (orbits under multiplication by e^{2 pi i/3} and -1). Class 0 stays
/// fixed under the flex; class 1 rotates. Throws TilingError when the
/// directions do not fall into exactly two classes.
std::vector<int> direction_classes(const EdgeTiling& t);

/// Exact split of every vertex and both periods into fixed + rotating parts,
/// computed by BFS from vertex 0 with cycle-consistency checks.
struct FlexDecomposition {
  std::vector<int> edge_class;        // per edge: 0 fixed, 1 rotating
  std::vector<Vec2Q> part_a, part_b;  // per vertex; rep = a + b
  Vec2Q t1_a, t1_b, t2_a, t2_b;
};
FlexDecomposition flex_decomposition(const EdgeTiling& t);

struct FlexedConfig {
  double theta = 0;
  std::vector<std::complex<double>> positions;
  std::complex<double> t1, t2;
};

/// Rotates the class-1 parts by e^{i theta}; theta > 0 turns them
/// counterclockwise while class 0 stays put. Requires no strips and a
/// connected tiling.
FlexedConfig flex(const EdgeTiling& t, double theta);

/// Exact flex by theta = k pi/6 on a cyclotomic tiling (stays cyclotomic).
EdgeTiling flex_exact_twelfth(const EdgeTiling& t, int k);

/// Exact flex by an arbitrary exact unit vector (|u| = 1 in Q(sqrt(3))^2).
EdgeTiling flex_exact_unit(const EdgeTiling& t, const Vec2Q& u);

struct FlexedLattice {
  Lattice2 lattice;
  LatticeShape shape;
};
/// Period lattice of the flexed configuration plus its shape.
FlexedLattice flexed_lattice(const EdgeTiling& t, double theta);

/// Smallest interior corner angle over all quadrilateral faces of the
/// flexed tiling (radians). The Fig-style square collapse is tracked by
/// root-finding this against pi/3.
double flexed_min_quad_angle(const EdgeTiling& t, double theta);

/// Largest deviation |(length of flexed edge) - 1| measured from the flexed
/// vertex positions and periods (not from the rotated directions), so it
/// genuinely checks decomposition consistency.
double flex_edge_length_error(const EdgeTiling& t, double theta);

// ---------------------------------------------------------------------------
// Counting.

struct TilingStats {
  std::map<int, long long> vertices_by_degree;
  std::map<int, long long> faces_by_size;
  long long v = 0, e = 0, f = 0;
  Rational v_bar, f_bar;
};

/// Counts plus the exact toroidal Euler identity 1/v_bar + 1/f_bar = 1/2;
/// violation throws TilingError (malformed tiling).
TilingStats stats(const EdgeTiling& t);

// ---------------------------------------------------------------------------
// Strip tilings (rhombus strip + triangle layers).

struct StripTiling {
  EdgeTiling tiling;
  TorusPacking packing;
  long long a = 0, b = 0, c = 1;
  Vec2Q g_rhombus;
  long long n() const { return c * (a + 1); }
};

/// Torus lattice Lambda(c, g + a g_delta + b); one cyclic strip of c rhombi
/// with rhombus edge g, plus a layers of triangles. Requires
/// Im(g) > 0, |g| = 1 and rhombus angle strictly inside (pi/3, 2 pi/3).
StripTiling build_strip_tiling(long long a, long long b, long long c, const Vec2Q& g_rhombus);

/// General all-rhombi torus tiling: vertex set Z + Z g modulo the lattice
/// spanned by u1 + u2 g and v1 + v2 g.
StripTiling build_rhombus_tiling(long long u1, long long u2, long long v1, long long v2,
                                 const Vec2Q& g_rhombus);

/// The 13-vertex periodic square-triangle tiling on a triangular torus
/// (hexagonal wheels of six squares and twelve triangles sharing their
/// outer vertices; f3 = 14, f4 = 6).
EdgeTiling build_wheel_tiling();

struct StripTorusWitness {
  long long n1, n2, n3, n4;
  Vec2Q g;  // exact unit rhombus direction
};

/// Searches |n_i| <= bound for the integer data placing the (a, b, c) strip
/// tiling on a triangular torus: determinant one, |g| = 1 exactly, rhombus
/// angle admissible.
std::optional<StripTorusWitness> strip_on_triangular_torus(long long a, long long b, long long c,
                                                           long long bound = 32);

/// Exact density ratio delta/delta_triangular = (a+1)(n1^2+n1n2+n2^2)/c for
/// a realized triangular-torus strip packing; asserts the ratio is below
/// n/(n+1) (TheoremViolation otherwise).
Rational strip_density(long long a, long long c, long long n1, long long n2);

// ---------------------------------------------------------------------------
// Tours (all-rhombi tilings).

/// The two undirected edge directions of an all-rhombi tiling, sorted;
/// index 0 is horizontal when (1,0) occurs. Throws TilingError if the
/// tiling has more than two directions or a non-quad face.
std::vector<Vec2Q> tour_directions(const EdgeTiling& t);

/// Vertex cycle traced from vertex 0 stepping along the given direction.
std::vector<int> tour(const EdgeTiling& t, int direction_index);

/// Both tours visit every vertex (the Theorem-4.3 criterion).
bool all_vertices_tour(const EdgeTiling& t);

// ---------------------------------------------------------------------------
// Completion and the rhombus-triangle hypotheses.

/// Splits every rhombus with interior angle exactly pi/3 or 2 pi/3 into two
/// unit triangles; idempotent.
EdgeTiling complete(const EdgeTiling& t);

struct TriangleComponent {
  std::vector<int> faces;
  int direction_class = 0;
};

struct Theorem31Report {
  bool completed = false;        // no pi/3 or 2pi/3 rhombi left
  bool degrees_ok = false;       // vertices adjacent to a triangle have degree 5 or 6
  bool no_strips = false;
  bool rhombi_congruent = false;
  bool two_direction_classes = false;
  bool hypotheses_hold = false;
  std::vector<TriangleComponent> triangle_components;
};

Theorem31Report check_theorem31_hypotheses(const EdgeTiling& t);

// ---------------------------------------------------------------------------
// Square-triangle census on a square torus.

struct SquareTriangleCensus {
  long long a = 0, b = 0;
  QuadExt s;       // period side a + b sqrt(3)
  long long f3 = 0, f4 = 0;
  double ratio = 0;  // f4 / f3
};

/// f3 = 8ab, f4 = a^2 + 3b^2; asserts f4/f3 > sqrt(3)/4 by exact sign.
SquareTriangleCensus square_triangle_census(long long a, long long b);

}  // namespace toruspack
