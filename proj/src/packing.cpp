#include "toruspack/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace toruspack {

std::vector<int> ContactGraph::degrees() const {
  std::vector<int> deg(static_cast<size_t>(n), 0);
  for (const auto& e : edges) {
    deg[static_cast<size_t>(e.i)]++;
    deg[static_cast<size_t>(e.j)]++;
  }
  return deg;
}

double density(const TorusPacking& p) {
  auto report = validate(p, 1e-9);
  if (!report.valid)
    throw InvalidPackingError("density: packing has overlap " + std::to_string(report.worst_overlap));
  double r = p.radius_d();
  return p.n() * M_PI * r * r / p.lattice.area_d();
}

double shortest_vector_length(const Lattice2& l) {
  return std::sqrt(reduce(l).g1().norm_sq().to_double());
}

std::vector<PeriodicPair> periodic_pairs(const TorusPacking& p, double max_distance) {
  std::vector<PeriodicPair> out;
  if (p.n() == 0) return out;
  Lattice2 red = reduce(p.lattice);
  const Vec2Q r1 = red.g1(), r2 = red.g2();

  // A Lagrange-Gauss reduced basis has |<r1,r2>| <= |r1|^2/2, so neighbor
  // wraps in {-1,0,1} suffice; keep the wider range as a safeguard if the
  // basis is somehow still skew.
  QuadExt twice_ip = (r1.dot(r2) + r1.dot(r2)).abs();
  int range = (twice_ip > r1.norm_sq()) ? 2 : 1;

  const int n = p.n();
  std::vector<Vec2Q> cart(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) cart[static_cast<size_t>(i)] = p.cartesian(i);

  const double r1x = r1.x.to_double(), r1y = r1.y.to_double();
  const double r2x = r2.x.to_double(), r2y = r2.y.to_double();

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Vec2Q delta = cart[static_cast<size_t>(j)] - cart[static_cast<size_t>(i)];
      Vec2Q dred = red.to_lattice(delta);
      Int k1 = dred.x.round(), k2 = dred.y.round();
      QuadExt f1 = dred.x - QuadExt(Rational(k1)), f2 = dred.y - QuadExt(Rational(k2));
      double f1d = f1.to_double(), f2d = f2.to_double();
      for (int w1 = -range; w1 <= range; ++w1) {
        for (int w2 = -range; w2 <= range; ++w2) {
          if (i == j) {
            // Self-pairs: skip the null wrap, enumerate one orientation.
            if (w1 == 0 && w2 == 0) continue;
            if (w1 < 0 || (w1 == 0 && w2 < 0)) continue;
          }
          double ux = f1d + w1, uy = f2d + w2;
          double dx = ux * r1x + uy * r2x, dy = ux * r1y + uy * r2y;
          double dist = std::hypot(dx, dy);
          if (dist > max_distance) continue;
          // Exact contact vector and wrap in the original basis.
          QuadExt u = f1 + QuadExt(w1), v = f2 + QuadExt(w2);
          Vec2Q vec = r1 * u + r2 * v;
          Vec2Q worig = p.lattice.to_lattice(vec - delta);
          PeriodicPair pp;
          pp.i = i;
          pp.j = j;
          pp.w1 = static_cast<long long>(worig.x.round());
          pp.w2 = static_cast<long long>(worig.y.round());
          pp.distance = std::sqrt(vec.norm_sq().to_double());
          pp.vector = vec;
          if (i == j && (pp.w1 < 0 || (pp.w1 == 0 && pp.w2 < 0))) {
            // Canonical self-loop wrap is lexicographically positive in the
            // original basis, which need not match the reduced-basis sign.
            pp.w1 = -pp.w1;
            pp.w2 = -pp.w2;
            pp.vector = -pp.vector;
          }
          out.push_back(std::move(pp));
        }
      }
    }
  }
  return out;
}

ValidationReport validate(const TorusPacking& p, double tol) {
  ValidationReport rep;
  if (p.n() == 0) throw InvalidPackingError("empty packing");
  double big = std::numeric_limits<double>::infinity();
  auto pairs = periodic_pairs(p, big);
  double fmin = big;
  for (const auto& pp : pairs) fmin = std::min(fmin, pp.distance);
  rep.min_distance = fmin;
  rep.worst_overlap = std::max(0.0, 2 * p.radius_d() - fmin);
  rep.valid = fmin >= 2 * p.radius_d() - tol;
  if (p.exact) {
    // Exact minimum among the float-near-minimal candidates.
    std::optional<QuadExt> best;
    for (const auto& pp : pairs) {
      if (pp.distance > fmin + 1e-6) continue;
      QuadExt d2 = pp.vector.norm_sq();
      if (!best || d2 < *best) best = d2;
    }
    rep.min_distance_sq_exact = best;
  }
  return rep;
}

ContactGraph contact_graph(const TorusPacking& p, double tol) {
  auto vcheck = validate(p, std::max(tol, 1e-9));
  if (!vcheck.valid)
    throw InvalidPackingError("contact_graph: invalid packing, overlap " +
                              std::to_string(vcheck.worst_overlap));
  double r2 = 2 * p.radius_d();
  ContactGraph g;
  g.n = p.n();
  for (const auto& pp : periodic_pairs(p, r2 + tol)) {
    if (pp.distance < r2 - tol) continue;
    ContactEdge e;
    e.i = pp.i;
    e.j = pp.j;
    e.w1 = pp.w1;
    e.w2 = pp.w2;
    g.edges.push_back(e);
  }
  // Deterministic order for golden tests.
  std::sort(g.edges.begin(), g.edges.end(), [](const ContactEdge& a, const ContactEdge& b) {
    return std::tie(a.i, a.j, a.w1, a.w2) < std::tie(b.i, b.j, b.w1, b.w2);
  });
  return g;
}

namespace {

// Coset representative of (x, y) in Z^2 modulo the column lattice
// [[m00, m01], [m10, m11]].
std::pair<long long, long long> canonical_coset(long long x, long long y, long long m00,
                                                long long m10, long long m01, long long m11) {
  long long det = m00 * m11 - m01 * m10;
  // Solve M c = (x,y) over Q, then subtract M*floor(c).
  Rational c1 = Rational(m11 * x - m01 * y, det);
  Rational c2 = Rational(-m10 * x + m00 * y, det);
  Int f1 = rational_floor(c1), f2 = rational_floor(c2);
  long long a = f1.convert_to<long long>(), b = f2.convert_to<long long>();
  return {x - (m00 * a + m01 * b), y - (m10 * a + m11 * b)};
}

}  // namespace

TorusPacking build_triangular_packing(long long n1, long long n2) {
  if (n1 == 0 && n2 == 0) throw std::invalid_argument("build_triangular_packing: zero vector");
  long long n = n1 * n1 + n1 * n2 + n2 * n2;
  CycloInt z(n1, 0, n2, 0);
  CycloInt gz = CycloInt::g_delta() * z;
  TorusPacking p;
  p.lattice = Lattice2::from_cyclo(z, gz);
  p.radius = QuadExt(Rational(1, 2));
  p.exact = true;

  // Torus generators in the unit triangular basis: z = (n1, n2),
  // g_delta z = (-n2, n1 + n2).
  long long m00 = n1, m10 = n2, m01 = -n2, m11 = n1 + n2;
  std::map<std::pair<long long, long long>, bool> seen;
  std::vector<std::pair<long long, long long>> reps;
  for (long long x = 0; x < n && static_cast<long long>(reps.size()) < n; ++x)
    for (long long y = 0; y < n && static_cast<long long>(reps.size()) < n; ++y) {
      auto c = canonical_coset(x, y, m00, m10, m01, m11);
      if (!seen.emplace(c, true).second) continue;
      reps.push_back(c);
    }

  long long det = m00 * m11 - m01 * m10;
  for (auto [x, y] : reps) {
    Rational u(m11 * x - m01 * y, det);
    Rational v(-m10 * x + m00 * y, det);
    u -= Rational(rational_floor(u));
    v -= Rational(rational_floor(v));
    p.centers.emplace_back(QuadExt(u), QuadExt(v));
  }
  for (int i = 0; i < p.n(); ++i) p.labels.push_back(std::to_string(i + 1));
  return p;
}

TorusPacking remove_disk(const TorusPacking& p, int index) {
  if (p.n() < 2) throw std::invalid_argument("remove_disk: need at least two disks");
  if (index < 0 || index >= p.n()) throw std::out_of_range("remove_disk: index out of range");
  TorusPacking q = p;
  q.centers.erase(q.centers.begin() + index);
  if (!q.labels.empty()) q.labels.erase(q.labels.begin() + index);
  return q;
}

}  // namespace toruspack
