#include "toruspack/tilings.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace toruspack {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<Rational, 4> vertex_key(const Vec2Q& frac) {
  return {frac.x.a(), frac.x.b(), frac.y.a(), frac.y.b()};
}

bool lex_less(const Vec2Q& a, const Vec2Q& b) {
  if (a.x.a() != b.x.a()) return a.x.a() < b.x.a();
  if (a.x.b() != b.x.b()) return a.x.b() < b.x.b();
  if (a.y.a() != b.y.a()) return a.y.a() < b.y.a();
  return a.y.b() < b.y.b();
}

/// Canonical representative of an undirected direction: the lexicographically
/// larger of {d, -d}, so the horizontal one is (1, 0).
Vec2Q undirected_canon(const Vec2Q& d) { return lex_less(d, -d) ? -d : d; }

int find_g_power(const Vec2Q& d) {
  for (int k = 0; k < 12; ++k)
    if (Vec2Q::from_cyclo(CycloInt::g_power(k)) == d) return k;
  return -1;
}

struct Canonicalizer {
  Lattice2 period;
  std::map<std::array<Rational, 4>, int> index;
  std::vector<Vec2Q> reps;
  std::vector<CycloInt> reps_cyclo;
  bool cyclo = false;
  CycloInt t1c, t2c;

  // Returns (vertex index, integer lattice offset of the lift from the rep).
  std::pair<int, std::pair<Int, Int>> locate(const Vec2Q& lift, const CycloInt* lift_cyclo,
                                             bool allow_new) {
    Vec2Q lat = period.to_lattice(lift);
    Int f1 = lat.x.floor(), f2 = lat.y.floor();
    Vec2Q frac(lat.x - QuadExt(Rational(f1)), lat.y - QuadExt(Rational(f2)));
    auto key = vertex_key(frac);
    auto it = index.find(key);
    if (it == index.end()) {
      if (!allow_new) throw TilingError("tiling references a vertex not in the seed set");
      Vec2Q rep = lift - period.g1() * QuadExt(Rational(f1)) - period.g2() * QuadExt(Rational(f2));
      it = index.emplace(key, static_cast<int>(reps.size())).first;
      reps.push_back(rep);
      if (cyclo) {
        if (!lift_cyclo) throw TilingError("missing cyclotomic coordinate");
        long long m1 = f1.convert_to<long long>(), m2 = f2.convert_to<long long>();
        reps_cyclo.push_back(*lift_cyclo - t1c * m1 - t2c * m2);
      }
    }
    return {it->second, {f1, f2}};
  }
};

struct EdgeKey {
  int u, v;
  std::array<Rational, 4> dir;
  bool operator<(const EdgeKey& o) const {
    return std::tie(u, v, dir) < std::tie(o.u, o.v, o.dir);
  }
};

EdgeTiling assemble_impl(const std::vector<std::vector<Vec2Q>>& face_lifts,
                         const std::vector<std::vector<CycloInt>>* face_lifts_cyclo, const Vec2Q& t1,
                         const Vec2Q& t2, const CycloInt* t1c, const CycloInt* t2c,
                         const std::vector<Vec2Q>& seed_vertices,
                         const std::vector<CycloInt>* seed_cyclo) {
  EdgeTiling t;
  t.t1 = t1;
  t.t2 = t2;
  Canonicalizer canon;
  canon.period = Lattice2(t1, t2, true);
  if (t1c && t2c) {
    canon.cyclo = true;
    canon.t1c = *t1c;
    canon.t2c = *t2c;
  }
  for (size_t s = 0; s < seed_vertices.size(); ++s)
    canon.locate(seed_vertices[s], seed_cyclo ? &(*seed_cyclo)[s] : nullptr, true);

  std::map<EdgeKey, int> edge_index;
  std::set<std::pair<int, int>> used_slots;  // (edge, orientation 0/1)

  for (size_t fi = 0; fi < face_lifts.size(); ++fi) {
    const auto& poly = face_lifts[fi];
    size_t k = poly.size();
    if (k < 3) throw TilingError("face with fewer than 3 corners");
    std::vector<int> face;
    std::vector<std::pair<int, int>> sides;
    // Face must be a closed, positively oriented polygon of unit steps.
    QuadExt doubled_area(0);
    for (size_t s = 0; s < k; ++s) doubled_area += poly[s].cross(poly[(s + 1) % k]);
    if (doubled_area.sign() <= 0) throw TilingError("face is not counterclockwise");

    for (size_t s = 0; s < k; ++s) {
      const Vec2Q& p = poly[s];
      const Vec2Q& q = poly[(s + 1) % k];
      Vec2Q dir = q - p;
      if (dir.norm_sq() != QuadExt(1)) throw TilingError("tiling edge is not unit length");
      const CycloInt* pc = nullptr;
      const CycloInt* qc = nullptr;
      if (face_lifts_cyclo) {
        pc = &(*face_lifts_cyclo)[fi][s];
        qc = &(*face_lifts_cyclo)[fi][(s + 1) % k];
      }
      auto [iu, mu] = canon.locate(p, pc, !seed_vertices.empty() ? false : true);
      auto [iv, mv] = canon.locate(q, qc, !seed_vertices.empty() ? false : true);
      face.push_back(iu);
      long long w1 = (mv.first - mu.first).convert_to<long long>();
      long long w2 = (mv.second - mu.second).convert_to<long long>();

      // Canonical edge orientation.
      int cu = iu, cv = iv;
      Vec2Q cdir = dir;
      long long cw1 = w1, cw2 = w2;
      int sign = 1;
      bool flip = (cv < cu) || (cu == cv && lex_less(cdir, -cdir));
      if (flip) {
        std::swap(cu, cv);
        cdir = -cdir;
        cw1 = -cw1;
        cw2 = -cw2;
        sign = -1;
      }
      EdgeKey key{cu, cv, {cdir.x.a(), cdir.x.b(), cdir.y.a(), cdir.y.b()}};
      auto it = edge_index.find(key);
      int ei;
      if (it == edge_index.end()) {
        TilingEdge e;
        e.from = cu;
        e.to = cv;
        e.w1 = cw1;
        e.w2 = cw2;
        e.dir = cdir;
        e.power = find_g_power(cdir);
        ei = static_cast<int>(t.edges.size());
        t.edges.push_back(e);
        edge_index.emplace(key, ei);
      } else {
        ei = it->second;
        const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
        if (e.w1 != cw1 || e.w2 != cw2) throw TilingError("inconsistent edge wrap");
      }
      if (!used_slots.emplace(ei, sign > 0 ? 0 : 1).second)
        throw TilingError("edge side used by more than one face (tiling is not edge-to-edge)");
      sides.emplace_back(ei, sign);
    }
    t.faces.push_back(std::move(face));
    t.face_sides.push_back(std::move(sides));
  }

  // Every edge must border exactly two face sides, one per orientation.
  for (size_t ei = 0; ei < t.edges.size(); ++ei)
    if (!used_slots.count({static_cast<int>(ei), 0}) || !used_slots.count({static_cast<int>(ei), 1}))
      throw TilingError("edge borders fewer than two faces");

  t.vertices = canon.reps;
  if (canon.cyclo) {
    bool all_powers = true;
    for (const auto& e : t.edges) all_powers = all_powers && e.power >= 0;
    if (all_powers) {
      t.cyclotomic = true;
      t.vertices_cyclo = canon.reps_cyclo;
      t.t1_cyclo = *t1c;
      t.t2_cyclo = *t2c;
    }
  }
  return t;
}

}  // namespace

Lattice2 EdgeTiling::period() const {
  if (cyclotomic) return Lattice2::from_cyclo(t1_cyclo, t2_cyclo);
  return Lattice2(t1, t2, true);
}

std::vector<int> EdgeTiling::vertex_degrees() const {
  std::vector<int> deg(static_cast<size_t>(n()), 0);
  for (const auto& e : edges) {
    deg[static_cast<size_t>(e.from)]++;
    deg[static_cast<size_t>(e.to)]++;
  }
  return deg;
}

std::vector<Vec2Q> EdgeTiling::face_lift(int f) const {
  const auto& sides = face_sides[static_cast<size_t>(f)];
  std::vector<Vec2Q> poly;
  Vec2Q cur = vertices[static_cast<size_t>(faces[static_cast<size_t>(f)][0])];
  for (const auto& [ei, sgn] : sides) {
    poly.push_back(cur);
    const TilingEdge& e = edges[static_cast<size_t>(ei)];
    cur += (sgn > 0 ? e.dir : -e.dir);
  }
  return poly;
}

TorusPacking tiling_packing(const EdgeTiling& t) {
  TorusPacking p;
  p.lattice = t.period();
  p.radius = QuadExt(Rational(1, 2));
  p.exact = true;
  for (int i = 0; i < t.n(); ++i) {
    Vec2Q lat = p.lattice.to_lattice(t.vertices[static_cast<size_t>(i)]);
    Int f1 = lat.x.floor(), f2 = lat.y.floor();
    p.centers.emplace_back(lat.x - QuadExt(Rational(f1)), lat.y - QuadExt(Rational(f2)));
    p.labels.push_back(std::to_string(i + 1));
  }
  return p;
}

EdgeTiling assemble_tiling(const std::vector<std::vector<Vec2Q>>& face_lifts, const Vec2Q& t1,
                           const Vec2Q& t2, const std::vector<Vec2Q>& seed_vertices) {
  return assemble_impl(face_lifts, nullptr, t1, t2, nullptr, nullptr, seed_vertices, nullptr);
}

EdgeTiling assemble_cyclotomic_tiling(const std::vector<std::vector<CycloInt>>& face_lifts,
                                      const CycloInt& t1, const CycloInt& t2,
                                      const std::vector<CycloInt>& seed_vertices) {
  std::vector<std::vector<Vec2Q>> faces_q;
  for (const auto& poly : face_lifts) {
    std::vector<Vec2Q> pq;
    for (const auto& z : poly) pq.push_back(Vec2Q::from_cyclo(z));
    faces_q.push_back(std::move(pq));
  }
  std::vector<Vec2Q> seeds_q;
  for (const auto& z : seed_vertices) seeds_q.push_back(Vec2Q::from_cyclo(z));
  return assemble_impl(faces_q, &face_lifts, Vec2Q::from_cyclo(t1), Vec2Q::from_cyclo(t2), &t1, &t2,
                       seeds_q, &seed_vertices);
}

EdgeClassification classify_edges(const EdgeTiling& t) {
  if (!t.cyclotomic) throw TilingError("classify_edges requires a cyclotomic tiling");
  EdgeClassification cls;
  for (int ei = 0; ei < t.e(); ++ei) {
    int p = t.edges[static_cast<size_t>(ei)].power;
    if (p < 0) throw TilingError("edge direction is not a power of g");
    (p % 2 == 0 ? cls.lambda1_edges : cls.lambda2_edges).push_back(ei);
  }
  // Edge-adjacent triangles must carry the same sublattice class.
  std::map<int, std::vector<int>> edge_faces;
  for (int f = 0; f < t.f(); ++f)
    for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) edge_faces[ei].push_back(f);
  for (const auto& [ei, fs] : edge_faces) {
    if (fs.size() != 2) continue;
    if (t.faces[static_cast<size_t>(fs[0])].size() != 3 ||
        t.faces[static_cast<size_t>(fs[1])].size() != 3)
      continue;
    auto face_parity = [&](int f) {
      int par = -1;
      for (const auto& [e2, s2] : t.face_sides[static_cast<size_t>(f)]) {
        int p2 = t.edges[static_cast<size_t>(e2)].power % 2;
        if (par < 0) par = p2;
        if (par != p2) throw TilingError("triangle mixes sublattice classes");
      }
      return par;
    };
    if (face_parity(fs[0]) != face_parity(fs[1]))
      throw TilingError("edge-adjacent triangles in different sublattice classes");
  }
  return cls;
}

std::vector<Strip> detect_strips(const EdgeTiling& t) {
  // slot_of[(edge, orientation)] -> (face, side index)
  std::map<std::pair<int, int>, std::pair<int, int>> slot_of;
  for (int f = 0; f < t.f(); ++f)
    for (size_t k = 0; k < t.face_sides[static_cast<size_t>(f)].size(); ++k) {
      auto [ei, sgn] = t.face_sides[static_cast<size_t>(f)][k];
      slot_of[{ei, sgn > 0 ? 0 : 1}] = {f, static_cast<int>(k)};
    }

  std::set<std::pair<int, int>> visited;  // (face, exit side)
  std::vector<Strip> strips;
  for (int f0 = 0; f0 < t.f(); ++f0) {
    if (t.faces[static_cast<size_t>(f0)].size() != 4) continue;
    for (int k0 = 0; k0 < 4; ++k0) {
      if (visited.count({f0, k0})) continue;
      // Trace the chain leaving face f0 through side k0.
      int f = f0, k = k0;
      std::vector<std::pair<int, int>> chain;
      bool cyclic = false;
      for (int guard = 0; guard <= 4 * t.f(); ++guard) {
        const auto& sides = t.face_sides[static_cast<size_t>(f)];
        if (t.faces[static_cast<size_t>(f)].size() != 4) break;
        // Opposite sides must be parallel for this to be a strip link.
        const TilingEdge& eout = t.edges[static_cast<size_t>(sides[static_cast<size_t>(k)].first)];
        int kop = (k + 2) % 4;
        const TilingEdge& ein = t.edges[static_cast<size_t>(sides[static_cast<size_t>(kop)].first)];
        if (undirected_canon(eout.dir) != undirected_canon(ein.dir)) break;
        chain.emplace_back(f, k);
        auto [ei, sgn] = sides[static_cast<size_t>(k)];
        auto other = slot_of.at({ei, sgn > 0 ? 1 : 0});
        int fn = other.first;
        int kn = (other.second + 2) % static_cast<int>(t.face_sides[static_cast<size_t>(fn)].size());
        if (t.faces[static_cast<size_t>(fn)].size() != 4) break;
        f = fn;
        k = kn;
        if (f == f0 && k == k0) {
          cyclic = true;
          break;
        }
      }
      if (!cyclic) continue;
      Strip strip;
      for (auto [cf, ck] : chain) {
        visited.insert({cf, ck});
        visited.insert({cf, (ck + 2) % 4});  // the same strip traced backwards
        strip.faces.push_back(cf);
      }
      strips.push_back(std::move(strip));
    }
  }
  return strips;
}

std::vector<int> direction_classes(const EdgeTiling& t) {
  // Orbit of a direction under multiplication by e^{2 pi i /3} and -1.
  auto orbit_key = [](const Vec2Q& d) {
    Vec2Q w = omega_unit();
    Vec2Q best = d;
    Vec2Q cur = d;
    for (int j = 0; j < 3; ++j) {
      if (lex_less(cur, best)) best = cur;
      if (lex_less(-cur, best)) best = -cur;
      cur = cur.cmul(w);
    }
    return vertex_key(best);
  };

  std::map<std::array<Rational, 4>, int> class_of_key;
  std::vector<std::array<Rational, 4>> keys;
  for (const auto& e : t.edges) {
    auto k = orbit_key(e.dir);
    if (!class_of_key.count(k)) {
      class_of_key[k] = 0;
      keys.push_back(k);
    }
  }
  if (keys.size() != 2)
    throw TilingError("tiling directions do not split into exactly two rotation classes");
  std::sort(keys.begin(), keys.end());
  class_of_key[keys[0]] = 0;
  class_of_key[keys[1]] = 1;
  // For cyclotomic tilings class 0 is the even-power (Lambda_1) class; the
  // lexicographic rule above already realizes that.
  std::vector<int> cls;
  for (const auto& e : t.edges) cls.push_back(class_of_key.at(orbit_key(e.dir)));
  return cls;
}

FlexDecomposition flex_decomposition(const EdgeTiling& t) {
  FlexDecomposition dec;
  dec.edge_class = direction_classes(t);
  const int n = t.n();

  // Arcs: (neighbor, edge, sign).
  std::vector<std::vector<std::tuple<int, int, int>>> adj(static_cast<size_t>(n));
  for (int ei = 0; ei < t.e(); ++ei) {
    const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
    adj[static_cast<size_t>(e.from)].emplace_back(e.to, ei, +1);
    adj[static_cast<size_t>(e.to)].emplace_back(e.from, ei, -1);
  }

  // BFS lift accumulation: rep(v) = aL(v) + bL(v) + rep(0) - W(v) * T.
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<Vec2Q> aL(static_cast<size_t>(n)), bL(static_cast<size_t>(n));
  std::vector<std::pair<long long, long long>> W(static_cast<size_t>(n), {0, 0});
  std::vector<char> edge_in_tree(static_cast<size_t>(t.e()), 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (auto [v, ei, sgn] : adj[static_cast<size_t>(u)]) {
      if (seen[static_cast<size_t>(v)]) continue;
      const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
      Vec2Q step = sgn > 0 ? e.dir : -e.dir;
      aL[static_cast<size_t>(v)] = aL[static_cast<size_t>(u)];
      bL[static_cast<size_t>(v)] = bL[static_cast<size_t>(u)];
      (dec.edge_class[static_cast<size_t>(ei)] == 0 ? aL : bL)[static_cast<size_t>(v)] += step;
      W[static_cast<size_t>(v)] = {W[static_cast<size_t>(u)].first + sgn * e.w1,
                                   W[static_cast<size_t>(u)].second + sgn * e.w2};
      edge_in_tree[static_cast<size_t>(ei)] = 1;
      seen[static_cast<size_t>(v)] = 1;
      bfs.push(v);
    }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[static_cast<size_t>(v)]) throw TilingError("flex: tiling graph is disconnected");

  // Non-tree edges give  k1 T1A + k2 T2A = L  with k the net wrap of the
  // fundamental cycle; the fixed parts of the periods solve these.
  struct Equation {
    long long k1, k2;
    Vec2Q la, ltotal;
  };
  std::vector<Equation> eqs;
  for (int ei = 0; ei < t.e(); ++ei) {
    if (edge_in_tree[static_cast<size_t>(ei)]) continue;
    const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
    int u = e.from, v = e.to;
    Vec2Q step = e.dir;
    Equation eq;
    eq.k1 = W[static_cast<size_t>(u)].first + e.w1 - W[static_cast<size_t>(v)].first;
    eq.k2 = W[static_cast<size_t>(u)].second + e.w2 - W[static_cast<size_t>(v)].second;
    Vec2Q la = aL[static_cast<size_t>(u)] - aL[static_cast<size_t>(v)];
    Vec2Q lb = bL[static_cast<size_t>(u)] - bL[static_cast<size_t>(v)];
    (dec.edge_class[static_cast<size_t>(ei)] == 0 ? la : lb) += step;
    eq.la = la;
    eq.ltotal = la + lb;
    // Geometric consistency of the tiling itself.
    Vec2Q expect = t.t1 * QuadExt(Rational(eq.k1)) + t.t2 * QuadExt(Rational(eq.k2));
    if (!(eq.ltotal == expect)) throw TilingError("flex: inconsistent cycle in tiling");
    eqs.push_back(std::move(eq));
  }

  // Solve the 2x2 integer system for (T1A, T2A); then verify every equation.
  int first = -1, second = -1;
  for (size_t i = 0; i < eqs.size(); ++i) {
    if (eqs[i].k1 == 0 && eqs[i].k2 == 0) continue;
    if (first < 0) {
      first = static_cast<int>(i);
      continue;
    }
    long long det = eqs[static_cast<size_t>(first)].k1 * eqs[i].k2 -
                    eqs[static_cast<size_t>(first)].k2 * eqs[i].k1;
    if (det != 0) {
      second = static_cast<int>(i);
      break;
    }
  }
  if (first < 0 || second < 0)
    throw TilingError("flex: fundamental cycles do not span the torus");
  {
    const Equation &e1 = eqs[static_cast<size_t>(first)], &e2 = eqs[static_cast<size_t>(second)];
    QuadExt det = QuadExt(Rational(e1.k1 * e2.k2 - e1.k2 * e2.k1));
    QuadExt inv = det.inverse();
    // Cramer, componentwise on the vector unknowns.
    dec.t1_a = (e1.la * QuadExt(Rational(e2.k2)) - e2.la * QuadExt(Rational(e1.k2))) * inv;
    dec.t2_a = (e2.la * QuadExt(Rational(e1.k1)) - e1.la * QuadExt(Rational(e2.k1))) * inv;
  }
  dec.t1_b = t.t1 - dec.t1_a;
  dec.t2_b = t.t2 - dec.t2_a;
  for (const auto& eq : eqs) {
    Vec2Q lhs = dec.t1_a * QuadExt(Rational(eq.k1)) + dec.t2_a * QuadExt(Rational(eq.k2));
    if (!(lhs == eq.la)) throw TilingError("flex: period decomposition is inconsistent");
  }

  // Final per-vertex parts, anchored so vertex 0 keeps its position.
  dec.part_a.resize(static_cast<size_t>(n));
  dec.part_b.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    QuadExt w1(Rational(W[static_cast<size_t>(v)].first)), w2(Rational(W[static_cast<size_t>(v)].second));
    dec.part_a[static_cast<size_t>(v)] =
        t.vertices[0] + aL[static_cast<size_t>(v)] - dec.t1_a * w1 - dec.t2_a * w2;
    dec.part_b[static_cast<size_t>(v)] = bL[static_cast<size_t>(v)] - dec.t1_b * w1 - dec.t2_b * w2;
    Vec2Q total = dec.part_a[static_cast<size_t>(v)] + dec.part_b[static_cast<size_t>(v)];
    if (!(total == t.vertices[static_cast<size_t>(v)]))
      throw TilingError("flex: vertex decomposition failed to reproduce the configuration");
  }
  return dec;
}

namespace {

void require_flexible(const EdgeTiling& t) {
  if (!detect_strips(t).empty())
    throw TilingError("flex refused: tiling contains strips");
  if (!t.cyclotomic) {
    auto rep = check_theorem31_hypotheses(t);
    if (!(rep.hypotheses_hold && rep.rhombi_congruent && rep.two_direction_classes))
      throw TilingError("flex refused: rhombus-triangle hypotheses do not hold");
  }
}

std::complex<double> rot(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

FlexedConfig flex(const EdgeTiling& t, double theta) {
  require_flexible(t);
  FlexDecomposition dec = flex_decomposition(t);
  FlexedConfig cfg;
  cfg.theta = theta;
  std::complex<double> r = rot(theta);
  for (int v = 0; v < t.n(); ++v)
    cfg.positions.push_back(dec.part_a[static_cast<size_t>(v)].to_complex() +
                            r * dec.part_b[static_cast<size_t>(v)].to_complex());
  cfg.t1 = dec.t1_a.to_complex() + r * dec.t1_b.to_complex();
  cfg.t2 = dec.t2_a.to_complex() + r * dec.t2_b.to_complex();
  return cfg;
}

FlexedLattice flexed_lattice(const EdgeTiling& t, double theta) {
  FlexedConfig cfg = flex(t, theta);
  FlexedLattice out{Lattice2::from_doubles(cfg.t1.real(), cfg.t1.imag(), cfg.t2.real(), cfg.t2.imag()),
                    {}};
  out.shape = classify_shape(out.lattice);
  return out;
}

double flex_edge_length_error(const EdgeTiling& t, double theta) {
  FlexedConfig cfg = flex(t, theta);
  double worst = 0;
  for (const auto& e : t.edges) {
    std::complex<double> vec = cfg.positions[static_cast<size_t>(e.to)] +
                               double(e.w1) * cfg.t1 + double(e.w2) * cfg.t2 -
                               cfg.positions[static_cast<size_t>(e.from)];
    worst = std::max(worst, std::abs(std::abs(vec) - 1.0));
  }
  return worst;
}

double flexed_min_quad_angle(const EdgeTiling& t, double theta) {
  FlexDecomposition dec = flex_decomposition(t);
  std::complex<double> r = rot(theta);
  double best = std::numeric_limits<double>::infinity();
  for (int f = 0; f < t.f(); ++f) {
    const auto& sides = t.face_sides[static_cast<size_t>(f)];
    if (sides.size() != 4) continue;
    std::vector<std::complex<double>> vecs;
    for (const auto& [ei, sgn] : sides) {
      const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
      std::complex<double> d = e.dir.to_complex();
      if (dec.edge_class[static_cast<size_t>(ei)] == 1) d *= r;
      vecs.push_back(sgn > 0 ? d : -d);
    }
    for (size_t k = 0; k < 4; ++k) {
      std::complex<double> in = vecs[(k + 3) % 4], out = vecs[k];
      double turn = std::arg(out / in);
      best = std::min(best, kPi - turn);
    }
  }
  return best;
}

EdgeTiling flex_exact_twelfth(const EdgeTiling& t, int k) {
  if (!t.cyclotomic) throw TilingError("flex_exact_twelfth requires a cyclotomic tiling");
  require_flexible(t);
  auto flex_point = [&](const CycloInt& z) {
    CycloInt fixed(z.c(0), 0, z.c(2), 0);
    CycloInt rotating(0, z.c(1), 0, z.c(3));
    return fixed + rotating * CycloInt::g_power(k);
  };
  std::vector<std::vector<CycloInt>> faces;
  for (int f = 0; f < t.f(); ++f) {
    // Walk the face in cyclotomic lift coordinates, then flex cornerwise.
    std::vector<CycloInt> poly;
    CycloInt cur = t.vertices_cyclo[static_cast<size_t>(t.faces[static_cast<size_t>(f)][0])];
    for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) {
      poly.push_back(flex_point(cur));
      const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
      CycloInt step = CycloInt::g_power(e.power);
      cur = sgn > 0 ? cur + step : cur - step;
    }
    faces.push_back(std::move(poly));
  }
  std::vector<CycloInt> seeds;
  for (const auto& z : t.vertices_cyclo) seeds.push_back(flex_point(z));
  return assemble_cyclotomic_tiling(faces, flex_point(t.t1_cyclo), flex_point(t.t2_cyclo), seeds);
}

EdgeTiling flex_exact_unit(const EdgeTiling& t, const Vec2Q& u) {
  if (u.norm_sq() != QuadExt(1)) throw TilingError("flex_exact_unit: |u| must be exactly 1");
  require_flexible(t);
  FlexDecomposition dec = flex_decomposition(t);
  std::vector<std::vector<Vec2Q>> faces;
  for (int f = 0; f < t.f(); ++f) {
    std::vector<Vec2Q> poly;
    int v0 = t.faces[static_cast<size_t>(f)][0];
    Vec2Q pa = dec.part_a[static_cast<size_t>(v0)], pb = dec.part_b[static_cast<size_t>(v0)];
    for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) {
      poly.push_back(pa + pb.cmul(u));
      const TilingEdge& e = t.edges[static_cast<size_t>(ei)];
      Vec2Q step = sgn > 0 ? e.dir : -e.dir;
      (dec.edge_class[static_cast<size_t>(ei)] == 0 ? pa : pb) += step;
    }
    faces.push_back(std::move(poly));
  }
  std::vector<Vec2Q> seeds;
  for (int v = 0; v < t.n(); ++v)
    seeds.push_back(dec.part_a[static_cast<size_t>(v)] + dec.part_b[static_cast<size_t>(v)].cmul(u));
  Vec2Q t1f = dec.t1_a + dec.t1_b.cmul(u);
  Vec2Q t2f = dec.t2_a + dec.t2_b.cmul(u);
  return assemble_tiling(faces, t1f, t2f, seeds);
}

TilingStats stats(const EdgeTiling& t) {
  TilingStats st;
  st.v = t.n();
  st.e = t.e();
  st.f = t.f();
  for (int d : t.vertex_degrees()) st.vertices_by_degree[d]++;
  for (const auto& face : t.faces) st.faces_by_size[static_cast<int>(face.size())]++;
  if (st.v - st.e + st.f != 0) throw TilingError("stats: Euler characteristic is not zero");
  long long vsum = 0, fsum = 0;
  for (auto [d, cnt] : st.vertices_by_degree) vsum += d * cnt;
  for (auto [s, cnt] : st.faces_by_size) fsum += s * cnt;
  if (vsum != 2 * st.e || fsum != 2 * st.e)
    throw TilingError("stats: incidence counts do not match the edge count");
  st.v_bar = Rational(vsum, st.v);
  st.f_bar = Rational(fsum, st.f);
  // 1/v_bar + 1/f_bar = 1/2, exactly.
  if (Rational(st.v, vsum) + Rational(st.f, fsum) != Rational(1, 2))
    throw TilingError("stats: toroidal Euler identity fails");
  return st;
}

namespace {

Vec2Q g_delta_vec() { return Vec2Q(QuadExt(Rational(1, 2)), QuadExt(0, Rational(1, 2))); }

void check_rhombus_direction(const Vec2Q& g) {
  if (g.norm_sq() != QuadExt(1)) throw std::invalid_argument("rhombus direction must have |g| = 1");
  if (g.y.sign() <= 0) throw std::invalid_argument("rhombus direction needs Im(g) > 0");
  // Internal angle strictly between pi/3 and 2 pi/3 <=> |Re(g)| < 1/2.
  if (!(g.x < QuadExt(Rational(1, 2)) && QuadExt(Rational(-1, 2)) < g.x))
    throw std::invalid_argument("rhombus angle must lie strictly between pi/3 and 2 pi/3");
}

}  // namespace

StripTiling build_strip_tiling(long long a, long long b, long long c, const Vec2Q& g_rhombus) {
  if (a < 0 || c < 1) throw std::invalid_argument("build_strip_tiling: need a >= 0 and c >= 1");
  check_rhombus_direction(g_rhombus);

  const Vec2Q gd = g_delta_vec();
  auto vert = [&](long long i, long long j) {
    return Vec2Q(QuadExt(Rational(i)), QuadExt(0)) + gd * QuadExt(Rational(j));
  };
  Vec2Q t1(QuadExt(Rational(c)), QuadExt(0));
  Vec2Q t2 = g_rhombus + gd * QuadExt(Rational(a)) + Vec2Q(QuadExt(Rational(b)), QuadExt(0));

  std::vector<Vec2Q> seeds;
  for (long long j = 0; j <= a; ++j)
    for (long long i = 0; i < c; ++i) seeds.push_back(vert(i, j));

  std::vector<std::vector<Vec2Q>> faces;
  for (long long j = 0; j < a; ++j)
    for (long long i = 0; i < c; ++i) {
      Vec2Q z = vert(i, j);
      Vec2Q e1(QuadExt(1), QuadExt(0));
      faces.push_back({z, z + e1, z + gd});                       // up triangle
      faces.push_back({z + e1, z + e1 + gd, z + gd});             // down triangle
    }
  for (long long i = 0; i < c; ++i) {
    Vec2Q z = vert(i, a);
    Vec2Q e1(QuadExt(1), QuadExt(0));
    faces.push_back({z, z + e1, z + e1 + g_rhombus, z + g_rhombus});
  }

  StripTiling st;
  st.a = a;
  st.b = b;
  st.c = c;
  st.g_rhombus = g_rhombus;
  st.tiling = assemble_tiling(faces, t1, t2, seeds);
  st.packing = tiling_packing(st.tiling);
  return st;
}

StripTiling build_rhombus_tiling(long long u1, long long u2, long long v1, long long v2,
                                 const Vec2Q& g_rhombus) {
  check_rhombus_direction(g_rhombus);
  long long det = u1 * v2 - u2 * v1;
  if (det == 0) throw std::invalid_argument("build_rhombus_tiling: degenerate lattice");
  long long n = det < 0 ? -det : det;

  auto lift = [&](long long x, long long y) {
    return Vec2Q(QuadExt(Rational(x)), QuadExt(0)) + g_rhombus * QuadExt(Rational(y));
  };
  Vec2Q t1 = lift(u1, u2), t2 = lift(v1, v2);

  // Coset representatives of Z^2 modulo the columns (u1,u2), (v1,v2).
  std::set<std::pair<long long, long long>> seen;
  std::vector<std::pair<long long, long long>> reps;
  for (long long x = 0; x < n && static_cast<long long>(reps.size()) < n; ++x)
    for (long long y = 0; y < n && static_cast<long long>(reps.size()) < n; ++y) {
      Rational c1(v2 * x - v1 * y, det), c2(-u2 * x + u1 * y, det);
      long long f1 = rational_floor(c1).convert_to<long long>();
      long long f2 = rational_floor(c2).convert_to<long long>();
      auto rep = std::make_pair(x - (u1 * f1 + v1 * f2), y - (u2 * f1 + v2 * f2));
      if (seen.insert(rep).second) reps.push_back(rep);
    }

  std::vector<Vec2Q> seeds;
  for (auto [x, y] : reps) seeds.push_back(lift(x, y));
  std::vector<std::vector<Vec2Q>> faces;
  for (auto [x, y] : reps) {
    Vec2Q z = lift(x, y);
    Vec2Q e1(QuadExt(1), QuadExt(0));
    faces.push_back({z, z + e1, z + e1 + g_rhombus, z + g_rhombus});
  }

  StripTiling st;
  st.a = 0;
  st.b = 0;
  st.c = n;
  st.g_rhombus = g_rhombus;
  st.tiling = assemble_tiling(faces, t1, t2, seeds);
  st.packing = tiling_packing(st.tiling);
  return st;
}

EdgeTiling build_wheel_tiling() {
  auto g = [](long long k) { return CycloInt::g_power(k); };
  // Horizontal period 2 + sqrt(3) = 2 + 2g - g^3 and its g^2 rotation.
  CycloInt t1 = CycloInt(2) + g(1) * 2 - g(3);
  CycloInt t2 = g(2) * t1;

  std::vector<CycloInt> seeds;
  seeds.push_back(CycloInt(0));                       // hub
  for (int k = 0; k < 6; ++k) seeds.push_back(g(2 * k));           // hexagon
  for (int k = 0; k < 6; ++k) seeds.push_back(g(2 * k) + g(2 * k + 1));  // outer ring

  std::vector<std::vector<CycloInt>> faces;
  for (int k = 0; k < 6; ++k) {
    CycloInt h = g(2 * k), hn = g(2 * k + 2);
    CycloInt o = h + g(2 * k + 1), on = hn + g(2 * k + 1);
    faces.push_back({CycloInt(0), h, hn});  // hub triangle
    faces.push_back({h, o, on, hn});        // square
    faces.push_back({hn, on, hn + g(2 * k + 3)});  // ring triangle
  }
  // The two gap triangles between three adjacent wheels.
  faces.push_back({g(0) + g(1), t1 + g(4) + g(5), g(2) + g(1)});
  faces.push_back({t1 + g(4) + g(3), t1 + g(2) + g(3), t2 + g(0) + g(11)});

  return assemble_cyclotomic_tiling(faces, t1, t2, seeds);
}

std::optional<StripTorusWitness> strip_on_triangular_torus(long long a, long long b, long long c,
                                                           long long bound) {
  if (a < 0 || c < 1) throw std::invalid_argument("strip_on_triangular_torus: need a >= 0, c >= 1");
  // All-nonnegative pairs first so the small paper-style witnesses win ties.
  std::vector<std::pair<long long, long long>> pairs;
  for (long long x = 0; x <= bound; ++x)
    for (long long y = 0; y <= bound; ++y) pairs.emplace_back(x, y);
  for (long long x = -bound; x <= bound; ++x)
    for (long long y = -bound; y <= bound; ++y)
      if (x < 0 || y < 0) pairs.emplace_back(x, y);

  const Vec2Q gd = g_delta_vec();
  const Vec2Q gdinv(QuadExt(Rational(1, 2)), QuadExt(0, Rational(-1, 2)));
  for (auto [n1, n2] : pairs) {
    long long N = n1 * n1 + n1 * n2 + n2 * n2;
    if (N <= 0) continue;
    // Admissible angle needs Im(g) > sqrt(3)/2, i.e. N (a+1) < c;
    // |g| <= 1 needs Im(g) <= 1, i.e. 2N + a sqrt(3) N >= c sqrt(3).
    if (N * (a + 1) >= c) continue;
    if (QuadExt(Rational(2 * N), Rational(a * N - c)).sign() < 0) continue;
    for (auto [n3, n4] : pairs) {
      if (n1 * n4 - n2 * n3 != 1) continue;
      Vec2Q mix = Vec2Q(QuadExt(Rational(n1 * n3 + n2 * n4)), QuadExt(0)) +
                  gd * QuadExt(Rational(n1 * n4)) + gdinv * QuadExt(Rational(n2 * n3));
      Vec2Q gvec = mix * QuadExt(Rational(c, N)) - gd * QuadExt(Rational(a)) -
                   Vec2Q(QuadExt(Rational(b)), QuadExt(0));
      if (gvec.norm_sq() != QuadExt(1)) continue;
      if (gvec.y.sign() <= 0) continue;
      if (!(gvec.x < QuadExt(Rational(1, 2)) && QuadExt(Rational(-1, 2)) < gvec.x)) continue;
      return StripTorusWitness{n1, n2, n3, n4, gvec};
    }
  }
  return std::nullopt;
}

Rational strip_density(long long a, long long c, long long n1, long long n2) {
  long long N = n1 * n1 + n1 * n2 + n2 * n2;
  if (a < 0 || c < 1 || N <= 0) throw std::invalid_argument("strip_density: bad parameters");
  Rational ratio((a + 1) * N, c);
  long long n = c * (a + 1);
  if (!(ratio < Rational(n, n + 1)))
    throw TheoremViolation("strip density ratio is not below n/(n+1)");
  return ratio;
}

std::vector<Vec2Q> tour_directions(const EdgeTiling& t) {
  for (const auto& face : t.faces)
    if (face.size() != 4) throw TilingError("tours require an all-rhombi tiling");
  std::vector<Vec2Q> dirs;
  for (const auto& e : t.edges) {
    Vec2Q c = undirected_canon(e.dir);
    bool known = false;
    for (const auto& d : dirs) known = known || d == c;
    if (!known) dirs.push_back(c);
  }
  if (dirs.size() != 2) throw TilingError("tours require exactly two edge directions");
  std::sort(dirs.begin(), dirs.end(), lex_less);
  // Horizontal direction first when present.
  Vec2Q horizontal(QuadExt(1), QuadExt(0));
  if (dirs[1] == horizontal) std::swap(dirs[0], dirs[1]);
  return dirs;
}

std::vector<int> tour(const EdgeTiling& t, int direction_index) {
  auto dirs = tour_directions(t);
  if (direction_index < 0 || direction_index >= static_cast<int>(dirs.size()))
    throw std::out_of_range("tour: bad direction index");
  const Vec2Q d = dirs[static_cast<size_t>(direction_index)];

  std::vector<int> next(static_cast<size_t>(t.n()), -1);
  for (const auto& e : t.edges) {
    if (e.dir == d) {
      if (next[static_cast<size_t>(e.from)] >= 0) throw TilingError("tour: ambiguous step");
      next[static_cast<size_t>(e.from)] = e.to;
    } else if (e.dir == -d) {
      if (next[static_cast<size_t>(e.to)] >= 0) throw TilingError("tour: ambiguous step");
      next[static_cast<size_t>(e.to)] = e.from;
    }
  }
  std::vector<int> cycle;
  int v = 0;
  do {
    if (v < 0) throw TilingError("tour: missing step");
    cycle.push_back(v);
    v = next[static_cast<size_t>(v)];
  } while (v != 0 && static_cast<int>(cycle.size()) <= t.n());
  if (v != 0) throw TilingError("tour: walk failed to close");
  return cycle;
}

bool all_vertices_tour(const EdgeTiling& t) {
  return static_cast<int>(tour(t, 0).size()) == t.n() &&
         static_cast<int>(tour(t, 1).size()) == t.n();
}

namespace {

// cos of the interior angle at corner 0 of a rhombus face, exact.
QuadExt rhombus_cos(const EdgeTiling& t, int f) {
  const auto& sides = t.face_sides[static_cast<size_t>(f)];
  const TilingEdge& e0 = t.edges[static_cast<size_t>(sides[0].first)];
  const TilingEdge& e3 = t.edges[static_cast<size_t>(sides[3].first)];
  Vec2Q u = sides[0].second > 0 ? e0.dir : -e0.dir;
  Vec2Q w = sides[3].second > 0 ? -e3.dir : e3.dir;  // outgoing along side 3 reversed
  return u.dot(w);
}

}  // namespace

EdgeTiling complete(const EdgeTiling& t) {
  const QuadExt half(Rational(1, 2)), neg_half(Rational(-1, 2));
  bool any = false;
  std::vector<std::vector<Vec2Q>> faces;
  std::vector<std::vector<CycloInt>> faces_cyclo;
  for (int f = 0; f < t.f(); ++f) {
    auto poly = t.face_lift(f);
    std::vector<CycloInt> polyc;
    if (t.cyclotomic) {
      CycloInt cur = t.vertices_cyclo[static_cast<size_t>(t.faces[static_cast<size_t>(f)][0])];
      for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) {
        polyc.push_back(cur);
        CycloInt step = CycloInt::g_power(t.edges[static_cast<size_t>(ei)].power);
        cur = sgn > 0 ? cur + step : cur - step;
      }
    }
    if (poly.size() == 4) {
      QuadExt c = rhombus_cos(t, f);
      if (c == half) {
        // pi/3 at corners 0 and 2: split along the unit diagonal 1-3.
        any = true;
        faces.push_back({poly[0], poly[1], poly[3]});
        faces.push_back({poly[1], poly[2], poly[3]});
        if (t.cyclotomic) {
          faces_cyclo.push_back({polyc[0], polyc[1], polyc[3]});
          faces_cyclo.push_back({polyc[1], polyc[2], polyc[3]});
        }
        continue;
      }
      if (c == neg_half) {
        // 2 pi/3 at corner 0: the unit diagonal is 0-2.
        any = true;
        faces.push_back({poly[0], poly[1], poly[2]});
        faces.push_back({poly[0], poly[2], poly[3]});
        if (t.cyclotomic) {
          faces_cyclo.push_back({polyc[0], polyc[1], polyc[2]});
          faces_cyclo.push_back({polyc[0], polyc[2], polyc[3]});
        }
        continue;
      }
    }
    faces.push_back(poly);
    if (t.cyclotomic) faces_cyclo.push_back(polyc);
  }
  if (!any) return t;
  if (t.cyclotomic)
    return assemble_cyclotomic_tiling(faces_cyclo, t.t1_cyclo, t.t2_cyclo, t.vertices_cyclo);
  std::vector<Vec2Q> seeds = t.vertices;
  return assemble_tiling(faces, t.t1, t.t2, seeds);
}

Theorem31Report check_theorem31_hypotheses(const EdgeTiling& t) {
  Theorem31Report rep;
  bool shapes_ok = true;
  for (const auto& face : t.faces)
    if (face.size() != 3 && face.size() != 4) shapes_ok = false;
  if (!shapes_ok) return rep;

  rep.completed = true;
  const QuadExt half(Rational(1, 2));
  for (int f = 0; f < t.f(); ++f) {
    if (t.faces[static_cast<size_t>(f)].size() != 4) continue;
    if (rhombus_cos(t, f).abs() == half) rep.completed = false;
  }

  // Degree condition on vertices adjacent to a triangle.
  std::vector<char> near_triangle(static_cast<size_t>(t.n()), 0);
  for (int f = 0; f < t.f(); ++f)
    if (t.faces[static_cast<size_t>(f)].size() == 3)
      for (int v : t.faces[static_cast<size_t>(f)]) near_triangle[static_cast<size_t>(v)] = 1;
  rep.degrees_ok = true;
  auto degs = t.vertex_degrees();
  for (int v = 0; v < t.n(); ++v)
    if (near_triangle[static_cast<size_t>(v)] &&
        degs[static_cast<size_t>(v)] != 5 && degs[static_cast<size_t>(v)] != 6)
      rep.degrees_ok = false;

  rep.no_strips = detect_strips(t).empty();

  // Conclusion signature: congruent translated rhombi, two direction classes.
  rep.rhombi_congruent = true;
  std::optional<std::set<std::array<Rational, 4>>> rhombus_dirs;
  for (int f = 0; f < t.f(); ++f) {
    if (t.faces[static_cast<size_t>(f)].size() != 4) continue;
    std::set<std::array<Rational, 4>> dirs;
    for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) {
      Vec2Q c = undirected_canon(t.edges[static_cast<size_t>(ei)].dir);
      dirs.insert(vertex_key(c));
    }
    if (!rhombus_dirs) rhombus_dirs = dirs;
    if (*rhombus_dirs != dirs) rep.rhombi_congruent = false;
  }

  std::vector<int> classes;
  try {
    classes = direction_classes(t);
    rep.two_direction_classes = true;
  } catch (const TilingError&) {
    rep.two_direction_classes = false;
  }

  rep.hypotheses_hold = rep.completed && rep.degrees_ok && rep.no_strips;

  // Edge-connected triangle components and their direction class.
  if (rep.two_direction_classes) {
    std::map<int, std::vector<int>> edge_faces;
    for (int f = 0; f < t.f(); ++f)
      for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) edge_faces[ei].push_back(f);
    std::vector<int> comp(static_cast<size_t>(t.f()), -1);
    int ncomp = 0;
    for (int f0 = 0; f0 < t.f(); ++f0) {
      if (t.faces[static_cast<size_t>(f0)].size() != 3 || comp[static_cast<size_t>(f0)] >= 0) continue;
      std::queue<int> q;
      q.push(f0);
      comp[static_cast<size_t>(f0)] = ncomp;
      TriangleComponent tc;
      while (!q.empty()) {
        int f = q.front();
        q.pop();
        tc.faces.push_back(f);
        for (const auto& [ei, sgn] : t.face_sides[static_cast<size_t>(f)]) {
          tc.direction_class = classes[static_cast<size_t>(ei)];
          for (int f2 : edge_faces[ei]) {
            if (f2 == f || t.faces[static_cast<size_t>(f2)].size() != 3) continue;
            if (comp[static_cast<size_t>(f2)] >= 0) continue;
            comp[static_cast<size_t>(f2)] = ncomp;
            q.push(f2);
          }
        }
      }
      std::sort(tc.faces.begin(), tc.faces.end());
      rep.triangle_components.push_back(std::move(tc));
      ++ncomp;
    }
  }
  return rep;
}

SquareTriangleCensus square_triangle_census(long long a, long long b) {
  if (a < 1 || b < 1) throw std::invalid_argument("census: need a, b >= 1");
  SquareTriangleCensus c;
  c.a = a;
  c.b = b;
  c.s = QuadExt(Rational(a), Rational(b));
  c.f3 = 8 * a * b;
  c.f4 = a * a + 3 * b * b;
  c.ratio = static_cast<double>(c.f4) / static_cast<double>(c.f3);
  // f4/f3 > sqrt(3)/4  <=>  4 f4 - f3 sqrt(3) > 0, decided exactly.
  if (QuadExt(Rational(4 * c.f4), Rational(-c.f3)).sign() <= 0)
    throw TheoremViolation("census ratio fell below sqrt(3)/4");
  return c;
}

}  // namespace toruspack
