#include "toruspack/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <random>
#include <thread>

namespace toruspack {

namespace {

// ---------------------------------------------------------------------------
// Dense floating simplex: maximize c.x s.t. A x <= b, x >= 0, with b >= 0.

struct FloatLp {
  int m = 0, n = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b, c;

  // Returns the optimal x, or nullopt when the iteration limit trips.
  std::optional<std::vector<double>> solve() const {
    const double eps = 1e-11;
    int nn = n;
    std::vector<int> basic(static_cast<size_t>(m)), nonbasic(static_cast<size_t>(nn));
    for (int j = 0; j < nn; ++j) nonbasic[static_cast<size_t>(j)] = j;
    for (int i = 0; i < m; ++i) basic[static_cast<size_t>(i)] = nn + i;
    auto T = a;
    auto rhs = b;
    auto obj = c;

    for (long iter = 0;; ++iter) {
      if (iter > 200L * (m + nn)) return std::nullopt;
      // Bland's rule keeps the float dictionary from cycling.
      int s = -1;
      for (int j = 0; j < nn; ++j)
        if (obj[static_cast<size_t>(j)] > eps &&
            (s < 0 || nonbasic[static_cast<size_t>(j)] < nonbasic[static_cast<size_t>(s)]))
          s = j;
      if (s < 0) break;
      int r = -1;
      double best = 0;
      for (int i = 0; i < m; ++i) {
        double coef = T[static_cast<size_t>(i)][static_cast<size_t>(s)];
        if (coef < eps) continue;
        double ratio = rhs[static_cast<size_t>(i)] / coef;
        if (r < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 &&
             basic[static_cast<size_t>(i)] < basic[static_cast<size_t>(r)])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return std::nullopt;  // unbounded: malformed input
      // Pivot.
      double inv = 1.0 / T[static_cast<size_t>(r)][static_cast<size_t>(s)];
      for (int j = 0; j < nn; ++j)
        if (j != s) T[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
      rhs[static_cast<size_t>(r)] *= inv;
      T[static_cast<size_t>(r)][static_cast<size_t>(s)] = inv;
      for (int i = 0; i < m; ++i) {
        if (i == r) continue;
        double f = T[static_cast<size_t>(i)][static_cast<size_t>(s)];
        if (f == 0) continue;
        for (int j = 0; j < nn; ++j)
          if (j != s)
            T[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                f * T[static_cast<size_t>(r)][static_cast<size_t>(j)];
        rhs[static_cast<size_t>(i)] -= f * rhs[static_cast<size_t>(r)];
        rhs[static_cast<size_t>(i)] = std::max(rhs[static_cast<size_t>(i)], 0.0);
        T[static_cast<size_t>(i)][static_cast<size_t>(s)] = -f * inv;
      }
      double g = obj[static_cast<size_t>(s)];
      if (g != 0) {
        for (int j = 0; j < nn; ++j)
          if (j != s)
            obj[static_cast<size_t>(j)] -= g * T[static_cast<size_t>(r)][static_cast<size_t>(j)];
        obj[static_cast<size_t>(s)] = -g * inv;
      }
      std::swap(basic[static_cast<size_t>(r)], nonbasic[static_cast<size_t>(s)]);
    }
    std::vector<double> x(static_cast<size_t>(nn), 0.0);
    for (int i = 0; i < m; ++i)
      if (basic[static_cast<size_t>(i)] < nn)
        x[static_cast<size_t>(basic[static_cast<size_t>(i)])] = rhs[static_cast<size_t>(i)];
    return x;
  }
};

// ---------------------------------------------------------------------------
// Floating mirror of the packing for the optimization loop.

struct FloatState {
  int n = 0;
  double g1x, g1y, g2x, g2y;      // original basis
  double r1x, r1y, r2x, r2y;      // reduced basis
  double u11, u12, u21, u22;      // reduced coords of the original basis
  std::vector<double> u, v;       // centers, original lattice coords in [0,1)
  double radius = 0;

  static FloatState from(const TorusPacking& p) {
    FloatState s;
    s.n = p.n();
    s.g1x = p.lattice.g1().x.to_double();
    s.g1y = p.lattice.g1().y.to_double();
    s.g2x = p.lattice.g2().x.to_double();
    s.g2y = p.lattice.g2().y.to_double();
    Lattice2 red = reduce(p.lattice);
    s.r1x = red.g1().x.to_double();
    s.r1y = red.g1().y.to_double();
    s.r2x = red.g2().x.to_double();
    s.r2y = red.g2().y.to_double();
    double det = s.r1x * s.r2y - s.r1y * s.r2x;
    // Columns: original generators expressed in the reduced basis.
    s.u11 = (s.g1x * s.r2y - s.g1y * s.r2x) / det;
    s.u21 = (s.r1x * s.g1y - s.r1y * s.g1x) / det;
    s.u12 = (s.g2x * s.r2y - s.g2y * s.r2x) / det;
    s.u22 = (s.r1x * s.g2y - s.r1y * s.g2x) / det;
    for (int i = 0; i < s.n; ++i) {
      double uu = p.centers[static_cast<size_t>(i)].x.to_double();
      double vv = p.centers[static_cast<size_t>(i)].y.to_double();
      s.u.push_back(uu - std::floor(uu));
      s.v.push_back(vv - std::floor(vv));
    }
    s.radius = p.radius_d();
    return s;
  }

  struct Pair {
    int i, j;
    double dist;
    double nx, ny;  // unit contact direction (from i to j)
  };

  // All periodic pairs with distance <= cutoff (cutoff < 0: all pairs).
  std::vector<Pair> pairs(double cutoff) const {
    std::vector<Pair> out;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double du = u[static_cast<size_t>(j)] - u[static_cast<size_t>(i)];
        double dv = v[static_cast<size_t>(j)] - v[static_cast<size_t>(i)];
        // Reduced-basis coordinates of the difference.
        double a = u11 * du + u12 * dv;
        double b = u21 * du + u22 * dv;
        double ka = std::floor(a + 0.5), kb = std::floor(b + 0.5);
        for (int w1 = -1; w1 <= 1; ++w1)
          for (int w2 = -1; w2 <= 1; ++w2) {
            double fa = a - ka + w1, fb = b - kb + w2;
            if (i == j && fa == 0 && fb == 0) continue;
            if (i == j && (fa < 0 || (fa == 0 && fb < 0))) continue;
            double dx = fa * r1x + fb * r2x, dy = fa * r1y + fb * r2y;
            double d = std::hypot(dx, dy);
            if (cutoff >= 0 && d > cutoff) continue;
            if (d == 0) continue;
            out.push_back({i, j, d, dx / d, dy / d});
          }
      }
    return out;
  }

  double min_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pairs(-1)) best = std::min(best, p.dist);
    return best;
  }

  TorusPacking to_packing(const Lattice2& lattice) const {
    TorusPacking p;
    p.lattice = lattice;
    p.exact = false;
    p.radius = QuadExt(rational_from_double(radius));
    for (int i = 0; i < n; ++i) {
      p.centers.emplace_back(QuadExt(rational_from_double(u[static_cast<size_t>(i)])),
                             QuadExt(rational_from_double(v[static_cast<size_t>(i)])));
      p.labels.push_back(std::to_string(i + 1));
    }
    return p;
  }
};

}  // namespace

TorusPacking random_packing(int n, const Lattice2& lattice, unsigned long long seed) {
  if (n < 1) throw std::invalid_argument("random_packing: n >= 1");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  TorusPacking p;
  p.lattice = lattice;
  p.exact = false;
  for (int i = 0; i < n; ++i) {
    double uu = unit(), vv = unit();
    p.centers.emplace_back(QuadExt(rational_from_double(uu)), QuadExt(rational_from_double(vv)));
    p.labels.push_back(std::to_string(i + 1));
  }
  FloatState s = FloatState::from(p);
  s.radius = 0;
  double md = s.min_distance();
  p.radius = QuadExt(rational_from_double(md / 2));
  return p;
}

ImproveResult improve(const TorusPacking& p0, const OptimizerConfig& cfg) {
  if (cfg.max_iters <= 0 || cfg.step_cap <= 0 || cfg.convergence_tol <= 0)
    throw std::invalid_argument("improve: config values must be positive");
  ImproveResult res;
  FloatState s = FloatState::from(p0);
  const double area = p0.lattice.area_d();
  bool moved = false;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    res.iterations = iter + 1;
    double r = s.radius;
    double cap = cfg.step_cap * r;
    auto near = s.pairs(2 * r * (1 + cfg.activation));

    // Variables: shifted displacements x_k = dp_k + cap (2n of them), then dr.
    FloatLp lp;
    lp.n = 2 * s.n + 1;
    for (const auto& pr : near) {
      std::vector<double> row(static_cast<size_t>(lp.n), 0.0);
      if (pr.i != pr.j) {
        row[static_cast<size_t>(2 * pr.j)] += pr.nx;
        row[static_cast<size_t>(2 * pr.j + 1)] += pr.ny;
        row[static_cast<size_t>(2 * pr.i)] -= pr.nx;
        row[static_cast<size_t>(2 * pr.i + 1)] -= pr.ny;
      }
      row[static_cast<size_t>(2 * s.n)] = 2.0;
      lp.a.push_back(std::move(row));
      lp.b.push_back(std::max(0.0, pr.dist - 2 * r));
    }
    for (int k = 0; k < 2 * s.n; ++k) {
      std::vector<double> row(static_cast<size_t>(lp.n), 0.0);
      row[static_cast<size_t>(k)] = 1.0;
      lp.a.push_back(std::move(row));
      lp.b.push_back(2 * cap);
    }
    lp.m = static_cast<int>(lp.a.size());
    lp.c.assign(static_cast<size_t>(lp.n), 0.0);
    lp.c.back() = 1.0;

    auto sol = lp.solve();
    if (!sol) {
      res.degenerate = true;
      break;
    }
    double dr = sol->back();

    // Apply with halving until the safeguarded radius does not regress.
    double scale = 1.0;
    bool accepted = false;
    for (int attempt = 0; attempt < 8 && !accepted; ++attempt, scale *= 0.5) {
      FloatState cand = s;
      for (int i = 0; i < s.n; ++i) {
        double dx = ((*sol)[static_cast<size_t>(2 * i)] - cap) * scale;
        double dy = ((*sol)[static_cast<size_t>(2 * i + 1)] - cap) * scale;
        // Cartesian displacement back to lattice coordinates.
        double det = s.g1x * s.g2y - s.g1y * s.g2x;
        double du = (dx * s.g2y - dy * s.g2x) / det;
        double dv = (s.g1x * dy - s.g1y * dx) / det;
        cand.u[static_cast<size_t>(i)] += du;
        cand.v[static_cast<size_t>(i)] += dv;
        cand.u[static_cast<size_t>(i)] -= std::floor(cand.u[static_cast<size_t>(i)]);
        cand.v[static_cast<size_t>(i)] -= std::floor(cand.v[static_cast<size_t>(i)]);
      }
      double md = cand.min_distance();
      double rnew = std::min(r + dr * scale, md / 2);
      if (rnew >= r) {
        cand.radius = rnew;
        s = cand;
        accepted = true;
        if (rnew > r) moved = true;
      }
    }
    if (!accepted) {
      res.degenerate = true;
      break;
    }
    if (s.radius - r < cfg.convergence_tol) {
      res.converged = true;
      break;
    }
  }

  if (!moved) {
    // Nothing changed; hand the input back untouched (it may be exact).
    res.packing = p0;
  } else {
    res.packing = s.to_packing(p0.lattice);
  }
  double r = res.packing.radius_d();
  res.density = res.packing.n() * M_PI * r * r / area;
  return res;
}

namespace {

std::optional<Rational> snap_rational(const Rational& x, long long max_den) {
  // Best rational with denominator <= max_den within 1e-6 of x.
  double xd = to_double(x);
  for (long long q = 1; q <= max_den; ++q) {
    long long pnum = std::llround(xd * static_cast<double>(q));
    Rational cand(pnum, q);
    if (std::abs(to_double(cand) - xd) < 1e-6) return cand;
  }
  return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  Int num = numerator(x), den = denominator(x);
  Int rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// sqrt of a + b sqrt(3) inside Q(sqrt(3)), if it exists.
std::optional<QuadExt> quadext_sqrt(const QuadExt& q) {
  if (q.sign() < 0) return std::nullopt;
  // (x + y sqrt(3))^2 = x^2 + 3y^2 + 2xy sqrt(3).
  auto disc = rational_sqrt(q.a() * q.a() - 3 * q.b() * q.b());
  if (!disc) return std::nullopt;
  for (int sgn : {+1, -1}) {
    Rational x2 = (q.a() + (sgn > 0 ? *disc : -*disc)) / 2;
    auto x = rational_sqrt(x2);
    if (!x) continue;
    for (int xs : {+1, -1}) {
      Rational xv = xs > 0 ? *x : -*x;
      if (xv == 0) {
        auto y2 = rational_sqrt(q.b() == 0 ? Rational(0) : Rational(-1));
        (void)y2;
        if (q.b() == 0 && q.a() == 0) return QuadExt(0);
        continue;
      }
      Rational yv = q.b() / (2 * xv);
      QuadExt cand(xv, yv);
      if (cand * cand == q && cand.sign() >= 0) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TorusPacking> snap_packing(const TorusPacking& p, long long max_denominator) {
  if (!p.lattice.exact()) return std::nullopt;
  TorusPacking q = p;
  q.exact = true;
  // Translation-normalize: put disk 0 on the origin, then snap.
  Rational u0 = p.centers[0].x.a(), v0 = p.centers[0].y.a();
  for (auto& c : q.centers) {
    if (!c.x.is_rational() || !c.y.is_rational()) return std::nullopt;
    Rational uu = c.x.a() - u0, vv = c.y.a() - v0;
    uu -= Rational(rational_floor(uu));
    vv -= Rational(rational_floor(vv));
    auto su = snap_rational(uu, max_denominator);
    auto sv = snap_rational(vv, max_denominator);
    if (!su || !sv) return std::nullopt;
    c = Vec2Q(QuadExt(*su), QuadExt(*sv));
  }
  auto rep = validate(q, 1e-12);
  if (!rep.min_distance_sq_exact) return std::nullopt;
  auto dist = quadext_sqrt(*rep.min_distance_sq_exact);
  if (!dist) return std::nullopt;
  // Snapping must not contract the radius materially.
  if (dist->to_double() < 2 * p.radius_d() - 1e-6) return std::nullopt;
  q.radius = *dist * QuadExt(Rational(1, 2));
  return q;
}

SpineReport spine(const TorusPacking& p, double tol) {
  SpineReport rep;
  ContactGraph g = contact_graph(p, tol);
  std::vector<char> removed(static_cast<size_t>(p.n()), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> deg(static_cast<size_t>(p.n()), 0);
    for (const auto& e : g.edges) {
      if (removed[static_cast<size_t>(e.i)] || removed[static_cast<size_t>(e.j)]) continue;
      deg[static_cast<size_t>(e.i)]++;
      deg[static_cast<size_t>(e.j)]++;
    }
    for (int i = 0; i < p.n(); ++i) {
      if (removed[static_cast<size_t>(i)] || deg[static_cast<size_t>(i)] > 2) continue;
      removed[static_cast<size_t>(i)] = 1;
      changed = true;
    }
  }
  for (int i = 0; i < p.n(); ++i)
    (removed[static_cast<size_t>(i)] ? rep.rattlers : rep.spine).push_back(i);
  if (rep.spine.empty()) return rep;

  TorusPacking sub;
  sub.lattice = p.lattice;
  sub.radius = p.radius;
  sub.exact = p.exact;
  for (int i : rep.spine) {
    sub.centers.push_back(p.centers[static_cast<size_t>(i)]);
    sub.labels.push_back(p.labels.empty() ? std::to_string(i + 1) : p.labels[static_cast<size_t>(i)]);
  }
  rep.analysis = analyze(sub, tol);
  rep.spine_jammed = rep.analysis.collectively_jammed;
  return rep;
}

PoolResult optimize_pool(int n, const Lattice2& lattice, int seeds, const OptimizerConfig& cfg,
                         int threads) {
  if (seeds < 1) throw std::invalid_argument("optimize_pool: need at least one seed");
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  if (const char* env = std::getenv("TORUSPACK_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  threads = std::min(threads, seeds);

  std::vector<ImproveResult> results(static_cast<size_t>(seeds));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int k = next.fetch_add(1);
      if (k >= seeds) return;
      OptimizerConfig c = cfg;
      c.seed = cfg.seed + static_cast<unsigned long long>(k);
      TorusPacking start = random_packing(n, lattice, c.seed);
      results[static_cast<size_t>(k)] = improve(start, c);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  PoolResult out;
  for (int k = 0; k < seeds; ++k) {
    const ImproveResult& r = results[static_cast<size_t>(k)];
    RunRecord rec;
    rec.seed = cfg.seed + static_cast<unsigned long long>(k);
    rec.density = r.density;
    rec.converged = r.converged;
    auto sp = spine(r.packing, 1e-7);
    rec.jammed = sp.spine_jammed;
    if (auto snapped = snap_packing(r.packing)) {
      auto exact_report = analyze(*snapped, 1e-8, RigidityPath::Exact);
      rec.snapped = true;
      rec.jammed = rec.jammed || exact_report.collectively_jammed;
    }
    out.runs.push_back(rec);
    if (out.best_index < 0 || r.density > out.best_result.density) {
      out.best_index = k;
      out.best_result = r;
      out.best_packing = r.packing;
    }
  }
  return out;
}

}  // namespace toruspack
