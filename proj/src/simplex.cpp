#include "toruspack/simplex.hpp"

#include <stdexcept>

namespace toruspack {

namespace {

// Dictionary:  x_B[i] = rhs[i] - sum_j A[i][j] x_N[j],   z = z0 + sum_j obj[j] x_N[j].
struct Dictionary {
  int m = 0;
  std::vector<int> basic, nonbasic;
  std::vector<std::vector<QuadExt>> a;
  std::vector<QuadExt> rhs, obj;
  QuadExt z0;

  void pivot(int r, int s) {
    QuadExt inv = a[static_cast<size_t>(r)][static_cast<size_t>(s)].inverse();
    int nn = static_cast<int>(nonbasic.size());
    for (int j = 0; j < nn; ++j)
      if (j != s) a[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
    rhs[static_cast<size_t>(r)] *= inv;
    a[static_cast<size_t>(r)][static_cast<size_t>(s)] = inv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      QuadExt f = a[static_cast<size_t>(i)][static_cast<size_t>(s)];
      if (f.is_zero()) continue;
      for (int j = 0; j < nn; ++j)
        if (j != s)
          a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
              f * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
      rhs[static_cast<size_t>(i)] -= f * rhs[static_cast<size_t>(r)];
      a[static_cast<size_t>(i)][static_cast<size_t>(s)] = -f * inv;
    }
    QuadExt g = obj[static_cast<size_t>(s)];
    if (!g.is_zero()) {
      for (int j = 0; j < nn; ++j)
        if (j != s)
          obj[static_cast<size_t>(j)] -= g * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
      z0 += g * rhs[static_cast<size_t>(r)];
      obj[static_cast<size_t>(s)] = -g * inv;
    }
    std::swap(basic[static_cast<size_t>(r)], nonbasic[static_cast<size_t>(s)]);
  }

  // Bland: entering = positive reduced cost with the least variable id;
  // leaving = least ratio, ties by least variable id. Returns false at
  // optimality; throws on unbounded.
  bool bland_step() {
    int nn = static_cast<int>(nonbasic.size());
    int s = -1;
    for (int j = 0; j < nn; ++j) {
      if (obj[static_cast<size_t>(j)].sign() > 0 &&
          (s < 0 || nonbasic[static_cast<size_t>(j)] < nonbasic[static_cast<size_t>(s)]))
        s = j;
    }
    if (s < 0) return false;
    int r = -1;
    QuadExt best_ratio;
    for (int i = 0; i < m; ++i) {
      const QuadExt& coef = a[static_cast<size_t>(i)][static_cast<size_t>(s)];
      if (coef.sign() <= 0) continue;
      QuadExt ratio = rhs[static_cast<size_t>(i)] / coef;
      if (r < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basic[static_cast<size_t>(i)] < basic[static_cast<size_t>(r)])) {
        r = i;
        best_ratio = ratio;
      }
    }
    if (r < 0) throw LpStatus::Unbounded;
    pivot(r, s);
    return true;
  }

  void run_bland() {
    while (bland_step()) {
    }
  }
};

}  // namespace

LpResult simplex_maximize(const std::vector<std::vector<QuadExt>>& a_in,
                          const std::vector<QuadExt>& b, const std::vector<QuadExt>& c) {
  int m = static_cast<int>(a_in.size());
  int n = static_cast<int>(c.size());
  for (const auto& row : a_in)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("simplex: ragged matrix");
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("simplex: bad rhs size");

  Dictionary d;
  d.m = m;
  d.a = a_in;
  d.rhs = b;
  for (int j = 0; j < n; ++j) d.nonbasic.push_back(j);
  for (int i = 0; i < m; ++i) d.basic.push_back(n + i);

  LpResult res;
  try {
    int worst = -1;
    for (int i = 0; i < m; ++i)
      if (d.rhs[static_cast<size_t>(i)].sign() < 0 &&
          (worst < 0 || d.rhs[static_cast<size_t>(i)] < d.rhs[static_cast<size_t>(worst)]))
        worst = i;

    if (worst >= 0) {
      // Phase 1: maximize -x0 with an artificial column of -1's.
      const int art = n + m;
      for (int i = 0; i < m; ++i) d.a[static_cast<size_t>(i)].push_back(QuadExt(-1));
      d.nonbasic.push_back(art);
      d.obj.assign(d.nonbasic.size(), QuadExt(0));
      d.obj.back() = QuadExt(-1);
      d.z0 = QuadExt(0);
      d.pivot(worst, static_cast<int>(d.nonbasic.size()) - 1);  // makes rhs >= 0
      d.run_bland();
      if (d.z0.sign() < 0) {
        res.status = LpStatus::Infeasible;
        return res;
      }
      // Drive the artificial variable out of the basis if it lingers at 0.
      for (int i = 0; i < m; ++i) {
        if (d.basic[static_cast<size_t>(i)] != art) continue;
        int s = -1;
        for (int j = 0; j < static_cast<int>(d.nonbasic.size()); ++j)
          if (!d.a[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero() &&
              (s < 0 || d.nonbasic[static_cast<size_t>(j)] < d.nonbasic[static_cast<size_t>(s)]))
            s = j;
        if (s < 0) throw std::logic_error("simplex: artificial stuck in an all-zero row");
        d.pivot(i, s);
        break;
      }
      // Remove the artificial column.
      int col = -1;
      for (int j = 0; j < static_cast<int>(d.nonbasic.size()); ++j)
        if (d.nonbasic[static_cast<size_t>(j)] == art) col = j;
      if (col < 0) throw std::logic_error("simplex: artificial column lost");
      d.nonbasic.erase(d.nonbasic.begin() + col);
      for (int i = 0; i < m; ++i) d.a[static_cast<size_t>(i)].erase(d.a[static_cast<size_t>(i)].begin() + col);
    }

    // Install the real objective in the current dictionary.
    auto cost = [&](int var) { return var < n ? c[static_cast<size_t>(var)] : QuadExt(0); };
    d.obj.assign(d.nonbasic.size(), QuadExt(0));
    d.z0 = QuadExt(0);
    for (int j = 0; j < static_cast<int>(d.nonbasic.size()); ++j)
      d.obj[static_cast<size_t>(j)] = cost(d.nonbasic[static_cast<size_t>(j)]);
    for (int i = 0; i < m; ++i) {
      QuadExt cb = cost(d.basic[static_cast<size_t>(i)]);
      if (cb.is_zero()) continue;
      d.z0 += cb * d.rhs[static_cast<size_t>(i)];
      for (int j = 0; j < static_cast<int>(d.nonbasic.size()); ++j)
        d.obj[static_cast<size_t>(j)] -= cb * d.a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    d.run_bland();
  } catch (LpStatus status) {
    res.status = status;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.value = d.z0;
  res.x.assign(static_cast<size_t>(n), QuadExt(0));
  for (int i = 0; i < m; ++i)
    if (d.basic[static_cast<size_t>(i)] < n)
      res.x[static_cast<size_t>(d.basic[static_cast<size_t>(i)])] = d.rhs[static_cast<size_t>(i)];
  return res;
}

}  // namespace toruspack
