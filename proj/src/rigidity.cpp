#include "toruspack/rigidity.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

#include "toruspack/simplex.hpp"

namespace toruspack {

std::vector<std::vector<double>> RigidityMatrix::to_double() const {
  std::vector<std::vector<double>> out(static_cast<size_t>(m),
                                       std::vector<double>(static_cast<size_t>(2 * n), 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 2 * n; ++j)
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          rows[static_cast<size_t>(i)][static_cast<size_t>(j)].to_double();
  return out;
}

RigidityMatrix rigidity_matrix(const ContactGraph& g, const TorusPacking& p) {
  if (g.n != p.n()) throw std::invalid_argument("rigidity_matrix: graph does not match packing");
  RigidityMatrix M;
  M.n = p.n();
  M.m = g.m();
  M.graph = g;
  M.rows.assign(static_cast<size_t>(M.m), VecQ(static_cast<size_t>(2 * M.n), QuadExt(0)));
  for (int r = 0; r < M.m; ++r) {
    const ContactEdge& e = g.edges[static_cast<size_t>(r)];
    if (e.i < 0 || e.i >= M.n || e.j < 0 || e.j >= M.n)
      throw std::invalid_argument("rigidity_matrix: edge index out of range");
    Vec2Q wrap = p.lattice.g1() * QuadExt(Rational(e.w1)) + p.lattice.g2() * QuadExt(Rational(e.w2));
    Vec2Q v = p.cartesian(e.j) + wrap - p.cartesian(e.i);
    auto& row = M.rows[static_cast<size_t>(r)];
    row[static_cast<size_t>(2 * e.j)] += v.x;
    row[static_cast<size_t>(2 * e.j + 1)] += v.y;
    row[static_cast<size_t>(2 * e.i)] -= v.x;
    row[static_cast<size_t>(2 * e.i + 1)] -= v.y;
  }
  return M;
}

namespace {

// Projects the two unit translations out of a kernel vector.
VecQ project_translations(const VecQ& v, int n) {
  QuadExt sx(0), sy(0);
  for (int k = 0; k < n; ++k) {
    sx += v[static_cast<size_t>(2 * k)];
    sy += v[static_cast<size_t>(2 * k + 1)];
  }
  QuadExt inv_n = QuadExt(Rational(1, n));
  VecQ out = v;
  for (int k = 0; k < n; ++k) {
    out[static_cast<size_t>(2 * k)] -= sx * inv_n;
    out[static_cast<size_t>(2 * k + 1)] -= sy * inv_n;
  }
  return out;
}

}  // namespace

std::vector<VecQ> bar_flex_space(const RigidityMatrix& m) {
  auto kernel = kernel_basis(m.rows, 2 * m.n);
  std::vector<VecQ> projected;
  for (const auto& v : kernel) {
    VecQ p = project_translations(v, m.n);
    bool zero = true;
    for (const auto& q : p) zero = zero && q.is_zero();
    if (!zero) projected.push_back(std::move(p));
  }
  return independent_subset(projected, 2 * m.n);
}

std::vector<VecQ> stress_space(const RigidityMatrix& m) { return left_kernel_basis(m.rows, 2 * m.n); }

std::optional<VecQ> strictly_negative_stress(const std::vector<VecQ>& basis, int m) {
  if (m == 0) return std::nullopt;
  if (basis.empty()) return std::nullopt;
  int s = static_cast<int>(basis.size());
  // Find coefficients c with sum_k c_k B_k <= -1 componentwise. Feasibility
  // via: maximize -t subject to sum_k (cp_k - cm_k) B_k[e] - t <= -1, all
  // variables >= 0; feasible with t = 0 iff the stress exists.
  std::vector<std::vector<QuadExt>> A(static_cast<size_t>(m),
                                      std::vector<QuadExt>(static_cast<size_t>(2 * s + 1), QuadExt(0)));
  std::vector<QuadExt> b(static_cast<size_t>(m), QuadExt(-1));
  std::vector<QuadExt> c(static_cast<size_t>(2 * s + 1), QuadExt(0));
  c.back() = QuadExt(-1);
  for (int e = 0; e < m; ++e) {
    for (int k = 0; k < s; ++k) {
      const QuadExt& v = basis[static_cast<size_t>(k)][static_cast<size_t>(e)];
      A[static_cast<size_t>(e)][static_cast<size_t>(k)] = v;
      A[static_cast<size_t>(e)][static_cast<size_t>(s + k)] = -v;
    }
    A[static_cast<size_t>(e)].back() = QuadExt(-1);
  }
  LpResult lp = simplex_maximize(A, b, c);
  if (lp.status != LpStatus::Optimal || lp.value.sign() != 0) return std::nullopt;
  VecQ stress(static_cast<size_t>(m), QuadExt(0));
  for (int k = 0; k < s; ++k) {
    QuadExt coef = lp.x[static_cast<size_t>(k)] - lp.x[static_cast<size_t>(s + k)];
    if (coef.is_zero()) continue;
    for (int e = 0; e < m; ++e)
      stress[static_cast<size_t>(e)] += coef * basis[static_cast<size_t>(k)][static_cast<size_t>(e)];
  }
  for (const auto& w : stress)
    if (w > QuadExt(-1)) throw std::logic_error("negative-stress LP returned an invalid certificate");
  return stress;
}

namespace {

RigidityReport analyze_exact(const RigidityMatrix& M) {
  RigidityReport rep;
  rep.n = M.n;
  rep.m = M.m;
  rep.exact_path = true;
  rep.rank = exact_rank(M.rows);
  rep.contact_count_ok = M.m >= 2 * M.n - 1;

  rep.flex_basis_exact = bar_flex_space(M);
  rep.bar_rigid = rep.flex_basis_exact.empty();
  for (const auto& f : rep.flex_basis_exact) {
    std::vector<double> fd;
    fd.reserve(f.size());
    for (const auto& q : f) fd.push_back(q.to_double());
    rep.flex_basis.push_back(std::move(fd));
  }

  auto stresses = stress_space(M);
  rep.stress_dim = static_cast<int>(stresses.size());
  rep.negative_stress_exact = strictly_negative_stress(stresses, M.m);
  if (rep.negative_stress_exact) {
    std::vector<double> sd;
    for (const auto& q : *rep.negative_stress_exact) sd.push_back(q.to_double());
    rep.negative_stress = std::move(sd);
  }
  rep.collectively_jammed = rep.bar_rigid && rep.negative_stress_exact.has_value();
  return rep;
}

RigidityReport analyze_float(const RigidityMatrix& M) {
  RigidityReport rep;
  rep.n = M.n;
  rep.m = M.m;
  rep.exact_path = false;
  rep.contact_count_ok = M.m >= 2 * M.n - 1;

  const int cols = 2 * M.n;
  Eigen::MatrixXd A(M.m, cols);
  for (int i = 0; i < M.m; ++i)
    for (int j = 0; j < cols; ++j)
      A(i, j) = M.rows[static_cast<size_t>(i)][static_cast<size_t>(j)].to_double();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > 1e-9 * smax) ++rank;
  rep.rank = rank;

  // Nontrivial flexes: right null space minus translations.
  Eigen::VectorXd tx = Eigen::VectorXd::Zero(cols), ty = Eigen::VectorXd::Zero(cols);
  for (int k = 0; k < M.n; ++k) {
    tx(2 * k) = 1.0;
    ty(2 * k + 1) = 1.0;
  }
  tx.normalize();
  ty.normalize();
  for (int j = rank; j < cols; ++j) {
    Eigen::VectorXd v = svd.matrixV().col(j);
    v -= tx.dot(v) * tx;
    v -= ty.dot(v) * ty;
    // Re-orthogonalize against flexes found so far.
    for (const auto& prev : rep.flex_basis) {
      double dot = 0, nrm = 0;
      for (int k = 0; k < cols; ++k) {
        dot += prev[static_cast<size_t>(k)] * v(k);
        nrm += prev[static_cast<size_t>(k)] * prev[static_cast<size_t>(k)];
      }
      for (int k = 0; k < cols; ++k) v(k) -= dot / nrm * prev[static_cast<size_t>(k)];
    }
    if (v.norm() > 1e-8) {
      v.normalize();
      rep.flex_basis.emplace_back(v.data(), v.data() + cols);
    }
  }
  rep.bar_rigid = rep.flex_basis.empty();

  // Stress space: left null space; run the exact LP on the (dyadic
  // rational) basis so the feasibility verdict is deterministic.
  std::vector<VecQ> stress_basis;
  for (int j = rank; j < M.m; ++j) {
    VecQ w(static_cast<size_t>(M.m));
    for (int i = 0; i < M.m; ++i)
      w[static_cast<size_t>(i)] = QuadExt(rational_from_double(svd.matrixU()(i, j)));
    stress_basis.push_back(std::move(w));
  }
  rep.stress_dim = static_cast<int>(stress_basis.size());
  auto neg = strictly_negative_stress(stress_basis, M.m);
  if (neg) {
    std::vector<double> sd;
    for (const auto& q : *neg) sd.push_back(q.to_double());
    rep.negative_stress = std::move(sd);
  }
  rep.collectively_jammed = rep.bar_rigid && rep.negative_stress.has_value();
  return rep;
}

}  // namespace

RigidityReport analyze_graph(const ContactGraph& g, const TorusPacking& p, RigidityPath path) {
  RigidityMatrix M = rigidity_matrix(g, p);
  bool exact = (path == RigidityPath::Exact) || (path == RigidityPath::Auto && p.exact);
  return exact ? analyze_exact(M) : analyze_float(M);
}

RigidityReport analyze(const TorusPacking& p, double tol, RigidityPath path) {
  return analyze_graph(contact_graph(p, tol), p, path);
}

}  // namespace toruspack
