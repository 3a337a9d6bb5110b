#include "toruspack/linear.hpp"

#include <stdexcept>

namespace toruspack {

std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!m[static_cast<size_t>(i)][static_cast<size_t>(c)].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(pivot)]);
    QuadExt inv = m[static_cast<size_t>(r)][static_cast<size_t>(c)].inverse();
    for (int j = c; j < cols; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      QuadExt f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f.is_zero()) continue;
      for (int j = c; j < cols; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
            f * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<VecQ> kernel_basis(MatQ m, int cols) {
  for (auto& row : m)
    if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("kernel_basis: ragged matrix");
  auto pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<VecQ> basis;
  for (int freec = 0; freec < cols; ++freec) {
    if (is_pivot[static_cast<size_t>(freec)]) continue;
    VecQ v(static_cast<size_t>(cols), QuadExt(0));
    v[static_cast<size_t>(freec)] = QuadExt(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -m[r][static_cast<size_t>(freec)];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<VecQ> left_kernel_basis(const MatQ& m, int cols) {
  int rows = static_cast<int>(m.size());
  MatQ t(static_cast<size_t>(cols), VecQ(static_cast<size_t>(rows), QuadExt(0)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t[static_cast<size_t>(j)][static_cast<size_t>(i)] = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return kernel_basis(std::move(t), rows);
}

std::optional<VecQ> solve_linear(MatQ a, VecQ b) {
  int rows = static_cast<int>(a.size());
  if (rows != static_cast<int>(b.size())) throw std::invalid_argument("solve_linear: size mismatch");
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int i = 0; i < rows; ++i) a[static_cast<size_t>(i)].push_back(b[static_cast<size_t>(i)]);
  auto pivots = rref(a);
  // Inconsistent iff a pivot landed in the augmented column.
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  VecQ x(static_cast<size_t>(cols), QuadExt(0));
  for (size_t r = 0; r < pivots.size(); ++r)
    x[static_cast<size_t>(pivots[r])] = a[r][static_cast<size_t>(cols)];
  return x;
}

std::vector<VecQ> independent_subset(const std::vector<VecQ>& vectors, int n) {
  std::vector<VecQ> kept;
  MatQ staged;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("independent_subset: bad length");
    staged.push_back(v);
    MatQ probe = staged;
    if (static_cast<int>(rref(probe).size()) == static_cast<int>(staged.size())) {
      kept.push_back(v);
    } else {
      staged.pop_back();
    }
  }
  return kept;
}

}  // namespace toruspack
