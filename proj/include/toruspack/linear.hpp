#pragma once

#include <optional>
#include <vector>

#include "toruspack/quadext.hpp"

namespace toruspack {

using VecQ = std::vector<QuadExt>;
using MatQ = std::vector<VecQ>;

/// In-place reduced row echelon form over Q(sqrt(3)).
/// Returns the pivot column of each pivot row (so rank = pivots.size()).
std::vector<int> rref(MatQ& m);

inline int exact_rank(MatQ m) { return static_cast<int>(rref(m).size()); }

/// Basis of { x : M x = 0 }.
std::vector<VecQ> kernel_basis(MatQ m, int cols);

/// Basis of { y : y^T M = 0 }.
std::vector<VecQ> left_kernel_basis(const MatQ& m, int cols);

/// Solves A x = b; nullopt when inconsistent. Free variables are set to 0.
std::optional<VecQ> solve_linear(MatQ a, VecQ b);

/// Extracts a maximal independent subset from `vectors` (each of length n).
std::vector<VecQ> independent_subset(const std::vector<VecQ>& vectors, int n);

}  // namespace toruspack
