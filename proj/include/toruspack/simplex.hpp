#pragma once

#include <vector>

#include "toruspack/quadext.hpp"

namespace toruspack {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  QuadExt value;             // objective at the optimum
  std::vector<QuadExt> x;    // primal solution (original variables)
};

/// Exact simplex over Q(sqrt(3)):  maximize c^T x  s.t.  A x <= b, x >= 0.
/// Two-phase dictionary method with Bland's rule throughout, so it
/// terminates and its verdicts are exact (an Infeasible result is a proof,
/// not a tolerance call).
LpResult simplex_maximize(const std::vector<std::vector<QuadExt>>& a,
                          const std::vector<QuadExt>& b, const std::vector<QuadExt>& c);

}  // namespace toruspack
