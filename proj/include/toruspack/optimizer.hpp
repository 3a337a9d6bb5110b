#pragma once

#include <optional>

#include "toruspack/rigidity.hpp"

namespace toruspack {

struct OptimizerConfig {
  int max_iters = 2000;
  double step_cap = 0.1;          // max per-coordinate center move, in radii
  double convergence_tol = 1e-12; // stop when the radius gain drops below this
  double activation = 0.15;       // pairs within 2r(1 + activation) enter the LP
  unsigned long long seed = 0;
};

/// n centers uniform in the fundamental domain; radius = half the minimum
/// periodic distance, so the packing is valid by construction. Same seed,
/// same packing.
TorusPacking random_packing(int n, const Lattice2& lattice, unsigned long long seed);

struct ImproveResult {
  TorusPacking packing;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // LP or step acceptance failed; best-so-far returned
  double density = 0.0;
};

/// Iterated linearized inflation: maximize the radius gain subject to
/// first-order non-overlap on near-contact pairs and a per-step movement cap,
/// with a re-validation safeguard after every step. Density never decreases.
ImproveResult improve(const TorusPacking& p, const OptimizerConfig& cfg);

/// Translates disk 0 to the origin, snaps lattice coordinates to denominators
/// <= max_denominator, and keeps the result only if it exactly revalidates
/// with a representable radius; nullopt otherwise.
std::optional<TorusPacking> snap_packing(const TorusPacking& p, long long max_denominator = 64);

struct SpineReport {
  std::vector<int> spine;
  std::vector<int> rattlers;
  bool spine_jammed = false;
  RigidityReport analysis;  // of the spine subpacking (when nonempty)
};

/// Strips disks that cannot be held (contact degree <= 2, cascading) and
/// verifies the remainder with the rigidity analysis.
SpineReport spine(const TorusPacking& p, double tol = 1e-8);

struct RunRecord {
  unsigned long long seed = 0;
  double density = 0.0;
  bool converged = false;
  bool jammed = false;     // spine analysis verdict on the run's spine
  bool snapped = false;    // exact certificate after snapping
};

struct PoolResult {
  std::vector<RunRecord> runs;
  int best_index = -1;
  TorusPacking best_packing;
  ImproveResult best_result;
};

/// Runs `seeds` independent optimizations (seed, seed+1, ...) concurrently
/// and keeps the densest. `threads` <= 0 means hardware concurrency, capped
/// by the TORUSPACK_THREADS environment variable when set.
PoolResult optimize_pool(int n, const Lattice2& lattice, int seeds, const OptimizerConfig& cfg,
                         int threads = 0);

}  // namespace toruspack
