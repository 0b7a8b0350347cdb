#pragma once

#include <cstdint>
#include <vector>

#include "qtau/qstate.hpp"

namespace qtau {

/// Search budget for the convex-roof estimator. decomposition_sizes defaults
/// to {rank, rank+1, rank+2}; every entry must be >= rank(rho).
struct OracleConfig {
    std::vector<std::size_t> decomposition_sizes;
    std::size_t samples = 2000;
    std::size_t refine_steps = 200;
    std::size_t refine_restarts = 3;
    std::uint64_t seed = 0;
};

/// Upper bound on the concurrence C(rho) by sampled and refined pure-state
/// decompositions.
///
/// Samples Haar-random isometries over the configured decomposition sizes,
/// evaluates the average pure concurrence of each induced decomposition, and
/// greedily refines the best few by random unitary moves (pair-plane
/// rotations mixed with full-matrix ones; step 0.05, halved after 20
/// consecutive rejections). Deterministic for a fixed seed: per-sample seeds
/// derive from (seed, sample index).
///
/// Bias direction: this OVER-estimates C(rho) — it is a minimum over a
/// sampled subset of decompositions. Tests must only assert
/// tau <= estimate^2, never closeness, except on families whose exact
/// concurrence is known.
double convex_roof_upper(const DensityMatrix& rho, const OracleConfig& cfg = {});

} // namespace qtau
