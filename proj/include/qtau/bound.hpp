#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qtau/qstate.hpp"

namespace qtau {

/// One 2x2-in-2x2 subspace of a bipartite space: row pair (i < j) of
/// subsystem A and (k < l) of subsystem B, zero-based. A d1 x d2 space has
/// d1(d1-1)d2(d2-1)/4 of these.
struct SubspaceQuad {
    std::size_t i, j; ///< i < j < d1
    std::size_t k, l; ///< k < l < d2

    bool operator==(const SubspaceQuad&) const = default;
};

/// Spectral concurrence of one (possibly unnormalized) two-qubit block.
struct TwoQubitConcurrence {
    double concurrence = 0.0;          ///< max(0, l1 - l2 - l3 - l4)
    std::array<double, 4> lambdas{};   ///< non-increasing, nonnegative
};

struct SubspaceTerm {
    SubspaceQuad quad;
    double concurrence = 0.0;
    std::array<double, 4> lambdas{};
};

/// The lower bound on squared concurrence with its per-subspace breakdown.
struct TauReport {
    double tau = 0.0;                      ///< sum of squared concurrences
    std::vector<SubspaceTerm> per_subspace; ///< lexicographic in (i,j,k,l)
    DimsSpec dims;
};

/// Squared concurrence 2(1 - Tr rho_A^2) of a pure state across the cut that
/// groups the first `cut` subsystems as side A.
double pure_concurrence_sq(const PureState& psi, std::size_t cut);

/// The same quantity as the explicit sum 4 * sum |phi_ik phi_jl - phi_il phi_jk|^2
/// over all 2x2 minors of the amplitude matricization. Algebraically equal to
/// pure_concurrence_sq; kept as an independent route.
double pure_concurrence_sq_minors(const PureState& psi, std::size_t cut);

/// The 4x4 principal submatrix of a bipartite state selected by a quad, rows
/// in order (ik, il, jk, jl). Hermitian PSD, trace generally < 1.
Matrix extract_submatrix(const DensityMatrix& rho, const SubspaceQuad& q);

/// Wootters-style spectral concurrence of a 4x4 Hermitian PSD block.
///
/// The lambdas are the square roots, in decreasing order, of the eigenvalues
/// of varrho * (sy⊗sy) varrho* (sy⊗sy). They are computed as the singular
/// values of the complex-symmetric matrix A = X^T (sy⊗sy) X, where the
/// columns of X are the eigenvectors of varrho scaled by the square roots of
/// its (rank-truncated) eigenvalues: the nonzero spectrum is identical and no
/// square root of a near-zero quantity is ever taken. The singular values
/// come from the Hermitian embedding [[0, A], [A†, 0]], so one Hermitian
/// Jacobi solver drives everything.
///
/// Accepts unnormalized input; the result scales linearly with a positive
/// scalar. With `normalize` set the block is divided by its trace first.
TwoQubitConcurrence two_qubit_concurrence(const Matrix& varrho, bool normalize = false);

/// The lower bound tau(rho) = sum_mn C_mn^2 over every 2x2 subspace of a
/// bipartite state, with per-subspace detail.
TauReport tau(const DensityMatrix& rho);

/// tau of rho^{⊗N}, regrouped so all A factors precede all B factors
/// (bipartite d1^N x d2^N). N = 1 is exactly tau(rho).
TauReport tau_power(const DensityMatrix& rho, std::size_t copies);

} // namespace qtau
