#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qtau/matrix.hpp"

namespace qtau {

/// Dense side-length cap for every matrix this library will materialize.
/// Covers 3⊗3 states to the third tensor power (side 729) with headroom.
inline constexpr std::size_t kSideLimit = 4096;

struct EigenResult {
    std::vector<double> eigenvalues; ///< ascending
    Matrix eigenvectors;             ///< unitary, column i pairs with eigenvalues[i]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below 1e-12 (or below
/// 1e-15 relative to the matrix norm, whichever is larger); 100 sweeps cap.
/// Deterministic: no pivot searches, fixed sweep order.
EigenResult hermitian_eigen(const Matrix& m);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are treated as
/// round-off and clamped to zero; anything below -1e-10 throws NotPsdError.
Matrix psd_sqrt(const Matrix& m);

/// Kronecker product. Throws SizeLimitError when a result dimension would
/// exceed kSideLimit.
Matrix kron(const Matrix& a, const Matrix& b);

/// Relabel subsystems of a square matrix on a composite space.
/// New subsystem slot t holds old subsystem perm[t]; the returned matrix is
/// indexed by DimsSpec with factors[t] = dims.factor(perm[t]).
Matrix permute_subsystems(const Matrix& m, const DimsSpec& dims,
                          std::span<const std::size_t> perm);

/// Trace out every subsystem not listed in `keep` (kept subsystems stay in
/// their original relative order).
Matrix partial_trace(const Matrix& m, const DimsSpec& dims,
                     std::span<const std::size_t> keep);

/// Transpose the row/column indices of one subsystem.
Matrix partial_transpose(const Matrix& m, const DimsSpec& dims, std::size_t subsystem);

/// Sum of singular values, computed from the Hermitian eigenvalues of the
/// Gram matrix (the smaller of A†A and AA†).
double trace_norm(const Matrix& m);

/// Trace norm of the realignment R(M)_{(ik),(jl)} = M_{(ij),(kl)} of a
/// bipartite matrix. Equals 1 for pure product states, d for the d-dim
/// maximally entangled state.
double realign_trace_norm(const Matrix& m, const DimsSpec& dims);

} // namespace qtau
