#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qtau/linalg.hpp"
#include "qtau/matrix.hpp"

namespace qtau {

/// Validated density matrix on a composite space: Hermitian within 1e-9,
/// trace within 1e-9 of 1, minimum eigenvalue >= -1e-9.
class DensityMatrix {
  public:
    DensityMatrix(DimsSpec dims, Matrix mat);

    const DimsSpec& dims() const { return dims_; }
    const Matrix& mat() const { return mat_; }
    std::size_t side() const { return mat_.rows(); }

    /// Bypass validation for matrices that are states by construction
    /// (tensor products and basis relabelings of validated states).
    static DensityMatrix trusted(DimsSpec dims, Matrix mat);

  private:
    DensityMatrix() = default;
    DimsSpec dims_;
    Matrix mat_;
};

/// Validated pure-state amplitude vector: norm within 1e-12 of 1.
class PureState {
  public:
    PureState(DimsSpec dims, std::vector<Complex> amps);

    const DimsSpec& dims() const { return dims_; }
    const std::vector<Complex>& amps() const { return amps_; }

    /// Reinterpret the amplitudes on a different factorization of the same
    /// total dimension (consecutive-subsystem grouping; no data movement).
    PureState regrouped(DimsSpec new_dims) const;

    /// |psi><psi| as a density matrix.
    DensityMatrix projector() const;

  private:
    DimsSpec dims_;
    std::vector<Complex> amps_;
};

// ---------------------------------------------------------------------------
// Deterministic randomness.
//
// The generator is fixed so seeded runs reproduce bit-identically everywhere:
// mt19937_64 for the uniform stream (sequence pinned by the standard),
// Box-Muller for Gaussians (std::normal_distribution is not), and a
// splitmix64 mixer for deriving independent sub-stream seeds.
// ---------------------------------------------------------------------------

class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double uniform();
    /// Standard normal via Box-Muller.
    double gaussian();
    /// Re + i Im with independent standard normal parts.
    Complex complex_gaussian();
    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n);

    /// Independent sub-stream seed for (seed, index).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// State families.
// ---------------------------------------------------------------------------

/// Horodecki 3x3 family sigma_alpha, alpha in [2, 5]: separable up to 3,
/// bound entangled on (3, 4], free entangled on (4, 5].
DensityMatrix make_horodecki_sigma(double alpha);

/// Isotropic state in d x d with maximally-entangled fidelity F.
DensityMatrix make_isotropic(std::size_t d, double fidelity);

/// Werner family in 3x3: (lambda*I - (lambda+1)/3 * SWAP) / (8*lambda - 1).
/// PSD only for lambda >= 1/2; the constructor validates and reports the
/// offending eigenvalue otherwise.
DensityMatrix make_werner3(double lambda);

/// Totally antisymmetric three-qutrit state, coefficients ±1/sqrt(6).
PureState make_aharonov();

/// alpha|10000> + beta|01000> + gamma|00100> + delta|00010> + eta|00001>.
/// Coefficients must be normalized within 1e-12 unless `normalize` is set.
PureState make_generalized_w(const std::array<Complex, 5>& coeffs, bool normalize = false);

/// Haar-uniform pure state (independent complex Gaussians, normalized).
PureState random_pure(const DimsSpec& dims, std::uint64_t seed);

/// Reduction of a Haar-random pure state on dims ⊗ ancilla; full rank with
/// probability 1 once ancilla_dim >= side length. ancilla_dim = 1 yields the
/// pure projector.
DensityMatrix random_mixed(const DimsSpec& dims, std::size_t ancilla_dim, std::uint64_t seed);

} // namespace qtau
