#include "qtau/qstate.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qtau {

namespace {

void validate_density(const DimsSpec& dims, const Matrix& mat) {
    if (!mat.square())
        throw NotAStateError("density matrix must be square");
    if (mat.rows() != dims.total())
        throw NotAStateError("side length " + std::to_string(mat.rows()) +
                             " does not match dims product " + std::to_string(dims.total()));
    if (!mat.all_finite())
        throw NotAStateError("density matrix has non-finite entries");
    const double defect = mat.hermiticity_defect();
    if (defect > 1e-9)
        throw NotAStateError("not Hermitian: defect " + std::to_string(defect));
    const double tr = mat.trace().real();
    if (std::abs(tr - 1.0) > 1e-9 || std::abs(mat.trace().imag()) > 1e-9)
        throw NotAStateError("trace " + std::to_string(tr) + " is not 1");
    const EigenResult eig = hermitian_eigen(mat);
    const double min_eig = eig.eigenvalues.front();
    if (min_eig < -1e-9)
        throw NotAStateError("not positive semidefinite: min eigenvalue " +
                             std::to_string(min_eig));
}

} // namespace

DensityMatrix::DensityMatrix(DimsSpec dims, Matrix mat) {
    validate_density(dims, mat);
    dims_ = std::move(dims);
    mat_ = std::move(mat);
}

DensityMatrix DensityMatrix::trusted(DimsSpec dims, Matrix mat) {
    DensityMatrix out;
    out.dims_ = std::move(dims);
    out.mat_ = std::move(mat);
    return out;
}

PureState::PureState(DimsSpec dims, std::vector<Complex> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (amps_.size() != dims_.total())
        throw NotAStateError("amplitude count " + std::to_string(amps_.size()) +
                             " does not match dims product " + std::to_string(dims_.total()));
    double norm_sq = 0.0;
    for (const Complex& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw NotAStateError("pure state has non-finite amplitudes");
        norm_sq += std::norm(a);
    }
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12)
        throw NotAStateError("pure state norm " + std::to_string(std::sqrt(norm_sq)) +
                             " is not 1");
}

PureState PureState::regrouped(DimsSpec new_dims) const {
    if (new_dims.total() != dims_.total())
        throw InvalidInputError("regrouped: total dimension mismatch");
    return PureState(std::move(new_dims), amps_);
}

DensityMatrix PureState::projector() const {
    const std::size_t n = amps_.size();
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = amps_[r] * std::conj(amps_[c]);
    return DensityMatrix::trusted(dims_, std::move(m));
}

// --------------------------------------------------------------------------

double SeededRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] x [0,1).
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Complex SeededRng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

std::size_t SeededRng::below(std::size_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64.
    return static_cast<std::size_t>(engine_() % n);
}

std::uint64_t SeededRng::derive(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over seed advanced by the golden-ratio increment.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// --------------------------------------------------------------------------

namespace {

/// (1/sqrt(d)) sum_i |ii>, the all-positive phase convention.
std::vector<Complex> max_entangled(std::size_t d) {
    std::vector<Complex> v(d * d, Complex{0.0, 0.0});
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        v[i * d + i] = a;
    return v;
}

void add_projector(Matrix& m, const std::vector<Complex>& v, double weight) {
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            m(r, c) += weight * v[r] * std::conj(v[c]);
}

} // namespace

DensityMatrix make_horodecki_sigma(double alpha) {
    if (!(alpha >= 2.0 && alpha <= 5.0))
        throw InvalidInputError("make_horodecki_sigma: alpha must be in [2, 5], got " +
                                std::to_string(alpha));
    Matrix m(9, 9);
    add_projector(m, max_entangled(3), 2.0 / 7.0);
    // sigma_+ = (|01><01| + |12><12| + |20><20|) / 3, sigma_- its flip.
    const std::size_t plus[3] = {0 * 3 + 1, 1 * 3 + 2, 2 * 3 + 0};
    const std::size_t minus[3] = {1 * 3 + 0, 2 * 3 + 1, 0 * 3 + 2};
    for (int t = 0; t < 3; ++t) {
        m(plus[t], plus[t]) += alpha / 21.0;
        m(minus[t], minus[t]) += (5.0 - alpha) / 21.0;
    }
    return DensityMatrix(DimsSpec{{3, 3}}, std::move(m));
}

DensityMatrix make_isotropic(std::size_t d, double fidelity) {
    if (d < 2)
        throw InvalidInputError("make_isotropic: d must be >= 2");
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
        throw InvalidInputError("make_isotropic: F must be in [0, 1], got " +
                                std::to_string(fidelity));
    const std::size_t n = d * d;
    const double off = (1.0 - fidelity) / static_cast<double>(n - 1);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = off;
    add_projector(m, max_entangled(d), fidelity - off);
    return DensityMatrix(DimsSpec{{d, d}}, std::move(m));
}

DensityMatrix make_werner3(double lambda) {
    const double denom = 8.0 * lambda - 1.0;
    if (denom == 0.0)
        throw InvalidInputError("make_werner3: lambda = 1/8 is singular");
    Matrix m(9, 9);
    const double h = (lambda + 1.0) / 3.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            m(i * 3 + j, i * 3 + j) += lambda / denom;
            // SWAP |i,j> = |j,i>
            m(j * 3 + i, i * 3 + j) -= h / denom;
        }
    return DensityMatrix(DimsSpec{{3, 3}}, std::move(m));
}

PureState make_aharonov() {
    std::vector<Complex> v(27, Complex{0.0, 0.0});
    const double a = 1.0 / std::sqrt(6.0);
    auto at = [](std::size_t i, std::size_t j, std::size_t k) { return (i * 3 + j) * 3 + k; };
    v[at(0, 1, 2)] = a;
    v[at(1, 2, 0)] = a;
    v[at(2, 0, 1)] = a;
    v[at(0, 2, 1)] = -a;
    v[at(1, 0, 2)] = -a;
    v[at(2, 1, 0)] = -a;
    return PureState(DimsSpec{{3, 3, 3}}, std::move(v));
}

PureState make_generalized_w(const std::array<Complex, 5>& coeffs, bool normalize) {
    double norm_sq = 0.0;
    for (const Complex& c : coeffs)
        norm_sq += std::norm(c);
    if (norm_sq == 0.0)
        throw InvalidInputError("make_generalized_w: zero coefficient vector");
    double scale = 1.0;
    if (normalize)
        scale = 1.0 / std::sqrt(norm_sq);
    else if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12)
        throw InvalidInputError("make_generalized_w: coefficients not normalized (norm " +
                                std::to_string(std::sqrt(norm_sq)) + ")");
    std::vector<Complex> v(32, Complex{0.0, 0.0});
    v[0b10000] = scale * coeffs[0];
    v[0b01000] = scale * coeffs[1];
    v[0b00100] = scale * coeffs[2];
    v[0b00010] = scale * coeffs[3];
    v[0b00001] = scale * coeffs[4];
    return PureState(DimsSpec{{2, 2, 2, 2, 2}}, std::move(v));
}

PureState random_pure(const DimsSpec& dims, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Complex> v(dims.total());
    double norm_sq = 0.0;
    for (Complex& a : v) {
        a = rng.complex_gaussian();
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (Complex& a : v)
        a *= inv;
    return PureState(dims, std::move(v));
}

DensityMatrix random_mixed(const DimsSpec& dims, std::size_t ancilla_dim, std::uint64_t seed) {
    if (ancilla_dim < 1)
        throw InvalidInputError("random_mixed: ancilla_dim must be >= 1");
    if (ancilla_dim == 1) {
        const PureState psi = random_pure(dims, seed);
        return psi.projector();
    }
    std::vector<std::size_t> extended = dims.factors();
    extended.push_back(ancilla_dim);
    const DimsSpec full{extended};
    const PureState psi = random_pure(full, seed);
    std::vector<std::size_t> keep(dims.count());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    Matrix reduced = partial_trace(psi.projector().mat(), full, keep);
    return DensityMatrix::trusted(dims, std::move(reduced));
}

} // namespace qtau
