#include "qtau/bound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qtau {

namespace {

/// Reduced density matrix of the A side (first `cut` subsystems) from
/// amplitudes, as the Gram matrix of the matricization rows.
Matrix reduced_gram(const std::vector<Complex>& amps, std::size_t rows, std::size_t cols) {
    Matrix g(rows, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < rows; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t b = 0; b < cols; ++b)
                acc += amps[r * cols + b] * std::conj(amps[c * cols + b]);
            g(r, c) = acc;
        }
    return g;
}

std::pair<std::size_t, std::size_t> split_dims(const PureState& psi, std::size_t cut) {
    const std::size_t k = psi.dims().count();
    if (cut == 0 || cut >= k)
        throw InvalidInputError("cut must split the subsystems into two nonempty groups");
    std::size_t rows = 1, cols = 1;
    for (std::size_t t = 0; t < k; ++t)
        (t < cut ? rows : cols) *= psi.dims().factor(t);
    return {rows, cols};
}

/// (sy ⊗ sy) x for a length-4 vector: (-x3, x2, x1, -x0).
inline void apply_yy(const Complex* x, Complex* out) {
    out[0] = -x[3];
    out[1] = x[2];
    out[2] = x[1];
    out[3] = -x[0];
}

} // namespace

double pure_concurrence_sq(const PureState& psi, std::size_t cut) {
    const auto [rows, cols] = split_dims(psi, cut);
    const Matrix g = reduced_gram(psi.amps(), rows, cols);
    double purity = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < rows; ++c)
            purity += std::norm(g(r, c));
    return std::max(0.0, 2.0 * (1.0 - purity));
}

double pure_concurrence_sq_minors(const PureState& psi, std::size_t cut) {
    const auto [rows, cols] = split_dims(psi, cut);
    const std::vector<Complex>& a = psi.amps();
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i + 1; j < rows; ++j)
            for (std::size_t k = 0; k < cols; ++k)
                for (std::size_t l = k + 1; l < cols; ++l)
                    total += std::norm(a[i * cols + k] * a[j * cols + l] -
                                       a[i * cols + l] * a[j * cols + k]);
    return 4.0 * total;
}

Matrix extract_submatrix(const DensityMatrix& rho, const SubspaceQuad& q) {
    if (!rho.dims().bipartite())
        throw InvalidInputError("extract_submatrix: bipartite state required");
    const std::size_t d1 = rho.dims().factor(0);
    const std::size_t d2 = rho.dims().factor(1);
    if (!(q.i < q.j && q.j < d1 && q.k < q.l && q.l < d2))
        throw InvalidInputError("extract_submatrix: quad indices out of range");
    const std::size_t idx[4] = {q.i * d2 + q.k, q.i * d2 + q.l, q.j * d2 + q.k,
                                q.j * d2 + q.l};
    Matrix out(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out(r, c) = rho.mat()(idx[r], idx[c]);
    return out;
}

TwoQubitConcurrence two_qubit_concurrence(const Matrix& varrho, bool normalize) {
    if (varrho.rows() != 4 || varrho.cols() != 4)
        throw InvalidInputError("two_qubit_concurrence: 4x4 matrix required");
    Matrix block = varrho;
    if (normalize) {
        const double tr = block.trace().real();
        if (tr <= 0.0)
            throw InvalidInputError("two_qubit_concurrence: nonpositive trace");
        block *= Complex{1.0 / tr, 0.0};
    }

    EigenResult eig = hermitian_eigen(block);
    if (eig.eigenvalues.front() < -1e-10)
        throw NotPsdError("two_qubit_concurrence: min eigenvalue " +
                          std::to_string(eig.eigenvalues.front()));

    const double lmax = std::max(eig.eigenvalues.back(), 0.0);
    TwoQubitConcurrence out;
    if (lmax == 0.0)
        return out; // zero block

    // Columns sqrt(w_i) chi_i of the retained spectrum. The relative cutoff
    // keeps C(c*rho) = c*C(rho) exact and removes sqrt(eps) noise columns.
    const double cutoff = 1e-13 * lmax;
    std::vector<std::size_t> kept;
    for (std::size_t idx = 0; idx < 4; ++idx)
        if (eig.eigenvalues[idx] > cutoff)
            kept.push_back(idx);
    const std::size_t r = kept.size();

    // A = X^T (sy ⊗ sy) X, complex symmetric r x r.
    Matrix x(4, r);
    for (std::size_t c = 0; c < r; ++c) {
        const double w = std::sqrt(eig.eigenvalues[kept[c]]);
        for (std::size_t row = 0; row < 4; ++row)
            x(row, c) = w * eig.eigenvectors(row, kept[c]);
    }
    Matrix a(r, r);
    for (std::size_t u = 0; u < r; ++u) {
        Complex ycol[4];
        const Complex xu[4] = {x(0, u), x(1, u), x(2, u), x(3, u)};
        apply_yy(xu, ycol);
        for (std::size_t v = 0; v < r; ++v) {
            Complex acc{0.0, 0.0};
            for (int row = 0; row < 4; ++row)
                acc += x(row, v) * ycol[row];
            a(u, v) = acc;
        }
    }

    // Singular values of A through the Hermitian embedding [[0, A], [A†, 0]]:
    // its spectrum is {±sigma_i}.
    Matrix jw(2 * r, 2 * r);
    for (std::size_t u = 0; u < r; ++u)
        for (std::size_t v = 0; v < r; ++v) {
            jw(u, r + v) = a(u, v);
            jw(r + u, v) = std::conj(a(v, u));
        }
    EigenResult sv = hermitian_eigen(jw);
    for (std::size_t t = 0; t < r; ++t)
        out.lambdas[t] = std::max(0.0, sv.eigenvalues[2 * r - 1 - t]);

    out.concurrence = std::max(
        0.0, out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3]);
    return out;
}

TauReport tau(const DensityMatrix& rho) {
    if (!rho.dims().bipartite())
        throw InvalidInputError("tau: bipartite state required");
    const std::size_t d1 = rho.dims().factor(0);
    const std::size_t d2 = rho.dims().factor(1);

    TauReport report;
    report.dims = rho.dims();
    report.per_subspace.reserve(d1 * (d1 - 1) * d2 * (d2 - 1) / 4);

    double total = 0.0;
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = i + 1; j < d1; ++j)
            for (std::size_t k = 0; k < d2; ++k)
                for (std::size_t l = k + 1; l < d2; ++l) {
                    const SubspaceQuad q{i, j, k, l};
                    TwoQubitConcurrence c;
                    try {
                        c = two_qubit_concurrence(extract_submatrix(rho, q));
                    } catch (const NotPsdError& e) {
                        throw NotPsdError(std::string(e.what()) + " at quad (" +
                                          std::to_string(i) + "," + std::to_string(j) + ";" +
                                          std::to_string(k) + "," + std::to_string(l) + ")");
                    }
                    total += c.concurrence * c.concurrence;
                    report.per_subspace.push_back({q, c.concurrence, c.lambdas});
                }
    report.tau = total;
    return report;
}

TauReport tau_power(const DensityMatrix& rho, std::size_t copies) {
    if (copies < 1)
        throw InvalidInputError("tau_power: copies must be >= 1");
    if (!rho.dims().bipartite())
        throw InvalidInputError("tau_power: bipartite state required");
    if (copies == 1)
        return tau(rho);

    const std::size_t d1 = rho.dims().factor(0);
    const std::size_t d2 = rho.dims().factor(1);

    Matrix power = rho.mat();
    for (std::size_t n = 1; n < copies; ++n)
        power = kron(power, rho.mat()); // throws SizeLimitError past the cap

    // Interleaved (A1 B1 A2 B2 ...) -> (A1..AN B1..BN).
    std::vector<std::size_t> interleaved;
    for (std::size_t n = 0; n < copies; ++n) {
        interleaved.push_back(d1);
        interleaved.push_back(d2);
    }
    std::vector<std::size_t> perm;
    for (std::size_t n = 0; n < copies; ++n)
        perm.push_back(2 * n);
    for (std::size_t n = 0; n < copies; ++n)
        perm.push_back(2 * n + 1);
    Matrix grouped = permute_subsystems(power, DimsSpec{interleaved}, perm);

    std::size_t da = 1, db = 1;
    for (std::size_t n = 0; n < copies; ++n) {
        da *= d1;
        db *= d2;
    }
    return tau(DensityMatrix::trusted(DimsSpec{{da, db}}, std::move(grouped)));
}

} // namespace qtau
