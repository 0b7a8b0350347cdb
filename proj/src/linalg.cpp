#include "qtau/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qtau {

namespace {

double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
}

void check_hermitian_input(const Matrix& m, const char* op) {
    if (!m.square())
        throw InvalidInputError(std::string(op) + ": matrix must be square");
    if (!m.all_finite())
        throw InvalidInputError(std::string(op) + ": non-finite entries");
    const double defect = m.hermiticity_defect();
    if (defect > 1e-9)
        throw InvalidInputError(std::string(op) + ": matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
}

} // namespace

EigenResult hermitian_eigen(const Matrix& m) {
    check_hermitian_input(m, "hermitian_eigen");
    const std::size_t n = m.rows();

    // Work on the Hermitian average so tolerable input asymmetry (<= 1e-9)
    // cannot leak into the rotations.
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = Complex{m(r, r).real(), 0.0};
        for (std::size_t c = r + 1; c < n; ++c) {
            const Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
            a(r, c) = v;
            a(c, r) = std::conj(v);
        }
    }
    Matrix v = Matrix::identity(n);

    const double tol = std::max(1e-12, 1e-15 * a.frobenius_norm());
    constexpr int kMaxSweeps = 100;
    bool converged = offdiag_frobenius(a) < tol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0)
                    continue;
                // Unitary plane rotation U: U(p,p)=c, U(p,q)=s*e^{i phi},
                // U(q,p)=-s*e^{-i phi}, U(q,q)=c with e^{i phi} = apq/|apq|,
                // chosen so (U† A U)(p,q) = 0.
                const Complex phase = apq / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sp = s * phase;        // s e^{i phi}
                const Complex spc = std::conj(sp);   // s e^{-i phi}

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double shift = 2.0 * c * s * mag;
                a(p, p) = Complex{c * c * app - shift + s * s * aqq, 0.0};
                a(q, q) = Complex{s * s * app + shift + c * c * aqq, 0.0};
                a(p, q) = Complex{0.0, 0.0};
                a(q, p) = Complex{0.0, 0.0};

                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q)
                        continue;
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = c * arp - spc * arq;
                    a(r, q) = sp * arp + c * arq;
                    a(p, r) = std::conj(a(r, p));
                    a(q, r) = std::conj(a(r, q));
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = c * vrp - spc * vrq;
                    v(r, q) = sp * vrp + c * vrq;
                }
            }
        }
        converged = offdiag_frobenius(a) < tol;
    }
    if (!converged)
        throw NumericalFailureError("hermitian_eigen: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.eigenvalues[i] = a(order[i], order[i]).real();
        for (std::size_t r = 0; r < n; ++r)
            out.eigenvectors(r, i) = v(r, order[i]);
    }
    return out;
}

Matrix psd_sqrt(const Matrix& m) {
    EigenResult eig = hermitian_eigen(m);
    const std::size_t n = m.rows();
    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = eig.eigenvalues[i];
        if (lam < -1e-10)
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lam) +
                              " below PSD tolerance");
        roots[i] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    const Matrix& v = eig.eigenvectors;
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                acc += v(r, k) * roots[k] * std::conj(v(c, k));
            out(r, c) = acc;
        }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (a.rows() * b.rows() > kSideLimit || a.cols() * b.cols() > kSideLimit)
        throw SizeLimitError("kron: result dimension exceeds side cap " +
                             std::to_string(kSideLimit));
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex f = a(ar, ac);
            if (f == Complex{0.0, 0.0})
                continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
        }
    return out;
}

Matrix permute_subsystems(const Matrix& m, const DimsSpec& dims,
                          std::span<const std::size_t> perm) {
    const std::size_t k = dims.count();
    if (!m.square() || m.rows() != dims.total())
        throw InvalidInputError("permute_subsystems: dims do not match matrix side");
    if (perm.size() != k)
        throw InvalidInputError("permute_subsystems: permutation length mismatch");
    std::vector<bool> seen(k, false);
    for (std::size_t p : perm) {
        if (p >= k || seen[p])
            throw InvalidInputError("permute_subsystems: not a permutation");
        seen[p] = true;
    }

    std::vector<std::size_t> new_factors(k);
    for (std::size_t t = 0; t < k; ++t)
        new_factors[t] = dims.factor(perm[t]);
    const DimsSpec new_dims{new_factors};

    const std::size_t n = dims.total();
    // old flat index -> new flat index
    std::vector<std::size_t> map(n);
    std::vector<std::size_t> multi_old(k), multi_new(k);
    for (std::size_t f = 0; f < n; ++f) {
        dims.unflatten(f, multi_old);
        for (std::size_t t = 0; t < k; ++t)
            multi_new[t] = multi_old[perm[t]];
        map[f] = new_dims.flatten(multi_new);
    }

    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(map[r], map[c]) = m(r, c);
    return out;
}

Matrix partial_trace(const Matrix& m, const DimsSpec& dims,
                     std::span<const std::size_t> keep) {
    const std::size_t k = dims.count();
    if (!m.square() || m.rows() != dims.total())
        throw InvalidInputError("partial_trace: dims do not match matrix side");
    if (keep.empty())
        throw InvalidInputError("partial_trace: keep set must be nonempty");
    std::vector<bool> is_kept(k, false);
    for (std::size_t s : keep) {
        if (s >= k)
            throw InvalidInputError("partial_trace: subsystem index out of range");
        if (is_kept[s])
            throw InvalidInputError("partial_trace: duplicate subsystem in keep set");
        is_kept[s] = true;
    }

    std::vector<std::size_t> kept, traced;
    for (std::size_t s = 0; s < k; ++s)
        (is_kept[s] ? kept : traced).push_back(s);

    std::size_t kept_total = 1, traced_total = 1;
    for (std::size_t s : kept)
        kept_total *= dims.factor(s);
    for (std::size_t s : traced)
        traced_total *= dims.factor(s);

    // Strides of each subsystem inside the original flat index.
    std::vector<std::size_t> stride(k, 1);
    for (std::size_t t = k - 1; t-- > 0;)
        stride[t] = stride[t + 1] * dims.factor(t + 1);

    // Base offsets contributed by the kept (resp. traced) subsystem labels.
    auto offsets = [&](const std::vector<std::size_t>& subs, std::size_t count) {
        std::vector<std::size_t> off(count, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::size_t rem = flat;
            for (std::size_t t = subs.size(); t-- > 0;) {
                off[flat] += (rem % dims.factor(subs[t])) * stride[subs[t]];
                rem /= dims.factor(subs[t]);
            }
        }
        return off;
    };
    const std::vector<std::size_t> kept_off = offsets(kept, kept_total);
    const std::vector<std::size_t> traced_off = offsets(traced, traced_total);

    Matrix out(kept_total, kept_total);
    for (std::size_t r = 0; r < kept_total; ++r)
        for (std::size_t c = 0; c < kept_total; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t t = 0; t < traced_total; ++t)
                acc += m(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
            out(r, c) = acc;
        }
    return out;
}

Matrix partial_transpose(const Matrix& m, const DimsSpec& dims, std::size_t subsystem) {
    const std::size_t k = dims.count();
    if (!m.square() || m.rows() != dims.total())
        throw InvalidInputError("partial_transpose: dims do not match matrix side");
    if (subsystem >= k)
        throw InvalidInputError("partial_transpose: subsystem index out of range");

    const std::size_t n = dims.total();
    Matrix out(n, n);
    std::vector<std::size_t> rm(k), cm(k);
    for (std::size_t r = 0; r < n; ++r) {
        dims.unflatten(r, rm);
        for (std::size_t c = 0; c < n; ++c) {
            dims.unflatten(c, cm);
            std::swap(rm[subsystem], cm[subsystem]);
            out(dims.flatten(rm), dims.flatten(cm)) = m(r, c);
            std::swap(rm[subsystem], cm[subsystem]);
        }
    }
    return out;
}

double trace_norm(const Matrix& m) {
    // Gram matrix route: singular values are square roots of the Gram
    // eigenvalues. Use the smaller Gram side.
    const bool tall = m.rows() >= m.cols();
    const Matrix g = tall ? m.adjoint() * m : m * m.adjoint();
    EigenResult eig = hermitian_eigen(g);
    double sum = 0.0;
    for (double lam : eig.eigenvalues)
        sum += std::sqrt(std::max(0.0, lam));
    return sum;
}

double realign_trace_norm(const Matrix& m, const DimsSpec& dims) {
    if (!dims.bipartite())
        throw InvalidInputError("realign_trace_norm: bipartite dims required");
    if (!m.square() || m.rows() != dims.total())
        throw InvalidInputError("realign_trace_norm: dims do not match matrix side");
    const std::size_t d1 = dims.factor(0);
    const std::size_t d2 = dims.factor(1);
    Matrix r(d1 * d1, d2 * d2);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t k = 0; k < d1; ++k)
                for (std::size_t l = 0; l < d2; ++l)
                    r(i * d1 + k, j * d2 + l) = m(i * d2 + j, k * d2 + l);
    return trace_norm(r);
}

} // namespace qtau
