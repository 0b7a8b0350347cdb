#include "doctest.h"

#include <numeric>

#include "qtau/linalg.hpp"
#include "test_helpers.hpp"

using namespace qtau;
using namespace qtau::testing;

namespace {

Matrix reconstruct(const EigenResult& eig) {
    const std::size_t n = eig.eigenvalues.size();
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc{0, 0};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.eigenvectors(r, k) * eig.eigenvalues[k] *
                       std::conj(eig.eigenvectors(c, k));
            out(r, c) = acc;
        }
    return out;
}

} // namespace

TEST_CASE("hermitian_eigen: identity and pauli-y spectra") {
    const EigenResult id = hermitian_eigen(Matrix::identity(2));
    CHECK(id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    Matrix sy(2, 2);
    sy(0, 1) = Complex{0, -1};
    sy(1, 0) = Complex{0, 1};
    const EigenResult eig = hermitian_eigen(sy);
    CHECK(std::abs(eig.eigenvalues[0] + 1.0) < 1e-14);
    CHECK(std::abs(eig.eigenvalues[1] - 1.0) < 1e-14);
}

TEST_CASE("hermitian_eigen: reconstruction and unitarity on random inputs") {
    for (std::size_t n : {6u, 32u, 128u}) {
        const Matrix m = random_hermitian(n, 1000 + n);
        const EigenResult eig = hermitian_eigen(m);
        CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
        CHECK(max_entry_diff(reconstruct(eig), m) < 1e-9);

        const Matrix& v = eig.eigenvectors;
        CHECK(max_entry_diff(v.adjoint() * v, Matrix::identity(n)) < 1e-12);
    }
}

TEST_CASE("hermitian_eigen: input validation") {
    Matrix rect(2, 3);
    CHECK_THROWS_AS(hermitian_eigen(rect), InvalidInputError);

    Matrix skew(2, 2);
    skew(0, 1) = Complex{1, 0};
    skew(1, 0) = Complex{2, 0}; // not Hermitian
    CHECK_THROWS_AS(hermitian_eigen(skew), InvalidInputError);
}

TEST_CASE("psd_sqrt: identity, diagonal, random PSD") {
    CHECK(max_entry_diff(psd_sqrt(Matrix::identity(3)), Matrix::identity(3)) < 1e-12);

    Matrix d(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const Matrix r = psd_sqrt(d);
    CHECK(std::abs(r(0, 0) - Complex{2, 0}) < 1e-12);
    CHECK(std::abs(r(1, 1) - Complex{3, 0}) < 1e-12);

    SeededRng rng(11);
    Matrix a(4, 4);
    for (Complex& z : a.data())
        z = rng.complex_gaussian();
    const Matrix psd = a * a.adjoint();
    const Matrix s = psd_sqrt(psd);
    CHECK(s.hermiticity_defect() < 1e-9);
    CHECK(max_entry_diff(s * s, psd) < 1e-8);

    Matrix neg(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -1e-6;
    CHECK_THROWS_AS(psd_sqrt(neg), NotPsdError);
}

TEST_CASE("kron: identities, diagonals, mixed-product rule, size cap") {
    CHECK(max_entry_diff(kron(Matrix::identity(2), Matrix::identity(2)),
                         Matrix::identity(4)) == 0.0);

    Matrix d12(2, 2), d34(2, 2);
    d12(0, 0) = 1.0;
    d12(1, 1) = 2.0;
    d34(0, 0) = 3.0;
    d34(1, 1) = 4.0;
    const Matrix k = kron(d12, d34);
    const double expect[4] = {3, 4, 6, 8};
    for (int t = 0; t < 4; ++t)
        CHECK(std::abs(k(t, t) - Complex{expect[t], 0}) < 1e-14);

    SeededRng rng(5);
    Matrix a(2, 2), b(2, 2), c(2, 2), e(2, 2);
    for (Matrix* m : {&a, &b, &c, &e})
        for (Complex& z : m->data())
            z = rng.complex_gaussian();
    CHECK(max_entry_diff(kron(a, b) * kron(c, e), kron(a * c, b * e)) < 1e-12);

    Matrix big(100, 100), other(50, 50);
    CHECK_THROWS_AS(kron(big, other), SizeLimitError);
}

TEST_CASE("permute_subsystems: identity, swap, spectrum invariance") {
    const DimsSpec dims{{2, 3}};
    const Matrix m = random_hermitian(6, 21);
    const std::size_t id_perm[2] = {0, 1};
    CHECK(max_entry_diff(permute_subsystems(m, dims, id_perm), m) == 0.0);

    // swap on a product state
    Matrix a = random_hermitian(2, 22);
    Matrix b = random_hermitian(3, 23);
    const std::size_t swap_perm[2] = {1, 0};
    CHECK(max_entry_diff(permute_subsystems(kron(a, b), dims, swap_perm), kron(b, a)) <
          1e-13);

    // eigenvalue multiset invariant under a random permutation of 2x2x2
    const DimsSpec d3{{2, 2, 2}};
    const Matrix h = random_hermitian(8, 24);
    const std::size_t perm[3] = {2, 0, 1};
    auto before = hermitian_eigen(h).eigenvalues;
    auto after = hermitian_eigen(permute_subsystems(h, d3, perm)).eigenvalues;
    for (std::size_t t = 0; t < 8; ++t)
        CHECK(std::abs(before[t] - after[t]) < 1e-10);

    const std::size_t bad[2] = {0, 0};
    CHECK_THROWS_AS(permute_subsystems(m, dims, bad), InvalidInputError);
}

TEST_CASE("partial_trace: product states, Bell reduction, trace preservation") {
    Matrix a = random_hermitian(2, 31);
    Matrix b = random_hermitian(3, 32);
    // normalize traces to 1 so the product reduction is exactly the factor
    a *= Complex{1.0 / a.trace().real(), 0};
    b *= Complex{1.0 / b.trace().real(), 0};
    const DimsSpec dims{{2, 3}};
    const std::size_t keep_a[1] = {0};
    CHECK(max_entry_diff(partial_trace(kron(a, b), dims, keep_a), a) < 1e-12);

    const Matrix bell = bell_state().projector().mat();
    const std::size_t keep0[1] = {0};
    Matrix half = Matrix::identity(2);
    half *= Complex{0.5, 0};
    CHECK(max_entry_diff(partial_trace(bell, DimsSpec{{2, 2}}, keep0), half) < 1e-14);

    const Matrix h = random_hermitian(12, 33);
    const DimsSpec d223{{2, 2, 3}};
    const std::size_t keep02[2] = {0, 2};
    const Matrix red = partial_trace(h, d223, keep02);
    CHECK(std::abs(red.trace() - h.trace()) < 1e-12);
    CHECK(red.rows() == 6);

    // keeping everything is the identity map
    const std::size_t all[3] = {0, 1, 2};
    CHECK(max_entry_diff(partial_trace(h, d223, all), h) == 0.0);

    CHECK_THROWS_AS(partial_trace(h, d223, std::span<const std::size_t>{}),
                    InvalidInputError);
}

TEST_CASE("partial_transpose: diagonal fixed point, involution, Bell spectrum") {
    const DimsSpec dims{{2, 2}};
    Matrix diag(4, 4);
    for (int t = 0; t < 4; ++t)
        diag(t, t) = 0.25;
    CHECK(max_entry_diff(partial_transpose(diag, dims, 0), diag) == 0.0);

    const Matrix h = random_hermitian(4, 41);
    const Matrix pt = partial_transpose(h, dims, 1);
    CHECK(max_entry_diff(partial_transpose(pt, dims, 1), h) == 0.0);
    CHECK(pt.hermiticity_defect() < 1e-12);
    CHECK(std::abs(pt.trace() - h.trace()) < 1e-14);

    const Matrix bell_pt = partial_transpose(bell_state().projector().mat(), dims, 0);
    const EigenResult eig = hermitian_eigen(bell_pt);
    CHECK(std::abs(eig.eigenvalues.front() + 0.5) < 1e-12);

    CHECK_THROWS_AS(partial_transpose(h, dims, 2), InvalidInputError);
}

TEST_CASE("realign_trace_norm: product state, Bell, local-unitary invariance") {
    // pure product state -> 1
    Matrix pa = random_hermitian(2, 51);
    const EigenResult ea = hermitian_eigen(pa);
    std::vector<Complex> va(2), vb(3);
    for (int t = 0; t < 2; ++t)
        va[t] = ea.eigenvectors(t, 0);
    const Matrix pb = random_hermitian(3, 52);
    const EigenResult eb = hermitian_eigen(pb);
    for (int t = 0; t < 3; ++t)
        vb[t] = eb.eigenvectors(t, 0);
    Matrix prod(6, 6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            prod(r, c) = va[r / 3] * vb[r % 3] * std::conj(va[c / 3] * vb[c % 3]);
    CHECK(std::abs(realign_trace_norm(prod, DimsSpec{{2, 3}}) - 1.0) < 1e-7);

    CHECK(std::abs(realign_trace_norm(bell_state().projector().mat(), DimsSpec{{2, 2}}) -
                   2.0) < 1e-12);

    // ||R|| invariant under U ⊗ V
    const DimsSpec d33{{3, 3}};
    const DensityMatrix rho = random_mixed(d33, 9, 53);
    const Matrix u = random_unitary(3, 54);
    const Matrix v = random_unitary(3, 55);
    const Matrix uv = kron(u, v);
    const Matrix rotated = uv * rho.mat() * uv.adjoint();
    CHECK(std::abs(realign_trace_norm(rotated, d33) -
                   realign_trace_norm(rho.mat(), d33)) < 1e-7);
}
