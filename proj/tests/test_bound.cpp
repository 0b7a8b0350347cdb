#include "doctest.h"

#include <cmath>

#include "qtau/bound.hpp"
#include "qtau/criteria.hpp"
#include "test_helpers.hpp"

using namespace qtau;
using namespace qtau::testing;

namespace {

double horodecki_tau(double alpha) {
    return alpha <= 4.0
               ? 0.0
               : 4.0 * std::pow(2.0 - std::sqrt(alpha * (5.0 - alpha)), 2) / 147.0;
}

} // namespace

TEST_CASE("pure_concurrence_sq: Bell, product, qutrit maximally entangled") {
    CHECK(std::abs(pure_concurrence_sq(bell_state(), 1) - 1.0) < 1e-14);

    std::vector<Complex> prod(4, Complex{0, 0});
    prod[0] = 1.0;
    CHECK(pure_concurrence_sq(PureState(DimsSpec{{2, 2}}, prod), 1) ==
          doctest::Approx(0.0).epsilon(1e-14));

    std::vector<Complex> phi(9, Complex{0, 0});
    phi[0] = phi[4] = phi[8] = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(pure_concurrence_sq(PureState(DimsSpec{{3, 3}}, phi), 1) - 4.0 / 3.0) <
          1e-13);

    CHECK_THROWS_AS(pure_concurrence_sq(bell_state(), 0), InvalidInputError);
    CHECK_THROWS_AS(pure_concurrence_sq(bell_state(), 2), InvalidInputError);
}

TEST_CASE("pure_concurrence_sq: minors route equals purity route") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t d1 = 2 + seed % 4, d2 = 2 + (seed / 2) % 4;
        const PureState psi = random_pure(DimsSpec{{d1, d2}}, 4000 + seed);
        CHECK(std::abs(pure_concurrence_sq(psi, 1) - pure_concurrence_sq_minors(psi, 1)) <
              1e-10);
    }
    // multipartite cut: 2x2x3 split after the second subsystem
    const PureState psi = random_pure(DimsSpec{{2, 2, 3}}, 4100);
    CHECK(std::abs(pure_concurrence_sq(psi, 2) - pure_concurrence_sq_minors(psi, 2)) <
          1e-10);
}

TEST_CASE("extract_submatrix: whole 2x2 state, diagonal input, PSD property") {
    const DensityMatrix bell = bell_state().projector();
    const Matrix sub = extract_submatrix(bell, {0, 1, 0, 1});
    CHECK(max_entry_diff(sub, bell.mat()) == 0.0);

    const DensityMatrix mm = make_isotropic(3, 1.0 / 9.0);
    const Matrix sub3 = extract_submatrix(mm, {0, 2, 1, 2});
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(std::abs(sub3(r, c) - (r == c ? Complex{1.0 / 9.0, 0} : Complex{0, 0})) <
                  1e-15);

    const DensityMatrix rho = random_mixed(DimsSpec{{3, 3}}, 9, 71);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = k + 1; l < 3; ++l) {
                    const Matrix s = extract_submatrix(rho, {i, j, k, l});
                    CHECK(hermitian_eigen(s).eigenvalues.front() >= -1e-10);
                    CHECK(s.trace().real() < 1.0 + 1e-12);
                }

    CHECK_THROWS_AS(extract_submatrix(bell, {1, 0, 0, 1}), InvalidInputError);
    CHECK_THROWS_AS(extract_submatrix(bell, {0, 2, 0, 1}), InvalidInputError);
}

TEST_CASE("two_qubit_concurrence: Bell, separable diagonal, Werner point") {
    const auto bell = two_qubit_concurrence(bell_state().projector().mat());
    CHECK(std::abs(bell.concurrence - 1.0) < 1e-12);

    Matrix mixed = Matrix::identity(4);
    mixed *= Complex{0.25, 0};
    const auto mm = two_qubit_concurrence(mixed);
    CHECK(mm.concurrence == 0.0);

    // rho = 0.8 |Psi-><Psi-| + 0.2 I/4: C = (3p-1)/2 = 0.7,
    // lambda spectrum (0.85, 0.05, 0.05, 0.05).
    Matrix w = Matrix::identity(4);
    w *= Complex{0.05, 0};
    const double a = 1.0 / std::sqrt(2.0);
    const Complex psi_m[4] = {{0, 0}, {a, 0}, {-a, 0}, {0, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            w(r, c) += 0.8 * psi_m[r] * std::conj(psi_m[c]);
    const auto tw = two_qubit_concurrence(w);
    CHECK(std::abs(tw.concurrence - 0.7) < 1e-12);
    CHECK(std::abs(tw.lambdas[0] - 0.85) < 1e-12);
    CHECK(std::abs(tw.lambdas[1] - 0.05) < 1e-12);
    CHECK(std::abs(tw.lambdas[2] - 0.05) < 1e-12);
    CHECK(std::abs(tw.lambdas[3] - 0.05) < 1e-12);

    Matrix neg = Matrix::identity(4);
    neg(3, 3) = -0.5;
    CHECK_THROWS_AS(two_qubit_concurrence(neg), NotPsdError);
}

TEST_CASE("two_qubit_concurrence: scaling linearity and normalize flag") {
    const DensityMatrix rho = random_mixed(DimsSpec{{2, 2}}, 4, 81);
    const auto base = two_qubit_concurrence(rho.mat());
    Matrix scaled = rho.mat();
    scaled *= Complex{0.37, 0};
    const auto sc = two_qubit_concurrence(scaled);
    CHECK(std::abs(sc.concurrence - 0.37 * base.concurrence) < 1e-12);

    const auto renorm = two_qubit_concurrence(scaled, true);
    CHECK(std::abs(renorm.concurrence - base.concurrence) < 1e-12);
}

TEST_CASE("two_qubit_concurrence: agrees with the sqrt-route spectrum") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const DensityMatrix rho = random_mixed(DimsSpec{{2, 2}}, 1 + seed % 5, 900 + seed);
        const auto fast = two_qubit_concurrence(rho.mat());
        const auto slow = sqrt_route_lambdas(rho.mat());
        for (int t = 0; t < 4; ++t)
            CHECK(std::abs(fast.lambdas[t] - slow[t]) < 2e-7);
        CHECK(fast.lambdas[0] >= fast.lambdas[1]);
        CHECK(fast.lambdas[1] >= fast.lambdas[2]);
        CHECK(fast.lambdas[2] >= fast.lambdas[3]);
        CHECK(fast.lambdas[3] >= 0.0);
    }
}

TEST_CASE("tau: Horodecki, isotropic, Werner reference points") {
    CHECK(std::abs(tau(make_horodecki_sigma(4.5)).tau - 1.0 / 147.0) < 1e-12);
    CHECK(std::abs(tau(make_isotropic(4, 0.5)).tau - 1.0 / 6.0) < 1e-12);
    CHECK(std::abs(tau(make_werner3(1.0)).tau - 4.0 / 147.0) < 1e-12);

    // product state -> 0
    const DensityMatrix pa = random_mixed(DimsSpec{{2, 2}}, 4, 91);
    const std::size_t keepA[1] = {0};
    Matrix a = partial_trace(pa.mat(), pa.dims(), keepA);
    const DensityMatrix prod =
        DensityMatrix(DimsSpec{{2, 2}}, kron(a, a)); // validates on the way in
    CHECK(tau(prod).tau < 1e-15);
}

TEST_CASE("tau: report structure invariants") {
    const DensityMatrix rho = random_mixed(DimsSpec{{3, 4}}, 12, 92);
    const TauReport rep = tau(rho);
    CHECK(rep.per_subspace.size() == 3 * 2 * 4 * 3 / 4); // d1(d1-1)d2(d2-1)/4 = 18
    double sum = 0.0;
    for (const auto& term : rep.per_subspace)
        sum += term.concurrence * term.concurrence;
    CHECK(std::abs(sum - rep.tau) < 1e-12);

    // lexicographic quad order
    for (std::size_t t = 1; t < rep.per_subspace.size(); ++t) {
        const auto& a4 = rep.per_subspace[t - 1].quad;
        const auto& b4 = rep.per_subspace[t].quad;
        const auto key = [](const SubspaceQuad& q) {
            return std::array<std::size_t, 4>{q.i, q.j, q.k, q.l};
        };
        CHECK(key(a4) < key(b4));
    }
}

TEST_CASE("tau: pure-state saturation (Eq. 1 decomposition)") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::size_t d1 = 2 + seed % 3, d2 = 2 + (seed / 3) % 3;
        const PureState psi = random_pure(DimsSpec{{d1, d2}}, 5000 + seed);
        const double direct = pure_concurrence_sq(psi, 1);
        CHECK(std::abs(tau(psi.projector()).tau - direct) < 1e-9);
    }
}

TEST_CASE("tau: exact at 2x2 (single subspace, Wootters value)") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const DensityMatrix rho = random_mixed(DimsSpec{{2, 2}}, 4, 6000 + seed);
        const TauReport rep = tau(rho);
        CHECK(rep.per_subspace.size() == 1);
        const double cw = sqrt_route_concurrence(rho.mat());
        CHECK(std::abs(rep.tau - cw * cw) < 1e-7);
    }
}

TEST_CASE("tau: NPPT whenever positive (sampled)") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const std::size_t d2 = 2 + seed % 2;
        const DensityMatrix rho = random_mixed(DimsSpec{{2, d2}}, 2 + seed % 4, 6100 + seed);
        if (tau(rho).tau > 1e-9)
            CHECK_FALSE(is_ppt(rho).first);
    }
}

TEST_CASE("tau_power: single copy identity, Bell pair, caps") {
    const DensityMatrix w = make_werner3(1.2);
    const TauReport once = tau(w);
    const TauReport pow1 = tau_power(w, 1);
    CHECK(pow1.tau == once.tau);

    // |Phi+> ⊗ |Phi+| has reduced state I/4: tau = 2(1 - 1/4) = 3/2.
    const DensityMatrix bell = bell_state().projector();
    const TauReport two = tau_power(bell, 2);
    CHECK(std::abs(two.tau - 1.5) < 1e-9);

    CHECK_THROWS_AS(tau_power(make_isotropic(9, 0.9), 3), SizeLimitError);
    CHECK_THROWS_AS(tau_power(bell, 0), InvalidInputError);
}

TEST_CASE("tau_power: Werner two copies is finite and nonnegative") {
    const TauReport rep = tau_power(make_werner3(1.0), 2);
    CHECK(rep.per_subspace.size() == 1296); // (9*8/2)^2
    CHECK(rep.tau >= 0.0);
    CHECK(std::isfinite(rep.tau));
    // deterministic across runs
    CHECK(tau_power(make_werner3(1.0), 2).tau == rep.tau);
}
