#include "qtau/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qtau {

namespace {

PureState regroup_tripartite(const PureState& psi, std::size_t d1, std::size_t d2,
                             std::size_t d3) {
    if (d1 * d2 * d3 != psi.dims().total())
        throw InvalidInputError("tripartite dims (" + std::to_string(d1) + "," +
                                std::to_string(d2) + "," + std::to_string(d3) +
                                ") do not factor the state dimension " +
                                std::to_string(psi.dims().total()));
    return psi.regrouped(DimsSpec{{d1, d2, d3}});
}

double purity(const Matrix& m) {
    double p = 0.0;
    for (const Complex& z : m.data())
        p += std::norm(z);
    return p;
}

/// Relabel pure-state subsystems: new slot t holds old subsystem perm[t].
PureState permute_pure(const PureState& psi, std::span<const std::size_t> perm) {
    const DimsSpec& dims = psi.dims();
    const std::size_t k = dims.count();
    std::vector<std::size_t> new_factors(k);
    for (std::size_t t = 0; t < k; ++t)
        new_factors[t] = dims.factor(perm[t]);
    const DimsSpec new_dims{new_factors};

    std::vector<Complex> out(psi.amps().size());
    std::vector<std::size_t> multi_old(k), multi_new(k);
    for (std::size_t f = 0; f < out.size(); ++f) {
        dims.unflatten(f, multi_old);
        for (std::size_t t = 0; t < k; ++t)
            multi_new[t] = multi_old[perm[t]];
        out[new_dims.flatten(multi_new)] = psi.amps()[f];
    }
    return PureState(new_dims, std::move(out));
}

double tau_of_pair_reduction(const PureState& psi, std::size_t first, std::size_t second) {
    const std::vector<std::size_t> keep{first, second};
    Matrix reduced = partial_trace(psi.projector().mat(), psi.dims(), keep);
    const DimsSpec pair_dims{{psi.dims().factor(first), psi.dims().factor(second)}};
    return tau(DensityMatrix::trusted(pair_dims, std::move(reduced))).tau;
}

} // namespace

MonogamyReport monogamy_tripartite(const PureState& psi, std::size_t d1, std::size_t d2,
                                   std::size_t d3) {
    const PureState grouped = regroup_tripartite(psi, d1, d2, d3);

    MonogamyReport r;
    r.tau_ab = tau_of_pair_reduction(grouped, 0, 1);
    r.tau_ac = tau_of_pair_reduction(grouped, 0, 2);
    // Pure state across A|BC: tau equals the squared concurrence.
    r.tau_a_bc = pure_concurrence_sq(grouped, 1);
    r.residual = r.tau_a_bc - r.tau_ab - r.tau_ac;
    r.closed_form = residual_closed_form(psi, d1, d2, d3);
    r.satisfied = r.residual >= -1e-9;
    return r;
}

double residual_closed_form(const PureState& psi, std::size_t d1, std::size_t d2,
                            std::size_t d3) {
    const PureState grouped = regroup_tripartite(psi, d1, d2, d3);
    const std::vector<Complex>& a = grouped.amps();
    auto phi = [&](std::size_t i, std::size_t j, std::size_t k) {
        return a[(i * d2 + j) * d3 + k];
    };

    double total = 0.0;
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t ip = i + 1; ip < d1; ++ip)
            for (std::size_t j = 0; j < d2; ++j)
                for (std::size_t jp = j + 1; jp < d2; ++jp)
                    for (std::size_t k = 0; k < d3; ++k)
                        for (std::size_t kp = k + 1; kp < d3; ++kp) {
                            const Complex p000 = phi(i, j, k);
                            const Complex p001 = phi(i, j, kp);
                            const Complex p010 = phi(i, jp, k);
                            const Complex p011 = phi(i, jp, kp);
                            const Complex p100 = phi(ip, j, k);
                            const Complex p101 = phi(ip, j, kp);
                            const Complex p110 = phi(ip, jp, k);
                            const Complex p111 = phi(ip, jp, kp);

                            const Complex d_1 = p000 * p000 * p111 * p111 +
                                                p001 * p001 * p110 * p110 +
                                                p010 * p010 * p101 * p101 +
                                                p100 * p100 * p011 * p011;
                            const Complex d_2 =
                                p000 * p111 * p011 * p100 + p000 * p111 * p101 * p010 +
                                p000 * p111 * p110 * p001 + p011 * p100 * p101 * p010 +
                                p011 * p100 * p110 * p001 + p101 * p010 * p110 * p001;
                            const Complex d_3 =
                                p000 * p110 * p101 * p011 + p111 * p001 * p010 * p100;

                            total += std::abs(d_1 - 2.0 * d_2 + 4.0 * d_3);
                        }
    return 4.0 * total;
}

MultiMonogamyReport monogamy_multipartite(const PureState& psi,
                                          const std::vector<std::vector<std::size_t>>& partition) {
    const std::size_t k = psi.dims().count();
    if (partition.size() < 2)
        throw InvalidInputError("monogamy_multipartite: need A plus at least one B group");
    std::vector<bool> seen(k, false);
    std::size_t covered = 0;
    for (const auto& group : partition) {
        if (group.empty())
            throw InvalidInputError("monogamy_multipartite: empty group");
        for (std::size_t s : group) {
            if (s >= k || seen[s])
                throw InvalidInputError("monogamy_multipartite: partition must cover all "
                                        "subsystems disjointly");
            seen[s] = true;
            ++covered;
        }
    }
    if (covered != k)
        throw InvalidInputError("monogamy_multipartite: partition leaves subsystems out");

    auto group_dim = [&](const std::vector<std::size_t>& group) {
        std::size_t d = 1;
        for (std::size_t s : group)
            d *= psi.dims().factor(s);
        return d;
    };
    const std::vector<std::size_t>& group_a = partition.front();
    const std::size_t dim_a = group_dim(group_a);

    MultiMonogamyReport r;
    const Matrix full = psi.projector().mat();

    for (std::size_t g = 1; g < partition.size(); ++g) {
        const std::vector<std::size_t>& group_b = partition[g];
        // Keep A ∪ B_g in original order, then bring the A members to the
        // front, then regroup as a (dim_A, dim_Bg) bipartite state.
        std::vector<std::size_t> keep;
        keep.insert(keep.end(), group_a.begin(), group_a.end());
        keep.insert(keep.end(), group_b.begin(), group_b.end());
        std::sort(keep.begin(), keep.end());

        std::vector<std::size_t> kept_factors(keep.size());
        for (std::size_t t = 0; t < keep.size(); ++t)
            kept_factors[t] = psi.dims().factor(keep[t]);
        const DimsSpec kept_dims{kept_factors};

        std::vector<std::size_t> perm; // positions within `keep`, A first
        for (std::size_t s : group_a)
            perm.push_back(std::lower_bound(keep.begin(), keep.end(), s) - keep.begin());
        for (std::size_t s : group_b)
            perm.push_back(std::lower_bound(keep.begin(), keep.end(), s) - keep.begin());

        Matrix reduced = partial_trace(full, psi.dims(), keep);
        Matrix ordered = permute_subsystems(reduced, kept_dims, perm);
        const DimsSpec pair_dims{{dim_a, group_dim(group_b)}};
        r.per_pair.push_back(tau(DensityMatrix::trusted(pair_dims, std::move(ordered))).tau);
    }

    // tau(rho_{A:B1..Bn}) for the pure state: squared concurrence across the
    // cut with the A group in front.
    std::vector<std::size_t> perm_all(group_a.begin(), group_a.end());
    for (std::size_t s = 0; s < k; ++s)
        if (std::find(group_a.begin(), group_a.end(), s) == group_a.end())
            perm_all.push_back(s);
    const PureState fronted = permute_pure(psi, perm_all);
    r.tau_total = pure_concurrence_sq(fronted, group_a.size());

    const double sum = std::accumulate(r.per_pair.begin(), r.per_pair.end(), 0.0);
    r.satisfied = sum <= r.tau_total + 1e-9;
    return r;
}

Thm3Identity thm3_identity_check(const PureState& psi, std::size_t d1, std::size_t d2,
                                 std::size_t d3) {
    const PureState grouped = regroup_tripartite(psi, d1, d2, d3);
    const Matrix full = grouped.projector().mat();
    const DimsSpec& dims = grouped.dims();

    auto reduction = [&](std::initializer_list<std::size_t> keep) {
        const std::vector<std::size_t> ks(keep);
        return partial_trace(full, dims, ks);
    };

    auto lambda_sq_sum = [](const DensityMatrix& rho) {
        double s = 0.0;
        for (const SubspaceTerm& term : tau(rho).per_subspace)
            for (double lam : term.lambdas)
                s += lam * lam;
        return s;
    };

    const Matrix rho_a = reduction({0});
    const Matrix rho_b = reduction({1});
    const Matrix rho_c = reduction({2});

    Thm3Identity out;
    out.lhs_ab = lambda_sq_sum(
        DensityMatrix::trusted(DimsSpec{{d1, d2}}, reduction({0, 1})));
    out.lhs_ac = lambda_sq_sum(
        DensityMatrix::trusted(DimsSpec{{d1, d3}}, reduction({0, 2})));
    const double pa = purity(rho_a), pb = purity(rho_b), pc = purity(rho_c);
    out.rhs_ab = 1.0 - pa - pb + pc;
    out.rhs_ac = 1.0 - pa + pb - pc;
    return out;
}

} // namespace qtau
