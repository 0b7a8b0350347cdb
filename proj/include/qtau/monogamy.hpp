#pragma once

#include <vector>

#include "qtau/bound.hpp"

namespace qtau {

/// Tripartite monogamy breakdown for a pure state grouped as A|B|C.
/// residual = tau_a_bc - tau_ab - tau_ac; closed_form is the direct
/// coefficient expression for the same residual (they coincide exactly for
/// 2x2x2; elsewhere the gap is reported, not asserted away).
struct MonogamyReport {
    double tau_ab = 0.0;
    double tau_ac = 0.0;
    double tau_a_bc = 0.0;
    double residual = 0.0;
    double closed_form = 0.0;
    bool satisfied = false; ///< residual >= -1e-9
};

/// Per-pair breakdown for the partitioned inequality
/// sum_i tau(rho_{A Bi}) <= tau(rho_{A:B1..Bn}).
struct MultiMonogamyReport {
    std::vector<double> per_pair;
    double tau_total = 0.0;
    bool satisfied = false;
};

/// Both sides of the two trace identities from the tripartite proof:
/// lhs_ab = sum over quads of rho_AB of sum_i lambda_i^2, and
/// rhs_ab = 1 - Tr rho_A^2 - Tr rho_B^2 + Tr rho_C^2 (B and C swap roles
/// for the AC pair).
struct Thm3Identity {
    double lhs_ab = 0.0;
    double lhs_ac = 0.0;
    double rhs_ab = 0.0;
    double rhs_ac = 0.0;
};

/// Monogamy report for psi regrouped as (d1, d2, d3); each group may merge
/// several consecutive elementary subsystems.
MonogamyReport monogamy_tripartite(const PureState& psi, std::size_t d1, std::size_t d2,
                                   std::size_t d3);

/// Residual entanglement evaluated directly from the coefficients phi_{ijk}:
/// 4 * sum over ordered index pairs of |d1 - 2*d2 + 4*d3| (all products in
/// complex arithmetic, modulus last). Permutation invariant, nonnegative.
double residual_closed_form(const PureState& psi, std::size_t d1, std::size_t d2,
                            std::size_t d3);

/// Partitioned monogamy: `partition` lists disjoint covering groups of
/// subsystem indices, group 0 playing the role of A.
MultiMonogamyReport monogamy_multipartite(const PureState& psi,
                                          const std::vector<std::vector<std::size_t>>& partition);

Thm3Identity thm3_identity_check(const PureState& psi, std::size_t d1, std::size_t d2,
                                 std::size_t d3);

} // namespace qtau
