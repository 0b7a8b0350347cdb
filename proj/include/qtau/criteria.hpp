#pragma once

#include <string>

#include "qtau/bound.hpp"

namespace qtau {

/// Separability/distillability findings for one state. `distillable` records
/// that the sufficient condition tau(rho^{⊗N}) > 0 fired for some N up to the
/// requested copy count; its absence is never a nondistillability claim.
struct Verdict {
    bool tau_positive = false;
    bool ppt = false;
    double ccnr_bound = 0.0;
    bool distillable = false;
    std::string notes;

    // diagnostics
    double tau_value = 0.0;
    double ppt_min_eigenvalue = 0.0;
    std::size_t copies_checked = 1;
};

/// PPT test: true iff the minimum eigenvalue of the partial transpose is
/// >= -tol. Returns the flag together with that eigenvalue.
std::pair<bool, double> is_ppt(const DensityMatrix& rho, double tol = 1e-9);

/// Concurrence lower bound sqrt(2/(m(m-1))) * max(0, max(||R(rho)||, ||rho^{T_A}||) - 1)
/// with m = min(d1, d2): the realignment/PPT-based bound used for
/// cross-comparison with tau.
double ccnr_lower_bound(const DensityMatrix& rho);

/// Full verdict: tau (up to `copies` tensor powers), PPT, CCNR bound.
/// tau = 0 with PPT leaves separability undetermined (noted as such).
Verdict verdict(const DensityMatrix& rho, std::size_t copies = 1);

} // namespace qtau
