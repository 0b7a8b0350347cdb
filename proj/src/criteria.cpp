#include "qtau/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace qtau {

namespace {
constexpr double kTauPositiveTol = 1e-9;
}

std::pair<bool, double> is_ppt(const DensityMatrix& rho, double tol) {
    if (!rho.dims().bipartite())
        throw InvalidInputError("is_ppt: bipartite state required");
    const Matrix pt = partial_transpose(rho.mat(), rho.dims(), 0);
    const EigenResult eig = hermitian_eigen(pt);
    const double min_eig = eig.eigenvalues.front();
    return {min_eig >= -tol, min_eig};
}

double ccnr_lower_bound(const DensityMatrix& rho) {
    if (!rho.dims().bipartite())
        throw InvalidInputError("ccnr_lower_bound: bipartite state required");
    const double realigned = realign_trace_norm(rho.mat(), rho.dims());
    const double pt_norm = trace_norm(partial_transpose(rho.mat(), rho.dims(), 0));
    const double m = static_cast<double>(std::min(rho.dims().factor(0), rho.dims().factor(1)));
    const double excess = std::max(realigned, pt_norm) - 1.0;
    return std::sqrt(2.0 / (m * (m - 1.0))) * std::max(0.0, excess);
}

Verdict verdict(const DensityMatrix& rho, std::size_t copies) {
    if (copies < 1)
        throw InvalidInputError("verdict: copies must be >= 1");

    Verdict v;
    v.copies_checked = copies;

    const TauReport single = tau(rho);
    v.tau_value = single.tau;
    v.tau_positive = single.tau > kTauPositiveTol;
    v.distillable = v.tau_positive;
    std::size_t fired_at = v.tau_positive ? 1 : 0;
    for (std::size_t n = 2; n <= copies && !v.distillable; ++n) {
        if (tau_power(rho, n).tau > kTauPositiveTol) {
            v.distillable = true;
            fired_at = n;
        }
    }

    const auto [ppt_flag, min_eig] = is_ppt(rho);
    v.ppt = ppt_flag;
    v.ppt_min_eigenvalue = min_eig;
    v.ccnr_bound = ccnr_lower_bound(rho);

    if (v.distillable)
        v.notes = "distillable: tau(rho^" + std::to_string(fired_at) + ") > 0";
    else if (v.ppt)
        v.notes = "separability undetermined: tau = 0 and PPT holds";
    else
        v.notes = "NPPT with tau = 0 up to " + std::to_string(copies) +
                  " copies: distillability undetermined";
    return v;
}

} // namespace qtau
