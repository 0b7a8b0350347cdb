#include "doctest.h"

#include <cmath>

#include "qtau/criteria.hpp"
#include "test_helpers.hpp"

using namespace qtau;
using namespace qtau::testing;

TEST_CASE("is_ppt: product true, Bell false with -1/2, bound-entangled region") {
    const DensityMatrix mm = make_isotropic(2, 0.25); // maximally mixed
    CHECK(is_ppt(mm).first);

    const auto [bell_flag, bell_min] = is_ppt(bell_state().projector());
    CHECK_FALSE(bell_flag);
    CHECK(std::abs(bell_min + 0.5) < 1e-12);

    CHECK(is_ppt(make_horodecki_sigma(3.5)).first); // PPT yet entangled
    CHECK_FALSE(is_ppt(make_horodecki_sigma(4.5)).first);
}

TEST_CASE("ccnr_lower_bound: product zero, Bell one") {
    // pure product state: both norms equal 1 -> bound 0
    std::vector<Complex> prod(4, Complex{0, 0});
    prod[0] = 1.0;
    const DensityMatrix p = PureState(DimsSpec{{2, 2}}, prod).projector();
    CHECK(ccnr_lower_bound(p) < 1e-6);

    CHECK(std::abs(ccnr_lower_bound(bell_state().projector()) - 1.0) < 1e-9);
}

TEST_CASE("ccnr vs tau crossover sits inside (4.7, 4.9)") {
    double prev_gap = 0.0;
    double crossover = 0.0;
    for (int t = 0; t <= 200; ++t) {
        const double alpha = 4.0 + t * 0.005;
        const DensityMatrix s = make_horodecki_sigma(alpha);
        const double c = ccnr_lower_bound(s);
        const double gap = tau(s).tau - c * c;
        if (t > 0 && prev_gap < 0.0 && gap >= 0.0)
            crossover = alpha;
        prev_gap = gap;
    }
    CHECK(crossover > 4.7);
    CHECK(crossover < 4.9);
}

TEST_CASE("verdict: distillable isotropic, undistillable-at-1-copy Werner, product") {
    const Verdict iso = verdict(make_isotropic(3, 0.9));
    CHECK(iso.tau_positive);
    CHECK(iso.distillable);
    CHECK_FALSE(iso.ppt);

    const Verdict w3v = verdict(make_werner3(3.0), 1);
    CHECK_FALSE(w3v.tau_positive);
    CHECK_FALSE(w3v.ppt); // NPPT for the whole family
    CHECK_FALSE(w3v.distillable);
    CHECK(w3v.notes.find("undetermined") != std::string::npos);

    const DensityMatrix mm = make_isotropic(2, 0.25);
    const Verdict pv = verdict(mm);
    CHECK_FALSE(pv.tau_positive);
    CHECK(pv.ppt);
    CHECK(pv.notes.find("separability undetermined") != std::string::npos);
}

TEST_CASE("verdict: never tau-positive and PPT together on family grids") {
    for (int t = 0; t <= 30; ++t) {
        const Verdict v = verdict(make_horodecki_sigma(2.0 + t * 0.1));
        const bool both = v.tau_positive && v.ppt;
        CHECK_FALSE(both);
        if (v.tau_positive)
            CHECK(v.distillable);
    }
    for (int t = 0; t <= 20; ++t) {
        const Verdict v = verdict(make_isotropic(3, t * 0.05));
        const bool both = v.tau_positive && v.ppt;
        CHECK_FALSE(both);
    }
    for (int t = 0; t <= 25; ++t) {
        const Verdict v = verdict(make_werner3(0.5 + t * 0.1));
        const bool both = v.tau_positive && v.ppt;
        CHECK_FALSE(both);
    }
}

TEST_CASE("verdict: monotone in the copy budget") {
    for (double lam : {0.8, 1.4, 2.5}) {
        const DensityMatrix w = make_werner3(lam);
        const bool one = verdict(w, 1).distillable;
        const bool two = verdict(w, 2).distillable;
        if (one)
            CHECK(two);
    }
    CHECK_THROWS_AS(verdict(make_werner3(1.0), 0), InvalidInputError);
}
