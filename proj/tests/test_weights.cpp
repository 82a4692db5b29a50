#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mixnorm/exponents.hpp"
#include "mixnorm/weights.hpp"

using namespace mixnorm;

namespace {

constexpr double kInfinity = mixnorm::kInf;

AxisWeightProfile mchi_power(double s) {
    // (M chi_{[0,1)})^s: 1 on [0,1), x^{-s} beyond
    return AxisWeightProfile({WeightPiece{0.0, 1.0, 1.0, 0.0, 0.0},
                              WeightPiece{1.0, kInfinity, 1.0, 0.0, -s}});
}

// Midpoint quadrature oracle for integral_pow on an interval away from s0.
double riemann_pow(const AxisWeightProfile& w, double q, double x0, double x1) {
    const int panels = 200000;
    const double h = (x1 - x0) / panels;
    double sum = 0;
    for (int i = 0; i < panels; ++i)
        sum += std::pow(w.eval(x0 + (i + 0.5) * h), q);
    return sum * h;
}

}  // namespace

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(AxisWeightProfile({}), std::invalid_argument);
    // must start at 0
    CHECK_THROWS_AS(AxisWeightProfile({WeightPiece{1, kInfinity, 1, 0, 0}}),
                    std::invalid_argument);
    // must reach +inf
    CHECK_THROWS_AS(AxisWeightProfile({WeightPiece{0, 5, 1, 0, 0}}), std::invalid_argument);
    // no gaps
    CHECK_THROWS_AS(AxisWeightProfile({WeightPiece{0, 1, 1, 0, 0},
                                       WeightPiece{2, kInfinity, 1, 0, 0}}),
                    std::invalid_argument);
    // positive scale
    CHECK_THROWS_AS(AxisWeightProfile({WeightPiece{0, kInfinity, 0, 0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("evaluation and closed-form integrals") {
    const AxisWeightProfile w = mchi_power(0.5);
    CHECK(w.eval(0.5) == 1.0);
    CHECK(w.eval(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.eval(9.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // closed forms against quadrature, away from the singular center
    CHECK(w.integral_pow(1.0, 0.25, 3.0) ==
          doctest::Approx(riemann_pow(w, 1.0, 0.25, 3.0)).epsilon(1e-9));
    CHECK(w.integral_pow(2.0, 1.0, 8.0) ==
          doctest::Approx(riemann_pow(w, 2.0, 1.0, 8.0)).epsilon(1e-9));

    // exact endpoints: integral of x^{-1/2} over [1,4] is 2
    CHECK(w.integral_pow(1.0, 1.0, 4.0) == doctest::Approx(2.0).epsilon(1e-14));
    // log case: integral of x^{-2 * (-1/2 * -1)}... use beta*q = -1 directly
    CHECK(w.integral_pow(2.0, 1.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-13));

    const AxisWeightProfile sq = mchi_power(2.0);
    // the singular center sits outside the x^{-2} piece, so this is finite
    CHECK(sq.integral_pow(1.0, 0.0, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(sq.integral_pow(1.0, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));

    // a piece whose own domain touches its center with beta*q <= -1 diverges
    const AxisWeightProfile div({WeightPiece{0, 1, 1, 0, -2},
                                 WeightPiece{1, kInfinity, 1, 0, 0}});
    CHECK_THROWS_AS(div.integral_pow(1.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(div.integral_pow(0.5, 0.0, 0.5), std::invalid_argument);
    // away from the center even that piece integrates
    CHECK(div.integral_pow(1.0, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("average, sup and inf") {
    const AxisWeightProfile w = mchi_power(0.5);
    CHECK(w.average(0.0, 4.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(w.inf(0.0, 4.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w.sup(0.0, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w.sup(2.0, 5.0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));

    const AxisWeightProfile c = AxisWeightProfile::constant(3.0);
    CHECK(c.average(0.1, 7.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(c.sup(0, 100) == 3.0);
    CHECK(c.inf(0, 100) == 3.0);
}

TEST_CASE("tensor maximal profile of a box indicator") {
    // axis profile of (M chi_{[1,2)})^{1/2}: 1 on [1,2), decay off it
    const auto profiles = mit_chi_weight({1, 0, 0}, {2, 1, 0}, 1, 0.5);
    REQUIRE(profiles.size() == 1);
    const AxisWeightProfile& w = profiles[0];
    CHECK(w.eval(1.5) == doctest::Approx(1.0).epsilon(1e-15));
    // right of the interval: M chi (x) = 1/(x - 1), so w = (x-1)^{-1/2}
    CHECK(w.eval(3.0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-13));
    CHECK(w.eval(10.0) == doctest::Approx(std::pow(9.0, -0.5)).epsilon(1e-13));
    // left of the interval: M chi (x) = 1/(2 - x)
    CHECK(w.eval(0.5) == doctest::Approx(std::pow(1.5, -0.5)).epsilon(1e-13));
    // dominates the indicator everywhere
    for (double x : {0.2, 0.7, 1.0, 1.7, 2.5, 6.0})
        CHECK(w.eval(x) >= (x >= 1.0 && x < 2.0 ? 1.0 : 0.0));

    CHECK_THROWS_AS(mit_chi_weight({0, 0, 0}, {1, 0, 0}, 1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(mit_chi_weight({2, 0, 0}, {1, 0, 0}, 1, 0.5), std::invalid_argument);
}

TEST_CASE("dyadic average-to-inf ratios") {
    CHECK(a1_ratio(AxisWeightProfile::constant(2.0), 2, -2, 2) ==
          doctest::Approx(1.0).epsilon(1e-14));

    // (M chi)^{1/2}: worst interval in [0,4) is the whole window, ratio 1.5
    const AxisWeightProfile half = mchi_power(0.5);
    CHECK(a1_ratio(half, 2, -2, -2) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(a1_ratio(half, 2, -2, 2) == doctest::Approx(1.5).epsilon(1e-13));
    // stays bounded when the window widens (the power is integrable)
    CHECK(a1_ratio(half, 6, -6, 2) < 4.0);

    // (M chi)^2: the ratio grows roughly linearly with the window width
    const AxisWeightProfile sq = mchi_power(2.0);
    const double narrow = a1_ratio(sq, 2, -2, 2);
    const double wide = a1_ratio(sq, 4, -4, 2);
    CHECK(std::isfinite(narrow));
    CHECK(wide >= 1.5 * narrow);

    // weight vanishing on a set of positive measure: ratio inf
    const AxisWeightProfile degenerate = AxisWeightProfile(
        {WeightPiece{0, 1, 1, 0, 0}, WeightPiece{1, kInfinity, 1, 2, 4}});
    CHECK(a1_ratio(degenerate, 1, -1, 0) == kInfinity);
}
