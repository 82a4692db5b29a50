#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "mixnorm/norms.hpp"
#include "mixnorm/prng.hpp"
#include "mixnorm/step_function.hpp"

using namespace mixnorm;

namespace {

// ---- independent oracles ----------------------------------------------------

// Plain l^p step norm of a value list with cell width h.
double step_norm(const std::vector<double>& vals, double h, double p) {
    if (p == kInf) {
        double m = 0;
        for (double v : vals) m = std::max(m, std::fabs(v));
        return m;
    }
    double s = 0;
    for (double v : vals) s += std::pow(std::fabs(v), p);
    return std::pow(h * s, 1.0 / p);
}

double oracle_mixed1(const StepFunction& f, double p0) {
    return step_norm(f.values(), f.cell_width(), p0);
}

// Iterated norm via explicit loops: axis 0 innermost, then axis 1.
double oracle_mixed2(const StepFunction& f, double p0, double p1) {
    const std::int64_t m = f.cells_per_axis();
    std::vector<double> per_row;
    for (std::int64_t i1 = 0; i1 < m; ++i1) {
        std::vector<double> row;
        for (std::int64_t i0 = 0; i0 < m; ++i0) row.push_back(f[f.flat_index({i0, i1, 0})]);
        per_row.push_back(step_norm(row, f.cell_width(), p0));
    }
    return step_norm(per_row, f.cell_width(), p1);
}

// Norm of the unit-cube indicator by direct summation of the cube series:
// 2^{ln} equal fine-cube terms per level l >= 0 and one coarse cube per
// level below zero.
double oracle_chi_norm(int n, const ExponentVector& pbar, double t, double r) {
    const double sigma = pbar.mean_reciprocal();
    if (r == kInf) {
        double best = 0;
        for (int l = 0; l <= 600; ++l) best = std::max(best, std::exp2(-l * n / t));
        for (int m = 1; m <= 600; ++m)
            best = std::max(best, std::exp2(m * n * (1.0 / t - sigma)));
        return best;
    }
    double fine = 0;
    for (int l = 0; l <= 100000; ++l) {
        const double term = std::exp2(l * n * (1.0 - r / t));
        fine += term;
        if (term < 1e-22 * fine) break;
    }
    double coarse = 0;
    for (int m = 1; m <= 100000; ++m) {
        const double term = std::exp2(m * n * r * (1.0 / t - sigma));
        coarse += term;
        if (term < 1e-22 * coarse) break;
    }
    return std::pow(fine + coarse, 1.0 / r);
}

StepFunction random_function(int n, int J, int K, std::uint64_t seed) {
    StepFunction f(n, J, K, 0);
    Rng rng(seed);
    for (std::int64_t i = 0; i < f.total_cells(); ++i)
        if (rng.next_unit() < 0.7) f[i] = rng.next_in(-2.0, 2.0);
    return f;
}

StepFunction ones(int n, int J, int K) {
    StepFunction f(n, J, K, 0);
    for (double& v : f.values()) v = 1.0;
    return f;
}

}  // namespace

TEST_CASE("mixed norm matches the loop oracle") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const StepFunction f1 = random_function(1, 2, 1, seed);
        for (double p : {1.0, 1.5, 2.0, 4.0, kInf})
            CHECK(mixed_norm(f1, ExponentVector({p})) ==
                  doctest::Approx(oracle_mixed1(f1, p)).epsilon(1e-13));

        const StepFunction f2 = random_function(2, 2, 1, seed + 10);
        for (auto [p0, p1] : std::vector<std::pair<double, double>>{
                 {1, 1}, {2, 4}, {4, 1.5}, {kInf, 2}, {2, kInf}, {kInf, kInf}})
            CHECK(mixed_norm(f2, ExponentVector({p0, p1})) ==
                  doctest::Approx(oracle_mixed2(f2, p0, p1)).epsilon(1e-13));
    }
}

TEST_CASE("mixed norm factorizes on tensor products") {
    Rng rng(77);
    StepFunction a(1, 2, 1, 0), b(1, 2, 1, 0);
    for (std::int64_t i = 0; i < a.total_cells(); ++i) {
        a[i] = rng.next_in(-1.0, 1.0);
        b[i] = rng.next_in(-1.0, 1.0);
    }
    StepFunction f(2, 2, 1, 0);
    for (std::int64_t i0 = 0; i0 < f.cells_per_axis(); ++i0)
        for (std::int64_t i1 = 0; i1 < f.cells_per_axis(); ++i1)
            f[f.flat_index({i0, i1, 0})] = a[i0] * b[i1];
    // the inner axis carries a, the outer carries b
    for (auto [p0, p1] : std::vector<std::pair<double, double>>{{2, 4}, {1, kInf}, {3, 1.5}})
        CHECK(mixed_norm(f, ExponentVector({p0, p1})) ==
              doctest::Approx(oracle_mixed1(a, p0) * oracle_mixed1(b, p1)).epsilon(1e-13));
}

TEST_CASE("mixed norm is order sensitive") {
    // two cells stacked along axis 0 only
    StepFunction f(2, 0, 1, 0);
    f[f.flat_index({0, 0, 0})] = 1.0;
    f[f.flat_index({1, 0, 0})] = 1.0;
    CHECK(mixed_norm(f, ExponentVector({1, kInf})) == doctest::Approx(2.0));
    CHECK(mixed_norm(f, ExponentVector({kInf, 1})) == doctest::Approx(1.0));
}

TEST_CASE("cube indicators have norm |Q|^sigma") {
    const std::vector<ExponentVector> exponents = {
        ExponentVector({2, 4}), ExponentVector({1, 1}),   ExponentVector({kInf, 2}),
        ExponentVector({3, 8}), ExponentVector({2, kInf})};
    const StepFunction one = ones(2, 2, 2);
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int level = -2 + static_cast<int>(rng.next_below(5));
        const auto cubes = cubes_intersecting_window(2, level, 2);
        const DyadicCube q = cubes[static_cast<size_t>(rng.next_below(cubes.size()))];
        const StepFunction chi = restrict_to_cube(one, q);
        for (const ExponentVector& p : exponents) {
            const double expect = std::pow(q.volume(), p.mean_reciprocal());
            CHECK(mixed_norm(chi, p) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("mixed_norm_box restricts the domain") {
    const StepFunction f = random_function(2, 2, 1, 9);
    const ExponentVector p({2, 4});
    CellBox all;
    all.hi = {8, 8, 0};
    CHECK(mixed_norm_box(f, p, all) == doctest::Approx(mixed_norm(f, p)).epsilon(1e-14));
    CellBox empty;
    CHECK(mixed_norm_box(f, p, empty) == 0.0);

    // box = left half against a manually zeroed copy
    CellBox half;
    half.hi = {4, 8, 0};
    StepFunction g = f;
    for (std::int64_t i = 0; i < g.total_cells(); ++i)
        if (g.multi_index(i)[0] >= 4) g[i] = 0.0;
    CHECK(mixed_norm_box(f, p, half) == doctest::Approx(mixed_norm(g, p)).epsilon(1e-13));
}

TEST_CASE("partial reduction leaves the outer axes") {
    const StepFunction f = random_function(2, 2, 1, 13);
    const ExponentVector p({2, 4});
    const StepFunction full = mixed_norm_partial(f, p, 2);
    CHECK(full.dim() == 0);
    CHECK(full[0] == doctest::Approx(mixed_norm(f, p)).epsilon(1e-14));

    const StepFunction rows = mixed_norm_partial(f, p, 1);
    CHECK(rows.dim() == 1);
    for (std::int64_t i1 = 0; i1 < f.cells_per_axis(); ++i1) {
        std::vector<double> row;
        for (std::int64_t i0 = 0; i0 < f.cells_per_axis(); ++i0)
            row.push_back(f[f.flat_index({i0, i1, 0})]);
        CHECK(rows[i1] == doctest::Approx(step_norm(row, f.cell_width(), 2.0)).epsilon(1e-13));
    }
}

TEST_CASE("regime classification") {
    // n = 2, pbar = (2,4): critical t = 2 / (1/2 + 1/4) = 8/3
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    CHECK(sp.regime == Regime::NontrivialFinite);
    CHECK(sp.critical_t() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(SpaceParams::make(ExponentVector({2, 4}), 4.0, kInf).regime ==
          Regime::NontrivialMorrey);
    CHECK(SpaceParams::make(ExponentVector({2, 4}), 8.0 / 3.0, kInf).regime ==
          Regime::NontrivialMorrey);  // t = critical allowed when r = inf
    CHECK(SpaceParams::make(ExponentVector({2, 4}), 8.0 / 3.0, 8.0).regime ==
          Regime::Degenerate);  // strict inequality needed for finite r
    CHECK(SpaceParams::make(ExponentVector({2, 4}), 4.0, 3.0).regime ==
          Regime::Degenerate);  // r <= t
    CHECK(SpaceParams::make(ExponentVector({2, 4}), 2.0, 8.0).regime ==
          Regime::Degenerate);  // t below critical
}

TEST_CASE("unit cube norm matches the series oracle") {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    const StepFunction chi = StepFunction::indicator_unit_cube(2, 2, 2);
    const double expect = std::pow(5.0 / 3.0, 0.125);
    CHECK(bm_norm(chi, sp) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(chi_bm_closed_form(sp) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(oracle_chi_norm(2, sp.pbar, sp.t, sp.r) == doctest::Approx(expect).epsilon(1e-10));

    struct Tuple {
        int n;
        std::vector<double> p;
        double t, r;
    };
    const std::vector<Tuple> lattice = {
        {1, {2}, 3, 6},         {1, {1.5}, 2, 4},      {2, {2, 2}, 3, 6},
        {2, {4, 4}, 5, 10},     {2, {1, kInf}, 3, 9},  {3, {2, 2, 2}, 2.5, 5},
        {3, {2, 4, 8}, 4, 8},   {2, {2, 4}, 4, kInf},  {1, {2}, 2, kInf},
        {2, {2, 4}, 8.0 / 3.0, kInf}};
    for (const Tuple& tc : lattice) {
        const SpaceParams params =
            SpaceParams::make(ExponentVector(tc.p), tc.t, tc.r);
        REQUIRE(params.nontrivial());
        const StepFunction ind = StepFunction::indicator_unit_cube(tc.n, 1, 1);
        const double oracle = oracle_chi_norm(tc.n, params.pbar, tc.t, tc.r);
        CHECK(bm_norm(ind, params) == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(chi_bm_closed_form(params) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("degenerate spaces hold only zero") {
    const SpaceParams bad = SpaceParams::make(ExponentVector({2, 4}), 2.0, 8.0);
    CHECK(bm_norm(StepFunction(2, 1, 1, 0), bad) == 0.0);
    CHECK(bm_norm(StepFunction::indicator_unit_cube(2, 1, 1), bad) == kInf);
}

TEST_CASE("r = inf recovers the sup-over-cubes norm") {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, kInf);
    const StepFunction chi = StepFunction::indicator_unit_cube(2, 2, 2);
    CHECK(bm_norm(chi, sp) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(morrey_norm(chi, sp) == doctest::Approx(1.0).epsilon(1e-12));
    const StepFunction f = random_function(2, 2, 2, 31);
    CHECK(bm_norm(f, sp) == doctest::Approx(morrey_norm(f, sp)).epsilon(1e-12));
}

TEST_CASE("norm scaling laws") {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    const StepFunction f = random_function(2, 2, 2, 17);
    CHECK(bm_norm(f, sp) > 0);
    // absolute homogeneity
    StepFunction g = f;
    for (double& v : g.values()) v *= -2.5;
    CHECK(bm_norm(g, sp) == doctest::Approx(2.5 * bm_norm(f, sp)).epsilon(1e-12));
    // dyadic dilation: f(2^k x) scales by 2^{-kn/t}
    for (int k : {1, 2}) {
        const double expect = std::exp2(-k * 2.0 / sp.t) * bm_norm(f, sp);
        CHECK(bm_norm(dilate_dyadic(f, k), sp) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("norm brackets enclose the exact value") {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    const StepFunction f = random_function(2, 2, 2, 23);
    const double exact = bm_norm(f, sp);

    double prev_width = kInf;
    for (int cut : {2, 3, 5, 8}) {
        const NormBracket nb = bm_norm_bracket(f, sp, cut);
        CHECK(nb.lower <= exact * (1 + 1e-12));
        CHECK(exact <= nb.upper * (1 + 1e-12));
        const double width = nb.upper - nb.lower;
        CHECK(width <= prev_width * (1 + 1e-12));
        prev_width = width;
    }
    CHECK(prev_width < 1e-6 * exact);  // deep cuts pinch the bracket

    // depth-1 rewrite of the same function: bracket still encloses the value
    const NormBracket nb1 = bm_norm_bracket(refine_third(f), sp, 5);
    CHECK(nb1.lower <= exact * (1 + 1e-12));
    CHECK(exact <= nb1.upper * (1 + 1e-12));

    const NormBracket shifted = bm_norm_shifted_bracket(f, sp, GridShift{1, 2, 0}, 5);
    CHECK(shifted.lower > 0);
    CHECK(shifted.lower <= shifted.upper);
    CHECK_THROWS(bm_norm(refine_third(f), sp));  // exact path needs depth 0
}

TEST_CASE("vector norms combine cellwise") {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    const StepFunction f = random_function(2, 2, 2, 29);
    StepFunction af = f;
    for (double& v : af.values()) v = std::fabs(v);
    CHECK(vector_bm_norm(VectorStepFunction({f}), sp, 2.0) ==
          doctest::Approx(bm_norm(af, sp)).epsilon(1e-13));
    // two equal components: l^2 combination multiplies by sqrt(2)
    CHECK(vector_bm_norm(VectorStepFunction({f, f}), sp, 2.0) ==
          doctest::Approx(std::sqrt(2.0) * bm_norm(af, sp)).epsilon(1e-12));
}

TEST_CASE("slice norms of the unit cube") {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    const StepFunction chi = StepFunction::indicator_unit_cube(2, 2, 2);
    // level 0: single cube with ||chi||_{p'} = 1 and unit weight
    CHECK(slice_norm(chi, 0, sp) == doctest::Approx(1.0).epsilon(1e-12));
    // level 1: four quarter-volume cubes inside the support combine to 4^{1/8}
    CHECK(slice_norm(chi, 1, sp) == doctest::Approx(std::pow(4.0, 0.125)).epsilon(1e-12));
}

TEST_CASE("conjugate exponents") {
    CHECK(conjugate_exponent(1.0) == kInf);
    CHECK(conjugate_exponent(kInf) == 1.0);
    CHECK(conjugate_exponent(2.0) == 2.0);
    CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    const ExponentVector p({2, 4});
    const ExponentVector q = p.conjugate();
    CHECK(q[0] == 2.0);
    CHECK(q[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}
