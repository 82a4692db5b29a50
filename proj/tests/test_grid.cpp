#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mixnorm/dyadic.hpp"
#include "mixnorm/exponents.hpp"
#include "mixnorm/prng.hpp"
#include "mixnorm/step_function.hpp"

using namespace mixnorm;

namespace {

StepFunction random_function(int n, int J, int K, std::uint64_t seed, int d = 0) {
    StepFunction f(n, J, K, d);
    Rng rng(seed);
    for (std::int64_t i = 0; i < f.total_cells(); ++i)
        if (rng.next_unit() < 0.7) f[i] = rng.next_in(-2.0, 2.0);
    return f;
}

}  // namespace

TEST_CASE("grid geometry and indexing") {
    const StepFunction f(2, 2, 1, 0);
    CHECK(f.cells_per_axis() == 8);  // window [0,2), cell width 1/4
    CHECK(f.total_cells() == 64);
    CHECK(f.cell_width() == 0.25);
    CHECK(f.cell_volume() == 0.0625);
    CHECK(f.stride(0) == 8);  // first axis slowest
    CHECK(f.stride(1) == 1);

    for (std::int64_t flat : {std::int64_t{0}, std::int64_t{13}, std::int64_t{63}}) {
        const auto idx = f.multi_index(flat);
        CHECK(f.flat_index(idx) == flat);
    }
    const auto c = f.cell_center(f.flat_index({3, 5, 0}));
    CHECK(c[0] == doctest::Approx(0.875));
    CHECK(c[1] == doctest::Approx(1.375));
}

TEST_CASE("depth-1 grids use third-width cells") {
    const StepFunction f(1, 1, 1, 1);
    CHECK(f.cells_per_axis() == 12);  // 4 dyadic cells, each split in thirds
    CHECK(f.cell_width() == doctest::Approx(0.5 / 3.0));
}

TEST_CASE("unit cube indicator") {
    const StepFunction f = StepFunction::indicator_unit_cube(2, 2, 2);
    CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.eval({0.3, 0.7, 0.0}) == 1.0);
    CHECK(f.eval({1.3, 0.7, 0.0}) == 0.0);
    CHECK(f.eval({0.3, 3.999, 0.0}) == 0.0);
    CHECK(f.eval({-0.1, 0.5, 0.0}) == 0.0);  // outside the window
    CHECK(f.max_abs() == 1.0);
    CHECK_FALSE(f.is_zero());
    CHECK(StepFunction(1, 2, 2, 0).is_zero());
}

TEST_CASE("refinements are pointwise exact") {
    const StepFunction f = random_function(2, 2, 1, 7);
    const StepFunction fine = refine_dyadic(f);
    const StepFunction third = refine_third(f);
    const StepFunction wide = extend_window(f, 3);

    CHECK(fine.resolution() == 3);
    CHECK(third.depth() == 1);
    CHECK(wide.window_level() == 3);
    CHECK(fine.integral() == doctest::Approx(f.integral()).epsilon(1e-14));

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const std::array<double, 3> x{rng.next_in(0, 4), rng.next_in(0, 4), 0};
        const double v = f.eval(x);
        CHECK(fine.eval(x) == v);
        CHECK(third.eval(x) == v);
        CHECK(wide.eval(x) == v);
    }
    CHECK(wide.eval({5.0, 5.0, 0.0}) == 0.0);

    const StepFunction both = to_grid(f, 4, 3, 1);
    CHECK(both.resolution() == 4);
    CHECK(both.window_level() == 3);
    CHECK(both.depth() == 1);
    CHECK(both.eval({1.26, 0.51, 0}) == f.eval({1.26, 0.51, 0}));
}

TEST_CASE("restrict_to_cube zeroes the complement") {
    const StepFunction f = random_function(2, 2, 1, 3);
    DyadicCube q;
    q.n = 2;
    q.level = 1;
    q.index = {1, 2, 0};  // [1/2,1) x [1,3/2)
    const StepFunction g = restrict_to_cube(f, q);
    CHECK(g.eval({0.6, 1.2, 0}) == f.eval({0.6, 1.2, 0}));
    CHECK(g.eval({0.4, 1.2, 0}) == 0.0);
    CHECK(g.eval({0.6, 0.9, 0}) == 0.0);

    DyadicCube shifted = q;
    shifted.shift = GridShift{1, 0, 0};  // offset 1/6 on axis 0
    const StepFunction h = restrict_to_cube(f, shifted);
    CHECK(h.depth() == 1);
    CHECK(h.eval({0.55, 1.2, 0}) == 0.0);                       // left of 1/2 + 1/6
    CHECK(h.eval({0.7, 1.2, 0}) == f.eval({0.7, 1.2, 0}));      // inside
    CHECK(h.eval({1.1, 1.2, 0}) == f.eval({1.1, 1.2, 0}));      // still inside
    CHECK(h.eval({1.2, 1.2, 0}) == 0.0);                        // right of 1 + 1/6
}

TEST_CASE("dilate_dyadic relabels the grid") {
    const StepFunction f = random_function(1, 1, 2, 5);
    const StepFunction g = dilate_dyadic(f, 1);  // g(x) = f(2x)
    CHECK(g.resolution() == 2);
    CHECK(g.window_level() == 1);
    Rng rng(2);
    for (int i = 0; i < 30; ++i) {
        const double x = rng.next_in(0, 2);
        CHECK(g.eval({x, 0, 0}) == f.eval({2 * x, 0, 0}));
    }
    CHECK(g.integral() == doctest::Approx(0.5 * f.integral()).epsilon(1e-14));
    CHECK_THROWS_AS((void)dilate_dyadic(f, 3), std::invalid_argument);
}

TEST_CASE("translate moves mass without losing it") {
    const StepFunction f = random_function(2, 1, 1, 9);
    const StepFunction g = translate(f, {3, 1, 0});  // shift by (3/2, 1/2)
    CHECK(g.integral() == doctest::Approx(f.integral()).epsilon(1e-14));
    CHECK(g.window_level() >= f.window_level());
    CHECK(g.eval({1.8, 0.8, 0}) == f.eval({0.3, 0.3, 0}));
    CHECK(g.eval({0.2, 0.2, 0}) == 0.0);  // below the shift
}

TEST_CASE("serialization round-trips byte-identically") {
    StepFunction f = random_function(2, 2, 1, 21);
    f[5] = 1.0 / 3.0;
    f[6] = 1e-17;
    const std::string text = to_text(f);
    const StepFunction back = from_text(text);
    CHECK(back.same_grid(f));
    for (std::int64_t i = 0; i < f.total_cells(); ++i) CHECK(back[i] == f[i]);
    CHECK(to_text(back) == text);

    StepFunction approx = f;
    approx.set_approximate(true);
    const StepFunction back2 = from_text(to_text(approx));
    CHECK(back2.approximate());
    CHECK_FALSE(back.approximate());

    CHECK_THROWS(from_text("2 2 1 0\n1.0\n"));            // too few values
    CHECK_THROWS(from_text(text + "0.5\n"));              // trailing junk
    CHECK_THROWS(from_text("1 0 0 0\nnot-a-number\n"));
}

TEST_CASE("dyadic cube corners and containment") {
    DyadicCube q;
    q.n = 1;
    q.level = 1;
    q.index = {3, 0, 0};
    CHECK(q.side() == 0.5);
    CHECK(q.lower(0) == 1.5);
    CHECK(q.upper(0) == 2.0);

    DyadicCube parent;
    parent.n = 1;
    parent.level = 0;
    parent.index = {1, 0, 0};
    CHECK(parent.contains(q));
    CHECK_FALSE(q.contains(parent));

    DyadicCube shifted;
    shifted.n = 1;
    shifted.level = 0;
    shifted.index = {1, 0, 0};
    shifted.shift = GridShift{2, 0, 0};
    CHECK(shifted.lower(0) == doctest::Approx(1.0 + 2.0 / 3.0));
    CHECK_FALSE(parent.contains(shifted));
}

TEST_CASE("cube enumeration covers the window") {
    CHECK(cubes_intersecting_window(1, 0, 1).size() == 2);
    CHECK(cubes_intersecting_window(1, -1, 1).size() == 1);
    CHECK(cubes_intersecting_window(1, -5, 1).size() == 1);
    CHECK(cubes_intersecting_window(2, 1, 1).size() == 16);
    // shifted grids need one extra cube per axis to cover the window
    CHECK(cubes_intersecting_window(1, 0, 1, GridShift{1, 0, 0}).size() == 3);
    CHECK(cubes_intersecting_window(2, 0, 1, GridShift{1, 2, 0}).size() == 9);

    const StepFunction f(1, 2, 1, 0);
    for (const DyadicCube& q : cubes_intersecting_window(1, 2, 1)) {
        const CellBox box = cell_box(f, q);
        CHECK(box.hi[0] - box.lo[0] == 1);  // level J cube = one cell
    }
    DyadicCube shifted;
    shifted.n = 1;
    shifted.level = 0;
    shifted.index = {0, 0, 0};
    shifted.shift = GridShift{1, 0, 0};
    CHECK_THROWS(cell_box(f, shifted));  // depth-0 grid cannot resolve thirds

    const StepFunction g(1, 2, 1, 1);
    const CellBox box = cell_box(g, shifted);
    // [1/3, 4/3) in cells of width 1/12
    CHECK(box.lo[0] == 4);
    CHECK(box.hi[0] == 16);
}

TEST_CASE("ell_u_combine is a cellwise l^u norm") {
    StepFunction a(1, 0, 1, 0), b(1, 0, 1, 0);
    a[0] = 3.0;
    b[0] = -4.0;
    a[1] = -1.0;
    b[1] = 1.0;
    const VectorStepFunction v({a, b});
    const StepFunction two = ell_u_combine(v, 2.0);
    CHECK(two[0] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(two[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const StepFunction sup = ell_u_combine(v, kInf);
    CHECK(sup[0] == 4.0);
    CHECK(sup[1] == 1.0);

    const StepFunction other(1, 1, 1, 0);
    CHECK_THROWS_AS(VectorStepFunction({a, other}), std::invalid_argument);
}
