#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mixnorm/dyadic.hpp"

namespace mixnorm {

// Compactly supported step function on the positive orthant.
//
// The function is constant on an axis-aligned grid of cells covering the
// window [0, 2^K)^n.  Cells have per-axis width 2^{-J} / 3^d; depth d = 1
// refines each dyadic cell in thirds so that cubes from the shifted grids
// (offsets of a/3 of the side) land exactly on cell boundaries.  Values are
// stored dense in row-major order, first axis slowest.  Everything outside
// the window is zero.
class StepFunction {
public:
    StepFunction(int n, int J, int K, int d);
    static StepFunction indicator_unit_cube(int n, int J, int K, int d = 0);

    int dim() const { return n_; }
    int resolution() const { return J_; }
    int window_level() const { return K_; }
    int depth() const { return d_; }
    bool approximate() const { return approx_; }
    void set_approximate(bool flag) { approx_ = flag; }

    std::int64_t cells_per_axis() const { return M_; }
    std::int64_t total_cells() const { return static_cast<std::int64_t>(v_.size()); }
    double cell_width() const;
    double cell_volume() const;
    std::int64_t stride(int axis) const { return stride_[static_cast<size_t>(axis)]; }

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }
    double operator[](std::int64_t flat) const { return v_[static_cast<size_t>(flat)]; }
    double& operator[](std::int64_t flat) { return v_[static_cast<size_t>(flat)]; }

    std::int64_t flat_index(const std::array<std::int64_t, 3>& idx) const;
    std::array<std::int64_t, 3> multi_index(std::int64_t flat) const;
    // Coordinates of the center of a cell.
    std::array<double, 3> cell_center(std::int64_t flat) const;

    // Pointwise evaluation; returns 0 outside the window.
    double eval(const std::array<double, 3>& x) const;

    // Integral over the orthant (cell volume times the value sum).
    double integral() const;
    double max_abs() const;
    bool is_zero() const;

    // Throws if any stored value is non-finite.
    void check_finite() const;

    bool same_grid(const StepFunction& other) const;

private:
    int n_, J_, K_, d_;
    bool approx_ = false;
    std::int64_t M_;
    std::array<std::int64_t, 3> stride_{0, 0, 0};
    std::vector<double> v_;
};

// Half-open box of cell indices, one [lo, hi) pair per axis.
struct CellBox {
    std::array<std::int64_t, 3> lo{0, 0, 0};
    std::array<std::int64_t, 3> hi{0, 0, 0};
};

// Cell-index box covered by a cube, clipped to the window.  Requires the
// cube boundaries to fall on cell boundaries: level <= J always, and depth 1
// for cubes from a shifted grid.  The box may be empty after clipping.
CellBox cell_box(const StepFunction& f, const DyadicCube& q);

// Grid refinements; all are pointwise-exact rewrites of the same function.
StepFunction refine_dyadic(const StepFunction& f);            // J -> J+1
StepFunction refine_third(const StepFunction& f);             // d=0 -> d=1
StepFunction extend_window(const StepFunction& f, int K_new);  // K -> K_new >= K
StepFunction to_grid(const StepFunction& f, int J, int K, int d);

// result = f restricted to q (pointwise f * indicator of q).  Standard cubes
// finer than the grid refine the grid first; shifted cubes force depth 1.
StepFunction restrict_to_cube(const StepFunction& f, const DyadicCube& q);

// result(x) = f(2^k x): shrinks support for k > 0.  Pure relabeling of the
// grid (J += k, K -= k); requires K - k >= 0.
StepFunction dilate_dyadic(const StepFunction& f, int k);

// result(x) = f(x - 2^{-J} tau), tau >= 0 entrywise; the window grows as
// needed so no mass is lost.
StepFunction translate(const StepFunction& f, const std::array<std::int64_t, 3>& tau);

// One value per line after a "n J K d" header (plus "approx=1" when the
// values are marked approximate).  Doubles are printed shortest-round-trip,
// so serialize/parse/serialize is byte-identical.
std::string to_text(const StepFunction& f);
StepFunction from_text(const std::string& text);
void save_text(const StepFunction& f, const std::string& path);
StepFunction load_text(const std::string& path);

// Finite family of step functions on one shared grid.
class VectorStepFunction {
public:
    explicit VectorStepFunction(std::vector<StepFunction> components);

    int count() const { return static_cast<int>(comps_.size()); }
    const StepFunction& operator[](int k) const { return comps_[static_cast<size_t>(k)]; }
    StepFunction& operator[](int k) { return comps_[static_cast<size_t>(k)]; }
    const StepFunction& grid() const { return comps_.front(); }

private:
    std::vector<StepFunction> comps_;
};

// Cellwise l^u combination (sum_k |f_k|^u)^{1/u}; u = inf takes the max.
StepFunction ell_u_combine(const VectorStepFunction& fv, double u);

}  // namespace mixnorm
