#pragma once

#include "mixnorm/step_function.hpp"

namespace mixnorm {

// Conditional expectation onto the level-k dyadic cubes: cube averages of
// f.  Identity for k >= J; for k < -K the window grows to 2^{-k} so the
// single averaging cube stays inside it.  Depth-0 input; mass-preserving
// and linear.
StepFunction cond_expect(const StepFunction& f, int k);

// Cellwise max of cond_expect(f, k) over k in [-K, J].  k = J reproduces f
// itself; cubes coarser than the window only dilute a fixed total mass, so
// for nonnegative f the sup over all k <= J is attained in this range.
StepFunction doob_maximal(const StepFunction& f);

// Cellwise max over the cubes of one shifted dyadic family (levels
// [-K-2, J]) of the cube average of |f|.  Averages use the full cube
// volume; f vanishes outside the window.  Output lives on the depth-1 grid.
StepFunction dyadic_maximal_shifted(const StepFunction& f, const GridShift& shift);

// Cellwise max of dyadic_maximal_shifted over all 3^n shifts: a computable
// lower proxy for the Hardy-Littlewood maximal function, since every cube
// sits inside a shifted dyadic cube of at most 6^n times its volume.
StepFunction hl_maximal_lower(const StepFunction& f);

// One-dimensional uncentered grid maximal along `axis`: per cell, the max
// average of |f| over the grid-aligned intervals containing it.
StepFunction maximal_1d_grid(const StepFunction& f, int axis);

// Composition of maximal_1d_grid over axis 1, then 2, ..., applied to |f|.
StepFunction iterated_maximal_grid(const StepFunction& f);

// Fractional integral: I f(x) = integral of f(y) |x-y|^{alpha-n} dy,
// sampled at cell centers.  n = 1 uses the per-cell antiderivative and is
// exact pointwise; n >= 2 uses the midpoint rule with the singular cell
// integrated over the ball of equal volume (radial closed form) and the
// output flagged approximate.  Requires 0 < alpha < n.
StepFunction frac_integral(const StepFunction& f, double alpha);

enum class SingularKernel {
    Hilbert1D,       // (1/pi) p.v. integral f(y)/(x-y) dy, n = 1 only
    TruncatedRiesz,  // c_n integral_{|x-y|>eps} f(y) (x-y)_axis/|x-y|^{n+1} dy
};

struct SingularOp {
    SingularKernel kernel = SingularKernel::Hilbert1D;
    int axis = 0;        // TruncatedRiesz only
    double epsilon = 0;  // TruncatedRiesz only; must be > 0
};

// Cell-center samples of the model singular integrals.  The Hilbert
// transform of a step function has an exact pointwise formula (the
// principal value cancels by symmetry at each cell center); the truncated
// Riesz transform uses midpoint quadrature outside the eps-ball and is
// flagged approximate.
StepFunction singular_apply(const StepFunction& f, const SingularOp& op);

// Projection of the convolution f * g back onto the resolution-J grid:
// cell averages of f * g, computed exactly via the per-axis tent overlap
// volumes.  Inputs share one depth-0 grid; the output window level is K+1,
// so the total integral equals the product of the input integrals exactly.
StepFunction convolve_project(const StepFunction& f, const StepFunction& g);

}  // namespace mixnorm
