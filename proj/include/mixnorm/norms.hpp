#pragma once

#include <vector>

#include "mixnorm/exponents.hpp"
#include "mixnorm/step_function.hpp"
#include "mixnorm/weights.hpp"

namespace mixnorm {

// Certified two-sided enclosure of a norm value.
struct NormBracket {
    double lower = 0;
    double upper = 0;
};

// Scalar conjugate exponent: 1/r + 1/r' = 1, exact at 1 <-> inf and 2 -> 2.
double conjugate_exponent(double r);

// Iterated mixed norm: integrate axis 1 innermost, then axis 2, and so on;
// an infinite exponent takes the essential sup along its axis.  Exact for
// step functions (each cell contributes |v|^p * cell_width per axis).
double mixed_norm(const StepFunction& f, const ExponentVector& pbar);

// Same reduction restricted to a cell-index box (the norm of f times the
// indicator of the box).
double mixed_norm_box(const StepFunction& f, const ExponentVector& pbar, const CellBox& box);

// First `axes` reductions only; returns the resulting step function of the
// remaining dim() - axes coordinates (a 0-dimensional function holding the
// full norm when axes == dim()).
StepFunction mixed_norm_partial(const StepFunction& f, const ExponentVector& pbar, int axes);

// Mixed norm of f(x) * prod_i w_i(x_i) with per-axis piecewise power
// weights; per-cell weight integrals are closed-form, so this too is exact.
// Throws when some w_i^{p_i} fails to be locally integrable.
double weighted_mixed_norm(const StepFunction& f, const ExponentVector& pbar,
                           const std::vector<AxisWeightProfile>& weights);

// The cube-sum norm (sum over all dyadic cubes Q of
// (|Q|^{1/t - (1/n) sum 1/p_i} * ||f chi_Q||_pbar)^r)^{1/r}.  Computed
// exactly on depth-0 grids: levels [-K, J] by direct enumeration, coarser
// and finer levels by geometric closed forms.  Returns 0 for f = 0, +inf
// for f != 0 in the Degenerate regime, and the sup-over-cubes value when
// r = inf.
double bm_norm(const StepFunction& f, const SpaceParams& params);

// r = inf variant: sup over dyadic cubes of |Q|^{1/t - sigma} ||f chi_Q||.
// The sup over levels outside [-K-1, J+1] is attained at the boundary
// levels, so the enumeration there is exhaustive.
double morrey_norm(const StepFunction& f, const SpaceParams& params);

// Certified enclosure of bm_norm for either depth.  `level_cut` >= -K
// controls how many fine levels are enumerated exactly; the remainder is
// bounded by per-cube sup bounds (sum_Q |Q|^{r/t} sup_Q|f|^r) plus a
// geometric closed form, so upper - lower shrinks geometrically in the cut
// and widening the cut never loosens the bracket.
NormBracket bm_norm_bracket(const StepFunction& f, const SpaceParams& params, int level_cut);

// Same enclosure for the cube family translated by shift/3 of the side per
// axis.  The input is refined to depth 1 internally so every enumerated
// cube lands on cell boundaries.
NormBracket bm_norm_shifted_bracket(const StepFunction& f, const SpaceParams& params,
                                    const GridShift& shift, int level_cut);

// Norm of the cellwise l^u combination of the components.
double vector_bm_norm(const VectorStepFunction& fv, const SpaceParams& params, double u);

// Single-level dual-side quantity: the l^{r'} sum over the level-`level`
// cubes tiling the window of |Q|^{sigma - 1/t} ||g chi_Q||_{pbar'}.  This is
// the coefficient norm of the canonical one-level decomposition of g into
// normalized blocks; params are the primal (pbar, t, r).
double slice_norm(const StepFunction& g, int level, const SpaceParams& params);
// Vector variant: the components are combined cellwise in l^{u_prime}
// before the same computation.
double slice_norm(const VectorStepFunction& gv, int level, const SpaceParams& params,
                  double u_prime);

// Norm of the indicator of the unit cube [0,1)^n in closed form: two
// geometric series (one over cubes containing the unit cube, one over the
// cubes inside it), summed whenever the regime admits them and +inf
// otherwise.  Serves as an independent oracle for bm_norm.
double chi_bm_closed_form(const SpaceParams& params);

}  // namespace mixnorm
