#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mixnorm/dyadic.hpp"
#include "mixnorm/exponents.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/step_function.hpp"

namespace mixnorm {

// One term of a decomposition g = sum_i coefficient_i * unit_i.  Each unit is
// supported on its cube and has mixed p'-norm at most |Q|^{1/t - sigma}.
struct BlockTerm {
    double coefficient = 0.0;
    DyadicCube cube;
    StepFunction unit{0, 0, 0, 0};  // placeholder scalar until assigned
};

struct BlockDecomposition {
    std::vector<BlockTerm> terms;

    // ell^{r'} norm of the coefficients (r' conjugate to params.r).
    double coefficient_norm(const SpaceParams& params) const;

    // Cellwise sum of coefficient * unit, assembled on `like`'s grid (all
    // units must share that grid).  An empty decomposition reconstructs 0.
    StepFunction reconstruct(const StepFunction& like) const;
};

// True iff b vanishes outside Q and mixed_norm(b, p') <= |Q|^{1/t - sigma}
// up to an absolute slack of 1e-12.  Depth-0 grids and unshifted cubes only.
bool is_block(const StepFunction& b, const DyadicCube& q, const SpaceParams& params);

// Factor f (supported in Q) as lambda * b with b a norm-tight unit:
// b = |Q|^{1/t-sigma} f / ||f||_{p'} and lambda = ||f||_{p'} |Q|^{sigma-1/t}.
// f = 0 yields (0, zero function); support outside Q is rejected.
std::pair<double, StepFunction> block_split(const StepFunction& f, const DyadicCube& q,
                                            const SpaceParams& params);

// Unit-norm duality attainer: g with integral(f g) = mixed_norm(f, pbar) and
// mixed_norm(g, pbar') = 1, built from the partial-norm ladder of |f|.
// Requires 1 < p_i < infinity on every axis; f = 0 yields 0.
StepFunction holder_dual(const StepFunction& f, const ExponentVector& pbar);

// Scaled attainer g = |Q|^{1/t-sigma} * holder_dual(f restricted to Q):
// integral((f restricted to Q) g) = |Q|^{1/t-sigma} ||f chi_Q||_{pbar} and
// mixed_norm(g, pbar') = |Q|^{1/t-sigma}, so g is a valid unit for Q.
// ||f chi_Q|| = 0 yields 0.
StepFunction holder_attainer(const StepFunction& f, const DyadicCube& q,
                             const SpaceParams& params);

// Exact integral of f*g: both are brought to a common refinement first, so
// functions on different resolutions/windows/depths pair exactly.
double pairing(const StepFunction& f, const StepFunction& g);

// Coefficient norm of the cheapest single-level decomposition: the minimum
// over levels j in [-K, J] of the per-cube split of g.  Any decomposition
// upper-bounds the block-space norm, so this is a certified upper bound.
// Requires depth 0 and r > 1 (the coefficient exponent r' must be finite).
double h_norm_upper_value(const StepFunction& g, const SpaceParams& params);

struct HNormUpper {
    double value = 0.0;
    BlockDecomposition decomposition;  // achieves `value` at the best level
};
HNormUpper h_norm_upper(const StepFunction& g, const SpaceParams& params);

// Certified lower bound for the block-space norm via duality:
// max over candidates f of |pairing(f, g)| / bm_norm(f).  Candidates are the
// indicators of all window cubes, per-cube duality attainers of g (when all
// p_i are strict), and `budget` seeded random step functions.  Deterministic
// for fixed seed.  Requires the finite nontrivial regime.
struct HNormLower {
    double value = 0.0;
    StepFunction witness{0, 0, 0, 0};  // placeholder scalar until assigned
};
HNormLower h_norm_lower(const StepFunction& g, const SpaceParams& params, int budget,
                        std::uint64_t seed);

// Two-sided bracket for the vector block-space norm with cellwise ell^{u'}
// aggregation, 1 < u' < infinity: upper = best single-level coefficient norm
// of the combined magnitude, lower = duality bound against unit-ball vector
// candidates (reduced to the combined scalar).  Zero input gives (0, 0).
NormBracket vector_block_bracket(const VectorStepFunction& gv, const SpaceParams& params,
                                 double u_dual, int budget = 16, std::uint64_t seed = 1);

}  // namespace mixnorm
