#pragma once

#include <array>
#include <vector>

namespace mixnorm {

// One piece of an axis weight: w(s) = c * |s - s0|^beta on [lo, hi).
// beta = 0 encodes a constant piece regardless of s0.
struct WeightPiece {
    double lo = 0;
    double hi = 0;
    double c = 1;
    double s0 = 0;
    double beta = 0;
};

// Piecewise power weight on one axis.  Pieces are contiguous, start at 0,
// and the last one extends to +inf, so the profile is defined on the whole
// half-line regardless of the window in use.  All integrals, suprema and
// infima over intervals are evaluated in closed form.
class AxisWeightProfile {
public:
    explicit AxisWeightProfile(std::vector<WeightPiece> pieces);
    static AxisWeightProfile constant(double value);

    const std::vector<WeightPiece>& pieces() const { return pieces_; }

    double eval(double s) const;
    // Integral of w^q over [x0, x1]; throws if some piece makes it diverge.
    double integral_pow(double q, double x0, double x1) const;
    double average(double x0, double x1) const;
    // Essential sup / inf over [x0, x1]; sup may be +inf for a negative
    // power whose center lies inside the interval.
    double sup(double x0, double x1) const;
    double inf(double x0, double x1) const;

private:
    std::vector<WeightPiece> pieces_;
};

// Per-axis profiles of (M chi_Q)^eta for a rectangle Q = prod [lo_i, hi_i):
// the one-dimensional uncentered maximal of an interval indicator is 1 on
// the interval and decays like (len / distance-to-far-endpoint) off it, so
// each axis contributes a three-piece power profile.  eta in (0, 1].
std::vector<AxisWeightProfile> mit_chi_weight(const std::array<double, 3>& lo,
                                              const std::array<double, 3>& hi, int n, double eta);

// Muckenhoupt-style ratio sup_I (average of w over I) / (inf of w over I),
// I ranging over the dyadic intervals of levels [level_lo, level_hi] inside
// [0, 2^K).  Finite exactly when the weight is comparable to its minimum at
// every scale; grows without bound along expanding windows otherwise.
double a1_ratio(const AxisWeightProfile& w, int window_level, int level_lo, int level_hi);

}  // namespace mixnorm
