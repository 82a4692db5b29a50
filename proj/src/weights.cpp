#include "mixnorm/weights.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mixnorm/exponents.hpp"

namespace mixnorm {

namespace {

// Integral of (c |s-s0|^beta)^q over [x0, x1] with the interval on a single
// side of s0 or split at it by the caller.
double one_sided_integral(double c, double s0, double beta, double q, double x0, double x1) {
    const double e = beta * q;
    const double cq = std::pow(c, q);
    if (e == 0.0) return cq * (x1 - x0);
    const double a = std::min(std::fabs(x0 - s0), std::fabs(x1 - s0));
    const double b = std::max(std::fabs(x0 - s0), std::fabs(x1 - s0));
    if (a == 0.0 && e <= -1.0)
        throw std::invalid_argument(
            "AxisWeightProfile: non-integrable power (beta*q <= -1 at the singular point)");
    if (e == -1.0) return cq * std::log(b / a);
    return cq * (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

double piece_integral_pow(const WeightPiece& p, double q, double x0, double x1) {
    if (x1 <= x0) return 0.0;
    if (p.beta == 0.0) return std::pow(p.c, q) * (x1 - x0);
    if (x0 < p.s0 && p.s0 < x1)
        return one_sided_integral(p.c, p.s0, p.beta, q, x0, p.s0) +
               one_sided_integral(p.c, p.s0, p.beta, q, p.s0, x1);
    return one_sided_integral(p.c, p.s0, p.beta, q, x0, x1);
}

// Distance range from [x0,x1] to s0.
void dist_range(const WeightPiece& p, double x0, double x1, double& dmin, double& dmax) {
    if (x0 <= p.s0 && p.s0 <= x1)
        dmin = 0.0;
    else
        dmin = std::min(std::fabs(x0 - p.s0), std::fabs(x1 - p.s0));
    dmax = std::max(std::fabs(x0 - p.s0), std::fabs(x1 - p.s0));
}

double piece_sup(const WeightPiece& p, double x0, double x1) {
    if (p.beta == 0.0) return p.c;
    double dmin, dmax;
    dist_range(p, x0, x1, dmin, dmax);
    if (p.beta > 0.0) return p.c * std::pow(dmax, p.beta);
    return dmin == 0.0 ? kInf : p.c * std::pow(dmin, p.beta);
}

double piece_inf(const WeightPiece& p, double x0, double x1) {
    if (p.beta == 0.0) return p.c;
    double dmin, dmax;
    dist_range(p, x0, x1, dmin, dmax);
    if (p.beta > 0.0) return p.c * std::pow(dmin, p.beta);
    return p.c * std::pow(dmax, p.beta);
}

}  // namespace

AxisWeightProfile::AxisWeightProfile(std::vector<WeightPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("AxisWeightProfile: no pieces");
    if (pieces_.front().lo != 0.0)
        throw std::invalid_argument("AxisWeightProfile: pieces must start at 0");
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (!(p.hi > p.lo)) throw std::invalid_argument("AxisWeightProfile: empty piece");
        if (p.c <= 0.0) throw std::invalid_argument("AxisWeightProfile: coefficients must be > 0");
        if (i + 1 < pieces_.size() && pieces_[i + 1].lo != p.hi)
            throw std::invalid_argument("AxisWeightProfile: pieces must be contiguous");
    }
    if (!std::isinf(pieces_.back().hi))
        throw std::invalid_argument("AxisWeightProfile: last piece must reach +inf");
}

AxisWeightProfile AxisWeightProfile::constant(double value) {
    return AxisWeightProfile({WeightPiece{0.0, kInf, value, 0.0, 0.0}});
}

double AxisWeightProfile::eval(double s) const {
    for (const auto& p : pieces_)
        if (p.lo <= s && s < p.hi)
            return p.beta == 0.0 ? p.c : p.c * std::pow(std::fabs(s - p.s0), p.beta);
    throw std::invalid_argument("AxisWeightProfile::eval: point below 0");
}

double AxisWeightProfile::integral_pow(double q, double x0, double x1) const {
    if (x0 < 0.0 || x1 < x0) throw std::invalid_argument("integral_pow: bad interval");
    double total = 0.0;
    for (const auto& p : pieces_) {
        const double lo = std::max(x0, p.lo);
        const double hi = std::min(x1, p.hi);
        if (hi > lo) total += piece_integral_pow(p, q, lo, hi);
    }
    return total;
}

double AxisWeightProfile::average(double x0, double x1) const {
    return integral_pow(1.0, x0, x1) / (x1 - x0);
}

double AxisWeightProfile::sup(double x0, double x1) const {
    double m = 0.0;
    for (const auto& p : pieces_) {
        const double lo = std::max(x0, p.lo);
        const double hi = std::min(x1, p.hi);
        if (hi > lo) m = std::max(m, piece_sup(p, lo, hi));
    }
    return m;
}

double AxisWeightProfile::inf(double x0, double x1) const {
    double m = kInf;
    for (const auto& p : pieces_) {
        const double lo = std::max(x0, p.lo);
        const double hi = std::min(x1, p.hi);
        if (hi > lo) m = std::min(m, piece_inf(p, lo, hi));
    }
    return m;
}

std::vector<AxisWeightProfile> mit_chi_weight(const std::array<double, 3>& lo,
                                              const std::array<double, 3>& hi, int n, double eta) {
    if (n < 1 || n > 3) throw std::invalid_argument("mit_chi_weight: n must be 1..3");
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("mit_chi_weight: eta must lie in (0, 1]");
    std::vector<AxisWeightProfile> profiles;
    profiles.reserve(static_cast<size_t>(n));
    for (int axis = 0; axis < n; ++axis) {
        const double a = lo[static_cast<size_t>(axis)];
        const double b = hi[static_cast<size_t>(axis)];
        if (!(0.0 <= a && a < b))
            throw std::invalid_argument("mit_chi_weight: need 0 <= lo < hi per axis");
        const double ceta = std::pow(b - a, eta);
        std::vector<WeightPiece> pieces;
        if (a > 0.0) pieces.push_back(WeightPiece{0.0, a, ceta, b, -eta});
        pieces.push_back(WeightPiece{a, b, 1.0, 0.0, 0.0});
        pieces.push_back(WeightPiece{b, kInf, ceta, a, -eta});
        profiles.emplace_back(std::move(pieces));
    }
    return profiles;
}

double a1_ratio(const AxisWeightProfile& w, int window_level, int level_lo, int level_hi) {
    if (window_level < 0) throw std::invalid_argument("a1_ratio: window level must be >= 0");
    if (level_lo < -window_level || level_hi < level_lo)
        throw std::invalid_argument("a1_ratio: bad level range");
    double worst = 0.0;
    for (int level = level_lo; level <= level_hi; ++level) {
        const double len = std::ldexp(1.0, -level);
        const std::int64_t count = std::int64_t{1} << (window_level + level);
        for (std::int64_t m = 0; m < count; ++m) {
            const double x0 = static_cast<double>(m) * len;
            const double x1 = x0 + len;
            const double avg = w.average(x0, x1);
            const double low = w.inf(x0, x1);
            worst = std::max(worst, low > 0.0 ? avg / low : kInf);
        }
    }
    return worst;
}

}  // namespace mixnorm
