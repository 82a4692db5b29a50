#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace mixnorm {

// Pairwise (tree) summation: deterministic for a fixed input order and much
// better conditioned than a running sum when many terms of similar size are
// accumulated, as happens in the per-level cube sums.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// x^p for x >= 0 with fast paths for the exponents that dominate the test
// workload.
inline double pow_p(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    if (p == 4.0) {
        const double y = x * x;
        return y * y;
    }
    if (p == 0.5) return std::sqrt(x);
    return std::pow(x, p);
}

}  // namespace mixnorm
