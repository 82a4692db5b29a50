#pragma once

#include <limits>
#include <string>
#include <vector>

namespace mixnorm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Vector of integrability exponents, one per coordinate axis.  Entries live
// in (0, +inf]; +inf denotes an essential-sup axis.
class ExponentVector {
public:
    explicit ExponentVector(std::vector<double> entries);
    static ExponentVector uniform(int n, double p);

    int dim() const { return static_cast<int>(p_.size()); }
    double operator[](int axis) const { return p_[static_cast<size_t>(axis)]; }
    const std::vector<double>& entries() const { return p_; }

    // Sum of reciprocals, with 1/inf = 0.
    double sum_reciprocal() const;
    // Mean reciprocal (sum of reciprocals divided by the dimension).
    double mean_reciprocal() const { return sum_reciprocal() / dim(); }
    double max_entry() const;
    double min_entry() const;

    // Entrywise conjugate: 1/p + 1/p' = 1.  Exact at the representable
    // fixed points (1 <-> inf, 2 -> 2).  Requires every entry >= 1.
    ExponentVector conjugate() const;

    // Entrywise comparison: every entry of *this <= the matching entry.
    bool le(const ExponentVector& other) const;

    std::string to_string() const;

private:
    std::vector<double> p_;
};

enum class Regime {
    NontrivialFinite,  // n/(sum 1/p_i) < t < r < inf
    NontrivialMorrey,  // n/(sum 1/p_i) <= t < r = inf
    Degenerate,        // the space contains only the zero function
};

// Parameter triple (pbar, t, r) of the cube-aggregated mixed-norm scale,
// together with its regime classification.
struct SpaceParams {
    ExponentVector pbar;
    double t = 0;
    double r = 0;
    Regime regime = Regime::Degenerate;

    static SpaceParams make(ExponentVector pbar, double t, double r);

    int dim() const { return pbar.dim(); }
    // The threshold n/(sum 1/p_i); +inf when every p_i is infinite.
    double critical_t() const;
    // Exponent on |Q| attached to each cube term: 1/t - (1/n) sum 1/p_i.
    double cube_exponent() const { return 1.0 / t - pbar.mean_reciprocal(); }
    bool nontrivial() const { return regime != Regime::Degenerate; }

    std::string to_string() const;
};

Regime classify_regime(const ExponentVector& pbar, double t, double r);

const char* regime_name(Regime regime);

}  // namespace mixnorm
