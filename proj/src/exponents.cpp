#include "mixnorm/exponents.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mixnorm {

ExponentVector::ExponentVector(std::vector<double> entries) : p_(std::move(entries)) {
    if (p_.empty() || p_.size() > 3)
        throw std::invalid_argument("ExponentVector: dimension must be 1, 2, or 3");
    for (double p : p_) {
        if (std::isnan(p) || p <= 0.0)
            throw std::invalid_argument("ExponentVector: entries must lie in (0, inf]");
    }
}

ExponentVector ExponentVector::uniform(int n, double p) {
    return ExponentVector(std::vector<double>(static_cast<size_t>(n), p));
}

double ExponentVector::sum_reciprocal() const {
    double s = 0.0;
    for (double p : p_)
        if (std::isfinite(p)) s += 1.0 / p;
    return s;
}

double ExponentVector::max_entry() const {
    double m = p_[0];
    for (double p : p_) m = std::max(m, p);
    return m;
}

double ExponentVector::min_entry() const {
    double m = p_[0];
    for (double p : p_) m = std::min(m, p);
    return m;
}

ExponentVector ExponentVector::conjugate() const {
    std::vector<double> q(p_.size());
    for (size_t i = 0; i < p_.size(); ++i) {
        const double p = p_[i];
        if (p < 1.0)
            throw std::invalid_argument("ExponentVector::conjugate: entries must be >= 1");
        if (p == 1.0)
            q[i] = kInf;
        else if (std::isinf(p))
            q[i] = 1.0;
        else
            q[i] = p / (p - 1.0);
    }
    return ExponentVector(std::move(q));
}

bool ExponentVector::le(const ExponentVector& other) const {
    if (dim() != other.dim())
        throw std::invalid_argument("ExponentVector::le: dimension mismatch");
    for (int i = 0; i < dim(); ++i)
        if ((*this)[i] > other[i]) return false;
    return true;
}

std::string ExponentVector::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < p_.size(); ++i) {
        if (i) out << "|";
        if (std::isinf(p_[i]))
            out << "inf";
        else
            out << p_[i];
    }
    return out.str();
}

Regime classify_regime(const ExponentVector& pbar, double t, double r) {
    const double sum_recip = pbar.sum_reciprocal();
    const double threshold = sum_recip > 0.0 ? pbar.dim() / sum_recip : kInf;
    if (std::isinf(r)) {
        if (threshold <= t && std::isfinite(t)) return Regime::NontrivialMorrey;
        return Regime::Degenerate;
    }
    if (threshold < t && t < r) return Regime::NontrivialFinite;
    return Regime::Degenerate;
}

SpaceParams SpaceParams::make(ExponentVector pbar, double t, double r) {
    if (std::isnan(t) || t <= 0.0 || std::isinf(t))
        throw std::invalid_argument("SpaceParams: t must be a positive real");
    if (std::isnan(r) || r <= 0.0)
        throw std::invalid_argument("SpaceParams: r must lie in (0, inf]");
    SpaceParams sp{std::move(pbar), t, r, Regime::Degenerate};
    sp.regime = classify_regime(sp.pbar, t, r);
    return sp;
}

double SpaceParams::critical_t() const {
    const double s = pbar.sum_reciprocal();
    return s > 0.0 ? pbar.dim() / s : kInf;
}

std::string SpaceParams::to_string() const {
    std::ostringstream out;
    out << "p=" << pbar.to_string() << ";t=" << t << ";r=";
    if (std::isinf(r))
        out << "inf";
    else
        out << r;
    return out.str();
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::NontrivialFinite: return "NontrivialFinite";
        case Regime::NontrivialMorrey: return "NontrivialMorrey";
        case Regime::Degenerate: return "Degenerate";
    }
    return "?";
}

}  // namespace mixnorm
