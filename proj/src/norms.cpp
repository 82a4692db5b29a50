#include "mixnorm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixnorm/numeric.hpp"

namespace mixnorm {

namespace {

CellBox full_box(const StepFunction& f) {
    CellBox box;
    for (int axis = 0; axis < f.dim(); ++axis) {
        box.lo[static_cast<size_t>(axis)] = 0;
        box.hi[static_cast<size_t>(axis)] = f.cells_per_axis();
    }
    return box;
}

// floor(x / 2^s) for any sign of x (shifts of signed values are arithmetic).
std::int64_t floor_shift(std::int64_t x, int s) { return s <= 0 ? (x << -s) : (x >> s); }

// Exact per-level sum of (|Q|^{1/t-sigma} ||f chi_Q||_pbar)^r over the
// cubes of `level` meeting the window; requires level <= J so every cube
// boundary lies on a cell boundary.
double level_sum_exact(const StepFunction& f, const SpaceParams& params, int level,
                       const std::optional<GridShift>& shift) {
    const auto cubes = cubes_intersecting_window(f.dim(), level, f.window_level(), shift);
    const double weight = std::exp2(-static_cast<double>(level) * f.dim() * params.cube_exponent());
    std::vector<double> terms;
    terms.reserve(cubes.size());
    for (const auto& q : cubes) {
        const double norm = mixed_norm_box(f, params.pbar, cell_box(f, q));
        terms.push_back(std::pow(weight * norm, params.r));
    }
    return pairwise_sum(terms);
}

// Certified upper bound sum_Q |Q|^{r/t} (sup_Q |f|)^r over the cubes of
// `level` meeting the window, for levels finer than the grid.  sup_Q|f| is
// the max over every cell the cube overlaps.
double level_sup_bound(const StepFunction& f, const SpaceParams& params, int level,
                       const std::optional<GridShift>& shift) {
    const int n = f.dim();
    const int J = f.resolution();
    const int K = f.window_level();
    const std::int64_t M = f.cells_per_axis();
    if (f.depth() != 1) throw std::logic_error("level_sup_bound: depth-1 grid expected");
    const int s = level - J;

    // Per-axis cube index ranges (same enumeration as
    // cubes_intersecting_window, kept implicit to avoid materializing the
    // cube list at fine levels).
    std::array<std::int64_t, 3> m_lo{}, m_hi{};
    for (int axis = 0; axis < n; ++axis) {
        const int a = shift ? (*shift)[static_cast<size_t>(axis)] : 0;
        m_lo[static_cast<size_t>(axis)] = (a == 0) ? 0 : -1;
        // largest m with 3m + a < 3 * 2^{K+level}; level > -K here, so the
        // numerator is nonnegative and floor division is plain division.
        const std::int64_t bound = std::int64_t{3} << (K + level);
        m_hi[static_cast<size_t>(axis)] = (bound - a - 1) / 3;
    }

    const double cube_pow = std::exp2(-static_cast<double>(level) * n * params.r / params.t);
    std::vector<double> terms;
    std::array<std::int64_t, 3> m{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == n) {
            double sup = 0.0;
            std::array<std::int64_t, 3> k_lo{}, k_hi{};
            for (int ax = 0; ax < n; ++ax) {
                const int a = shift ? (*shift)[static_cast<size_t>(ax)] : 0;
                const std::int64_t scaled = 3 * m[static_cast<size_t>(ax)] + a;
                k_lo[static_cast<size_t>(ax)] = std::max<std::int64_t>(floor_shift(scaled, s), 0);
                k_hi[static_cast<size_t>(ax)] =
                    std::min<std::int64_t>(floor_shift(scaled + 2, s) + 1, M);
            }
            std::array<std::int64_t, 3> k{0, 0, 0};
            const auto scan = [&](auto&& inner, int ax) -> void {
                if (ax == n) {
                    sup = std::max(sup, std::fabs(f[f.flat_index(k)]));
                    return;
                }
                for (k[static_cast<size_t>(ax)] = k_lo[static_cast<size_t>(ax)];
                     k[static_cast<size_t>(ax)] < k_hi[static_cast<size_t>(ax)];
                     ++k[static_cast<size_t>(ax)])
                    inner(inner, ax + 1);
            };
            scan(scan, 0);
            if (sup > 0.0) terms.push_back(std::pow(sup, params.r) * cube_pow);
            return;
        }
        for (m[static_cast<size_t>(axis)] = m_lo[static_cast<size_t>(axis)];
             m[static_cast<size_t>(axis)] <= m_hi[static_cast<size_t>(axis)];
             ++m[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return pairwise_sum(terms);
}

// sum_c (max |f| over the 3^n cell neighborhood of c)^r, the constant in
// the geometric bound on all levels finer than the enumerated ones.
double neighborhood_sup_sum(const StepFunction& f, double r) {
    const int n = f.dim();
    const std::int64_t M = f.cells_per_axis();
    std::vector<double> terms;
    terms.reserve(static_cast<size_t>(f.total_cells()));
    std::array<std::int64_t, 3> c{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == n) {
            double sup = 0.0;
            std::array<std::int64_t, 3> k{0, 0, 0};
            const auto scan = [&](auto&& inner, int ax) -> void {
                if (ax == n) {
                    sup = std::max(sup, std::fabs(f[f.flat_index(k)]));
                    return;
                }
                const std::int64_t lo = std::max<std::int64_t>(c[static_cast<size_t>(ax)] - 1, 0);
                const std::int64_t hi = std::min<std::int64_t>(c[static_cast<size_t>(ax)] + 2, M);
                for (k[static_cast<size_t>(ax)] = lo; k[static_cast<size_t>(ax)] < hi;
                     ++k[static_cast<size_t>(ax)])
                    inner(inner, ax + 1);
            };
            scan(scan, 0);
            terms.push_back(std::pow(sup, r));
            return;
        }
        for (c[static_cast<size_t>(axis)] = 0; c[static_cast<size_t>(axis)] < M;
             ++c[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return pairwise_sum(terms);
}

}  // namespace

double conjugate_exponent(double r) {
    if (std::isnan(r) || r < 1.0)
        throw std::invalid_argument("conjugate_exponent: need r >= 1");
    if (r == 1.0) return kInf;
    if (std::isinf(r)) return 1.0;
    return r / (r - 1.0);
}

double mixed_norm_box(const StepFunction& f, const ExponentVector& pbar, const CellBox& box) {
    if (pbar.dim() != f.dim()) throw std::invalid_argument("mixed_norm_box: dimension mismatch");
    const int n = f.dim();
    const double h = f.cell_width();

    std::array<std::int64_t, 3> sizes{1, 1, 1};
    std::int64_t total = 1;
    for (int axis = 0; axis < n; ++axis) {
        const std::int64_t s =
            box.hi[static_cast<size_t>(axis)] - box.lo[static_cast<size_t>(axis)];
        if (s <= 0) return 0.0;
        sizes[static_cast<size_t>(axis)] = s;
        total *= s;
    }

    std::vector<double> cur;
    cur.reserve(static_cast<size_t>(total));
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto gather = [&](auto&& self, int axis) -> void {
        if (axis == n) {
            cur.push_back(std::fabs(f[f.flat_index(idx)]));
            return;
        }
        for (idx[static_cast<size_t>(axis)] = box.lo[static_cast<size_t>(axis)];
             idx[static_cast<size_t>(axis)] < box.hi[static_cast<size_t>(axis)];
             ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    gather(gather, 0);

    // Reduce axis 1 first (slowest-varying in the row-major layout), then
    // axis 2, and so on, as the iterated norm requires.
    for (int axis = 0; axis < n; ++axis) {
        const std::int64_t lead = sizes[static_cast<size_t>(axis)];
        const std::int64_t rest = static_cast<std::int64_t>(cur.size()) / lead;
        std::vector<double> next(static_cast<size_t>(rest), 0.0);
        const double p = pbar[axis];
        if (std::isinf(p)) {
            for (std::int64_t i = 0; i < lead; ++i)
                for (std::int64_t j = 0; j < rest; ++j)
                    next[static_cast<size_t>(j)] = std::max(next[static_cast<size_t>(j)],
                                                            cur[static_cast<size_t>(i * rest + j)]);
        } else {
            for (std::int64_t i = 0; i < lead; ++i)
                for (std::int64_t j = 0; j < rest; ++j)
                    next[static_cast<size_t>(j)] +=
                        pow_p(cur[static_cast<size_t>(i * rest + j)], p);
            for (double& x : next) x = std::pow(h * x, 1.0 / p);
        }
        cur = std::move(next);
    }
    return cur[0];
}

double mixed_norm(const StepFunction& f, const ExponentVector& pbar) {
    return mixed_norm_box(f, pbar, full_box(f));
}

StepFunction mixed_norm_partial(const StepFunction& f, const ExponentVector& pbar, int axes) {
    if (pbar.dim() != f.dim())
        throw std::invalid_argument("mixed_norm_partial: dimension mismatch");
    if (axes < 0 || axes > f.dim())
        throw std::invalid_argument("mixed_norm_partial: axes must lie in [0, dim]");
    const double h = f.cell_width();
    std::vector<double> cur(f.values());
    for (double& x : cur) x = std::fabs(x);
    std::int64_t rest = f.total_cells();
    for (int axis = 0; axis < axes; ++axis) {
        const std::int64_t lead = f.cells_per_axis();
        rest /= lead;
        std::vector<double> next(static_cast<size_t>(rest), 0.0);
        const double p = pbar[axis];
        if (std::isinf(p)) {
            for (std::int64_t i = 0; i < lead; ++i)
                for (std::int64_t j = 0; j < rest; ++j)
                    next[static_cast<size_t>(j)] = std::max(next[static_cast<size_t>(j)],
                                                            cur[static_cast<size_t>(i * rest + j)]);
        } else {
            for (std::int64_t i = 0; i < lead; ++i)
                for (std::int64_t j = 0; j < rest; ++j)
                    next[static_cast<size_t>(j)] +=
                        pow_p(cur[static_cast<size_t>(i * rest + j)], p);
            for (double& x : next) x = std::pow(h * x, 1.0 / p);
        }
        cur = std::move(next);
    }
    StepFunction out(f.dim() - axes, f.resolution(), f.window_level(), f.depth());
    out.set_approximate(f.approximate());
    out.values() = std::move(cur);
    return out;
}

double weighted_mixed_norm(const StepFunction& f, const ExponentVector& pbar,
                           const std::vector<AxisWeightProfile>& weights) {
    if (pbar.dim() != f.dim() || static_cast<int>(weights.size()) != f.dim())
        throw std::invalid_argument("weighted_mixed_norm: dimension mismatch");
    const int n = f.dim();
    const double h = f.cell_width();
    const std::int64_t M = f.cells_per_axis();

    // Per-axis closed-form cell factors: integral of w^p (or sup of w for an
    // essential-sup axis) over each cell.
    std::vector<std::vector<double>> factor(static_cast<size_t>(n));
    for (int axis = 0; axis < n; ++axis) {
        const double p = pbar[axis];
        auto& col = factor[static_cast<size_t>(axis)];
        col.resize(static_cast<size_t>(M));
        for (std::int64_t i = 0; i < M; ++i) {
            const double x0 = static_cast<double>(i) * h;
            const double x1 = x0 + h;
            col[static_cast<size_t>(i)] = std::isinf(p)
                                              ? weights[static_cast<size_t>(axis)].sup(x0, x1)
                                              : weights[static_cast<size_t>(axis)].integral_pow(
                                                    p, x0, x1);
        }
    }

    std::vector<double> cur(f.values());
    for (double& x : cur) x = std::fabs(x);
    std::int64_t rest = f.total_cells();
    for (int axis = 0; axis < n; ++axis) {
        const std::int64_t lead = M;
        rest /= lead;
        std::vector<double> next(static_cast<size_t>(rest), 0.0);
        const double p = pbar[axis];
        const auto& col = factor[static_cast<size_t>(axis)];
        if (std::isinf(p)) {
            for (std::int64_t i = 0; i < lead; ++i)
                for (std::int64_t j = 0; j < rest; ++j)
                    next[static_cast<size_t>(j)] =
                        std::max(next[static_cast<size_t>(j)],
                                 cur[static_cast<size_t>(i * rest + j)] * col[static_cast<size_t>(i)]);
        } else {
            for (std::int64_t i = 0; i < lead; ++i)
                for (std::int64_t j = 0; j < rest; ++j)
                    next[static_cast<size_t>(j)] +=
                        pow_p(cur[static_cast<size_t>(i * rest + j)], p) *
                        col[static_cast<size_t>(i)];
            for (double& x : next) x = std::pow(x, 1.0 / p);
        }
        cur = std::move(next);
    }
    return cur[0];
}

double bm_norm(const StepFunction& f, const SpaceParams& params) {
    if (params.dim() != f.dim()) throw std::invalid_argument("bm_norm: dimension mismatch");
    if (f.is_zero()) return 0.0;
    if (params.regime == Regime::Degenerate) return kInf;
    if (std::isinf(params.r)) return morrey_norm(f, params);
    if (f.depth() != 0)
        throw std::invalid_argument("bm_norm: exact evaluation needs depth 0; use bm_norm_bracket");

    const int n = f.dim();
    const int J = f.resolution();
    const int K = f.window_level();
    const double r = params.r;
    const double base = mixed_norm(f, params.pbar);

    // Cubes containing the window: one per level, geometric in the level.
    const double qc = std::exp2(n * r * params.cube_exponent());
    double total = std::pow(base, r) * std::pow(qc, K + 1) / (1.0 - qc);

    std::vector<double> level_totals;
    for (int level = -K; level <= J; ++level)
        level_totals.push_back(level_sum_exact(f, params, level, std::nullopt));
    total += pairwise_sum(level_totals);

    // Cubes inside single cells: f is constant there, so each level
    // contributes (sum_c |v_c|^r) 2^{(j-J)n} 2^{-jnr/t}, geometric in j.
    std::vector<double> powers(f.values().size());
    for (size_t i = 0; i < powers.size(); ++i) powers[i] = std::pow(std::fabs(f[static_cast<std::int64_t>(i)]), r);
    const double cell_pow_sum = pairwise_sum(powers);
    const double qf = std::exp2(n * (1.0 - r / params.t));
    total += cell_pow_sum * std::exp2(-static_cast<double>(J) * n * r / params.t) * qf / (1.0 - qf);

    return std::pow(total, 1.0 / r);
}

double morrey_norm(const StepFunction& f, const SpaceParams& params) {
    if (params.dim() != f.dim()) throw std::invalid_argument("morrey_norm: dimension mismatch");
    if (!std::isinf(params.r)) throw std::invalid_argument("morrey_norm: r must be inf");
    if (f.is_zero()) return 0.0;
    if (params.regime == Regime::Degenerate) return kInf;
    if (f.depth() != 0) throw std::invalid_argument("morrey_norm: depth-0 input expected");

    const int n = f.dim();
    const int J = f.resolution();
    const int K = f.window_level();
    const double wexp = params.cube_exponent();  // <= 0 here

    // Level -K-1 dominates all coarser levels: the restricted norm is
    // already the full norm and the |Q| factor only shrinks.
    double best = std::exp2(static_cast<double>(K + 1) * n * wexp) * mixed_norm(f, params.pbar);
    for (int level = -K; level <= J; ++level) {
        const double weight = std::exp2(-static_cast<double>(level) * n * wexp);
        for (const auto& q : cubes_intersecting_window(n, level, K)) {
            const double norm = mixed_norm_box(f, params.pbar, cell_box(f, q));
            best = std::max(best, weight * norm);
        }
    }
    // Levels finer than the grid: inside a cell the term is |v| |Q|^{1/t},
    // maximized at level J+1 and dominated by level J anyway.
    best = std::max(best, f.max_abs() * std::exp2(-static_cast<double>(J + 1) * n / params.t));
    return best;
}

namespace {

NormBracket bracket_impl(const StepFunction& input, const SpaceParams& params, int level_cut,
                         const std::optional<GridShift>& shift) {
    if (params.dim() != input.dim())
        throw std::invalid_argument("bm_norm_bracket: dimension mismatch");
    if (params.regime != Regime::NontrivialFinite)
        throw std::invalid_argument("bm_norm_bracket: NontrivialFinite parameters required");
    if (input.is_zero()) return {0.0, 0.0};

    const StepFunction g = (shift && input.depth() == 0) ? refine_third(input) : input;
    const int n = g.dim();
    const int J = g.resolution();
    const int K = g.window_level();
    const double r = params.r;
    if (level_cut < -K) throw std::invalid_argument("bm_norm_bracket: level_cut below -K");

    const double base = mixed_norm(g, params.pbar);
    const double qc = std::exp2(n * r * params.cube_exponent());

    // Every cube at level <= -K-1 (standard) or <= -K-2 (shifted) contains
    // the whole window, so those terms form an exact geometric series.
    const int contain_u = K + (shift ? 2 : 1);
    double lower_pow = std::pow(base, r) * std::pow(qc, contain_u) / (1.0 - qc);

    const int enum_lo = shift ? -K - 1 : -K;
    const int exact_hi = std::min(level_cut, J);
    {
        std::vector<double> level_totals;
        for (int level = enum_lo; level <= exact_hi; ++level)
            level_totals.push_back(level_sum_exact(g, params, level, shift));
        lower_pow += pairwise_sum(level_totals);
    }

    double tail = 0.0;
    // Aligned levels past the cut are still exact; exactness only ends past
    // the grid resolution.
    {
        std::vector<double> level_totals;
        for (int level = exact_hi + 1; level <= J; ++level)
            level_totals.push_back(level_sum_exact(g, params, level, shift));
        tail += pairwise_sum(level_totals);
    }

    if (g.depth() == 0 && !shift) {
        // Fully exact fine side: per-level sums are geometric.
        std::vector<double> powers(g.values().size());
        for (size_t i = 0; i < powers.size(); ++i)
            powers[i] = std::pow(std::fabs(g[static_cast<std::int64_t>(i)]), r);
        const double cell_pow_sum = pairwise_sum(powers);
        const double q = std::exp2(n * (1.0 - r / params.t));
        const double scale = cell_pow_sum * std::exp2(-static_cast<double>(J) * n);
        const auto tail_from = [&](int level) {
            return scale * std::pow(q, level) / (1.0 - q);
        };
        if (level_cut > J) {
            // levels (J, level_cut] move into the lower bound
            lower_pow += tail_from(J + 1) - tail_from(level_cut + 1);
            tail += tail_from(level_cut + 1);
        } else {
            tail += tail_from(J + 1);
        }
        return {std::pow(lower_pow, 1.0 / r), std::pow(lower_pow + tail, 1.0 / r)};
    }

    // Depth-1 or shifted fine side: certified sup-based per-level bounds up
    // to an enumeration limit, then a geometric closed form.  The closed
    // form covers levels with cube side below the cell width (level >=
    // J+2): each such cube meets at most 2 cells per axis, all within the
    // 3^n neighborhood of the cell under its center, and at most (4 h 2^j)^n
    // cubes land on any one cell.
    int enum_cap = J + 2;
    while (enum_cap < level_cut &&
           static_cast<double>(n) * (K + enum_cap + 1) < 22.0)  // keep counts desk-scale
        ++enum_cap;
    {
        std::vector<double> level_bounds;
        for (int level = J + 1; level <= enum_cap; ++level)
            level_bounds.push_back(level_sup_bound(g, params, level, shift));
        tail += pairwise_sum(level_bounds);
    }
    const double q = std::exp2(n * (1.0 - r / params.t));
    const double s3 = neighborhood_sup_sum(g, r);
    const double coeff = std::pow(4.0 * g.cell_width(), n) * s3;
    tail += coeff * std::pow(q, enum_cap + 1) / (1.0 - q);

    return {std::pow(lower_pow, 1.0 / r), std::pow(lower_pow + tail, 1.0 / r)};
}

}  // namespace

NormBracket bm_norm_bracket(const StepFunction& f, const SpaceParams& params, int level_cut) {
    return bracket_impl(f, params, level_cut, std::nullopt);
}

NormBracket bm_norm_shifted_bracket(const StepFunction& f, const SpaceParams& params,
                                    const GridShift& shift, int level_cut) {
    return bracket_impl(f, params, level_cut, shift);
}

double vector_bm_norm(const VectorStepFunction& fv, const SpaceParams& params, double u) {
    return bm_norm(ell_u_combine(fv, u), params);
}

double slice_norm(const StepFunction& g, int level, const SpaceParams& params) {
    if (params.dim() != g.dim()) throw std::invalid_argument("slice_norm: dimension mismatch");
    if (level < -g.window_level() || level > g.resolution())
        throw std::invalid_argument("slice_norm: level must lie in [-K, J]");
    if (!(params.r > 1.0)) throw std::invalid_argument("slice_norm: need r > 1");
    const ExponentVector p_dual = params.pbar.conjugate();
    const double r_dual = conjugate_exponent(params.r);
    const double weight =
        std::exp2(static_cast<double>(level) * g.dim() * params.cube_exponent());
    std::vector<double> terms;
    for (const auto& q : cubes_intersecting_window(g.dim(), level, g.window_level())) {
        const double norm = mixed_norm_box(g, p_dual, cell_box(g, q));
        if (norm > 0.0) terms.push_back(std::pow(weight * norm, r_dual));
    }
    return std::pow(pairwise_sum(terms), 1.0 / r_dual);
}

double slice_norm(const VectorStepFunction& gv, int level, const SpaceParams& params,
                  double u_prime) {
    return slice_norm(ell_u_combine(gv, u_prime), level, params);
}

double chi_bm_closed_form(const SpaceParams& params) {
    if (params.regime == Regime::Degenerate) return kInf;
    if (std::isinf(params.r)) return 1.0;
    const int n = params.dim();
    const double r = params.r;
    const double qf = std::exp2(n * (1.0 - r / params.t));
    const double qc = std::exp2(n * r * params.cube_exponent());
    return std::pow(1.0 / (1.0 - qf) + qc / (1.0 - qc), 1.0 / r);
}

}  // namespace mixnorm
