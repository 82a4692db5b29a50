#include "mixnorm/blocks.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mixnorm/numeric.hpp"
#include "mixnorm/prng.hpp"

namespace mixnorm {

namespace {

double cube_norm_bound(const DyadicCube& q, const SpaceParams& params) {
    // |Q|^{1/t - sigma} for a cube of side 2^{-level}
    return std::exp2(-static_cast<double>(q.level) * q.n * params.cube_exponent());
}

bool inside_box(const CellBox& box, const std::array<std::int64_t, 3>& idx, int n) {
    for (int ax = 0; ax < n; ++ax) {
        const auto i = idx[static_cast<size_t>(ax)];
        if (i < box.lo[static_cast<size_t>(ax)] || i >= box.hi[static_cast<size_t>(ax)])
            return false;
    }
    return true;
}

bool supported_in_box(const StepFunction& f, const CellBox& box) {
    for (std::int64_t i = 0; i < f.total_cells(); ++i) {
        if (f[i] == 0.0) continue;
        if (!inside_box(box, f.multi_index(i), f.dim())) return false;
    }
    return true;
}

void zero_outside_box(StepFunction& f, const CellBox& box) {
    for (std::int64_t i = 0; i < f.total_cells(); ++i)
        if (f[i] != 0.0 && !inside_box(box, f.multi_index(i), f.dim())) f[i] = 0.0;
}

void require_strict_exponents(const ExponentVector& pbar, const char* who) {
    for (int ax = 0; ax < pbar.dim(); ++ax)
        if (!(pbar[ax] > 1.0) || pbar[ax] == kInf)
            throw std::invalid_argument(std::string(who) +
                                        ": every exponent must lie strictly in (1, inf)");
}

}  // namespace

double BlockDecomposition::coefficient_norm(const SpaceParams& params) const {
    const double r_dual = conjugate_exponent(params.r);
    if (terms.empty()) return 0.0;
    if (r_dual == kInf) {
        double best = 0.0;
        for (const auto& term : terms) best = std::max(best, term.coefficient);
        return best;
    }
    std::vector<double> powers;
    powers.reserve(terms.size());
    for (const auto& term : terms) powers.push_back(pow_p(term.coefficient, r_dual));
    return std::pow(pairwise_sum(powers), 1.0 / r_dual);
}

StepFunction BlockDecomposition::reconstruct(const StepFunction& like) const {
    StepFunction out(like.dim(), like.resolution(), like.window_level(), like.depth());
    for (const auto& term : terms) {
        if (!term.unit.same_grid(like))
            throw std::invalid_argument("reconstruct: unit on a different grid");
        for (std::int64_t i = 0; i < out.total_cells(); ++i)
            out[i] += term.coefficient * term.unit[i];
    }
    return out;
}

bool is_block(const StepFunction& b, const DyadicCube& q, const SpaceParams& params) {
    if (b.depth() != 0) throw std::invalid_argument("is_block: depth-0 grid expected");
    if (q.shift) throw std::invalid_argument("is_block: unshifted cubes only");
    if (b.dim() != q.n) throw std::invalid_argument("is_block: dimension mismatch");
    const CellBox box = cell_box(b, q);
    if (!supported_in_box(b, box)) return false;
    const double norm = mixed_norm_box(b, params.pbar.conjugate(), box);
    return norm <= cube_norm_bound(q, params) + 1e-12;
}

std::pair<double, StepFunction> block_split(const StepFunction& f, const DyadicCube& q,
                                            const SpaceParams& params) {
    if (f.depth() != 0) throw std::invalid_argument("block_split: depth-0 grid expected");
    if (q.shift) throw std::invalid_argument("block_split: unshifted cubes only");
    if (f.dim() != q.n) throw std::invalid_argument("block_split: dimension mismatch");
    const CellBox box = cell_box(f, q);
    if (!supported_in_box(f, box))
        throw std::invalid_argument("block_split: input not supported in the cube");

    StepFunction b(f.dim(), f.resolution(), f.window_level(), f.depth());
    b.set_approximate(f.approximate());
    const double norm = mixed_norm_box(f, params.pbar.conjugate(), box);
    if (norm == 0.0) return {0.0, b};

    const double bound = cube_norm_bound(q, params);
    const double scale = bound / norm;
    for (std::int64_t i = 0; i < f.total_cells(); ++i) b[i] = scale * f[i];
    return {norm / bound, b};
}

StepFunction holder_dual(const StepFunction& f, const ExponentVector& pbar) {
    const int n = f.dim();
    if (pbar.dim() != n) throw std::invalid_argument("holder_dual: dimension mismatch");
    require_strict_exponents(pbar, "holder_dual");

    StepFunction g(n, f.resolution(), f.window_level(), f.depth());
    g.set_approximate(f.approximate());
    const double total = mixed_norm(f, pbar);
    if (total == 0.0) return g;

    // Partial-norm ladder: stage j has the innermost j axes reduced.
    std::vector<StepFunction> ladder;
    ladder.reserve(static_cast<size_t>(n) - 1);
    for (int j = 1; j < n; ++j) ladder.push_back(mixed_norm_partial(f, pbar, j));

    for (std::int64_t i = 0; i < f.total_cells(); ++i) {
        const double v = f[i];
        if (v == 0.0) continue;
        const auto idx = f.multi_index(i);
        double acc = (v > 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(v), pbar[0] - 1.0);
        for (int j = 1; j < n; ++j) {
            const StepFunction& stage = ladder[static_cast<size_t>(j) - 1];
            std::array<std::int64_t, 3> sub{0, 0, 0};
            for (int ax = j; ax < n; ++ax)
                sub[static_cast<size_t>(ax - j)] = idx[static_cast<size_t>(ax)];
            acc *= std::pow(stage[stage.flat_index(sub)], pbar[j] - pbar[j - 1]);
        }
        acc *= std::pow(total, 1.0 - pbar[n - 1]);
        g[i] = acc;
    }
    return g;
}

StepFunction holder_attainer(const StepFunction& f, const DyadicCube& q,
                             const SpaceParams& params) {
    require_strict_exponents(params.pbar, "holder_attainer");
    StepFunction fr = restrict_to_cube(f, q);
    StepFunction g = holder_dual(fr, params.pbar);
    const double bound = cube_norm_bound(q, params);
    for (double& x : g.values()) x *= bound;
    return g;
}

double pairing(const StepFunction& f, const StepFunction& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("pairing: dimension mismatch");
    const int J = std::max(f.resolution(), g.resolution());
    const int K = std::max(f.window_level(), g.window_level());
    const int d = std::max(f.depth(), g.depth());
    const StepFunction fa = to_grid(f, J, K, d);
    const StepFunction gb = to_grid(g, J, K, d);
    std::vector<double> prod(static_cast<size_t>(fa.total_cells()));
    for (std::int64_t i = 0; i < fa.total_cells(); ++i)
        prod[static_cast<size_t>(i)] = fa[i] * gb[i];
    return fa.cell_volume() * pairwise_sum(prod);
}

double h_norm_upper_value(const StepFunction& g, const SpaceParams& params) {
    if (g.depth() != 0) throw std::invalid_argument("h_norm_upper: depth-0 grid expected");
    if (!(params.r > 1.0))
        throw std::invalid_argument("h_norm_upper: need r > 1 so that r' is finite");
    if (g.is_zero()) return 0.0;
    double best = kInf;
    for (int level = -g.window_level(); level <= g.resolution(); ++level)
        best = std::min(best, slice_norm(g, level, params));
    return best;
}

HNormUpper h_norm_upper(const StepFunction& g, const SpaceParams& params) {
    if (g.depth() != 0) throw std::invalid_argument("h_norm_upper: depth-0 grid expected");
    if (!(params.r > 1.0))
        throw std::invalid_argument("h_norm_upper: need r > 1 so that r' is finite");
    HNormUpper out;
    if (g.is_zero()) return out;

    int best_level = -g.window_level();
    double best = kInf;
    for (int level = -g.window_level(); level <= g.resolution(); ++level) {
        const double value = slice_norm(g, level, params);
        if (value < best) {
            best = value;
            best_level = level;
        }
    }
    out.value = best;

    const auto pdual = params.pbar.conjugate();
    for (const auto& q : cubes_intersecting_window(g.dim(), best_level, g.window_level())) {
        const CellBox box = cell_box(g, q);
        const double norm = mixed_norm_box(g, pdual, box);
        if (norm == 0.0) continue;
        const double bound = cube_norm_bound(q, params);
        BlockTerm term;
        term.coefficient = norm / bound;
        term.cube = q;
        term.unit = g;
        zero_outside_box(term.unit, box);
        const double scale = bound / norm;
        for (double& x : term.unit.values()) x *= scale;
        out.decomposition.terms.push_back(std::move(term));
    }
    return out;
}

HNormLower h_norm_lower(const StepFunction& g, const SpaceParams& params, int budget,
                        std::uint64_t seed) {
    if (g.depth() != 0) throw std::invalid_argument("h_norm_lower: depth-0 grid expected");
    if (params.regime != Regime::NontrivialFinite)
        throw std::invalid_argument("h_norm_lower: need the finite nontrivial regime " +
                                    params.to_string());
    if (budget < 0) throw std::invalid_argument("h_norm_lower: negative budget");

    HNormLower out;
    out.witness = StepFunction(g.dim(), g.resolution(), g.window_level(), 0);
    if (g.is_zero()) return out;

    const auto consider = [&](const StepFunction& f) {
        const double nf = bm_norm(f, params);
        if (!(nf > 0.0) || nf == kInf) return;
        const double ratio = std::fabs(pairing(f, g)) / nf;
        if (ratio > out.value) {
            out.value = ratio;
            out.witness = f;
        }
    };

    const int n = g.dim();
    const int J = g.resolution();
    const int K = g.window_level();

    // Indicators of every window cube.
    for (int level = -K; level <= J; ++level) {
        for (const auto& q : cubes_intersecting_window(n, level, K)) {
            const CellBox box = cell_box(g, q);
            StepFunction f(n, J, K, 0);
            std::array<std::int64_t, 3> idx{0, 0, 0};
            const auto fill = [&](auto&& self, int ax) -> void {
                if (ax == n) {
                    f[f.flat_index(idx)] = 1.0;
                    return;
                }
                for (idx[static_cast<size_t>(ax)] = box.lo[static_cast<size_t>(ax)];
                     idx[static_cast<size_t>(ax)] < box.hi[static_cast<size_t>(ax)];
                     ++idx[static_cast<size_t>(ax)])
                    self(self, ax + 1);
            };
            fill(fill, 0);
            consider(f);
        }
    }

    // Per-cube duality attainers of g (skipped when some p_i is 1 or inf).
    bool strict = true;
    for (int ax = 0; ax < n; ++ax)
        strict = strict && params.pbar[ax] > 1.0 && params.pbar[ax] != kInf;
    if (strict) {
        const auto pdual = params.pbar.conjugate();
        for (int level = -K; level <= J; ++level) {
            for (const auto& q : cubes_intersecting_window(n, level, K)) {
                const StepFunction gr = restrict_to_cube(g, q);
                if (gr.is_zero()) continue;
                consider(holder_dual(gr, pdual));
            }
        }
    }

    // Seeded random candidates.
    for (int trial = 0; trial < budget; ++trial) {
        Rng rng(trial_seed(seed, static_cast<std::uint64_t>(trial)));
        StepFunction f(n, J, K, 0);
        for (double& x : f.values()) x = rng.next_in(-1.0, 1.0);
        consider(f);
    }
    return out;
}

NormBracket vector_block_bracket(const VectorStepFunction& gv, const SpaceParams& params,
                                 double u_dual, int budget, std::uint64_t seed) {
    if (!(u_dual > 1.0) || u_dual >= kInf)
        throw std::invalid_argument("vector_block_bracket: need 1 < u' < inf");
    const StepFunction combined = ell_u_combine(gv, u_dual);
    if (combined.is_zero()) return {0.0, 0.0};
    NormBracket bracket;
    bracket.upper = h_norm_upper_value(combined, params);
    bracket.lower = h_norm_lower(combined, params, budget, seed).value;
    return bracket;
}

}  // namespace mixnorm
