#include "probe_registry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mixnorm/blocks.hpp"
#include "mixnorm/format.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/operators.hpp"
#include "mixnorm/weights.hpp"

namespace mixnorm::detail {

namespace {

// ---- ratio conventions ----------------------------------------------------
// Exact/property probes: pass iff every trial ratio <= 1 + 1e-10.
//   inequality LHS <= RHS   -> ratio LHS/RHS            (0/0 counts as 1)
//   identity   LHS == RHS   -> ratio 1 + relative error
// Empirical probes: the ratio is the constant estimate; 0/0 counts as 0 so
// vacuous trials never dominate the max.

double rel_err(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

double eq_ratio(double a, double b) { return 1.0 + rel_err(a, b); }

double exact_ratio(double lhs, double rhs) {
    if (rhs > 0.0) return lhs / rhs;
    return lhs == 0.0 ? 1.0 : kInf;
}

double emp_ratio(double lhs, double rhs) {
    if (rhs > 0.0) return lhs / rhs;
    return lhs == 0.0 ? 0.0 : kInf;
}

// ---- shared plumbing --------------------------------------------------------

SpaceParams pick(const ProbeSpec& spec, std::vector<double> p, double t, double r) {
    if (spec.params) return *spec.params;
    return SpaceParams::make(ExponentVector(std::move(p)), t, r);
}

GeneratorSpec shaped(const ProbeSpec& spec, int n, bool nonneg = false, int min_res = 0) {
    GeneratorSpec g = spec.gen;
    g.n = n;
    if (nonneg) g.signed_values = false;
    // Singular-kernel probes need enough cells that one extra dyadic level
    // moves the norm of the image by well under the stability budget.
    if (g.J < min_res) g.J = min_res;
    return g;
}

StepFunction draw(const GeneratorSpec& g, Rng& rng, bool refined) {
    StepFunction f = gen_random_step(g, rng);
    return refined ? refine_dyadic(f) : f;
}

std::string gen_desc(const GeneratorSpec& g) {
    return "n=" + std::to_string(g.n) + ";J=" + std::to_string(g.J) +
           ";K=" + std::to_string(g.K);
}

double sum_recip(const ExponentVector& p) { return p.sum_reciprocal(); }

// Exponent vector with every entry doubled (inf stays inf).
ExponentVector doubled(const ExponentVector& p) {
    std::vector<double> s;
    for (int ax = 0; ax < p.dim(); ++ax) s.push_back(p[ax] == kInf ? kInf : 2.0 * p[ax]);
    return ExponentVector(std::move(s));
}

StepFunction cellwise_product(const StepFunction& a, const StepFunction& b) {
    StepFunction out = a;
    for (std::int64_t i = 0; i < out.total_cells(); ++i) out[i] = a[i] * b[i];
    return out;
}

StepFunction abs_of(const StepFunction& f) {
    StepFunction out = f;
    for (double& x : out.values()) x = std::fabs(x);
    return out;
}

// (M chi_{[0,1)})^s as an exact piecewise power profile on [0, inf).
AxisWeightProfile mchi_power(double s) {
    return AxisWeightProfile({WeightPiece{0.0, 1.0, 1.0, 0.0, 0.0},
                              WeightPiece{1.0, kInf, 1.0, 0.0, -s}});
}

GridShift shift_a(int n) { return n == 1 ? GridShift{1, 0, 0} : GridShift{1, 1, 1}; }
GridShift shift_b(int n) { return n == 1 ? GridShift{2, 0, 0} : GridShift{2, 1, 2}; }

// ---- registry ---------------------------------------------------------------

std::map<std::string, ProbeDef> build_registry() {
    std::map<std::string, ProbeDef> reg;
    const auto add = [&reg](const std::string& name, ProbeDef def) {
        reg.emplace(name, std::move(def));
    };

    // -------------------------------------------------------------- exact --

    // l^{r} embedding: enlarging r never enlarges the cube-sum norm.
    add("embedding_r",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams base = pick(s, {2, 4}, 4, 6);
             return base.to_string() + ";r2=" + format_double(2.0 * base.r) + ";" +
                    gen_desc(shaped(s, base.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams narrow = pick(s, {2, 4}, 4, 6);
             if (narrow.r == kInf)
                 throw std::invalid_argument("embedding_r: needs finite r");
             const SpaceParams wide =
                 SpaceParams::make(narrow.pbar, narrow.t, 2.0 * narrow.r);
             Rng rng(seed);
             const StepFunction f = draw(shaped(s, narrow.pbar.dim()), rng, refined);
             return exact_ratio(bm_norm(f, wide), bm_norm(f, narrow));
         }});

    // Per-cube exponent comparison on one random dyadic cube:
    // ||f chi_Q||_p <= side^{sum 1/p - sum 1/s} ||f chi_Q||_s for s >= p.
    add("embedding_p_cube",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";s=" + doubled(sp.pbar).to_string() + ";" +
                    gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const ExponentVector& pbar = sp.pbar;
             const ExponentVector sbar = doubled(pbar);
             const GeneratorSpec g = shaped(s, pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const int level =
                 -g.K + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(g.K + g.J + 1)));
             const auto cubes = cubes_intersecting_window(g.n, level, g.K);
             const auto& q = cubes[static_cast<size_t>(
                 rng.next_below(static_cast<std::uint64_t>(cubes.size())))];
             const CellBox box = cell_box(f, q);
             const double lhs = mixed_norm_box(f, pbar, box);
             const double side_pow =
                 std::exp2(-level * (sum_recip(pbar) - sum_recip(sbar)));
             return exact_ratio(lhs, side_pow * mixed_norm_box(f, sbar, box));
         }});

    // Product rule for mixed norms with reciprocal-sum exponents.
    add("holder",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return "p=" + sp.pbar.to_string() + ";q=" + sp.pbar.to_string() + ";" +
                    gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const ExponentVector& pbar = sp.pbar;
             std::vector<double> rv;
             for (int ax = 0; ax < pbar.dim(); ++ax)
                 rv.push_back(1.0 / (2.0 / pbar[ax]));  // 1/r = 1/p + 1/q, q = p
             const ExponentVector rbar(std::move(rv));
             const GeneratorSpec g = shaped(s, pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction h = draw(g, rng, refined);
             const double lhs = mixed_norm(cellwise_product(f, h), rbar);
             return exact_ratio(lhs, mixed_norm(f, pbar) * mixed_norm(h, pbar));
         }});

    // The duality attainer achieves equality in the product rule.
    add("holder_extremizer",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return "p=" + sp.pbar.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             Rng rng(seed);
             const StepFunction f = draw(shaped(s, sp.pbar.dim()), rng, refined);
             const StepFunction a = abs_of(f);
             const double norm = mixed_norm(a, sp.pbar);
             if (norm == 0.0) return 1.0;
             const StepFunction u = holder_dual(a, sp.pbar);
             const double e1 = rel_err(pairing(a, u), norm);
             const double e2 = rel_err(mixed_norm(u, sp.pbar.conjugate()), 1.0);
             return 1.0 + std::max(e1, e2);
         }});

    // Exact scaling of the cube-sum norm under x -> 2^k x.
    add("dilation",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             if (g.K < 1) return 1.0;
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const int k =
                 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.K)));
             const double lhs = bm_norm(dilate_dyadic(f, k), sp);
             const double rhs = std::exp2(-static_cast<double>(k) * g.n / sp.t) *
                                bm_norm(f, sp);
             return eq_ratio(lhs, rhs);
         }});

    // Cube averaging never increases the mixed norm.
    add("ek_contraction",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return "p=" + sp.pbar.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const int k =
                 -g.K + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(g.K + g.J + 1)));
             return exact_ratio(mixed_norm(cond_expect(f, k), sp.pbar),
                                mixed_norm(f, sp.pbar));
         }});

    // Composing two cube averagings equals the coarser one.
    add("ek_tower",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) { return gen_desc(s.gen); },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const GeneratorSpec g = s.gen;
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const auto pick_level = [&rng, &g] {
                 return -g.K + static_cast<int>(rng.next_below(
                                   static_cast<std::uint64_t>(g.K + g.J + 1)));
             };
             const int j = pick_level();
             const int k = pick_level();
             const StepFunction a = cond_expect(cond_expect(f, k), j);
             const StepFunction b = cond_expect(f, std::min(j, k));
             double diff = 0.0;
             for (std::int64_t i = 0; i < a.total_cells(); ++i)
                 diff = std::max(diff, std::fabs(a[i] - b[i]));
             return 1.0 + diff / std::max(b.max_abs(), 1e-300);
         }});

    // Projected convolution preserves total mass: for nonnegative inputs the
    // L^1 norm of the output equals the product of the input L^1 norms.
    add("conv_mass",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) { return gen_desc(s.gen); },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const GeneratorSpec g = shaped(s, s.gen.n, /*nonneg=*/true);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction h = draw(g, rng, refined);
             const ExponentVector ones = ExponentVector::uniform(g.n, 1.0);
             const double lhs = mixed_norm(convolve_project(f, h), ones);
             return eq_ratio(lhs, mixed_norm(f, ones) * mixed_norm(h, ones));
         }});

    // The power of the tensor maximal profile dominates the box indicator:
    // ||f chi_R||_p <= ||f w||_p for w = prod_i (M chi_{I_i})^eta.
    add("mit_weight_dom",
        {ProbeKind::Exact,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const double eta = 0.8 / sp.pbar.max_entry();
             return "p=" + sp.pbar.to_string() + ";eta=" + format_double(eta) + ";" +
                    gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             if (sp.pbar.max_entry() == kInf)
                 throw std::invalid_argument("mit_weight_dom: needs finite exponents");
             const double eta = 0.8 / sp.pbar.max_entry();
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const std::int64_t cells = std::int64_t{1} << (g.J + g.K);
             std::array<double, 3> lo{0, 0, 0}, hi{1, 1, 1};
             CellBox box;
             const int scale = refined ? 1 : 0;
             for (int ax = 0; ax < g.n; ++ax) {
                 const std::int64_t a = static_cast<std::int64_t>(
                     rng.next_below(static_cast<std::uint64_t>(cells)));
                 const std::int64_t b =
                     a + 1 +
                     static_cast<std::int64_t>(rng.next_below(
                         static_cast<std::uint64_t>(cells - a)));
                 lo[static_cast<size_t>(ax)] = std::ldexp(static_cast<double>(a), -g.J);
                 hi[static_cast<size_t>(ax)] = std::ldexp(static_cast<double>(b), -g.J);
                 box.lo[static_cast<size_t>(ax)] = a << scale;
                 box.hi[static_cast<size_t>(ax)] = b << scale;
             }
             const double lhs = mixed_norm_box(f, sp.pbar, box);
             const double rhs =
                 weighted_mixed_norm(f, sp.pbar, mit_chi_weight(lo, hi, g.n, eta));
             return exact_ratio(lhs, rhs);
         }});

    // ----------------------------------------------------------- property --

    // Monotone cell-reveal ladders: norms are non-decreasing along the
    // ladder and reach the full norm at the last rung.
    add("fatou_ladder",
        {ProbeKind::Property,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             if (sp.regime != Regime::NontrivialFinite)
                 throw std::invalid_argument("fatou_ladder: need the finite regime");
             const GeneratorSpec g = shaped(s, sp.pbar.dim(), /*nonneg=*/true);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             std::vector<std::int64_t> order(static_cast<size_t>(f.total_cells()));
             for (size_t i = 0; i < order.size(); ++i)
                 order[i] = static_cast<std::int64_t>(i);
             for (size_t i = order.size(); i > 1; --i)
                 std::swap(order[i - 1],
                           order[static_cast<size_t>(rng.next_below(i))]);

             const double full_bm = bm_norm(f, sp);
             const double full_mx = mixed_norm(f, sp.pbar);
             const double scale_bm = std::max(full_bm, 1e-300);
             const double scale_mx = std::max(full_mx, 1e-300);
             const int rungs = 6;
             StepFunction part(f.dim(), f.resolution(), f.window_level(), f.depth());
             double prev_bm = 0.0, prev_mx = 0.0, violation = 0.0;
             size_t next = 0;
             for (int r = 1; r <= rungs; ++r) {
                 const size_t upto = order.size() * static_cast<size_t>(r) /
                                     static_cast<size_t>(rungs);
                 for (; next < upto; ++next) part[order[next]] = f[order[next]];
                 const double cur_bm = bm_norm(part, sp);
                 const double cur_mx = mixed_norm(part, sp.pbar);
                 violation = std::max(violation, (prev_bm - cur_bm) / scale_bm);
                 violation = std::max(violation, (prev_mx - cur_mx) / scale_mx);
                 prev_bm = cur_bm;
                 prev_mx = cur_mx;
             }
             violation = std::max(violation, std::fabs(prev_bm - full_bm) / scale_bm);
             violation = std::max(violation, std::fabs(prev_mx - full_mx) / scale_mx);
             return 1.0 + std::max(violation, 0.0);
         }});

    // |g| <= |f| cellwise implies norm(g) <= norm(f).
    add("lattice",
        {ProbeKind::Property,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             StepFunction h = f;
             for (std::int64_t i = 0; i < h.total_cells(); ++i)
                 h[i] = f[i] * rng.next_in(-1.0, 1.0);
             double violation = 0.0;
             const double fb = bm_norm(f, sp);
             const double hb = bm_norm(h, sp);
             if (fb < kInf)
                 violation = std::max(violation, (hb - fb) / std::max(fb, 1e-300));
             const double fm = mixed_norm(f, sp.pbar);
             const double hm = mixed_norm(h, sp.pbar);
             violation = std::max(violation, (hm - fm) / std::max(fm, 1e-300));
             return 1.0 + std::max(violation, 0.0);
         }});

    // The averaging approximations reach f exactly at the finest level: the
    // error bm_norm(f - E_k f) vanishes at k = J, so its minimum over the
    // level range is 0 and is attained there.  (The error sequence need not
    // shrink monotonically in k; only the attained zero always holds.)
    add("martingale_shadow",
        {ProbeKind::Property,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const double scale = std::max(bm_norm(f, sp), 1e-300);
             const int J = f.resolution();
             double best = kInf;
             double at_top = kInf;
             for (int k = -g.K; k <= J; ++k) {
                 StepFunction diff = f;
                 const StepFunction ek = cond_expect(f, k);
                 for (std::int64_t i = 0; i < diff.total_cells(); ++i) diff[i] -= ek[i];
                 const double err = bm_norm(diff, sp);
                 best = std::min(best, err);
                 if (k == J) at_top = err;
             }
             // min must be zero and must be the k = J value
             return 1.0 + std::max(at_top, best == at_top ? 0.0 : kInf) / scale;
         }});

    // A1-style grid ratios: (M chi)^{1/2} stays bounded over the window;
    // (M chi)^2 must grow markedly when the window widens.
    add("a1_weight",
        {ProbeKind::Property,
         [](const ProbeSpec& s) {
             return "s=0.5|2;" + gen_desc(shaped(s, 1));
         },
         [](const ProbeSpec& s, std::uint64_t, bool) {
             const GeneratorSpec g = shaped(s, 1);
             const AxisWeightProfile half = mchi_power(0.5);
             const double bounded = a1_ratio(half, g.K, -g.K, g.J);
             if (!std::isfinite(bounded)) return kInf;
             const AxisWeightProfile square = mchi_power(2.0);
             const double narrow = a1_ratio(square, g.K, -g.K, g.J);
             const double wide = a1_ratio(square, g.K + 2, -g.K - 2, g.J);
             if (wide >= 1.5 * narrow) return 1.0;
             return 1.0 + (1.5 * narrow - wide) / (1.5 * narrow);
         }});

    // ---------------------------------------------------------- empirical --

    // Norm growth under non-dyadic translation (constant reported).
    add("translation",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             if (g.J + g.K < 1) return 0.0;
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             std::array<std::int64_t, 3> tau{0, 0, 0};
             for (int ax = 0; ax < g.n; ++ax) {
                 const std::uint64_t half = std::uint64_t{1} << (g.J + g.K - 1);
                 tau[static_cast<size_t>(ax)] =
                     (2 * static_cast<std::int64_t>(rng.next_below(half)) + 1)
                     << (refined ? 1 : 0);
             }
             return emp_ratio(bm_norm(translate(f, tau), sp), bm_norm(f, sp));
         }});

    // Convolution inequality across the pinned parameter triple
    // 1/t + 1 = 1/t0 + 1/t1 (and likewise for p and r).
    add("young",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             return std::string("p=3|3;t=6;r=9;q=1.5|1.5;t01=12/7;r01=9/5;") +
                    gen_desc(shaped(s, 2, true));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams main =
                 SpaceParams::make(ExponentVector({3, 3}), 6.0, 9.0);
             const SpaceParams factor =
                 SpaceParams::make(ExponentVector({1.5, 1.5}), 12.0 / 7.0, 9.0 / 5.0);
             const GeneratorSpec g = shaped(s, 2, /*nonneg=*/true);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction h = draw(g, rng, refined);
             const double lhs = bm_norm(convolve_project(f, h), main);
             return emp_ratio(lhs, bm_norm(f, factor) * bm_norm(h, factor));
         }});

    // Mixed-norm bound for the level-wise averaging maximum.
    add("doob_lp",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return "p=" + sp.pbar.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim(), true));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim(), /*nonneg=*/true);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             return emp_ratio(mixed_norm(doob_maximal(f), sp.pbar),
                              mixed_norm(f, sp.pbar));
         }});

    // Cube-sum norm bound for the all-shifts dyadic maximal proxy; the
    // depth-1 output is measured by its certified upper bracket.
    add("hl_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction m = hl_maximal_lower(f);
             const double lhs = bm_norm_bracket(m, sp, f.resolution() + 3).upper;
             return emp_ratio(lhs, bm_norm(f, sp));
         }});

    // Cube-sum norm bound for the composed per-axis grid maximal.
    add("mit_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 3, 8);
             return sp.to_string() + ";" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 3, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             return emp_ratio(bm_norm(iterated_maximal_grid(f), sp), bm_norm(f, sp));
         }});

    // l^u-valued maximal inequality (three components, u = 2).
    add("vec_hl_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";u=2;N=3;" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const double u = 2.0;
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             std::vector<StepFunction> comps, maxed;
             for (int i = 0; i < 3; ++i) comps.push_back(draw(g, rng, refined));
             for (const auto& c : comps) maxed.push_back(hl_maximal_lower(c));
             const StepFunction combined =
                 ell_u_combine(VectorStepFunction(std::move(maxed)), u);
             const double lhs =
                 bm_norm_bracket(combined, sp, comps[0].resolution() + 3).upper;
             const double rhs =
                 vector_bm_norm(VectorStepFunction(std::move(comps)), sp, u);
             return emp_ratio(lhs, rhs);
         }});

    // Double-index variant: inner l^{u1} over one index, outer l^{u2}.
    add("vec2_hl_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";u1=2;u2=3;N=2x2;" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const double u1 = 2.0, u2 = 3.0;
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             std::vector<StepFunction> f;  // row-major 2x2
             for (int i = 0; i < 4; ++i) f.push_back(draw(g, rng, refined));
             const auto combine2 = [&](bool apply_max) {
                 std::vector<StepFunction> outer;
                 for (int row = 0; row < 2; ++row) {
                     std::vector<StepFunction> inner;
                     for (int col = 0; col < 2; ++col) {
                         const StepFunction& fn = f[static_cast<size_t>(2 * row + col)];
                         inner.push_back(apply_max ? hl_maximal_lower(fn) : fn);
                     }
                     outer.push_back(
                         ell_u_combine(VectorStepFunction(std::move(inner)), u1));
                 }
                 return ell_u_combine(VectorStepFunction(std::move(outer)), u2);
             };
             const StepFunction lhs_f = combine2(true);
             const StepFunction rhs_f = combine2(false);
             const double lhs =
                 bm_norm_bracket(lhs_f, sp, f[0].resolution() + 3).upper;
             return emp_ratio(lhs, bm_norm(rhs_f, sp));
         }});

    // l^u-valued bound for the composed per-axis grid maximal (exact norms
    // on both sides since the operator stays on the depth-0 grid).
    add("vec_mit_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 3, 8);
             return sp.to_string() + ";u=2;N=3;" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 3, 8);
             const double u = 2.0;
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             std::vector<StepFunction> comps, maxed;
             for (int i = 0; i < 3; ++i) comps.push_back(draw(g, rng, refined));
             for (const auto& c : comps) maxed.push_back(iterated_maximal_grid(c));
             const double lhs =
                 vector_bm_norm(VectorStepFunction(std::move(maxed)), sp, u);
             const double rhs =
                 vector_bm_norm(VectorStepFunction(std::move(comps)), sp, u);
             return emp_ratio(lhs, rhs);
         }});

    // Fractional integral between coupled parameter sets (one dimension,
    // exact per-cell kernel): source (p,t,r) = (2,3,5), order 1/6, target
    // (4,6,10) so that 1/t2 = 1/t1 - alpha and t1 p2 = t2 p1, t1 r2 = t2 r1.
    add("frac_coupled",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             return std::string("src:p=2;t=3;r=5;alpha=1/6;dst:p=4;t=6;r=10;") +
                    gen_desc(shaped(s, 1, true));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams src = SpaceParams::make(ExponentVector({2}), 3.0, 5.0);
             const SpaceParams dst = SpaceParams::make(ExponentVector({4}), 6.0, 10.0);
             const GeneratorSpec g = shaped(s, 1, /*nonneg=*/true);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction lifted = frac_integral(f, 1.0 / 6.0);
             return emp_ratio(bm_norm(lifted, dst), bm_norm(f, src));
         }});

    // Pointwise domination of the fractional integral by the sup-norm and
    // the maximal proxy: I_a f <= C * morrey^{ta/n} * (Mf)^{1 - ta/n}.
    add("frac_pointwise",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             return std::string("p=2|4;t=3;r=inf;alpha=0.5;") + gen_desc(shaped(s, 2, true));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams mp =
                 SpaceParams::make(ExponentVector({2, 4}), 3.0, kInf);
             const double alpha = 0.5;
             const GeneratorSpec g = shaped(s, 2, /*nonneg=*/true);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             if (f.is_zero()) return 0.0;
             const double mn = morrey_norm(f, mp);
             const double a = mp.t * alpha / g.n;  // exponent split parameter
             const StepFunction lifted =
                 to_grid(frac_integral(f, alpha), f.resolution(), f.window_level(), 1);
             const StepFunction m = hl_maximal_lower(f);
             double worst = 0.0;
             for (std::int64_t i = 0; i < lifted.total_cells(); ++i) {
                 const double denom = std::pow(mn, a) * std::pow(m[i], 1.0 - a);
                 if (denom > 0.0) worst = std::max(worst, lifted[i] / denom);
             }
             return worst;
         },
         "approx"});

    // Model convolution kernel with log-exact cell integrals, one dimension.
    // The image norm is taken through a fixed-scale cell average: averaging
    // only shrinks the norm, so the ratio stays a lower estimate of the
    // operator constant, and the averages of the log-integrable image
    // converge fast under refinement (the raw cell values do not: the
    // nearest-to-jump value grows by ~log 2 every level).
    add("hilbert_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             return std::string("p=2;t=3;r=6;avg=3;") + gen_desc(shaped(s, 1, false, 5));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = SpaceParams::make(ExponentVector({2}), 3.0, 6.0);
             const GeneratorSpec g = shaped(s, 1, false, 5);
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction hf = cond_expect(singular_apply(f, SingularOp{}), 3);
             return emp_ratio(bm_norm(hf, sp), bm_norm(f, sp));
         }});

    // Truncated directional kernel in two dimensions (midpoint quadrature).
    add("riesz_bm",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const GeneratorSpec g = shaped(s, 2, false, 3);
             return "p=2|4;t=4;r=8;axis=0;eps=0.25;" + gen_desc(g);
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
             const GeneratorSpec g = shaped(s, 2, false, 3);
             SingularOp op;
             op.kernel = SingularKernel::TruncatedRiesz;
             op.axis = 0;
             op.epsilon = 0.25;  // fixed physical radius, independent of the grid
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const StepFunction rf = singular_apply(f, op);
             return emp_ratio(bm_norm(rf, sp), bm_norm(f, sp));
         },
         "approx"});

    // Block-side bound for the model kernel: certified lower bracket of the
    // image against the upper bracket of the input.
    add("hilbert_block",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             return std::string("p=2;t=3;r=6;budget=8;avg=3;") +
                    gen_desc(shaped(s, 1, false, 5));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = SpaceParams::make(ExponentVector({2}), 3.0, 6.0);
             const GeneratorSpec g = shaped(s, 1, false, 5);
             Rng rng(seed);
             const StepFunction fn = draw(g, rng, refined);
             const double up = h_norm_upper_value(fn, sp);
             if (up == 0.0) return 0.0;
             // same fixed-scale average as hilbert_bm, for the same reason
             const StepFunction image = cond_expect(singular_apply(fn, SingularOp{}), 3);
             const double lo = h_norm_lower(image, sp, 8, trial_seed(seed, 1)).value;
             return lo / up;
         }});

    // Block-side bound for the grid maximal operator.
    add("maximal_block",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             return std::string("p=2;t=3;r=6;budget=8;") + gen_desc(shaped(s, 1));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = SpaceParams::make(ExponentVector({2}), 3.0, 6.0);
             const GeneratorSpec g = shaped(s, 1);
             Rng rng(seed);
             const StepFunction fn = draw(g, rng, refined);
             const double up = h_norm_upper_value(fn, sp);
             if (up == 0.0) return 0.0;
             const StepFunction image = iterated_maximal_grid(fn);
             const double lo = h_norm_lower(image, sp, 8, trial_seed(seed, 1)).value;
             return lo / up;
         }});

    // Comparability of the cube-sum norm across shifted cube families:
    // bracketed shifted norms against the standard one, worst shift.
    add("grid_equiv",
        {ProbeKind::Empirical,
         [](const ProbeSpec& s) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             return sp.to_string() + ";shifts=2;" + gen_desc(shaped(s, sp.pbar.dim()));
         },
         [](const ProbeSpec& s, std::uint64_t seed, bool refined) {
             const SpaceParams sp = pick(s, {2, 4}, 4, 8);
             const GeneratorSpec g = shaped(s, sp.pbar.dim());
             Rng rng(seed);
             const StepFunction f = draw(g, rng, refined);
             const double std_norm = bm_norm(f, sp);
             if (std_norm == 0.0) return 0.0;
             double worst = 0.0;
             for (const GridShift& shift : {shift_a(g.n), shift_b(g.n)}) {
                 const NormBracket nb =
                     bm_norm_shifted_bracket(f, sp, shift, f.resolution() + 3);
                 worst = std::max({worst, nb.upper / std_norm, std_norm / nb.lower});
             }
             return worst;
         }});

    return reg;
}

}  // namespace

const std::map<std::string, ProbeDef>& probe_registry() {
    static const std::map<std::string, ProbeDef> reg = build_registry();
    return reg;
}

}  // namespace mixnorm::detail
