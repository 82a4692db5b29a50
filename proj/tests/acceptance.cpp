// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.
// Tolerances are pinned here and intentionally duplicated from nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "mixnorm/blocks.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/operators.hpp"
#include "mixnorm/verify.hpp"
#include "mixnorm/weights.hpp"

using namespace mixnorm;

namespace {

constexpr double kOracleTol = 1e-10;    // closed-form comparisons
constexpr double kCubeNormTol = 1e-12;  // indicator norm identity
constexpr double kChainTol = 1e-10;     // duality inequalities

int g_checks_failed = 0;

bool close(double a, double b, double rel) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) <= rel * scale;
}

void note_failure(const char* what, double lhs, double rhs) {
    ++g_checks_failed;
    if (g_checks_failed <= 8)
        std::printf("    detail: %s  lhs=%.17g rhs=%.17g\n", what, lhs, rhs);
}

StepFunction random_function(int n, int J, int K, Rng& rng, bool nonneg = false) {
    StepFunction f(n, J, K, 0);
    for (std::int64_t i = 0; i < f.total_cells(); ++i)
        if (rng.next_unit() < 0.6)
            f[i] = nonneg ? rng.next_in(0.0, 1.0) : rng.next_in(-1.0, 1.0);
    return f;
}

// ---- criterion 1: unit-cube norm against the two-series closed form -------

bool criterion_closed_form() {
    struct Tuple {
        int n;
        std::vector<double> p;
        double t, r;
    };
    const std::vector<Tuple> lattice = {
        {1, {1.5}, 2, 4},      {1, {1.5}, 2, 8},      {1, {2}, 3, 6},
        {1, {2}, 2.5, 5},      {1, {4}, 5, 10},       {1, {1}, 1.5, 3},
        {1, {2}, 2, kInf},     {2, {2, 4}, 4, 8},     {2, {2, 4}, 3, 6},
        {2, {2, 2}, 3, 6},     {2, {4, 4}, 5, 10},    {2, {1, kInf}, 3, 9},
        {2, {2, 4}, 4, kInf},  {2, {2, 4}, 8.0 / 3.0, kInf},
        {2, {3, 3}, 4, 12},    {2, {1.5, 6}, 3, 7},   {3, {2, 2, 2}, 2.5, 5},
        {3, {2, 4, 8}, 4, 8},  {3, {3, 3, 3}, 3.5, 7},
        {3, {2, 2, 2}, 2, kInf},                      {3, {1, 2, 4}, 2, 4},
        {3, {2, 2, 4}, 3, 9}};
    bool ok = lattice.size() >= 20;
    for (const Tuple& tc : lattice) {
        const SpaceParams sp = SpaceParams::make(ExponentVector(tc.p), tc.t, tc.r);
        if (!sp.nontrivial()) {
            note_failure("tuple unexpectedly degenerate", tc.t, tc.r);
            ok = false;
            continue;
        }
        const StepFunction chi = StepFunction::indicator_unit_cube(tc.n, 1, 1);
        const double measured = bm_norm(chi, sp);
        const double oracle = chi_bm_closed_form(sp);
        if (!close(measured, oracle, kOracleTol)) {
            note_failure(sp.to_string().c_str(), measured, oracle);
            ok = false;
        }
    }
    // pinned literal for the headline tuple
    const SpaceParams pin = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    const double measured = bm_norm(StepFunction::indicator_unit_cube(2, 2, 2), pin);
    if (!close(measured, std::pow(5.0 / 3.0, 0.125), kOracleTol)) {
        note_failure("(5/3)^(1/8) pin", measured, std::pow(5.0 / 3.0, 0.125));
        ok = false;
    }
    return ok;
}

// ---- criterion 2: indicator mixed norms equal |Q|^sigma --------------------

bool criterion_cube_norms() {
    Rng rng(2026);
    bool ok = true;
    const auto exponent_set = [](int n) {
        std::vector<ExponentVector> out;
        for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 8.0}) out.push_back(ExponentVector::uniform(n, p));
        std::vector<double> asc, desc, inf_lead, inf_tail;
        for (int ax = 0; ax < n; ++ax) {
            asc.push_back(2.0 + 2.0 * ax);
            desc.push_back(8.0 / (1 + ax));
            inf_lead.push_back(ax == 0 ? kInf : 2.0);
            inf_tail.push_back(ax == n - 1 ? kInf : 2.0);
        }
        out.push_back(ExponentVector(asc));
        out.push_back(ExponentVector(desc));
        out.push_back(ExponentVector(inf_lead));
        out.push_back(ExponentVector(inf_tail));
        return out;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(3));
        StepFunction one(n, 2, 2, 0);
        for (double& v : one.values()) v = 1.0;
        const int level = -2 + static_cast<int>(rng.next_below(5));
        const auto cubes = cubes_intersecting_window(n, level, 2);
        const DyadicCube q = cubes[static_cast<size_t>(rng.next_below(cubes.size()))];
        const StepFunction chi = restrict_to_cube(one, q);
        for (const ExponentVector& p : exponent_set(n)) {
            const double measured = mixed_norm(chi, p);
            const double oracle = std::pow(q.volume(), p.mean_reciprocal());
            if (!close(measured, oracle, kCubeNormTol)) {
                note_failure("indicator norm", measured, oracle);
                ok = false;
            }
        }
    }
    return ok;
}

// ---- criteria 3, 6, 7: probe batches ---------------------------------------

bool run_batch(const std::vector<std::pair<std::string, int>>& batch,
               std::uint64_t seed, bool verbose) {
    bool ok = true;
    for (const auto& [name, trials] : batch) {
        ProbeSpec spec;
        spec.name = name;
        spec.trials = trials;
        spec.seed = seed;
        const ProbeReport report = run_probe(spec);
        if (!report.pass) {
            std::printf("    probe %s FAILED: max_ratio=%.17g %s\n", name.c_str(),
                        report.max_ratio, report.notes.c_str());
            ok = false;
        } else if (verbose) {
            std::printf("    probe %-18s max_ratio=%-22.16g %s\n", name.c_str(),
                        report.max_ratio, report.notes.c_str());
        }
    }
    return ok;
}

bool criterion_exact_suite() {
    return run_batch({{"embedding_r", 1000},
                      {"embedding_p_cube", 1000},
                      {"holder", 1000},
                      {"holder_extremizer", 1000},
                      {"dilation", 1000},
                      {"ek_contraction", 1000},
                      {"ek_tower", 1000},
                      {"conv_mass", 1000},
                      {"mit_weight_dom", 1000}},
                     1, false);
}

// ---- criterion 4: per-cube attainer identities ----------------------------

bool criterion_attainers() {
    const std::vector<SpaceParams> spaces = {
        SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0),
        SpaceParams::make(ExponentVector({1.5, 3}), 3.0, 7.0)};
    Rng rng(404);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const SpaceParams& sp = spaces[static_cast<size_t>(trial % 2)];
        const StepFunction f = random_function(2, 2, 2, rng);
        const int level = -2 + static_cast<int>(rng.next_below(5));
        const auto cubes = cubes_intersecting_window(2, level, 2);
        const DyadicCube q = cubes[static_cast<size_t>(rng.next_below(cubes.size()))];
        const StepFunction e = holder_attainer(f, q, sp);
        const double bound = std::pow(q.volume(), sp.cube_exponent());
        const double local = mixed_norm_box(f, sp.pbar, cell_box(f, q));
        if (local == 0.0) {
            if (!e.is_zero()) {
                note_failure("attainer of empty restriction", e.max_abs(), 0.0);
                ok = false;
            }
            continue;
        }
        if (!close(pairing(f, e), bound * local, kChainTol)) {
            note_failure("attainer pairing identity", pairing(f, e), bound * local);
            ok = false;
        }
        const double dual = mixed_norm(e, sp.pbar.conjugate());
        if (!close(dual, bound, kChainTol)) {
            note_failure("attainer dual norm identity", dual, bound);
            ok = false;
        }
    }
    return ok;
}

// ---- criterion 5: duality sandwich and pairing chain ------------------------

bool criterion_duality() {
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    Rng rng(505);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const StepFunction g = random_function(2, 2, 1, rng);
        const double upper = h_norm_upper_value(g, sp);
        const HNormLower lower = h_norm_lower(g, sp, 8, rng.next_u64());
        if (lower.value > upper * (1 + kChainTol)) {
            note_failure("sandwich lower <= upper", lower.value, upper);
            ok = false;
        }
        if (!g.is_zero()) {
            const double wit = bm_norm(lower.witness, sp);
            if (wit > 0 &&
                !close(std::fabs(pairing(g, lower.witness)) / wit, lower.value, 1e-11)) {
                note_failure("witness reproduces the lower bound",
                             std::fabs(pairing(g, lower.witness)) / wit, lower.value);
                ok = false;
            }
        }
    }
    // single blocks have block norm at most one
    for (int trial = 0; trial < 200; ++trial) {
        const StepFunction f = random_function(2, 2, 1, rng);
        const int level = -1 + static_cast<int>(rng.next_below(4));
        const auto cubes = cubes_intersecting_window(2, level, 1);
        const DyadicCube q = cubes[static_cast<size_t>(rng.next_below(cubes.size()))];
        const auto [lambda, unit] = block_split(restrict_to_cube(f, q), q, sp);
        if (lambda == 0.0) continue;
        const double upper = h_norm_upper_value(unit, sp);
        if (upper > 1.0 + kChainTol) {
            note_failure("single block upper bound", upper, 1.0);
            ok = false;
        }
    }
    // |<f, g>| <= h_norm_upper(g) * bm_norm(f)
    for (int trial = 0; trial < 500; ++trial) {
        const StepFunction f = random_function(2, 2, 1, rng);
        const StepFunction g = random_function(2, 2, 1, rng);
        const double bound = h_norm_upper_value(g, sp) * bm_norm(f, sp);
        const double inner = std::fabs(pairing(f, g));
        if (inner > bound * (1 + kChainTol)) {
            note_failure("pairing chain", inner, bound);
            ok = false;
        }
    }
    return ok;
}

// ---- criterion 6: empirical boundedness with refinement stability ----------

bool criterion_empirical() {
    return run_batch({{"translation", 40},
                      {"young", 25},
                      {"doob_lp", 40},
                      {"hl_bm", 40},
                      {"mit_bm", 40},
                      {"vec_hl_bm", 30},
                      {"vec2_hl_bm", 25},
                      {"vec_mit_bm", 30},
                      {"frac_coupled", 40},
                      {"frac_pointwise", 25},
                      {"hilbert_bm", 40},
                      {"riesz_bm", 25},
                      {"hilbert_block", 40},
                      {"maximal_block", 40},
                      {"grid_equiv", 30}},
                     1, true);
}

// ---- criterion 7: structural property suites -------------------------------

bool criterion_properties() {
    bool ok = run_batch({{"fatou_ladder", 200},
                         {"lattice", 200},
                         {"martingale_shadow", 200},
                         {"a1_weight", 1}},
                        1, false);
    const SpaceParams sp = SpaceParams::make(ExponentVector({2, 4}), 4.0, 8.0);
    ok = property_fatou(sp, 99, 50).pass && ok;
    return ok;
}

// ---- criterion 8: bit-exact determinism across reruns and thread counts ----

bool criterion_determinism() {
    std::string config_text = "trials = 6\nseed = 12\n";
    for (const std::string& name :
         {std::string("young"), std::string("vec2_hl_bm"), std::string("riesz_bm"),
          std::string("frac_pointwise")})
        config_text += "trials." + name + " = 3\n";
    const SuiteConfig config = parse_suite_config(config_text);

    setenv("MIXNORM_THREADS", "1", 1);
    const std::string first = reports_to_csv(run_suite(config));
    const std::string second = reports_to_csv(run_suite(config));
    setenv("MIXNORM_THREADS", "4", 1);
    const std::string threaded = reports_to_csv(run_suite(config));
    unsetenv("MIXNORM_THREADS");

    bool ok = true;
    if (first != second) {
        std::printf("    detail: serial reruns differ\n");
        ok = false;
    }
    if (first != threaded) {
        std::printf("    detail: four-thread run differs from serial\n");
        ok = false;
    }
    if (first.find("probe,params,trials,max_ratio,witness_seed,pass,notes") != 0) {
        std::printf("    detail: CSV header mismatch\n");
        ok = false;
    }
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<bool()> run;
    };
    const std::vector<Criterion> criteria = {
        {"unit-cube norms match the closed form on a parameter lattice",
         criterion_closed_form},
        {"cube indicator mixed norms equal |Q|^sigma", criterion_cube_norms},
        {"exact-constant inequality suite, 1000 trials per probe", criterion_exact_suite},
        {"per-cube attainer identities on 200 random pairs", criterion_attainers},
        {"duality sandwich, single-block bound, and pairing chain", criterion_duality},
        {"empirical boundedness constants are finite and refinement-stable",
         criterion_empirical},
        {"monotone ladder, lattice, approximation-error, and weight-ratio laws",
         criterion_properties},
        {"suite reruns are byte-identical across thread counts", criterion_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        const bool ok = criteria[i].run();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu: %s  %s (%.1f s)\n", i + 1, ok ? "PASS" : "FAIL",
                    criteria[i].label, secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
