#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixnorm/exponents.hpp"
#include "mixnorm/prng.hpp"
#include "mixnorm/step_function.hpp"

namespace mixnorm {

// Shape and distribution of randomly generated inputs.  Occupied cells are
// chosen with probability `sparsity`; magnitudes are uniform in [lo, hi] and
// optionally sign-flipped.  Identical seeds yield identical functions on
// every platform (xoshiro256**, seeded via splitmix64).
struct GeneratorSpec {
    int n = 2;
    int J = 2;
    int K = 2;
    double sparsity = 0.6;
    double lo = 0.0;
    double hi = 1.0;
    bool signed_values = true;
};

StepFunction gen_random_step(const GeneratorSpec& spec, std::uint64_t seed);
StepFunction gen_random_step(const GeneratorSpec& spec, Rng& rng);

enum class ProbeKind {
    Exact,      // constant-1 inequality or identity: pass iff max_ratio <= 1 + 1e-10
    Property,   // structural law encoded as ratio 1 + violation: same pass rule
    Empirical,  // constant only reported: pass iff finite and refinement-stable
};

struct ProbeSpec {
    std::string name;
    int trials = 100;
    std::uint64_t seed = 1;
    GeneratorSpec gen;
    // Optional space-parameter override for probes built around one
    // parameter set; multi-space probes keep their pinned tuples.
    std::optional<SpaceParams> params;
};

struct ProbeReport {
    std::string name;
    std::string params;  // ';'-separated key=value list, '|' inside vectors
    int trials = 0;
    double max_ratio = 0.0;
    std::uint64_t witness_seed = 0;  // per-trial seed of the max-attaining trial
    bool pass = false;
    std::string notes;
};

// Registered probe names in registry order.
std::vector<std::string> probe_names();

ProbeKind probe_kind(const std::string& name);

// Runs one probe: all trials with per-trial seeds trial_seed(seed, index),
// reduced in index order (so thread count never changes the result).
// Empirical probes run a second pass on the once-refined grid with the same
// draws and require the max ratio to move by at most 10%.
ProbeReport run_probe(const ProbeSpec& spec);

// Monotone-ladder / lattice law for the cube-sum norm, exposed directly.
ProbeReport property_fatou(const SpaceParams& params, std::uint64_t seed, int trials = 200);

struct SuiteConfig {
    std::vector<ProbeSpec> probes;
};

// Line-oriented `key=value` text: keys `probes` (comma-separated names),
// `trials`, `seed`, `n`, `J`, `K`, `sparsity`, `lo`, `hi`, `signed`, and
// per-probe `trials.<name>`.  `#` starts a comment.  Unknown keys throw.
SuiteConfig parse_suite_config(const std::string& text);
SuiteConfig load_suite_config(const std::string& path);

// Trials within each probe may run on up to MIXNORM_THREADS threads
// (default: hardware concurrency); results are bit-identical regardless.
std::vector<ProbeReport> run_suite(const SuiteConfig& config);

// CSV with header `probe,params,trials,max_ratio,witness_seed,pass,notes`,
// one row per report, shortest round-trip number formatting.
std::string reports_to_csv(const std::vector<ProbeReport>& reports);

}  // namespace mixnorm
