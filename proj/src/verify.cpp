#include "mixnorm/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mixnorm/format.hpp"
#include "probe_registry.hpp"

namespace mixnorm {

namespace {

constexpr double kExactTol = 1e-10;      // exact/property pass threshold
constexpr double kRefineSlack = 0.10;    // allowed relative drift under refinement

void check_generator(const GeneratorSpec& g) {
    if (g.n < 1 || g.n > 3) throw std::invalid_argument("generator: n must be 1..3");
    if (g.K < 0) throw std::invalid_argument("generator: K must be >= 0");
    if (g.J + g.K < 0) throw std::invalid_argument("generator: need J + K >= 0");
    if (!(g.sparsity >= 0.0 && g.sparsity <= 1.0))
        throw std::invalid_argument("generator: sparsity must lie in [0, 1]");
    if (!(g.lo >= 0.0 && g.lo <= g.hi && std::isfinite(g.hi)))
        throw std::invalid_argument("generator: need 0 <= lo <= hi < inf");
}

int thread_budget() {
    if (const char* env = std::getenv("MIXNORM_THREADS")) {
        int parsed = 0;
        const auto res = std::from_chars(env, env + std::string_view(env).size(), parsed);
        if (res.ec != std::errc{} || *res.ptr != '\0' || parsed < 1)
            throw std::runtime_error("MIXNORM_THREADS must be a positive integer");
        return std::min(parsed, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

// Runs def.trial for indices [0, trials) and stores results by index.
std::vector<double> run_pass(const detail::ProbeDef& def, const ProbeSpec& spec,
                             bool refined) {
    std::vector<double> ratios(static_cast<size_t>(spec.trials), 0.0);
    const int workers =
        std::min<int>(thread_budget(), spec.trials);
    if (workers <= 1) {
        for (int i = 0; i < spec.trials; ++i)
            ratios[static_cast<size_t>(i)] =
                def.trial(spec, trial_seed(spec.seed, static_cast<std::uint64_t>(i)),
                          refined);
        return ratios;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= spec.trials) break;
                    ratios[static_cast<size_t>(i)] = def.trial(
                        spec, trial_seed(spec.seed, static_cast<std::uint64_t>(i)),
                        refined);
                }
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return ratios;
}

// First index attaining the maximum, scanning in index order.
size_t argmax(const std::vector<double>& v) {
    size_t best = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for '" + key + "': " + value);
    }
}

}  // namespace

StepFunction gen_random_step(const GeneratorSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    return gen_random_step(spec, rng);
}

StepFunction gen_random_step(const GeneratorSpec& spec, Rng& rng) {
    check_generator(spec);
    StepFunction f(spec.n, spec.J, spec.K, 0);
    for (std::int64_t i = 0; i < f.total_cells(); ++i) {
        if (rng.next_unit() >= spec.sparsity) continue;
        double value = rng.next_in(spec.lo, spec.hi);
        if (spec.signed_values && rng.next_unit() < 0.5) value = -value;
        f[i] = value;
    }
    return f;
}

std::vector<std::string> probe_names() {
    std::vector<std::string> names;
    for (const auto& [name, def] : detail::probe_registry()) names.push_back(name);
    return names;
}

ProbeKind probe_kind(const std::string& name) {
    const auto& reg = detail::probe_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown probe: " + name);
    return it->second.kind;
}

ProbeReport run_probe(const ProbeSpec& spec) {
    const auto& reg = detail::probe_registry();
    const auto it = reg.find(spec.name);
    if (it == reg.end()) throw std::invalid_argument("unknown probe: " + spec.name);
    if (spec.trials < 1) throw std::invalid_argument("probe trials must be >= 1");
    check_generator(spec.gen);
    const detail::ProbeDef& def = it->second;

    const std::vector<double> base = run_pass(def, spec, /*refined=*/false);
    const size_t at = argmax(base);
    ProbeReport report;
    report.name = spec.name;
    report.params = def.describe(spec);
    report.trials = spec.trials;
    report.max_ratio = base[at];
    report.witness_seed = trial_seed(spec.seed, static_cast<std::uint64_t>(at));
    report.notes = def.base_notes;

    if (def.kind == ProbeKind::Empirical) {
        const std::vector<double> refined = run_pass(def, spec, /*refined=*/true);
        const double mx = report.max_ratio;
        const double rx = refined[argmax(refined)];
        const double delta = mx > 0.0 ? (rx - mx) / mx : (rx > 0.0 ? kInf : 0.0);
        report.pass = std::isfinite(mx) && std::isfinite(rx) &&
                      std::fabs(delta) <= kRefineSlack;
        if (!report.notes.empty()) report.notes += " ";
        report.notes += "refine_delta=" + format_double(delta);
    } else {
        report.pass = report.max_ratio <= 1.0 + kExactTol;
    }
    return report;
}

ProbeReport property_fatou(const SpaceParams& params, std::uint64_t seed, int trials) {
    ProbeSpec spec;
    spec.name = "fatou_ladder";
    spec.trials = trials;
    spec.seed = seed;
    spec.gen.n = params.dim();
    spec.params = params;
    return run_probe(spec);
}

SuiteConfig parse_suite_config(const std::string& text) {
    std::vector<std::string> names;
    std::map<std::string, int> per_probe_trials;
    GeneratorSpec gen;
    int trials = 100;
    std::uint64_t seed = 1;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "probes") {
            std::istringstream list(value);
            std::string item;
            while (std::getline(list, item, ',')) {
                item = trim(item);
                if (!item.empty()) names.push_back(item);
            }
        } else if (key == "trials") {
            trials = parse_int(key, value);
        } else if (key == "seed") {
            seed = parse_u64(key, value);
        } else if (key == "n") {
            gen.n = parse_int(key, value);
        } else if (key == "J") {
            gen.J = parse_int(key, value);
        } else if (key == "K") {
            gen.K = parse_int(key, value);
        } else if (key == "sparsity") {
            gen.sparsity = parse_real(key, value);
        } else if (key == "lo") {
            gen.lo = parse_real(key, value);
        } else if (key == "hi") {
            gen.hi = parse_real(key, value);
        } else if (key == "signed") {
            const int flag = parse_int(key, value);
            if (flag != 0 && flag != 1)
                throw std::invalid_argument("config: 'signed' must be 0 or 1");
            gen.signed_values = flag == 1;
        } else if (key.rfind("trials.", 0) == 0) {
            per_probe_trials[key.substr(7)] = parse_int(key, value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    check_generator(gen);

    const auto& reg = detail::probe_registry();
    if (names.empty())
        for (const auto& [name, def] : reg) names.push_back(name);
    SuiteConfig config;
    for (const std::string& name : names) {
        if (reg.find(name) == reg.end())
            throw std::invalid_argument("config: unknown probe '" + name + "'");
        ProbeSpec spec;
        spec.name = name;
        spec.seed = seed;
        spec.gen = gen;
        const auto over = per_probe_trials.find(name);
        spec.trials = over != per_probe_trials.end() ? over->second : trials;
        if (spec.trials < 1)
            throw std::invalid_argument("config: trials must be >= 1 for '" + name + "'");
        config.probes.push_back(std::move(spec));
    }
    for (const auto& [name, count] : per_probe_trials)
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw std::invalid_argument("config: trials." + name +
                                        " given but probe not listed");
    return config;
}

SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_suite_config(buf.str());
}

std::vector<ProbeReport> run_suite(const SuiteConfig& config) {
    std::vector<ProbeReport> reports;
    reports.reserve(config.probes.size());
    for (const ProbeSpec& spec : config.probes) reports.push_back(run_probe(spec));
    return reports;
}

std::string reports_to_csv(const std::vector<ProbeReport>& reports) {
    std::string out = "probe,params,trials,max_ratio,witness_seed,pass,notes\n";
    for (const ProbeReport& r : reports) {
        out += r.name;
        out += ',';
        out += r.params;
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += format_double(r.max_ratio);
        out += ',';
        out += std::to_string(r.witness_seed);
        out += ',';
        out += r.pass ? '1' : '0';
        out += ',';
        out += r.notes;
        out += '\n';
    }
    return out;
}

}  // namespace mixnorm
