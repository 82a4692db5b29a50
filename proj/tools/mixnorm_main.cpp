// Command-line front end: norm queries, operator application, duality
// brackets, and the randomized verification suite.  Every printed number is
// produced by a library call; this file only parses flags and formats output.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixnorm/blocks.hpp"
#include "mixnorm/format.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/operators.hpp"
#include "mixnorm/verify.hpp"

namespace {

using namespace mixnorm;

constexpr int kDigits = 15;

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "inf") {
            out.push_back(kInf);
            continue;
        }
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw CLI::ValidationError(std::string(what) + ": bad entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_number_list(text, what)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw CLI::ValidationError(std::string(what) + ": expected integers");
        out.push_back(i);
    }
    return out;
}

StepFunction read_input(const std::string& input, const std::string& unit_cube) {
    if (!unit_cube.empty()) {
        const auto njk = parse_int_list(unit_cube, "--unit-cube");
        if (njk.size() != 3)
            throw CLI::ValidationError("--unit-cube: expected n,J,K");
        return StepFunction::indicator_unit_cube(njk[0], njk[1], njk[2]);
    }
    if (input.empty() || input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return from_text(buf.str());
    }
    return load_text(input);
}

void write_output(const StepFunction& f, const std::string& output) {
    if (output.empty() || output == "-")
        std::cout << to_text(f);
    else
        save_text(f, output);
}

double parse_real(const std::string& text, const char* what) {
    if (text == "inf") return kInf;
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size())
        throw CLI::ValidationError(std::string(what) + ": bad number '" + text + "'");
    return v;
}

// Shared space-parameter flags; `make` validates the regime and throws with
// the defining inequality quoted when the triple is degenerate.
struct SpaceFlags {
    std::string pbar;
    std::string t = "1";
    std::string r = "inf";

    void attach(CLI::App* cmd, bool need_tr) {
        cmd->add_option("--pbar", pbar, "exponents per axis, e.g. 2,4 (inf allowed)")
            ->required();
        auto* topt = cmd->add_option("--t", t, "volume-weight exponent t");
        auto* ropt = cmd->add_option("--r", r, "cube-sum exponent r (inf allowed)");
        if (need_tr) {
            topt->required();
            ropt->required();
        }
    }

    ExponentVector exponents() const {
        return ExponentVector(parse_number_list(pbar, "--pbar"));
    }

    SpaceParams space() const {
        const SpaceParams sp =
            SpaceParams::make(exponents(), parse_real(t, "--t"), parse_real(r, "--r"));
        if (!sp.nontrivial())
            throw CLI::ValidationError(
                "degenerate parameters " + sp.to_string() +
                ": need n/(1/p_1+...+1/p_n) < t < r < inf, or "
                "n/(1/p_1+...+1/p_n) <= t < r = inf");
        return sp;
    }
};

StepFunction apply_op(const StepFunction& f, const std::string& op) {
    const auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ':')) parts.push_back(item);
        return parts;
    };
    const auto parts = split(op);
    const std::string& head = parts[0];
    if (head == "ek" && parts.size() == 2)
        return cond_expect(f, parse_int_list(parts[1], "--op ek")[0]);
    if (head == "doob" && parts.size() == 1) return doob_maximal(f);
    if (head == "mdya" && parts.size() == 2) {
        const auto a = parse_int_list(parts[1], "--op mdya");
        if (static_cast<int>(a.size()) != f.dim())
            throw CLI::ValidationError("--op mdya: need one shift entry per axis");
        GridShift shift{0, 0, 0};
        for (size_t i = 0; i < a.size(); ++i) shift[i] = a[i];
        return dyadic_maximal_shifted(f, shift);
    }
    if (head == "mit" && parts.size() == 1) return iterated_maximal_grid(f);
    if (head == "ialpha" && parts.size() == 2)
        return frac_integral(f, parse_real(parts[1], "--op ialpha"));
    if (head == "hilbert" && parts.size() == 1) return singular_apply(f, SingularOp{});
    if (head == "riesz" && parts.size() == 3) {
        SingularOp so;
        so.kernel = SingularKernel::TruncatedRiesz;
        so.axis = parse_int_list(parts[1], "--op riesz")[0];
        so.epsilon = parse_real(parts[2], "--op riesz");
        return singular_apply(f, so);
    }
    if (head == "conv" && parts.size() == 2) return convolve_project(f, load_text(parts[1]));
    throw CLI::ValidationError(
        "--op: expected ek:<k> | doob | mdya:<a1,..> | mit | ialpha:<alpha> | "
        "hilbert | riesz:<axis>:<eps> | conv:<path>");
}

int run(int argc, char** argv) {
    CLI::App app{"mixed-norm step-function laboratory"};
    app.require_subcommand(1);

    // ---- norm ----
    auto* norm_cmd = app.add_subcommand("norm", "print a norm of a step function");
    std::string norm_kind = "bm";
    std::string norm_input, norm_unit;
    std::vector<std::string> norm_inputs;
    std::string norm_u = "2";
    SpaceFlags norm_space;
    norm_cmd->add_option("--kind", norm_kind, "mixed | bm | morrey | vector")
        ->check(CLI::IsMember({"mixed", "bm", "morrey", "vector"}));
    norm_space.attach(norm_cmd, /*need_tr=*/false);
    norm_cmd->add_option("--input", norm_inputs, "step-function file(s); '-' = stdin");
    norm_cmd->add_option("--unit-cube", norm_unit, "n,J,K: use the unit-cube indicator");
    norm_cmd->add_option("--u", norm_u, "inner l^u exponent (kind=vector)");

    // ---- apply ----
    auto* apply_cmd = app.add_subcommand("apply", "apply an operator to a step function");
    std::string apply_op_spec, apply_input, apply_unit, apply_output;
    apply_cmd
        ->add_option("--op", apply_op_spec,
                     "ek:<k> | doob | mdya:<a1,..> | mit | ialpha:<alpha> | hilbert | "
                     "riesz:<axis>:<eps> | conv:<path>")
        ->required();
    apply_cmd->add_option("--input", apply_input, "step-function file; '-' = stdin");
    apply_cmd->add_option("--unit-cube", apply_unit, "n,J,K: use the unit-cube indicator");
    apply_cmd->add_option("--output", apply_output, "destination file; '-' = stdout");

    // ---- pair ----
    auto* pair_cmd = app.add_subcommand("pair", "print the integral of f*g");
    std::string pair_f, pair_g;
    pair_cmd->add_option("--f", pair_f, "first step-function file")->required();
    pair_cmd->add_option("--g", pair_g, "second step-function file")->required();

    // ---- block-bracket ----
    auto* bb_cmd = app.add_subcommand(
        "block-bracket", "certified lower/upper bounds for the block-space norm");
    std::string bb_input, bb_unit;
    SpaceFlags bb_space;
    int bb_budget = 16;
    std::uint64_t bb_seed = 1;
    bb_space.attach(bb_cmd, /*need_tr=*/true);
    bb_cmd->add_option("--input", bb_input, "step-function file; '-' = stdin");
    bb_cmd->add_option("--unit-cube", bb_unit, "n,J,K: use the unit-cube indicator");
    bb_cmd->add_option("--budget", bb_budget, "random candidates for the lower bound");
    bb_cmd->add_option("--seed", bb_seed, "seed for the random candidates");

    // ---- probe ----
    auto* probe_cmd = app.add_subcommand("probe", "run one randomized probe");
    ProbeSpec probe_spec;
    int probe_signed = 1;
    probe_cmd->add_option("--name", probe_spec.name, "probe name");
    probe_cmd->add_option("--trials", probe_spec.trials, "trial count");
    probe_cmd->add_option("--seed", probe_spec.seed, "suite seed");
    probe_cmd->add_option("--n", probe_spec.gen.n, "dimension of generated inputs");
    probe_cmd->add_option("--J", probe_spec.gen.J, "resolution level");
    probe_cmd->add_option("--K", probe_spec.gen.K, "window level");
    probe_cmd->add_option("--sparsity", probe_spec.gen.sparsity, "cell fill probability");
    probe_cmd->add_option("--lo", probe_spec.gen.lo, "magnitude lower bound");
    probe_cmd->add_option("--hi", probe_spec.gen.hi, "magnitude upper bound");
    probe_cmd->add_option("--signed", probe_signed, "1 = signed values, 0 = nonnegative");
    bool probe_list = false;
    probe_cmd->add_flag("--list", probe_list, "list probe names and exit");

    // ---- suite ----
    auto* suite_cmd = app.add_subcommand("suite", "run a configured probe suite");
    std::string suite_config, suite_output;
    suite_cmd->add_option("--config", suite_config, "key=value config file")->required();
    suite_cmd->add_option("--output", suite_output, "CSV destination; '-' = stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (norm_cmd->parsed()) {
        if (!norm_inputs.empty()) norm_input = norm_inputs.front();
        if (norm_kind != "mixed" && norm_cmd->count("--t") == 0)
            throw CLI::ValidationError("--t is required for --kind " + norm_kind);
        if (norm_kind == "mixed") {
            const StepFunction f = read_input(norm_input, norm_unit);
            std::cout << format_double_sig(mixed_norm(f, norm_space.exponents()), kDigits)
                      << "\n";
            return 0;
        }
        const SpaceParams sp = norm_space.space();
        if (norm_kind == "vector") {
            std::vector<StepFunction> comps;
            for (const std::string& path : norm_inputs)
                comps.push_back(read_input(path, ""));
            if (!norm_unit.empty()) comps.push_back(read_input("", norm_unit));
            if (comps.empty())
                throw CLI::ValidationError("--kind vector: needs at least one --input");
            const double u = parse_real(norm_u, "--u");
            std::cout << format_double_sig(
                             vector_bm_norm(VectorStepFunction(std::move(comps)), sp, u),
                             kDigits)
                      << "\n";
            return 0;
        }
        const StepFunction f = read_input(norm_input, norm_unit);
        const double value = norm_kind == "morrey" ? morrey_norm(f, sp) : bm_norm(f, sp);
        std::cout << format_double_sig(value, kDigits) << "\n";
        return 0;
    }

    if (apply_cmd->parsed()) {
        const StepFunction f = read_input(apply_input, apply_unit);
        write_output(apply_op(f, apply_op_spec), apply_output);
        return 0;
    }

    if (pair_cmd->parsed()) {
        const double value = pairing(load_text(pair_f), load_text(pair_g));
        std::cout << format_double_sig(value, kDigits) << "\n";
        return 0;
    }

    if (bb_cmd->parsed()) {
        const SpaceParams sp = bb_space.space();
        const StepFunction g = read_input(bb_input, bb_unit);
        const double upper = h_norm_upper_value(g, sp);
        const double lower = h_norm_lower(g, sp, bb_budget, bb_seed).value;
        std::cout << "lower " << format_double_sig(lower, kDigits) << "\n"
                  << "upper " << format_double_sig(upper, kDigits) << "\n";
        return 0;
    }

    if (probe_cmd->parsed()) {
        if (probe_list) {
            for (const std::string& name : probe_names()) std::cout << name << "\n";
            return 0;
        }
        if (probe_spec.name.empty())
            throw CLI::ValidationError("probe", "--name is required unless --list is given");
        probe_spec.gen.signed_values = probe_signed != 0;
        const ProbeReport report = run_probe(probe_spec);
        std::cout << reports_to_csv({report});
        return report.pass ? 0 : 2;
    }

    if (suite_cmd->parsed()) {
        const std::vector<ProbeReport> reports = run_suite(load_suite_config(suite_config));
        const std::string csv = reports_to_csv(reports);
        if (suite_output.empty() || suite_output == "-") {
            std::cout << csv;
        } else {
            std::ofstream out(suite_output, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + suite_output);
            out << csv;
        }
        for (const ProbeReport& r : reports)
            if (!r.pass) return 2;
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
