// tanglekit command line: generate benchmark/random states, compute
// invariant reports, and run the randomized verification suites.
//
// Exit codes: 0 success, 1 check failure, 2 usage or parse error.

#include "tanglekit/tanglekit.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace tanglekit;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TANGLEKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("TANGLEKIT_SEED is not a number");
        }
    }
    return 0;
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_value(const ReportEntry& e) {
    if (e.is_real) return fmt12(e.value.real());
    return fmt12(e.value.real()) + (e.value.imag() < 0 ? " - " : " + ") +
           fmt12(std::abs(e.value.imag())) + "i";
}

struct ComputeOptions {
    std::string state_path;
    std::string name;
    int n = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> select;
    bool as_json = false;
};

PureState resolve_state(const ComputeOptions& opt, std::string& source_label) {
    const bool has_file = !opt.state_path.empty();
    const bool has_name = !opt.name.empty();
    if (has_file == has_name)
        throw CLI::ValidationError("compute", "exactly one of --state or --name is required");
    if (has_file) {
        source_label = opt.state_path;
        return load_state(opt.state_path);
    }
    source_label = opt.name;
    if (opt.name == "random") {
        if (opt.n == 0) throw CLI::ValidationError("compute", "--name random requires --n");
        return random_state(opt.n, opt.seed);
    }
    int n = opt.n;
    if (n == 0) {
        if (opt.name == "bell") n = 2;
        else if (opt.name == "chi") n = 4;
        else throw CLI::ValidationError("compute", "--name requires --n for this state");
    }
    return named_state(opt.name, n);
}

int cmd_generate(const std::string& name, int n, std::uint64_t seed, const std::string& out_path) {
    PureState state = name == "random" ? random_state(n, seed) : named_state(name, n);
    save_state(out_path, state);
    std::cout << "wrote " << out_path << " (n=" << state.n() << ", " << state.dim()
              << " amplitudes)\n";
    return 0;
}

int cmd_compute(const ComputeOptions& opt) {
    std::string source;
    const PureState state = resolve_state(opt, source);
    if (state.norm_deviation() > 1e-8)
        std::cerr << "warning: input state norm deviates by " << fmt12(state.norm_deviation())
                  << "; values refer to the normalized state\n";
    InvariantReport rep = full_report(state, source);

    if (!opt.select.empty()) {
        std::vector<ReportEntry> picked;
        for (const auto& want : opt.select) {
            const ReportEntry* e = rep.find(want);
            if (!e)
                throw std::runtime_error("no invariant named '" + want + "' for n=" +
                                         std::to_string(state.n()));
            picked.push_back(*e);
        }
        rep.entries = std::move(picked);
        rep.font_census.clear();
    }

    if (opt.as_json) {
        std::cout << report_to_json(rep).dump(2) << "\n";
        return 0;
    }
    std::cout << "state: " << source << " (n=" << rep.n
              << ", norm deviation " << fmt12(rep.norm_deviation) << ")\n";
    for (const auto& e : rep.entries)
        std::cout << "  " << e.name << " = " << fmt_value(e) << "\n";
    if (!rep.font_census.empty()) {
        std::cout << "  font census (p, K, canonical, nonzero):\n";
        for (const auto& r : rep.font_census)
            std::cout << "    p=" << r.p << " K=" << r.k << " " << r.total << " " << r.nonzero
                      << "\n";
    }
    return 0;
}

int cmd_verify(std::optional<int> n, int trials, std::uint64_t seed, bool benchmarks,
               bool as_json, std::optional<double> tol) {
    std::vector<CheckResult> checks;
    if (benchmarks) {
        checks = benchmark_suite();
    } else {
        if (!n) throw CLI::ValidationError("verify", "--n is required unless --benchmarks is set");
        auto inv = lu_invariance_suite(*n, trials, seed);
        auto ident = identity_suite(*n, trials, derive_seed(seed, 0xF00Du));
        checks.insert(checks.end(), inv.begin(), inv.end());
        checks.insert(checks.end(), ident.begin(), ident.end());
    }
    if (tol)
        for (auto& c : checks) {
            c.tolerance = *tol;
            c.passed = c.max_deviation <= c.tolerance;
        }
    bool all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c.passed;
    if (as_json) {
        std::cout << checks_to_json(checks).dump(2) << "\n";
    } else {
        for (const auto& c : checks)
            std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  trials=" << c.trials
                      << "  max_dev=" << fmt12(c.max_deviation) << "  tol=" << fmt12(c.tolerance)
                      << "\n";
        std::cout << (all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"negativity-font invariants and entanglement monotones for n-qubit pure states"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool seed_given = false;

    // generate
    auto* gen = app.add_subcommand("generate", "write a state file");
    std::string gen_name, gen_out = "state.json";
    int gen_n = 0;
    gen->add_option("--name", gen_name, "ghz | w | bell | chi | basis(k) | random")->required();
    gen->add_option("--n", gen_n, "qubit count");
    gen->add_option("--out", gen_out, "output path");
    gen->add_option("--seed", seed, "RNG seed (random states)")->each([&](const std::string&) {
        seed_given = true;
    });

    // compute
    auto* comp = app.add_subcommand("compute", "compute the invariant report for a state");
    ComputeOptions copt;
    comp->add_option("--state", copt.state_path, "state file (JSON)");
    comp->add_option("--name", copt.name, "named state instead of a file");
    comp->add_option("--n", copt.n, "qubit count for --name");
    comp->add_option("--seed", seed, "RNG seed for --name random")->each([&](const std::string&) {
        seed_given = true;
    });
    comp->add_option("--select", copt.select, "only print these entries (repeatable)");
    comp->add_flag("--json", copt.as_json, "emit JSON instead of a table");

    // verify
    auto* ver = app.add_subcommand("verify", "run the randomized verification suites");
    int ver_n = 0;
    int trials = 100;
    bool benchmarks = false, ver_json = false;
    double tol = 0.0;
    bool tol_given = false;
    ver->add_option("--n", ver_n, "qubit count for the randomized suites");
    ver->add_option("--trials", trials, "trials per check");
    ver->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
        seed_given = true;
    });
    ver->add_flag("--benchmarks", benchmarks, "run the exact benchmark rows only");
    ver->add_flag("--json", ver_json, "emit a JSON report array");
    ver->add_option("--tol", tol, "override every check tolerance")->each([&](const std::string&) {
        tol_given = true;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (!seed_given) seed = default_seed();
        if (gen->parsed()) {
            if (gen_name != "bell" && gen_name != "chi" && gen_n == 0)
                throw std::runtime_error("generate: --n is required for this state");
            if (gen_n == 0) gen_n = gen_name == "bell" ? 2 : 4;
            return cmd_generate(gen_name, gen_n, seed, gen_out);
        }
        if (comp->parsed()) {
            copt.seed = seed;
            return cmd_compute(copt);
        }
        if (ver->parsed()) {
            return cmd_verify(ver->count("--n") ? std::optional<int>(ver_n) : std::nullopt, trials,
                              seed, benchmarks, ver_json,
                              tol_given ? std::optional<double>(tol) : std::nullopt);
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
