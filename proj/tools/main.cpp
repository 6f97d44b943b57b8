#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "haargreedy/constructions.hpp"
#include "haargreedy/greedy.hpp"
#include "haargreedy/io.hpp"
#include "haargreedy/verify.hpp"

namespace {

using namespace haargreedy;

constexpr int kExitFailure = 1;  // an asserted bound or verdict failed
constexpr int kExitUsage = 2;    // bad arguments or unreadable input

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos
                                                                    : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// Named constructions: "fN:6", "fNeps:32:1/96", "gNeps:64:1/32:1/2",
/// "rademacher:16:2/5".
HaarExpansion named_construction(const std::string& selector) {
    std::vector<std::string> parts = split(selector, ':');
    const std::string& kind = parts.front();
    if (kind == "fN" && parts.size() == 2) {
        return build_f_n(std::stoi(parts[1]));
    }
    if (kind == "fNeps" && parts.size() == 3) {
        return build_f_n_eps(std::stoi(parts[1]), rational_from_string(parts[2]));
    }
    if (kind == "gNeps" && parts.size() == 4) {
        return build_g_n_eps(std::stoi(parts[1]), rational_from_string(parts[2]),
                             rational_from_string(parts[3]));
    }
    if (kind == "rademacher" && parts.size() == 3) {
        return build_rademacher_product(std::stoi(parts[1]),
                                        rational_from_string(parts[2]));
    }
    throw std::invalid_argument("unknown construction selector: " + selector);
}

void write_trace_files(const GreedyTrace& trace, const std::string& out_dir,
                       const std::string& stem, const std::string& format) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    if (format == "json" || format == "both") {
        write_text_file(out_dir + "/" + stem + ".jsonl", trace_to_jsonl(trace));
    }
    if (format == "csv" || format == "both") {
        write_text_file(out_dir + "/" + stem + ".csv", trace_to_csv(trace));
    }
}

std::string print_ratio(const Rational& value) {
    return fraction_string(value) + " (" + decimal_string(value, 6) + ")";
}

struct CommonOptions {
    std::string s = "3/4";
    std::string t = "1/2";
    std::string variant = "a";
    std::optional<std::uint64_t> max_steps;
    bool no_constant = false;
    std::string out_dir;
    std::string format = "both";
    std::uint64_t seed = 1;
    std::uint64_t trials = 100;
};

int cmd_run(const CommonOptions& options, const std::string& input,
            const std::string& construction) {
    HaarExpansion f = construction.empty() ? read_expansion_file(input)
                                           : named_construction(construction);
    GreedyParams params{rational_from_string(options.s), rational_from_string(options.t),
                        options.variant == "b" ? StepRule::RuleB : StepRule::RuleA,
                        options.max_steps, !options.no_constant};
    params.validate();
    GreedyTrace trace = run_greedy(f, params);
    write_trace_files(trace, options.out_dir, "trace", options.format);

    std::cout << "steps " << trace.steps.size() << ", terminated "
              << (trace.terminated ? "yes" : "no") << ", ||f|| = "
              << print_ratio(trace.input_norm) << "\n";
    if (trace.input_norm != 0) {
        Rational max_ratio = trace.max_approximant_norm() / trace.input_norm;
        std::cout << "max_m ||G_m||/||f|| = " << print_ratio(max_ratio) << "\n";
        if (!params.boundary_regime() && params.s < 1) {
            Rational bound = uniform_bound_constant(params.s, params.t, f.dim());
            std::cout << "main theorem bound C(d,s,t) = " << print_ratio(bound) << "\n";
        } else {
            std::cout << "boundary regime (s = 1 or s = t): no uniform bound applies\n";
        }
    }
    return 0;
}

int cmd_diverge(const std::string& which, int size, const std::string& eps_text,
                const std::string& t_text, const CommonOptions& options) {
    Rational eps = rational_from_string(eps_text);
    Rational t = rational_from_string(t_text);

    HaarExpansion f(2);
    GreedyParams params{Rational(1), t, StepRule::RuleA, std::nullopt, true};
    std::uint64_t steps = 0;
    Rational bound;
    if (which == "s1") {
        // f_N^eps with N = 2k; ratio >= k / (8 (1 + 3 k eps)) after 3k+1 steps.
        int k = size;
        f = build_f_n_eps(2 * k, eps);
        params.s = 1;
        steps = static_cast<std::uint64_t>(3 * k + 1);
        bound = Rational(k) / (8 * (1 + 3 * k * eps));
    } else if (which == "st") {
        // g_N^eps; ratio >= N t / (2 (1 + t + N t eps)) after 2N+1 steps.
        int n = size;
        f = build_g_n_eps(n, eps, t);
        params.s = t;
        steps = static_cast<std::uint64_t>(2 * n + 1);
        bound = n * t / (2 * (1 + t + n * t * eps));
    } else {
        throw std::invalid_argument("diverge case must be s1 or st");
    }
    params.max_steps = steps;
    GreedyTrace trace = run_greedy(f, params);
    write_trace_files(trace, options.out_dir, "diverge_" + which, options.format);

    Rational ratio = trace.steps.back().approximant_norm / trace.input_norm;
    std::cout << "case " << which << ": ||G_" << steps << "|| / ||f|| = "
              << print_ratio(ratio) << "\n";
    std::cout << "paper lower bound = " << print_ratio(bound) << "\n";
    if (ratio >= bound) {
        std::cout << "ratio >= bound: ok\n";
        return 0;
    }
    std::cout << "ratio < bound: FAILED\n";
    return kExitFailure;
}

int cmd_walsh(int n, const std::string& u_text, const std::string& t_text) {
    Rational u = rational_from_string(u_text);
    Rational t = rational_from_string(t_text);
    if (!(0 < u && u < t && t < 1)) {
        throw std::invalid_argument("walsh requires 0 < u < t < 1");
    }
    HaarExpansion product = build_rademacher_product(n, u);
    HaarExpansion greedy_part = build_rademacher_partial_sum(n, u);
    Rational product_norm = norm(product);
    Rational greedy_norm = norm(greedy_part);
    Rational khinchine = khinchine_l1(n);
    Rational lower = u * khinchine - 1;

    std::cout << "||f_N|| = " << print_ratio(product_norm) << "\n";
    std::cout << "||G_{N+1}(f_N)|| = ||1 + u sum r_n|| = " << print_ratio(greedy_norm)
              << "\n";
    std::cout << "khinchine_l1(" << n << ") = " << print_ratio(khinchine) << "\n";
    std::cout << "lower bound u*khinchine - 1 = " << print_ratio(lower) << "\n";
    // khinchine_l1 / sqrt(N), decimal only (the exact value is irrational).
    Rational ratio_sq = khinchine * khinchine / n;
    std::cout << "khinchine_l1(N)/sqrt(N) = " << decimal_string(ratio_sq, 6)
              << " (squared)\n";
    if (lower <= 0) {
        std::cout << "bound is vacuous at this N (<= 0)\n";
        return 0;
    }
    if (greedy_norm >= lower) {
        std::cout << "||G|| >= bound: ok\n";
        return 0;
    }
    std::cout << "||G|| < bound: FAILED\n";
    return kExitFailure;
}

int cmd_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               const std::string& out_dir) {
    SuiteReport report = run_suite(suite, trials, seed);

    std::ostringstream verdicts;
    std::ostringstream csv;
    csv << "lemma_id,trials,failures\n";
    for (const SuiteLine& line : report.lines) {
        csv << line.check << ',' << line.trials << ',' << line.failures << "\n";
        std::cout << line.check << ": " << line.trials << " trials, " << line.failures
                  << " failures\n";
    }
    for (const LemmaVerdict& failure : report.failures) {
        Json object{{"lemma", lemma_name(failure.lemma)},
                    {"holds", failure.holds},
                    {"lhs", fraction_string(failure.lhs)},
                    {"rhs", fraction_string(failure.rhs)},
                    {"witness", Json::parse(failure.witness.empty() ? "{}"
                                                                    : failure.witness)}};
        verdicts << object.dump() << "\n";
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(out_dir + "/summary.csv", csv.str());
        if (!report.failures.empty()) {
            write_text_file(out_dir + "/failures.jsonl", verdicts.str());
        }
    }
    if (!report.ok()) {
        std::cout << "FAILURES: " << report.failures.size() << " (witnesses "
                  << (out_dir.empty() ? "not written; pass --out" : "written") << ")\n";
        return kExitFailure;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak thresholding greedy algorithm for the multivariate Haar basis"};
    app.require_subcommand(1);

    CommonOptions options;

    auto* run = app.add_subcommand("run", "run a greedy trace on an expansion");
    std::string input;
    std::string construction;
    run->add_option("--input", input, "expansion JSON file");
    run->add_option("--construction", construction,
                    "named construction, e.g. fN:6 or gNeps:64:1/32:1/2");
    run->add_option("--s", options.s, "growth parameter s as p/q");
    run->add_option("--t", options.t, "weakness parameter t as p/q");
    run->add_option("--variant", options.variant, "step-3 rule: a or b")
        ->check(CLI::IsMember({"a", "b"}));
    run->add_option("--max-steps", options.max_steps, "stop after this many steps");
    run->add_flag("--no-constant", options.no_constant,
                  "leave the constant term out of the selection");
    run->add_option("--out", options.out_dir, "output directory for trace files");
    run->add_option("--format", options.format, "trace file format")
        ->check(CLI::IsMember({"json", "csv", "both"}));

    auto* diverge = app.add_subcommand("diverge", "boundary-case divergence demos");
    std::string which;
    int size = 16;
    std::string eps_text = "1/96";
    std::string t_text = "1/2";
    diverge->add_option("--case", which, "s1 (f_N^eps) or st (g_N^eps)")
        ->required()
        ->check(CLI::IsMember({"s1", "st"}));
    diverge->add_option("--size", size, "k for s1, N for st")->required();
    diverge->add_option("--eps", eps_text, "epsilon as p/q");
    diverge->add_option("--t", t_text, "weakness parameter t as p/q");
    diverge->add_option("--out", options.out_dir, "output directory for trace files");
    diverge->add_option("--format", options.format, "trace file format")
        ->check(CLI::IsMember({"json", "csv", "both"}));

    auto* walsh = app.add_subcommand("walsh", "Walsh/Rademacher unboundedness demo");
    int walsh_n = 16;
    std::string u_text = "2/5";
    walsh->add_option("--N", walsh_n, "number of Rademacher factors")->required();
    walsh->add_option("--u", u_text, "factor amplitude u as p/q, 0 < u < t");
    walsh->add_option("--t", t_text, "weakness parameter t as p/q");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("--suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--trials", options.trials, "trials per check");
    verify->add_option("--seed", options.seed, "base seed");
    verify->add_option("--out", options.out_dir, "output directory for reports");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (input.empty() == construction.empty()) {
                std::cerr << "run needs exactly one of --input / --construction\n";
                return kExitUsage;
            }
            return cmd_run(options, input, construction);
        }
        if (diverge->parsed()) {
            return cmd_diverge(which, size, eps_text, t_text, options);
        }
        if (walsh->parsed()) return cmd_walsh(walsh_n, u_text, t_text);
        if (verify->parsed()) {
            return cmd_verify(suite, options.trials, options.seed, options.out_dir);
        }
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
