// Acceptance suite: one check per release criterion, each printed as a
// PASS/FAIL line with its wall time. Exits nonzero if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "haargreedy/constructions.hpp"
#include "haargreedy/greedy.hpp"
#include "haargreedy/verify.hpp"

using namespace haargreedy;

namespace {

DyadicCube corner(int level) { return DyadicCube(2, level, {0, 0}); }

bool suite_clean(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                 std::string& detail) {
    SuiteReport report = run_suite(name, trials, seed);
    std::ostringstream out;
    out << name << ": " << report.total_trials() << " checks, "
        << report.failures.size() << " failures";
    detail += (detail.empty() ? "" : "; ") + out.str();
    return report.ok();
}

// Criterion 1: s = 1 divergence ratios at (k, eps) = (16, 1/96) and (64, 1/384).
bool divergence_s1(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (auto [k, eps_den, bound] :
         {std::tuple<int, int, Rational>{16, 96, Rational(4, 3)},
          std::tuple<int, int, Rational>{64, 384, Rational(16, 3)}}) {
        Rational eps(1, eps_den);
        HaarExpansion f = build_f_n_eps(2 * k, eps);
        GreedyParams params{Rational(1), Rational(1, 2), StepRule::RuleA,
                            static_cast<std::uint64_t>(3 * k + 1), true};
        GreedyTrace trace = run_greedy(f, params);
        Rational ratio = trace.steps.back().approximant_norm / trace.input_norm;
        Rational formula = Rational(k) / (8 * (1 + 3 * k * eps));
        ok = ok && ratio >= bound && formula == bound;

        HaarExpansion expected(2);
        expected.set_constant(1);
        for (int n = 0; n < k; ++n) {
            for (int j = 1; j <= 3; ++j) {
                expected.set_coefficient(corner(2 * n + 1), j, 1);
            }
        }
        ok = ok && trace.approximant == expected;
        out << "k=" << k << " ratio " << decimal_string(ratio, 6) << " >= "
            << fraction_string(bound) << "; ";
    }
    detail = out.str();
    return ok;
}

// Criterion 2: s = t divergence at (N, t, eps) = (64, 1/2, 1/32), with the
// approximant matching the closed form coefficient for coefficient.
bool divergence_st(std::string& detail) {
    const int n = 64;
    const Rational t(1, 2);
    const Rational eps(1, 32);
    HaarExpansion g = build_g_n_eps(n, eps, t);
    GreedyParams params{t, t, StepRule::RuleA, static_cast<std::uint64_t>(2 * n + 1),
                        true};
    GreedyTrace trace = run_greedy(g, params);
    Rational ratio = trace.steps.back().approximant_norm / trace.input_norm;
    Rational bound = n * t / (2 * (1 + t + n * t * eps));

    HaarExpansion expected(2);
    expected.set_constant(t);
    for (int level = 0; level < n; ++level) {
        expected.set_coefficient(corner(level), 1, t);
        expected.set_coefficient(corner(level), 2, t);
    }
    std::ostringstream out;
    out << "ratio " << decimal_string(ratio, 6) << " >= " << fraction_string(bound)
        << "; closed form " << (trace.approximant == expected ? "matches" : "DIFFERS");
    detail = out.str();
    return bound == Rational(32, 5) && ratio >= bound && trace.approximant == expected;
}

// Criterion 3: 200 seeded random expansions, both step-3 variants, exact
// termination counts and the Main Theorem bound.
bool convergence_bound(std::string& detail) {
    const std::uint64_t seed = 20260809;
    std::uint64_t runs = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        InstanceRng rng(trial_seed(seed, trial));
        HaarExpansion f = gen_expansion(trial_seed(seed, trial * 2 + 1), dim, 5,
                                        rng.int_in(1, 40), 4);
        Rational bound = uniform_bound_constant(Rational(3, 4), Rational(1, 2), dim) *
                         norm(f);
        std::uint64_t expected_steps =
            f.spectrum_size() + (f.constant() != 0 ? 1 : 0);
        for (StepRule rule : {StepRule::RuleA, StepRule::RuleB}) {
            GreedyParams params{Rational(3, 4), Rational(1, 2), rule, std::nullopt,
                                true};
            GreedyTrace trace = run_greedy(f, params);
            ++runs;
            if (!trace.terminated || !trace.residual.is_zero() ||
                trace.steps.size() != expected_steps ||
                trace.max_approximant_norm() > bound) {
                detail = "failure at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    detail = std::to_string(runs) + " runs terminated within the bound";
    return true;
}

// Criterion 7: exact Khinchine values, the Walsh lower bound, and the
// sqrt(2) growth trend.
bool walsh_khinchine(std::string& detail) {
    bool ok = true;
    std::ostringstream out;

    Rational k16 = khinchine_l1(16);
    ok = ok && k16 == rational_from_string("102960/32768");
    long long total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 16); ++mask) {
        long long sum = 16 - 2 * static_cast<long long>(__builtin_popcountll(mask));
        total += sum < 0 ? -sum : sum;
    }
    ok = ok && k16 == Rational(static_cast<long>(total)) * pow2(-16);
    out << "khinchine_l1(16) = " << fraction_string(k16) << " (enumeration agrees); ";

    const Rational u(2, 5);
    HaarExpansion greedy_part = build_rademacher_partial_sum(16, u);
    Rational greedy_norm = norm(greedy_part);
    Rational distributional(0);
    mpz_class binom;
    for (int j = 0; j <= 16; ++j) {
        mpz_bin_uiui(binom.get_mpz_t(), 16, static_cast<unsigned long>(j));
        distributional += Rational(binom) * rational_abs(1 + u * (16 - 2 * j));
    }
    distributional *= pow2(-16);
    ok = ok && greedy_norm == distributional && greedy_norm >= u * k16 - 1;
    out << "||G_17|| = " << fraction_string(greedy_norm) << " >= "
        << fraction_string(u * k16 - 1) << "; ";

    Rational previous = khinchine_l1(4);
    for (int n : {8, 16, 32}) {
        Rational current = khinchine_l1(n);
        Rational ratio = current / previous;
        ok = ok && current > previous;
        ok = ok && ratio >= Rational(138, 100) && ratio <= Rational(146, 100);
        out << "K(" << n << ")/K(" << n / 2 << ") = " << decimal_string(ratio, 4)
            << "; ";
        previous = current;
    }
    detail = out.str();
    return ok;
}

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> check;
};

}  // namespace

int main() {
    const std::uint64_t seed = 20260809;
    std::vector<Criterion> criteria{
        {"1-divergence-s1", 10.0, divergence_s1},
        {"2-divergence-st", 10.0, divergence_st},
        {"3-convergence-uniform-bound", 60.0, convergence_bound},
        {"4-norm-lemma-suite", 60.0,
         [&](std::string& d) { return suite_clean("norm-lemmas", 500, seed, d); }},
        {"5-combinatorics-suite", 30.0,
         [&](std::string& d) { return suite_clean("mgcr", 1000, seed, d); }},
        {"6-key-lemmas", 60.0,
         [&](std::string& d) {
             return suite_clean("key1", 100, seed, d) &&
                    suite_clean("key2", 100, seed, d) &&
                    suite_clean("symmetry", 200, seed, d);
         }},
        {"7-walsh-khinchine", 10.0, walsh_khinchine},
        {"8-branch-greedy-invariance", 10.0,
         [&](std::string& d) { return suite_clean("branch", 100, seed, d); }},
        {"9-analysis-evaluate-roundtrip", 10.0,
         [&](std::string& d) { return suite_clean("roundtrip", 100, seed, d); }},
    };

    bool all_ok = true;
    for (Criterion& criterion : criteria) {
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.check(detail);
        } catch (const std::exception& error) {
            detail = std::string("exception: ") + error.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        bool in_budget = seconds < criterion.budget_seconds;
        all_ok = all_ok && ok && in_budget;
        std::ostringstream time_str;
        time_str.precision(2);
        time_str << std::fixed << seconds;
        std::cout << (ok && in_budget ? "PASS" : "FAIL") << " criterion-"
                  << criterion.name << " (" << time_str.str() << "s/"
                  << criterion.budget_seconds << "s)"
                  << (detail.empty() ? "" : ": " + detail) << "\n";
    }
    std::cout << (all_ok ? "ACCEPTANCE: all criteria passed"
                         : "ACCEPTANCE: FAILURES PRESENT")
              << "\n";
    return all_ok ? 0 : 1;
}
