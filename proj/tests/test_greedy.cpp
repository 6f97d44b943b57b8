#include <doctest.h>

#include <stdexcept>

#include "haargreedy/constructions.hpp"
#include "haargreedy/greedy.hpp"
#include "haargreedy/verify.hpp"

using namespace haargreedy;

namespace {

DyadicCube square(int level, std::int64_t x, std::int64_t y) {
    return DyadicCube(2, level, {x, y});
}

GreedyParams params_st(const Rational& s, const Rational& t,
                       StepRule rule = StepRule::RuleA) {
    return GreedyParams{s, t, rule, std::nullopt, true};
}

}  // namespace

TEST_SUITE("greedy") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(params_st(Rational(1, 2), Rational(3, 4)).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_st(Rational(1, 2), Rational(0)).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(params_st(Rational(5, 4), Rational(1, 2)).validate(),
                    std::invalid_argument);
    CHECK_NOTHROW(params_st(Rational(1), Rational(1)).validate());
    CHECK(params_st(Rational(1), Rational(1, 2)).boundary_regime());
    CHECK(params_st(Rational(1, 2), Rational(1, 2)).boundary_regime());
    CHECK_FALSE(params_st(Rational(3, 4), Rational(1, 2)).boundary_regime());
}

TEST_CASE("select_max matches the maximal-coefficient rule") {
    HaarExpansion f(2);
    f.set_coefficient(square(2, 3, 1), 2, Rational(1, 2));
    CHECK(select_max(f) == HaarKey{square(2, 3, 1), 2});

    f.set_coefficient(square(2, 3, 1), 1, Rational(-1, 2));
    CHECK(select_max(f) == HaarKey{square(2, 3, 1), 1});

    HaarExpansion damped = build_f_n_eps(8, Rational(1, 100));
    CHECK(select_max(damped) == HaarKey{square(1, 0, 0), 1});

    HaarExpansion zero(2);
    CHECK_THROWS_AS(select_max(zero), std::invalid_argument);
    zero.set_constant(3);
    CHECK_THROWS_AS(select_max(zero), std::invalid_argument);
}

TEST_CASE("grow_cube walks up while the s-condition holds") {
    // Zero ancestors stop growth immediately.
    HaarExpansion lone(2);
    lone.set_coefficient(square(3, 0, 0), 1, 1);
    CHECK(grow_cube(lone, square(3, 0, 0), 1, Rational(1, 2)) == square(3, 0, 0));

    // Every corner cube of f_N carries coefficient 1: growth reaches the root.
    HaarExpansion f = build_f_n(5);
    CHECK(grow_cube(f, square(4, 0, 0), 1, Rational(1)) == DyadicCube::root(2));
    CHECK(grow_cube(f, square(4, 0, 0), 1, Rational(1, 2)) == DyadicCube::root(2));

    // In f_N^eps with s = 1 the damped even levels block growth.
    HaarExpansion damped = build_f_n_eps(8, Rational(1, 100));
    CHECK(grow_cube(damped, square(3, 0, 0), 1, Rational(1)) == square(3, 0, 0));
    // With s <= 1 - eps they do not.
    CHECK(grow_cube(damped, square(3, 0, 0), 1, Rational(99, 100)) ==
          DyadicCube::root(2));

    // Growth from the root stays at the root.
    HaarExpansion at_root(2);
    at_root.set_coefficient(DyadicCube::root(2), 1, 1);
    CHECK(grow_cube(at_root, DyadicCube::root(2), 1, Rational(1, 2)) ==
          DyadicCube::root(2));
}

TEST_CASE("select_index picks the smallest qualifying magnitude") {
    HaarExpansion f(2);
    DyadicCube grown = square(1, 0, 0);
    f.set_coefficient(grown, 1, 1);
    f.set_coefficient(grown, 2, Rational(3, 4));
    f.set_coefficient(grown, 3, Rational(1, 10));
    // t/s = 1/2: qualifying magnitudes are {1, 3/4}; the smallest is 3/4.
    CHECK(select_index(f, grown, grown, 1, params_st(Rational(1), Rational(1, 2))) == 2);
    // t = s: only the maximum qualifies.
    CHECK(select_index(f, grown, grown, 1, params_st(Rational(1, 2), Rational(1, 2))) ==
          1);

    // Single nonzero index.
    HaarExpansion single(2);
    single.set_coefficient(grown, 3, Rational(-2, 5));
    CHECK(select_index(single, grown, grown, 3,
                       params_st(Rational(3, 4), Rational(1, 2))) == 3);

    // Ties at the smallest qualifying magnitude resolve to the smaller index.
    HaarExpansion tied(2);
    tied.set_coefficient(grown, 1, Rational(3, 4));
    tied.set_coefficient(grown, 2, Rational(-3, 4));
    tied.set_coefficient(grown, 3, 1);
    CHECK(select_index(tied, grown, grown, 3,
                       params_st(Rational(1), Rational(1, 2))) == 1);

    // Rule B thresholds against the selected maximum.
    HaarExpansion rb(2);
    rb.set_coefficient(square(2, 0, 0), 1, 1);
    rb.set_coefficient(grown, 1, Rational(9, 10));
    rb.set_coefficient(grown, 2, Rational(6, 10));
    GreedyParams b = params_st(Rational(9, 10), Rational(13, 20), StepRule::RuleB);
    CHECK(select_index(rb, grown, square(2, 0, 0), 1, b) == 1);
    GreedyParams b2 = params_st(Rational(9, 10), Rational(1, 2), StepRule::RuleB);
    CHECK(select_index(rb, grown, square(2, 0, 0), 1, b2) == 2);
}

TEST_CASE("a single-coefficient input finishes in one step") {
    HaarExpansion f(2);
    f.set_coefficient(square(2, 1, 2), 3, Rational(5, 8));
    GreedyTrace trace = run_greedy(f, params_st(Rational(3, 4), Rational(1, 2)));
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.terminated);
    CHECK(trace.approximant == f);
    CHECK(trace.residual.is_zero());
    CHECK(trace.steps[0].removed_value == Rational(5, 8));
}

TEST_CASE("zero input yields an empty terminated trace") {
    GreedyTrace trace =
        run_greedy(HaarExpansion(2), params_st(Rational(3, 4), Rational(1, 2)));
    CHECK(trace.steps.empty());
    CHECK(trace.terminated);
}

TEST_CASE("a nonzero constant is emitted first and only once") {
    HaarExpansion f(2);
    f.set_constant(Rational(1, 8));
    f.set_coefficient(square(1, 0, 0), 1, 4);
    GreedyTrace trace = run_greedy(f, params_st(Rational(3, 4), Rational(1, 2)));
    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].constant_step);
    CHECK(trace.steps[0].removed_value == Rational(1, 8));
    CHECK_FALSE(trace.steps[1].constant_step);
    CHECK(trace.terminated);

    // With the constant excluded the run stops at an exhausted spectrum.
    GreedyParams no_constant = params_st(Rational(3, 4), Rational(1, 2));
    no_constant.include_constant = false;
    GreedyTrace partial = run_greedy(f, no_constant);
    CHECK(partial.steps.size() == 1);
    CHECK_FALSE(partial.terminated);
    CHECK(partial.residual.constant() == Rational(1, 8));
}

TEST_CASE("random runs terminate in spectrum-many steps with exact bookkeeping") {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        HaarExpansion f = gen_expansion(trial_seed(137, trial), dim, 4, 10, 4);
        for (StepRule rule : {StepRule::RuleA, StepRule::RuleB}) {
            GreedyRun run(f, params_st(Rational(3, 4), Rational(1, 2), rule));
            std::size_t spectrum_before = f.spectrum_size();
            while (!run.done()) {
                HaarExpansion residual_before = run.residual();
                const GreedyStepRecord& record = run.step();
                // Exactness: approximant + residual = f after every step.
                CHECK(run.approximant() + run.residual() == f);
                // Spectrum shrinks by exactly the removed pair.
                if (!record.constant_step) {
                    CHECK(run.residual().spectrum_size() ==
                          residual_before.spectrum_size() - 1);
                    CHECK(run.residual().coefficient(record.delta_tilde, record.i) == 0);
                    CHECK(record.removed_value ==
                          residual_before.coefficient(record.delta_tilde, record.i));
                    // Threshold soundness for rule A: |removed| s >= t max.
                    if (rule == StepRule::RuleA) {
                        Rational max_at(0);
                        for (int index = 1; index < (1 << dim); ++index) {
                            Rational a = rational_abs(
                                residual_before.coefficient(record.delta_tilde, index));
                            if (a > max_at) max_at = a;
                        }
                        CHECK(rational_abs(record.removed_value) * Rational(3, 4) >=
                              Rational(1, 2) * max_at);
                    }
                    CHECK(rational_abs(record.removed_value) * 2 >=
                          rational_abs(
                              residual_before.coefficient(record.delta, record.j)));
                    // Step-2 chain property: the s-condition holds at every cube
                    // between the selection and the grown cube, and fails at the
                    // grown cube's parent (or the root was reached).
                    Rational target = Rational(3, 4) * rational_abs(residual_before.coefficient(
                                                           record.delta, record.j));
                    DyadicCube walk = record.delta;
                    while (true) {
                        Rational best(0);
                        for (int index = 1; index < (1 << dim); ++index) {
                            Rational a = rational_abs(
                                residual_before.coefficient(walk, index));
                            if (a > best) best = a;
                        }
                        CHECK(best >= target);
                        if (walk == record.delta_tilde) break;
                        walk = walk.parent();
                    }
                    if (!record.delta_tilde.is_root()) {
                        DyadicCube blocked = record.delta_tilde.parent();
                        Rational best(0);
                        for (int index = 1; index < (1 << dim); ++index) {
                            Rational a =
                                rational_abs(residual_before.coefficient(blocked, index));
                            if (a > best) best = a;
                        }
                        CHECK(best < target);
                    }
                }
            }
            GreedyTrace trace = std::move(run).finish();
            CHECK(trace.terminated);
            CHECK(trace.steps.size() ==
                  spectrum_before + (f.constant() != 0 ? 1 : 0));
            CHECK(trace.approximant == f);
        }
    }
}

TEST_CASE("traces are deterministic") {
    HaarExpansion f = gen_expansion(149, 2, 4, 12, 4);
    GreedyTrace a = run_greedy(f, params_st(Rational(3, 4), Rational(1, 2)));
    GreedyTrace b = run_greedy(f, params_st(Rational(3, 4), Rational(1, 2)));
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        CHECK(a.steps[k].delta == b.steps[k].delta);
        CHECK(a.steps[k].j == b.steps[k].j);
        CHECK(a.steps[k].delta_tilde == b.steps[k].delta_tilde);
        CHECK(a.steps[k].i == b.steps[k].i);
        CHECK(a.steps[k].removed_value == b.steps[k].removed_value);
        CHECK(a.steps[k].approximant_norm == b.steps[k].approximant_norm);
    }
}

TEST_CASE("max_steps truncates a run") {
    HaarExpansion f = build_f_n(4);
    GreedyParams params = params_st(Rational(3, 4), Rational(1, 2));
    params.max_steps = 5;
    GreedyTrace trace = run_greedy(f, params);
    CHECK(trace.steps.size() == 5);
    CHECK_FALSE(trace.terminated);
    CHECK(trace.approximant + trace.residual == f);
}

TEST_CASE("the damped corner run at s = 1 keeps only the odd levels") {
    const int k = 4;
    HaarExpansion f = build_f_n_eps(2 * k, Rational(1, 24));
    GreedyParams params = params_st(Rational(1), Rational(1, 2));
    params.max_steps = 3 * k + 1;
    GreedyTrace trace = run_greedy(f, params);

    HaarExpansion expected(2);
    expected.set_constant(1);
    for (int n = 0; n < k; ++n) {
        for (int j = 1; j <= 3; ++j) {
            expected.set_coefficient(square(2 * n + 1, 0, 0), j, 1);
        }
    }
    CHECK(trace.approximant == expected);

    // Ratio bound k / (8 (1 + 3 k eps)), exact.
    Rational ratio = trace.steps.back().approximant_norm / trace.input_norm;
    CHECK(ratio >= Rational(k) / (8 * (1 + 3 * k * Rational(1, 24))));
}

TEST_CASE("the boundary s = t run matches the paper's closed form") {
    const int n = 8;
    const Rational t(1, 2);
    HaarExpansion g = build_g_n_eps(n, Rational(1, 8), t);
    GreedyParams params = params_st(t, t);
    params.max_steps = 2 * n + 1;
    GreedyTrace trace = run_greedy(g, params);

    HaarExpansion expected(2);
    expected.set_constant(t);
    for (int level = 0; level < n; ++level) {
        expected.set_coefficient(square(level, 0, 0), 1, t);
        expected.set_coefficient(square(level, 0, 0), 2, t);
    }
    CHECK(trace.approximant == expected);
    Rational ratio = trace.steps.back().approximant_norm / trace.input_norm;
    CHECK(ratio >= n * t / (2 * (1 + t + n * t * Rational(1, 8))));
}

TEST_CASE("branch-greedy: sub-threshold perturbations cannot change the step") {
    HaarExpansion f(2);
    f.set_coefficient(square(2, 0, 0), 1, 1);
    f.set_coefficient(square(1, 0, 0), 2, Rational(4, 5));
    f.set_coefficient(square(3, 5, 5), 3, Rational(1, 5));
    GreedyParams params = params_st(Rational(3, 4), Rational(1, 2));

    CHECK(check_branch_greedy(f, params, {}));

    Perturbation scale;
    scale[HaarKey{square(3, 5, 5), 3}] = Rational(1, 10);
    CHECK(check_branch_greedy(f, params, scale));

    Perturbation remove;
    remove[HaarKey{square(3, 5, 5), 3}] = 0;
    CHECK(check_branch_greedy(f, params, remove));

    Perturbation add;
    add[HaarKey{square(4, 1, 7), 1}] = Rational(-2, 5);
    CHECK(check_branch_greedy(f, params, add));

    Perturbation push;
    push[HaarKey{square(3, 5, 5), 3}] = Rational(3, 4);
    CHECK_THROWS_AS(check_branch_greedy(f, params, push), std::invalid_argument);

    Perturbation touch_large;
    touch_large[HaarKey{square(1, 0, 0), 2}] = Rational(1, 5);
    CHECK_THROWS_AS(check_branch_greedy(f, params, touch_large), std::invalid_argument);
}

TEST_CASE("rule B never runs out of qualifying indices on random inputs") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        HaarExpansion f = gen_expansion(trial_seed(151, trial), dim, 4, 12, 4);
        CHECK_NOTHROW(
            run_greedy(f, params_st(Rational(3, 4), Rational(1, 2), StepRule::RuleB)));
        CHECK_NOTHROW(
            run_greedy(f, params_st(Rational(3, 4), Rational(3, 4), StepRule::RuleB)));
    }
}

}  // TEST_SUITE
