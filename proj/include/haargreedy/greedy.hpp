#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "haargreedy/haar.hpp"

namespace haargreedy {

/// Step-3 selection rule: RuleA thresholds against (t/s) times the largest
/// coefficient at the grown cube, RuleB against t times the selected maximum.
enum class StepRule { RuleA, RuleB };

struct GreedyParams {
    Rational s;
    Rational t;
    StepRule variant = StepRule::RuleA;
    std::optional<std::uint64_t> max_steps;  // default: spectrum size + 1
    bool include_constant = true;

    /// Enforces 0 < t <= s <= 1; boundary values are legal but non-convergent.
    void validate() const;
    bool boundary_regime() const { return s == 1 || s == t; }
};

/// Full record of one greedy step. A constant step (the step-1 emission of a
/// nonzero constant term) stores the root cube with index 0 on both slots.
struct GreedyStepRecord {
    std::uint64_t m = 0;
    bool constant_step = false;
    DyadicCube delta;        // step-1 cube
    int j = 0;               // step-1 index
    DyadicCube delta_tilde;  // step-2 grown cube
    int i = 0;               // step-3 index
    Rational removed_value;
    Rational approximant_norm;
    Rational residual_norm;
};

struct GreedyTrace {
    GreedyParams params;
    HaarExpansion input;
    Rational input_norm;
    std::vector<GreedyStepRecord> steps;
    bool terminated = false;  // residual identically zero
    HaarExpansion approximant;
    HaarExpansion residual;

    GreedyTrace(GreedyParams p, HaarExpansion f)
        : params(std::move(p)),
          input(std::move(f)),
          input_norm(0),
          approximant(input.dim()),
          residual(input.dim()) {}

    Rational max_approximant_norm() const;
};

/// Step 1: the order-first cube, then the smallest index, attaining the
/// maximum absolute coefficient of the residual. Throws on empty spectrum.
HaarKey select_max(const HaarExpansion& residual);

/// Step 2: the largest ancestor such that every cube between the selection
/// and it carries some coefficient of magnitude >= s times the selected one.
DyadicCube grow_cube(const HaarExpansion& residual, const DyadicCube& delta, int j,
                     const Rational& s);

/// Step 3: the qualifying index with the smallest absolute coefficient at the
/// grown cube (ties to the smallest index).
int select_index(const HaarExpansion& residual, const DyadicCube& delta_tilde,
                 const DyadicCube& delta, int j, const GreedyParams& params);

/// Mutable state of one run; step() performs one greedy step.
class GreedyRun {
public:
    GreedyRun(HaarExpansion f, GreedyParams params);

    bool done() const;
    const GreedyStepRecord& step();

    const HaarExpansion& residual() const { return residual_; }
    const HaarExpansion& approximant() const { return approximant_; }
    const std::vector<GreedyStepRecord>& steps() const { return steps_; }
    GreedyTrace finish() &&;

private:
    GreedyParams params_;
    HaarExpansion input_;
    Rational input_norm_;
    HaarExpansion residual_;
    HaarExpansion approximant_;
    std::vector<GreedyStepRecord> steps_;
    std::uint64_t step_limit_;
};

/// Runs the algorithm until the residual is exhausted or max_steps is hit.
GreedyTrace run_greedy(const HaarExpansion& f, const GreedyParams& params);

/// Replaces coefficients by new values; keys with value zero are erased.
using Perturbation = CoefficientMap;

/// Branch-greedy check: a perturbation touching only coefficients strictly
/// below the weak threshold t*max (before and after) must leave the first
/// thresholding-step tuple (delta, j, delta_tilde, i) unchanged. The constant
/// term does not participate. Returns the comparison verdict; throws if the
/// perturbation violates the precondition.
bool check_branch_greedy(const HaarExpansion& f, const GreedyParams& params,
                         const Perturbation& perturbation);

}  // namespace haargreedy
