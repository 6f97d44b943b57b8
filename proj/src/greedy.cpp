#include "haargreedy/greedy.hpp"

#include <stdexcept>

namespace haargreedy {

namespace {

Rational max_abs_at_cube(const HaarExpansion& f, const DyadicCube& cube) {
    Rational best(0);
    for (int index = 1; index < (1 << f.dim()); ++index) {
        Rational a = rational_abs(f.coefficient(cube, index));
        if (a > best) best = a;
    }
    return best;
}

}  // namespace

void GreedyParams::validate() const {
    if (!(t > 0 && t <= s && s <= 1)) {
        throw std::invalid_argument("greedy parameters must satisfy 0 < t <= s <= 1");
    }
}

Rational GreedyTrace::max_approximant_norm() const {
    Rational best(0);
    for (const auto& record : steps) {
        if (record.approximant_norm > best) best = record.approximant_norm;
    }
    return best;
}

HaarKey select_max(const HaarExpansion& residual) {
    if (residual.spectrum_empty()) {
        throw std::invalid_argument("select_max on a residual with empty spectrum");
    }
    auto [key, value] = max_coefficient(residual, /*include_constant=*/false);
    return key;
}

DyadicCube grow_cube(const HaarExpansion& residual, const DyadicCube& delta, int j,
                     const Rational& s) {
    Rational target = s * rational_abs(residual.coefficient(delta, j));
    DyadicCube grown = delta;
    while (!grown.is_root()) {
        DyadicCube up = grown.parent();
        if (max_abs_at_cube(residual, up) < target) break;
        grown = up;
    }
    return grown;
}

int select_index(const HaarExpansion& residual, const DyadicCube& delta_tilde,
                 const DyadicCube& delta, int j, const GreedyParams& params) {
    Rational threshold = params.variant == StepRule::RuleA
                             ? Rational(params.t / params.s *
                                        max_abs_at_cube(residual, delta_tilde))
                             : Rational(params.t *
                                        rational_abs(residual.coefficient(delta, j)));
    std::optional<int> best;
    Rational best_abs(0);
    for (int index = 1; index < (1 << residual.dim()); ++index) {
        Rational a = rational_abs(residual.coefficient(delta_tilde, index));
        if (a < threshold || a == 0) continue;
        if (!best || a < best_abs) {
            best = index;
            best_abs = a;
        }
    }
    if (!best) {
        // Step 2 guarantees a qualifying index for both rules when t <= s.
        throw std::logic_error("select_index: no qualifying index at the grown cube");
    }
    return *best;
}

GreedyRun::GreedyRun(HaarExpansion f, GreedyParams params)
    : params_(std::move(params)),
      input_(std::move(f)),
      input_norm_(norm(input_)),
      residual_(input_),
      approximant_(input_.dim()) {
    params_.validate();
    std::uint64_t natural = static_cast<std::uint64_t>(input_.spectrum_size()) + 1;
    step_limit_ = params_.max_steps.value_or(natural);
}

bool GreedyRun::done() const {
    if (steps_.size() >= step_limit_) return true;
    if (params_.include_constant) return residual_.is_zero();
    return residual_.spectrum_empty();
}

const GreedyStepRecord& GreedyRun::step() {
    if (done()) throw std::logic_error("greedy step on a finished run");

    GreedyStepRecord record{.m = steps_.size() + 1,
                            .constant_step = false,
                            .delta = DyadicCube::root(residual_.dim()),
                            .j = 0,
                            .delta_tilde = DyadicCube::root(residual_.dim()),
                            .i = 0,
                            .removed_value = 0,
                            .approximant_norm = 0,
                            .residual_norm = 0};

    if (params_.include_constant && residual_.constant() != 0) {
        // The constant term is the first element of the Schauder enumeration;
        // it is emitted as the first step and steps 2-3 are skipped.
        record.constant_step = true;
        record.removed_value = residual_.constant();
        approximant_.set_constant(approximant_.constant() + residual_.constant());
        residual_.set_constant(0);
    } else {
        HaarKey selected = select_max(residual_);
        DyadicCube grown = grow_cube(residual_, selected.cube, selected.index, params_.s);
        int removed_index = select_index(residual_, grown, selected.cube, selected.index,
                                         params_);
        record.delta = selected.cube;
        record.j = selected.index;
        record.delta_tilde = grown;
        record.i = removed_index;
        record.removed_value = residual_.coefficient(grown, removed_index);
        approximant_.add_coefficient(grown, removed_index, record.removed_value);
        residual_.set_coefficient(grown, removed_index, 0);
    }
    record.approximant_norm = norm(approximant_);
    record.residual_norm = norm(residual_);
    steps_.push_back(std::move(record));
    return steps_.back();
}

GreedyTrace GreedyRun::finish() && {
    GreedyTrace trace(params_, std::move(input_));
    trace.input_norm = std::move(input_norm_);
    trace.steps = std::move(steps_);
    trace.terminated = residual_.is_zero();
    trace.approximant = std::move(approximant_);
    trace.residual = std::move(residual_);
    return trace;
}

GreedyTrace run_greedy(const HaarExpansion& f, const GreedyParams& params) {
    GreedyRun run(f, params);
    while (!run.done()) run.step();
    return std::move(run).finish();
}

namespace {

struct FirstStep {
    DyadicCube delta;
    int j;
    DyadicCube delta_tilde;
    int i;

    bool operator==(const FirstStep&) const = default;
};

FirstStep first_thresholding_step(const HaarExpansion& f, const GreedyParams& params) {
    HaarKey selected = select_max(f);
    DyadicCube grown = grow_cube(f, selected.cube, selected.index, params.s);
    int removed = select_index(f, grown, selected.cube, selected.index, params);
    return FirstStep{selected.cube, selected.index, grown, removed};
}

}  // namespace

bool check_branch_greedy(const HaarExpansion& f, const GreedyParams& params,
                         const Perturbation& perturbation) {
    params.validate();
    if (f.spectrum_empty()) {
        throw std::invalid_argument("branch-greedy check needs a nonempty spectrum");
    }
    Rational threshold =
        params.t * rational_abs(max_coefficient(f, /*include_constant=*/false).second);
    HaarExpansion perturbed = f;
    for (const auto& [key, value] : perturbation) {
        if (rational_abs(f.coefficient(key.cube, key.index)) >= threshold) {
            throw std::invalid_argument(
                "perturbation touches a coefficient at or above the weak threshold");
        }
        if (rational_abs(value) >= threshold) {
            throw std::invalid_argument(
                "perturbation pushes a coefficient to or above the weak threshold");
        }
        perturbed.set_coefficient(key.cube, key.index, value);
    }
    return first_thresholding_step(f, params) ==
           first_thresholding_step(perturbed, params);
}

}  // namespace haargreedy
