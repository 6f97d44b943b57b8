#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "haargreedy/greedy.hpp"
#include "haargreedy/haar.hpp"
#include "haargreedy/symmetry.hpp"

namespace haargreedy {

enum class LemmaId {
    L3_1,
    L3_2,
    L3_3a,
    L3_3b,
    L3_3c,
    L3_4,
    L3_5,
    L4_6,
    Eq4_1,
    KEY1,
    L5_1,
    L5_2,
    KEY2,
    BOUND,
    BRANCH,
    ROUNDTRIP,
    MGCR,
};

std::string lemma_name(LemmaId id);

/// Outcome of one exact inequality check; `witness` serializes the instance
/// so a failure can be replayed.
struct LemmaVerdict {
    LemmaId lemma;
    bool holds = false;
    Rational lhs;
    Rational rhs;
    std::string witness;
};

/// Deterministic pseudorandom source for instance generators. Identical seeds
/// give identical instances across runs.
class InstanceRng {
public:
    explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
    int int_in(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return (next() & 1U) != 0; }

    /// Nonzero rational k/2^e with |value| <= bound and e <= denom_pow.
    Rational nonzero_rational(int bound, int denom_pow);
    /// Rational in [0, bound] with dyadic denominator (possibly zero).
    Rational rational_in(const Rational& bound, int denom_pow);

    DyadicCube cube(int dim, int max_level, int min_level = 0);

private:
    std::mt19937_64 engine_;
};

/// Seed for trial `index` of a suite seeded with `base`.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Deterministic pseudorandom expansion: exactly `coeff_count` distinct pairs
/// at levels <= max_level with nonzero dyadic-denominator coefficients of
/// magnitude <= coeff_bound, plus (sometimes) a constant term.
HaarExpansion gen_expansion(std::uint64_t seed, int dim, int max_level, int coeff_count,
                            int coeff_bound);

/// Norm-estimate checkers (Lemmas 3.1-3.5). `cubes` carries the nested tuple
/// each lemma requires: L3_1 (I, J), L3_2 (I), L3_3* (I, J), L3_4/L3_5
/// (I, J, K). Throws when the nesting precondition is violated.
LemmaVerdict check_norm_lemma(LemmaId id, const HaarExpansion& f,
                              const std::vector<DyadicCube>& cubes, int i, int j);

/// First failed hypothesis of the first key lemma (0 if all hold):
///   0') spectrum of p finite, nonempty, root outside its cube-spectrum and
///       p mean-zero (reported as 6),
///   1) index-disjoint spectra, 2) every cube of p carries |c| >= s,
///   3) at shared cubes every |c(q)| < (t/s) max |c(p)|,
///   4) each chain father satisfies max_j |c_F(q)| < s max over the chain.
int key_lemma_one_failed_hypothesis(const HaarExpansion& p, const HaarExpansion& q,
                                    const Rational& s, const Rational& t);

/// ||p+q|| > min(s(1-s), s-t)/24 * |M|, M = chain fathers union shared cubes.
LemmaVerdict check_key_lemma_one(const HaarExpansion& p, const HaarExpansion& q,
                                 const Rational& s, const Rational& t);

/// ||f|| <= (5/t + 12) ||f+g|| under the second key lemma's hypotheses.
LemmaVerdict check_key_lemma_two(const HaarExpansion& f, const HaarExpansion& g,
                                 const Rational& t);

/// Lemma 5.1 trichotomy and the Lemma 5.2 statements 1-6 for one application
/// of the pair operator at `delta`. Returns {L5_1 verdict, L5_2 verdict}.
std::vector<LemmaVerdict> check_pair_symmetry(const HaarExpansion& f,
                                              const HaarExpansion& g,
                                              const DyadicCube& delta);

/// Main Theorem bound C(t) (1 + (2^d-1)/C(s,t)) with the explicit constants.
Rational uniform_bound_constant(const Rational& s, const Rational& t, int dim);

/// max_m ||G_m|| <= uniform_bound_constant * ||f||; rejects boundary traces.
LemmaVerdict check_uniform_bound(const GreedyTrace& trace);

/// Hypothesis-constrained instance generators (self-validated).
struct KeyOneInstance {
    HaarExpansion p;
    HaarExpansion q;
};
KeyOneInstance gen_key_lemma_one_instance(std::uint64_t seed, int dim, const Rational& s,
                                          const Rational& t);

struct KeyTwoInstance {
    HaarExpansion f;
    HaarExpansion g;
};
KeyTwoInstance gen_key_lemma_two_instance(std::uint64_t seed, int dim, const Rational& t);

struct PairInstance {
    HaarExpansion f;
    HaarExpansion g;
    DyadicCube delta;
};
PairInstance gen_pair_instance(std::uint64_t seed, int dim);

std::vector<DyadicCube> gen_cube_list(std::uint64_t seed, int dim, int max_level,
                                      int count);

/// One named verification suite; a failed verdict is a build-level failure.
struct SuiteLine {
    std::string check;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
};
struct SuiteReport {
    std::string suite;
    std::vector<SuiteLine> lines;
    std::vector<LemmaVerdict> failures;

    bool ok() const { return failures.empty(); }
    std::uint64_t total_trials() const;
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed);

}  // namespace haargreedy
