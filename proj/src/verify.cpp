#include "haargreedy/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "haargreedy/constructions.hpp"
#include "haargreedy/io.hpp"

namespace haargreedy {

std::string lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::L3_1: return "L3_1";
        case LemmaId::L3_2: return "L3_2";
        case LemmaId::L3_3a: return "L3_3a";
        case LemmaId::L3_3b: return "L3_3b";
        case LemmaId::L3_3c: return "L3_3c";
        case LemmaId::L3_4: return "L3_4";
        case LemmaId::L3_5: return "L3_5";
        case LemmaId::L4_6: return "L4_6";
        case LemmaId::Eq4_1: return "Eq4_1";
        case LemmaId::KEY1: return "KEY1";
        case LemmaId::L5_1: return "L5_1";
        case LemmaId::L5_2: return "L5_2";
        case LemmaId::KEY2: return "KEY2";
        case LemmaId::BOUND: return "BOUND";
        case LemmaId::BRANCH: return "BRANCH";
        case LemmaId::ROUNDTRIP: return "ROUNDTRIP";
        case LemmaId::MGCR: return "MGCR";
    }
    return "?";
}

Rational InstanceRng::nonzero_rational(int bound, int denom_pow) {
    if (bound < 1) throw std::invalid_argument("coefficient bound must be positive");
    int e = int_in(0, denom_pow);
    mpz_class den = 1;
    den <<= e;
    std::uint64_t num_max = static_cast<std::uint64_t>(bound) << e;
    mpz_class num = mpz_class(static_cast<unsigned long>(1 + below(num_max)));
    Rational value{num, den};
    value.canonicalize();
    return coin() ? value : Rational(-value);
}

Rational InstanceRng::rational_in(const Rational& bound, int denom_pow) {
    Rational scaled = bound * pow2(denom_pow);
    mpz_class cap = scaled.get_num() / scaled.get_den();
    if (cap <= 0) return Rational(0);
    std::uint64_t steps = cap.get_ui();
    Rational value{mpz_class(static_cast<unsigned long>(below(steps + 1))), 1};
    return value * pow2(-denom_pow);
}

DyadicCube InstanceRng::cube(int dim, int max_level, int min_level) {
    int level = int_in(min_level, max_level);
    std::vector<std::int64_t> coords;
    coords.reserve(static_cast<std::size_t>(dim));
    for (int axis = 0; axis < dim; ++axis) {
        coords.push_back(static_cast<std::int64_t>(below(std::uint64_t{1} << level)));
    }
    return DyadicCube(dim, level, std::move(coords));
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 over the combined key.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

HaarExpansion gen_expansion(std::uint64_t seed, int dim, int max_level, int coeff_count,
                            int coeff_bound) {
    if (max_level < 0 || coeff_count < 0) {
        throw std::invalid_argument("generator bounds must be non-negative");
    }
    InstanceRng rng(seed);
    HaarExpansion f(dim);
    if (rng.int_in(0, 3) != 0) f.set_constant(rng.nonzero_rational(coeff_bound, 6));
    int placed = 0;
    int attempts = 0;
    while (placed < coeff_count && attempts < 64 * (coeff_count + 1)) {
        ++attempts;
        DyadicCube cube = rng.cube(dim, max_level);
        int index = rng.int_in(1, (1 << dim) - 1);
        if (f.coefficient(cube, index) != 0) continue;
        f.set_coefficient(cube, index, rng.nonzero_rational(coeff_bound, 6));
        ++placed;
    }
    return f;
}

namespace {

Json cubes_json(const std::vector<DyadicCube>& cubes) {
    Json out = Json::array();
    for (const DyadicCube& cube : cubes) out.push_back(cube.to_string());
    return out;
}

std::string norm_lemma_witness(LemmaId id, const HaarExpansion& f,
                               const std::vector<DyadicCube>& cubes, int i, int j) {
    return Json{{"lemma", lemma_name(id)},
                {"f", expansion_to_json(f)},
                {"cubes", cubes_json(cubes)},
                {"i", i},
                {"j", j}}
        .dump();
}

void require_child(const DyadicCube& outer, const DyadicCube& inner, const char* what) {
    if (!(outer.contains(inner) && inner.level() == outer.level() + 1)) {
        throw std::invalid_argument(std::string(what) +
                                    " must be an immediate successor");
    }
}

}  // namespace

LemmaVerdict check_norm_lemma(LemmaId id, const HaarExpansion& f,
                              const std::vector<DyadicCube>& cubes, int i, int j) {
    LemmaVerdict verdict{id, false, Rational(0), Rational(0),
                         norm_lemma_witness(id, f, cubes, i, j)};
    const Rational half(1, 2);
    const Rational quarter(1, 4);
    const Rational& improved = f.dim() == 2 ? half : quarter;

    switch (id) {
        case LemmaId::L3_1: {
            if (cubes.size() != 2 || !cubes[0].contains(cubes[1])) {
                throw std::invalid_argument("L3_1 requires nested cubes J inside I");
            }
            verdict.lhs = norm_on_cube(f, cubes[0]);
            verdict.rhs = rational_abs(f.coefficient(cubes[1], i));
            verdict.holds = verdict.lhs >= verdict.rhs;
            break;
        }
        case LemmaId::L3_2: {
            if (cubes.size() != 1) throw std::invalid_argument("L3_2 takes one cube");
            if (rational_abs(f.constant()) > 1) {
                throw std::invalid_argument("L3_2 hypothesis |c| <= 1 violated");
            }
            for (const auto& [key, value] : f.coefficients()) {
                if (rational_abs(value) > 1) {
                    throw std::invalid_argument("L3_2 hypothesis |c| <= 1 violated");
                }
            }
            verdict.lhs = norm_on_cube(project_outside(f, cubes[0]), cubes[0]);
            verdict.rhs = 1;
            verdict.holds = verdict.lhs <= verdict.rhs;
            break;
        }
        case LemmaId::L3_3a:
        case LemmaId::L3_3b:
        case LemmaId::L3_3c: {
            if (cubes.size() != 2) throw std::invalid_argument("L3_3 takes (I, J)");
            require_child(cubes[0], cubes[1], "L3_3: J");
            verdict.lhs = norm(f, Region::difference(cubes[0], cubes[1]));
            if (id == LemmaId::L3_3a) {
                verdict.rhs =
                    rational_abs(norm_on_cube(project_outside(f, cubes[0]), cubes[0]) -
                                 norm_on_cube(project_outside(f, cubes[1]), cubes[1]));
            } else if (id == LemmaId::L3_3b) {
                verdict.rhs = improved * rational_abs(
                                             rational_abs(f.coefficient(cubes[0], i)) -
                                             rational_abs(f.coefficient(cubes[0], j)));
            } else {
                verdict.rhs =
                    improved *
                    rational_abs(norm_on_cube(project_outside(f, cubes[0]), cubes[0]) -
                                 rational_abs(f.coefficient(cubes[0], j)));
            }
            verdict.holds = verdict.lhs >= verdict.rhs;
            break;
        }
        case LemmaId::L3_4: {
            if (cubes.size() != 3) throw std::invalid_argument("L3_4 takes (I, J, K)");
            require_child(cubes[0], cubes[1], "L3_4: J");
            require_child(cubes[1], cubes[2], "L3_4: K");
            verdict.lhs = norm(f, Region::difference(cubes[0], cubes[2]));
            verdict.rhs = rational_abs(rational_abs(f.coefficient(cubes[0], i)) -
                                       rational_abs(f.coefficient(cubes[1], j))) /
                          8;
            verdict.holds = verdict.lhs >= verdict.rhs;
            break;
        }
        case LemmaId::L3_5: {
            if (cubes.size() != 3) throw std::invalid_argument("L3_5 takes (I, J, K)");
            if (!(cubes[0].contains(cubes[1]) && cubes[1].contains(cubes[2]) &&
                  cubes[1] != cubes[2])) {
                throw std::invalid_argument("L3_5 requires K strictly inside J inside I");
            }
            verdict.lhs = norm(f, Region::difference(cubes[0], cubes[2]));
            verdict.rhs = rational_abs(rational_abs(f.coefficient(cubes[0], i)) -
                                       rational_abs(f.coefficient(cubes[1], j))) /
                          16;
            verdict.holds = verdict.lhs >= verdict.rhs;
            break;
        }
        default:
            throw std::invalid_argument("check_norm_lemma handles L3_1..L3_5 only");
    }
    return verdict;
}

int key_lemma_one_failed_hypothesis(const HaarExpansion& p, const HaarExpansion& q,
                                    const Rational& s, const Rational& t) {
    if (p.spectrum_empty()) return 7;
    if (p.constant() != 0) return 6;
    CubeSet p_cubes = p.cube_spectrum();
    if (p_cubes.contains(DyadicCube::root(p.dim()))) return 5;

    for (const auto& [key, value] : p.coefficients()) {
        if (q.coefficient(key.cube, key.index) != 0) return 1;
    }
    const int arity = 1 << p.dim();
    auto max_abs = [&](const HaarExpansion& f, const DyadicCube& cube) {
        Rational best(0);
        for (int index = 1; index < arity; ++index) {
            Rational a = rational_abs(f.coefficient(cube, index));
            if (a > best) best = a;
        }
        return best;
    };
    for (const DyadicCube& cube : p_cubes) {
        if (max_abs(p, cube) < s) return 2;
    }
    CubeSet q_cubes = q.cube_spectrum();
    for (const DyadicCube& cube : p_cubes) {
        if (!q_cubes.contains(cube)) continue;
        if (!(max_abs(q, cube) < t / s * max_abs(p, cube))) return 3;
    }
    for (const GeneralizedChain& chain : analyze_cube_set(p_cubes).mgcr) {
        Rational chain_best(0);
        for (const DyadicCube& cube : chain.cubes) {
            Rational a = max_abs(p, cube);
            if (a > chain_best) chain_best = a;
        }
        if (!(max_abs(q, *chain.father) < s * chain_best)) return 4;
    }
    return 0;
}

LemmaVerdict check_key_lemma_one(const HaarExpansion& p, const HaarExpansion& q,
                                 const Rational& s, const Rational& t) {
    if (!(t > 0 && t < s && s < 1)) {
        throw std::invalid_argument("key lemma one requires 0 < t < s < 1");
    }
    if (int failed = key_lemma_one_failed_hypothesis(p, q, s, t); failed != 0) {
        throw std::invalid_argument("key lemma one: hypothesis " +
                                    std::to_string(failed) + " failed");
    }
    CubeSet p_cubes = p.cube_spectrum();
    CubeSet q_cubes = q.cube_spectrum();
    CubeSet witnesses;
    for (const GeneralizedChain& chain : analyze_cube_set(p_cubes).mgcr) {
        witnesses.insert(*chain.father);
    }
    for (const DyadicCube& cube : p_cubes) {
        if (q_cubes.contains(cube)) witnesses.insert(cube);
    }
    Rational constant = std::min(Rational(s * (1 - s)), Rational(s - t)) / 24;

    LemmaVerdict verdict{LemmaId::KEY1, false, Rational(0), Rational(0), ""};
    verdict.lhs = norm(p + q);
    verdict.rhs = constant * Rational(static_cast<long>(witnesses.size()));
    verdict.holds = verdict.lhs > verdict.rhs;
    verdict.witness = Json{{"lemma", "KEY1"},
                           {"p", expansion_to_json(p)},
                           {"q", expansion_to_json(q)},
                           {"s", fraction_string(s)},
                           {"t", fraction_string(t)},
                           {"m_size", witnesses.size()}}
                          .dump();
    return verdict;
}

LemmaVerdict check_key_lemma_two(const HaarExpansion& f, const HaarExpansion& g,
                                 const Rational& t) {
    if (!(t > 0 && t < 1)) {
        throw std::invalid_argument("key lemma two requires 0 < t < 1");
    }
    if (int failed = key_lemma_two_failed_hypothesis(f, g, t); failed != 0) {
        throw std::invalid_argument("key lemma two: hypothesis " +
                                    std::to_string(failed) + " failed");
    }
    LemmaVerdict verdict{LemmaId::KEY2, false, Rational(0), Rational(0), ""};
    verdict.lhs = norm(f);
    verdict.rhs = (5 / t + 12) * norm(f + g);
    verdict.holds = verdict.lhs <= verdict.rhs;
    verdict.witness = Json{{"lemma", "KEY2"},
                           {"f", expansion_to_json(f)},
                           {"g", expansion_to_json(g)},
                           {"t", fraction_string(t)}}
                          .dump();
    return verdict;
}

std::vector<LemmaVerdict> check_pair_symmetry(const HaarExpansion& f,
                                              const HaarExpansion& g,
                                              const DyadicCube& delta) {
    const int arity = 1 << f.dim();
    Rational f_norm = norm(f);
    Rational sum_norm = norm(f + g);

    std::string witness = Json{{"f", expansion_to_json(f)},
                               {"g", expansion_to_json(g)},
                               {"delta", delta.to_string()}}
                              .dump();

    // Lemma 5.1: either some copy strictly raises the ratio or all preserve it.
    int strict_count = 0;
    int equal_count = 0;
    for (int position = 1; position <= arity; ++position) {
        HaarExpansion cf = copy_from_successor(f, delta, position);
        HaarExpansion cs = copy_from_successor(f + g, delta, position);
        Rational left = norm(cf) * sum_norm;
        Rational right = f_norm * norm(cs);
        if (left > right) ++strict_count;
        if (left == right) ++equal_count;
    }
    LemmaVerdict trichotomy{LemmaId::L5_1, strict_count > 0 || equal_count == arity,
                            Rational(strict_count), Rational(equal_count), witness};

    PairCopyResult applied = symmetrize_pair(f, g, delta);
    const HaarExpansion& fp = applied.f_prime;
    const HaarExpansion& gp = applied.g_prime;
    std::vector<DyadicCube> successors = delta.immediate_successors();
    const DyadicCube& source =
        successors[static_cast<std::size_t>(applied.successor_position - 1)];

    std::vector<int> failed;

    // 1) Delta left both cube-spectra.
    for (int index = 1; index < arity; ++index) {
        if (fp.coefficient(delta, index) != 0 || gp.coefficient(delta, index) != 0) {
            failed.push_back(1);
            break;
        }
    }

    // 2) coefficients unchanged off the copied-over region.
    auto inside_copied_region = [&](const DyadicCube& cube) {
        for (int b = 0; b < arity; ++b) {
            if (b == applied.successor_position - 1) continue;
            if (successors[static_cast<std::size_t>(b)].contains(cube)) return true;
        }
        return false;
    };
    auto unchanged_outside = [&](const HaarExpansion& before, const HaarExpansion& after) {
        for (const auto& [key, value] : before.coefficients()) {
            if (!inside_copied_region(key.cube) &&
                after.coefficient(key.cube, key.index) != value) {
                return false;
            }
        }
        for (const auto& [key, value] : after.coefficients()) {
            if (!inside_copied_region(key.cube) &&
                before.coefficient(key.cube, key.index) != value) {
                return false;
            }
        }
        return true;
    };
    if (!unchanged_outside(f, fp) || !unchanged_outside(g, gp)) failed.push_back(2);

    // 3) every copied coefficient matches its translate in the source cube.
    auto copies_match = [&](const HaarExpansion& before, const HaarExpansion& after) {
        for (int b = 0; b < arity; ++b) {
            if (b == applied.successor_position - 1) continue;
            const DyadicCube& target = successors[static_cast<std::size_t>(b)];
            for (const auto& [key, value] : after.coefficients()) {
                if (!target.contains(key.cube)) continue;
                DyadicCube back = translate_between_successors(key.cube, target, source);
                if (before.coefficient(back, key.index) != value) return false;
            }
            for (const auto& [key, value] : before.coefficients()) {
                if (!source.contains(key.cube)) continue;
                DyadicCube forward = translate_between_successors(key.cube, source, target);
                if (after.coefficient(forward, key.index) != value) return false;
            }
        }
        return true;
    };
    if (!copies_match(f, fp) || !copies_match(g, gp)) failed.push_back(3);

    // 4) spectra stay disjoint.
    for (const auto& [key, value] : fp.coefficients()) {
        if (gp.coefficient(key.cube, key.index) != 0) {
            failed.push_back(4);
            break;
        }
    }

    // 5) the copied pair does not collapse.
    if ((fp + gp).spectrum_empty()) failed.push_back(5);

    // 6) monotone ratio, cross-multiplied.
    Rational lhs6 = norm(fp) * sum_norm;
    Rational rhs6 = f_norm * norm(fp + gp);
    if (!(lhs6 >= rhs6)) failed.push_back(6);

    Json witness52 = Json::parse(witness);
    witness52["chosen_successor"] = applied.successor_position;
    witness52["failed_statements"] = failed;
    LemmaVerdict statements{LemmaId::L5_2, failed.empty(), lhs6, rhs6, witness52.dump()};
    return {trichotomy, statements};
}

Rational uniform_bound_constant(const Rational& s, const Rational& t, int dim) {
    Rational c_st = std::min(Rational(s * (1 - s)), Rational(s - t)) / 24;
    return (5 / t + 12) * (1 + Rational((1 << dim) - 1) / c_st);
}

LemmaVerdict check_uniform_bound(const GreedyTrace& trace) {
    if (trace.params.boundary_regime()) {
        throw std::invalid_argument(
            "boundary-parameter trace (s = 1 or s = t): the Main Theorem bound does "
            "not apply");
    }
    LemmaVerdict verdict{LemmaId::BOUND, false, Rational(0), Rational(0), ""};
    verdict.lhs = trace.max_approximant_norm();
    verdict.rhs = uniform_bound_constant(trace.params.s, trace.params.t,
                                         trace.input.dim()) *
                  trace.input_norm;
    verdict.holds = verdict.lhs <= verdict.rhs;
    verdict.witness = Json{{"lemma", "BOUND"},
                           {"f", expansion_to_json(trace.input)},
                           {"s", fraction_string(trace.params.s)},
                           {"t", fraction_string(trace.params.t)},
                           {"variant",
                            trace.params.variant == StepRule::RuleA ? "a" : "b"}}
                          .dump();
    return verdict;
}

KeyOneInstance gen_key_lemma_one_instance(std::uint64_t seed, int dim, const Rational& s,
                                          const Rational& t) {
    InstanceRng rng(seed);
    const int arity = 1 << dim;
    HaarExpansion p(dim);
    HaarExpansion q(dim);

    int cube_count = rng.int_in(2, 8);
    for (int placed = 0; placed < cube_count;) {
        DyadicCube cube = rng.cube(dim, 4, 1);
        int index = rng.int_in(1, arity - 1);
        if (p.coefficient(cube, index) != 0) continue;
        // One coefficient of magnitude >= s per cube satisfies hypothesis 2.
        Rational value = s * (1 + Rational(rng.int_in(0, 16), 16));
        p.set_coefficient(cube, index, rng.coin() ? value : Rational(-value));
        ++placed;
    }
    CubeSet p_cubes = p.cube_spectrum();

    auto max_abs = [&](const HaarExpansion& f, const DyadicCube& cube) {
        Rational best(0);
        for (int index = 1; index < arity; ++index) {
            Rational a = rational_abs(f.coefficient(cube, index));
            if (a > best) best = a;
        }
        return best;
    };

    // Shared cubes: below the (t/s) fraction of p's largest coefficient there.
    if (dim > 1) {
        for (const DyadicCube& cube : p_cubes) {
            if (!rng.coin()) continue;
            int index = rng.int_in(1, arity - 1);
            if (p.coefficient(cube, index) != 0) continue;
            Rational bound = t / s * max_abs(p, cube);
            Rational value = bound * Rational(1 + rng.int_in(0, 62), 64);
            q.set_coefficient(cube, index, rng.coin() ? value : Rational(-value));
        }
    }

    // Chain fathers: below s times the chain's largest coefficient.
    std::map<DyadicCube, Rational, CubeOrder> father_bound;
    for (const GeneralizedChain& chain : analyze_cube_set(p_cubes).mgcr) {
        Rational chain_best(0);
        for (const DyadicCube& cube : chain.cubes) {
            Rational a = max_abs(p, cube);
            if (a > chain_best) chain_best = a;
        }
        Rational bound = s * chain_best;
        auto [it, inserted] = father_bound.emplace(*chain.father, bound);
        if (!inserted && bound < it->second) it->second = bound;
    }
    for (const auto& [father, bound] : father_bound) {
        if (rng.int_in(0, 2) == 0) continue;
        int index = rng.int_in(1, arity - 1);
        Rational value = bound * Rational(1 + rng.int_in(0, 62), 64);
        q.set_coefficient(father, index, rng.coin() ? value : Rational(-value));
    }

    // Unconstrained cubes away from the spectrum of p and the fathers.
    int extra = rng.int_in(0, 5);
    for (int placed = 0; placed < extra;) {
        DyadicCube cube = rng.cube(dim, 5);
        if (p_cubes.contains(cube) || father_bound.contains(cube)) {
            ++placed;
            continue;
        }
        int index = rng.int_in(1, arity - 1);
        q.set_coefficient(cube, index, rng.nonzero_rational(1, 6));
        ++placed;
    }
    if (rng.coin()) q.set_constant(rng.nonzero_rational(1, 6));

    if (key_lemma_one_failed_hypothesis(p, q, s, t) != 0) {
        throw std::logic_error("key lemma one generator produced a bad instance");
    }
    return KeyOneInstance{std::move(p), std::move(q)};
}

KeyTwoInstance gen_key_lemma_two_instance(std::uint64_t seed, int dim, const Rational& t) {
    InstanceRng rng(seed);
    const int arity = 1 << dim;
    HaarExpansion f(dim);
    HaarExpansion g(dim);

    int cube_count = rng.int_in(2, 8);
    for (int placed = 0; placed < cube_count;) {
        DyadicCube cube = rng.cube(dim, 4, 1);
        int index = rng.int_in(1, arity - 1);
        if (f.coefficient(cube, index) != 0) continue;
        // Magnitude >= t on every cube implies hypothesis 5 chain-wise.
        Rational value = t * (1 + Rational(rng.int_in(0, 16), 16));
        f.set_coefficient(cube, index, rng.coin() ? value : Rational(-value));
        ++placed;
    }
    CubeSet f_cubes = f.cube_spectrum();
    CubeSet forbidden = f_cubes;
    forbidden.insert(DyadicCube::root(dim));
    for (const GeneralizedChain& chain : analyze_cube_set(f_cubes).mgcr) {
        forbidden.insert(*chain.father);
    }

    int g_count = rng.int_in(0, 8);
    for (int placed = 0; placed < g_count;) {
        DyadicCube cube = rng.cube(dim, 5);
        ++placed;
        if (forbidden.contains(cube)) continue;
        int index = rng.int_in(1, arity - 1);
        g.set_coefficient(cube, index, rng.nonzero_rational(1, 6));
    }
    if (rng.coin()) g.set_constant(rng.nonzero_rational(1, 6));

    if (key_lemma_two_failed_hypothesis(f, g, t) != 0) {
        throw std::logic_error("key lemma two generator produced a bad instance");
    }
    return KeyTwoInstance{std::move(f), std::move(g)};
}

PairInstance gen_pair_instance(std::uint64_t seed, int dim) {
    InstanceRng rng(seed);
    const int arity = 1 << dim;
    DyadicCube delta = rng.cube(dim, 2);
    HaarExpansion f(dim);
    HaarExpansion g(dim);

    auto random_descendant = [&](int max_extra) {
        DyadicCube cube = delta;
        int depth = rng.int_in(1, max_extra);
        for (int step = 0; step < depth; ++step) {
            cube = cube.successor(rng.int_in(1, arity));
        }
        return cube;
    };

    int f_count = rng.int_in(1, 6);
    for (int placed = 0; placed < f_count;) {
        DyadicCube cube = rng.int_in(0, 3) == 0 ? rng.cube(dim, 4) : random_descendant(3);
        if (cube == delta) continue;
        int index = rng.int_in(1, arity - 1);
        if (f.coefficient(cube, index) != 0) continue;
        f.set_coefficient(cube, index, rng.nonzero_rational(2, 5));
        ++placed;
    }

    if (rng.int_in(0, 7) != 0) {
        int g_count = rng.int_in(1, 5);
        for (int placed = 0; placed < g_count;) {
            DyadicCube cube =
                rng.int_in(0, 3) == 0 ? rng.cube(dim, 4) : random_descendant(3);
            ++placed;
            if (cube == delta) continue;
            int index = rng.int_in(1, arity - 1);
            if (f.coefficient(cube, index) != 0 || g.coefficient(cube, index) != 0) {
                continue;
            }
            g.set_coefficient(cube, index, rng.nonzero_rational(1, 5));
        }
        if (rng.coin()) g.set_constant(rng.nonzero_rational(1, 6));
    }
    return PairInstance{std::move(f), std::move(g), std::move(delta)};
}

std::vector<DyadicCube> gen_cube_list(std::uint64_t seed, int dim, int max_level,
                                      int count) {
    InstanceRng rng(seed);
    CubeSet distinct;
    int attempts = 0;
    while (static_cast<int>(distinct.size()) < count && attempts < 64 * (count + 1)) {
        ++attempts;
        distinct.insert(rng.cube(dim, max_level));
    }
    std::vector<DyadicCube> cubes(distinct.begin(), distinct.end());
    // Deterministic shuffle so callers exercise enumeration-order independence.
    for (std::size_t k = cubes.size(); k > 1; --k) {
        std::swap(cubes[k - 1], cubes[static_cast<std::size_t>(rng.below(k))]);
    }
    return cubes;
}

namespace {

// MGCR by merging in the input enumeration order; an independent route used
// to confirm uniqueness of the representation.
std::vector<GeneralizedChain> mgcr_in_input_order(const std::vector<DyadicCube>& cubes) {
    std::vector<GeneralizedChain> chains;
    for (const DyadicCube& cube : cubes) {
        bool present = false;
        for (const GeneralizedChain& chain : chains) {
            if (chain.cubes.contains(cube)) present = true;
        }
        if (!present) chains.push_back(make_generalized_chain(CubeSet{cube}));
    }
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < chains.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < chains.size() && !merged; ++j) {
                if (!chains_mergeable(chains[i], chains[j])) continue;
                CubeSet united = chains[i].cubes;
                united.insert(chains[j].cubes.begin(), chains[j].cubes.end());
                chains[i] = make_generalized_chain(united);
                chains.erase(chains.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
        }
    }
    std::sort(chains.begin(), chains.end(),
              [](const GeneralizedChain& a, const GeneralizedChain& b) {
                  return cube_precedes(a.maximal_cube, b.maximal_cube);
              });
    return chains;
}

bool same_chains(const std::vector<GeneralizedChain>& a,
                 const std::vector<GeneralizedChain>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].cubes != b[k].cubes || a[k].maximal_cube != b[k].maximal_cube ||
            a[k].father != b[k].father) {
            return false;
        }
    }
    return true;
}

CubeSet random_generalized_chain(InstanceRng& rng, int dim) {
    DyadicCube top = rng.cube(dim, 2);
    CubeSet cubes{top};
    int branches = rng.int_in(0, 3);
    for (int b = 0; b < branches; ++b) {
        DyadicCube leaf = top;
        int depth = rng.int_in(1, 3);
        for (int step = 0; step < depth; ++step) {
            leaf = leaf.successor(rng.int_in(1, 1 << dim));
        }
        for (const DyadicCube& link : chain(top, leaf)) cubes.insert(link);
    }
    return cubes;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"norm-lemmas", "mgcr", "key1", "key2", "symmetry",
            "bound",       "branch", "roundtrip", "all"};
}

namespace {

void record(SuiteReport& report, std::map<std::string, SuiteLine>& lines,
            const std::string& check, const LemmaVerdict& verdict) {
    SuiteLine& line = lines[check];
    line.check = check;
    ++line.trials;
    if (!verdict.holds) {
        ++line.failures;
        report.failures.push_back(verdict);
    }
}

void simple_record(SuiteReport& report, std::map<std::string, SuiteLine>& lines,
                   const std::string& check, LemmaId id, bool holds,
                   const std::string& witness) {
    LemmaVerdict verdict{id, holds, Rational(0), Rational(0), witness};
    record(report, lines, check, verdict);
}

SuiteReport finalize(SuiteReport report, std::map<std::string, SuiteLine> lines) {
    for (auto& [name, line] : lines) report.lines.push_back(line);
    return report;
}

SuiteReport run_norm_lemmas(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"norm-lemmas", {}, {}};
    std::map<std::string, SuiteLine> lines;
    const LemmaId ids[] = {LemmaId::L3_1,  LemmaId::L3_2,  LemmaId::L3_3a,
                           LemmaId::L3_3b, LemmaId::L3_3c, LemmaId::L3_4,
                           LemmaId::L3_5};
    for (int dim : {2, 3}) {
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            InstanceRng rng(trial_seed(seed, trial * 31 + static_cast<std::uint64_t>(dim)));
            const int arity = 1 << dim;
            DyadicCube top = rng.cube(dim, 2);
            DyadicCube mid = top.successor(rng.int_in(1, arity));
            DyadicCube bottom = mid.successor(rng.int_in(1, arity));

            // Bounded coefficients so the same instance feeds L3_2; extra mass
            // on the nested triple keeps the inequalities non-vacuous.
            HaarExpansion f =
                gen_expansion(trial_seed(seed, trial * 977 + static_cast<std::uint64_t>(dim)),
                              dim, 4, rng.int_in(0, 10), 1);
            for (const DyadicCube& cube : {top, mid, bottom}) {
                for (int index = 1; index < arity; ++index) {
                    if (rng.coin()) {
                        f.set_coefficient(cube, index, rng.nonzero_rational(1, 6));
                    }
                }
            }
            int i = rng.int_in(1, arity - 1);
            int j = rng.int_in(1, arity - 1);

            for (LemmaId id : ids) {
                std::vector<DyadicCube> cubes;
                switch (id) {
                    case LemmaId::L3_1: {
                        cubes = {top, rng.coin() ? bottom : mid};
                        break;
                    }
                    case LemmaId::L3_2: cubes = {rng.coin() ? top : mid}; break;
                    case LemmaId::L3_3a:
                    case LemmaId::L3_3b:
                    case LemmaId::L3_3c: cubes = {top, mid}; break;
                    case LemmaId::L3_4: cubes = {top, mid, bottom}; break;
                    case LemmaId::L3_5: {
                        DyadicCube deep = bottom.successor(rng.int_in(1, arity));
                        cubes = {top, rng.coin() ? mid : top, rng.coin() ? bottom : deep};
                        if (!cubes[1].contains(cubes[2]) || cubes[1] == cubes[2]) {
                            cubes[2] = cubes[1].successor(rng.int_in(1, arity));
                        }
                        break;
                    }
                    default: break;
                }
                record(report, lines, lemma_name(id) + "(d=" + std::to_string(dim) + ")",
                       check_norm_lemma(id, f, cubes, i, j));
            }
        }
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_mgcr(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"mgcr", {}, {}};
    std::map<std::string, SuiteLine> lines;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        InstanceRng rng(trial_seed(seed, trial));
        std::vector<DyadicCube> cubes =
            gen_cube_list(trial_seed(seed, trial * 3 + 1), dim, 4, rng.int_in(1, 20));
        std::string witness = Json{{"cubes", cubes_json(cubes)}}.dump();

        CubeSetAnalysis analysis = analyze_cube_set(cubes);
        CubeSet input(cubes.begin(), cubes.end());

        CubeSet covered;
        bool disjoint = true;
        bool chains_ok = true;
        for (const GeneralizedChain& chain : analysis.mgcr) {
            if (!is_generalized_chain(chain.cubes)) chains_ok = false;
            for (const DyadicCube& cube : chain.cubes) {
                if (!covered.insert(cube).second) disjoint = false;
            }
        }
        simple_record(report, lines, "MGCR-partition", LemmaId::MGCR,
                      disjoint && chains_ok && covered == input, witness);

        bool non_mergeable = true;
        for (std::size_t a = 0; a < analysis.mgcr.size(); ++a) {
            for (std::size_t b = a + 1; b < analysis.mgcr.size(); ++b) {
                CubeSet united = analysis.mgcr[a].cubes;
                united.insert(analysis.mgcr[b].cubes.begin(),
                              analysis.mgcr[b].cubes.end());
                if (chains_mergeable(analysis.mgcr[a], analysis.mgcr[b]) ||
                    is_generalized_chain(united)) {
                    non_mergeable = false;
                }
            }
        }
        simple_record(report, lines, "MGCR-non-mergeable", LemmaId::MGCR, non_mergeable,
                      witness);

        // Uniqueness: merging in input order and in reversed order must both
        // reproduce the canonical representation.
        std::vector<DyadicCube> reversed(cubes.rbegin(), cubes.rend());
        bool unique = same_chains(analysis.mgcr, mgcr_in_input_order(cubes)) &&
                      same_chains(analysis.mgcr, mgcr_in_input_order(reversed));
        simple_record(report, lines, "MGCR-unique", LemmaId::MGCR, unique, witness);

        LemmaVerdict lambda{LemmaId::Eq4_1,
                            analysis.lambda2.size() < analysis.lambda0.size(),
                            Rational(static_cast<long>(analysis.lambda2.size())),
                            Rational(static_cast<long>(analysis.lambda0.size())),
                            witness};
        record(report, lines, "Eq4_1", lambda);

        bool partitioned =
            analysis.lambda0.size() + analysis.lambda1.size() + analysis.lambda2.size() ==
            input.size();
        simple_record(report, lines, "Lambda-partition", LemmaId::Eq4_1, partitioned,
                      witness);

        bool reachable = true;
        for (const GeneralizedChain& chain : analysis.mgcr) {
            CubeSet seen{chain.maximal_cube};
            CubeSet frontier{chain.maximal_cube};
            while (!frontier.empty()) {
                frontier = sons_of_set(frontier, chain.cubes);
                seen.insert(frontier.begin(), frontier.end());
            }
            if (seen != chain.cubes) reachable = false;
        }
        simple_record(report, lines, "MGCR-sons-reach", LemmaId::MGCR, reachable, witness);

        // Lemma 4.6 on a random pair of generalized chains, both directions.
        CubeSet left = random_generalized_chain(rng, dim);
        CubeSet right;
        if (rng.coin()) {
            right = random_generalized_chain(rng, dim);
        } else {
            // Bias towards mergeable pairs.
            DyadicCube anchor = *left.begin();
            right = anchor.is_root() ? random_generalized_chain(rng, dim)
                                     : CubeSet{anchor.parent()};
        }
        GeneralizedChain lc = make_generalized_chain(left);
        GeneralizedChain rc = make_generalized_chain(right);
        CubeSet united = left;
        united.insert(right.begin(), right.end());
        bool criterion = chains_mergeable(lc, rc);
        bool is_chain = is_generalized_chain(united);
        std::string pair_witness =
            Json{{"left", cubes_json({left.begin(), left.end()})},
                 {"right", cubes_json({right.begin(), right.end()})}}
                .dump();
        simple_record(report, lines, "L4_6", LemmaId::L4_6, criterion == is_chain,
                      pair_witness);
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_key1(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"key1", {}, {}};
    std::map<std::string, SuiteLine> lines;
    const Rational s(3, 4);
    const Rational t(1, 2);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        KeyOneInstance instance = gen_key_lemma_one_instance(trial_seed(seed, trial), 2,
                                                             s, t);
        record(report, lines, "KEY1", check_key_lemma_one(instance.p, instance.q, s, t));
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_key2(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"key2", {}, {}};
    std::map<std::string, SuiteLine> lines;
    const Rational t(1, 2);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        KeyTwoInstance instance = gen_key_lemma_two_instance(trial_seed(seed, trial), 2, t);
        record(report, lines, "KEY2", check_key_lemma_two(instance.f, instance.g, t));
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_symmetry(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"symmetry", {}, {}};
    std::map<std::string, SuiteLine> lines;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        PairInstance instance = gen_pair_instance(trial_seed(seed, trial), 2);
        std::vector<LemmaVerdict> verdicts =
            check_pair_symmetry(instance.f, instance.g, instance.delta);
        record(report, lines, "L5_1", verdicts[0]);
        record(report, lines, "L5_2", verdicts[1]);
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_bound(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"bound", {}, {}};
    std::map<std::string, SuiteLine> lines;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        InstanceRng rng(trial_seed(seed, trial));
        HaarExpansion f = gen_expansion(trial_seed(seed, trial * 7 + 5), dim, 5,
                                        rng.int_in(1, 40), 4);
        for (StepRule rule : {StepRule::RuleA, StepRule::RuleB}) {
            GreedyParams params{Rational(3, 4), Rational(1, 2), rule, std::nullopt, true};
            GreedyTrace trace = run_greedy(f, params);
            record(report, lines, "BOUND", check_uniform_bound(trace));
            std::uint64_t expected = f.spectrum_size() + (f.constant() != 0 ? 1 : 0);
            bool finished = trace.terminated && trace.steps.size() == expected &&
                            trace.residual.is_zero();
            simple_record(report, lines, "termination", LemmaId::BOUND, finished,
                          expansion_to_json(f).dump());
        }
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_branch(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"branch", {}, {}};
    std::map<std::string, SuiteLine> lines;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        InstanceRng rng(trial_seed(seed, trial));
        HaarExpansion f = gen_expansion(trial_seed(seed, trial * 13 + 3), dim, 4,
                                        rng.int_in(2, 14), 4);
        if (f.spectrum_empty()) continue;
        GreedyParams params{Rational(3, 4), Rational(1, 2),
                            rng.coin() ? StepRule::RuleA : StepRule::RuleB, std::nullopt,
                            true};
        Rational threshold =
            params.t * rational_abs(max_coefficient(f, false).second);

        Perturbation perturbation;
        for (const auto& [key, value] : f.coefficients()) {
            if (rational_abs(value) >= threshold || !rng.coin()) continue;
            switch (rng.int_in(0, 2)) {
                case 0: perturbation[key] = value / 2; break;
                case 1: perturbation[key] = Rational(0); break;
                case 2: perturbation[key] = Rational(-value); break;
            }
        }
        // A fresh sub-threshold coefficient somewhere off the spectrum.
        for (int attempt = 0; attempt < 32; ++attempt) {
            DyadicCube cube = rng.cube(dim, 4);
            int index = rng.int_in(1, (1 << dim) - 1);
            if (f.coefficient(cube, index) != 0) continue;
            perturbation[HaarKey{cube, index}] = threshold / 4;
            break;
        }
        bool holds = check_branch_greedy(f, params, perturbation);
        simple_record(report, lines, "BRANCH", LemmaId::BRANCH, holds,
                      expansion_to_json(f).dump());
    }
    return finalize(std::move(report), std::move(lines));
}

SuiteReport run_roundtrip(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport report{"roundtrip", {}, {}};
    std::map<std::string, SuiteLine> lines;
    const int level = 3;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        int dim = 1 + static_cast<int>(trial % 3);
        InstanceRng rng(trial_seed(seed, trial));
        std::size_t cells = std::size_t{1}
                            << (static_cast<std::size_t>(level) * static_cast<std::size_t>(dim));
        std::vector<Rational> grid;
        grid.reserve(cells);
        for (std::size_t k = 0; k < cells; ++k) {
            grid.push_back(rng.coin() ? rng.nonzero_rational(4, 6) : Rational(0));
        }
        HaarExpansion f = analysis(grid, dim, level);
        bool grid_match = to_grid(f, level) == grid;
        simple_record(report, lines, "ROUNDTRIP-grid", LemmaId::ROUNDTRIP, grid_match,
                      grid_to_json(grid, dim, level).dump());

        HaarExpansion h = gen_expansion(trial_seed(seed, trial * 5 + 2), dim, level - 1,
                                        rng.int_in(0, 8), 4);
        bool expansion_match = analysis(to_grid(h, level), dim, level) == h;
        simple_record(report, lines, "ROUNDTRIP-expansion", LemmaId::ROUNDTRIP,
                      expansion_match, expansion_to_json(h).dump());
    }
    return finalize(std::move(report), std::move(lines));
}

}  // namespace

std::uint64_t SuiteReport::total_trials() const {
    std::uint64_t total = 0;
    for (const SuiteLine& line : lines) total += line.trials;
    return total;
}

SuiteReport run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed) {
    if (name == "norm-lemmas") return run_norm_lemmas(trials, seed);
    if (name == "mgcr") return run_mgcr(trials, seed);
    if (name == "key1") return run_key1(trials, seed);
    if (name == "key2") return run_key2(trials, seed);
    if (name == "symmetry") return run_symmetry(trials, seed);
    if (name == "bound") return run_bound(trials, seed);
    if (name == "branch") return run_branch(trials, seed);
    if (name == "roundtrip") return run_roundtrip(trials, seed);
    if (name == "all") {
        SuiteReport combined{"all", {}, {}};
        for (const std::string& sub : suite_names()) {
            if (sub == "all") continue;
            SuiteReport part = run_suite(sub, trials, seed);
            for (SuiteLine& line : part.lines) combined.lines.push_back(std::move(line));
            for (LemmaVerdict& failure : part.failures) {
                combined.failures.push_back(std::move(failure));
            }
        }
        return combined;
    }
    throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace haargreedy
