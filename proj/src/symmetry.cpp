#include "haargreedy/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

namespace haargreedy {

DyadicCube translate_between_successors(const DyadicCube& cube, const DyadicCube& source,
                                        const DyadicCube& target) {
    if (!source.contains(cube)) {
        throw std::invalid_argument("translate: cube not inside the source successor");
    }
    if (source.level() != target.level()) {
        throw std::invalid_argument("translate: successor levels differ");
    }
    const int drop = cube.level() - source.level();
    if (drop >= 62) throw std::invalid_argument("translate: cube too deep");
    std::vector<std::int64_t> coords(cube.coords());
    for (int axis = 0; axis < cube.dim(); ++axis) {
        auto a = static_cast<std::size_t>(axis);
        coords[a] += (target.coords()[a] - source.coords()[a]) << drop;
    }
    return DyadicCube(cube.dim(), cube.level(), std::move(coords));
}

HaarExpansion copy_from_successor(const HaarExpansion& f, const DyadicCube& delta,
                                  int successor_position) {
    if (delta.dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
    const int arity = 1 << f.dim();
    if (successor_position < 1 || successor_position > arity) {
        throw std::invalid_argument("successor index must lie in 1..2^d");
    }
    std::vector<DyadicCube> successors = delta.immediate_successors();
    const DyadicCube& source = successors[static_cast<std::size_t>(successor_position - 1)];

    Rational old_integral = integral(f, delta);
    Rational new_integral = arity * integral(f, source);

    HaarExpansion out(f.dim());
    out.set_constant(f.constant());
    for (const auto& [key, value] : f.coefficients()) {
        if (!delta.contains(key.cube)) {
            out.set_coefficient(key.cube, key.index, value);
        } else if (source.contains(key.cube)) {
            out.set_coefficient(key.cube, key.index, value);
            for (int b = 0; b < arity; ++b) {
                if (b == successor_position - 1) continue;
                out.set_coefficient(
                    translate_between_successors(key.cube, source,
                                                 successors[static_cast<std::size_t>(b)]),
                    key.index, value);
            }
        }
        // Terms at Delta itself or inside a non-source successor are dropped:
        // equal successor means leave no coefficient at Delta.
    }

    Rational shift = new_integral - old_integral;
    if (shift != 0) {
        out.set_constant(out.constant() + shift);
        DyadicCube walk = delta;
        while (!walk.is_root()) {
            DyadicCube up = walk.parent();
            for (int index = 1; index < arity; ++index) {
                Rational sign_value = haar_value(up, index, delta);
                Rational delta_coeff = up.measure() * sign_value * shift;
                out.add_coefficient(up, index, delta_coeff);
            }
            walk = up;
        }
    }
    return out;
}

PairCopyResult symmetrize_pair(const HaarExpansion& f, const HaarExpansion& g,
                               const DyadicCube& delta) {
    if (f.dim() != g.dim() || delta.dim() != f.dim()) {
        throw std::invalid_argument("dimension mismatch");
    }
    const int arity = 1 << f.dim();
    for (int index = 1; index < arity; ++index) {
        if (f.coefficient(delta, index) != 0 || g.coefficient(delta, index) != 0) {
            throw std::invalid_argument(
                "symmetrize_pair: Delta must be outside both cube-spectra");
        }
    }
    for (const auto& [key, value] : f.coefficients()) {
        if (g.coefficient(key.cube, key.index) != 0) {
            throw std::invalid_argument("symmetrize_pair: spectra are not disjoint");
        }
    }
    HaarExpansion sum = f + g;
    if (sum.spectrum_empty()) {
        throw std::invalid_argument("symmetrize_pair: f+g has empty spectrum");
    }

    Rational f_norm = norm(f);
    Rational sum_norm = norm(sum);

    std::optional<int> strict_choice;
    std::optional<int> fallback_choice;
    std::vector<HaarExpansion> copies_f;
    std::vector<HaarExpansion> copies_g;
    copies_f.reserve(static_cast<std::size_t>(arity));
    copies_g.reserve(static_cast<std::size_t>(arity));
    for (int position = 1; position <= arity; ++position) {
        copies_f.push_back(copy_from_successor(f, delta, position));
        copies_g.push_back(copy_from_successor(g, delta, position));
        const HaarExpansion& cf = copies_f.back();
        const HaarExpansion& cg = copies_g.back();
        Rational copy_sum_norm = norm(cf + cg);
        if (copy_sum_norm == 0) continue;
        if (!fallback_choice) fallback_choice = position;
        if (!strict_choice) {
            // Strict ratio branch, cross-multiplied: ||L_i f|| ||f+g|| >
            // ||f|| ||L_i(f+g)||.
            if (norm(cf) * sum_norm > f_norm * copy_sum_norm) strict_choice = position;
        }
    }
    int chosen = strict_choice ? *strict_choice : fallback_choice.value_or(0);
    if (chosen == 0) {
        throw std::invalid_argument("symmetrize_pair: every copy of f+g vanishes");
    }
    auto idx = static_cast<std::size_t>(chosen - 1);
    return PairCopyResult{std::move(copies_f[idx]), std::move(copies_g[idx]), chosen};
}

int key_lemma_two_failed_hypothesis(const HaarExpansion& f, const HaarExpansion& g,
                                    const Rational& t) {
    const DyadicCube root = DyadicCube::root(f.dim());
    CubeSet f_cubes = f.cube_spectrum();
    CubeSet g_cubes = g.cube_spectrum();
    for (const DyadicCube& cube : f_cubes) {
        if (g_cubes.contains(cube)) return 1;
    }
    if (f_cubes.contains(root) || g_cubes.contains(root)) return 2;

    std::vector<GeneralizedChain> chains;
    if (!f_cubes.empty()) chains = analyze_cube_set(f_cubes).mgcr;
    for (const GeneralizedChain& chain : chains) {
        if (chain.father && g_cubes.contains(*chain.father)) return 3;
    }
    if (rational_abs(g.constant()) > 1) return 4;
    for (const auto& [key, value] : g.coefficients()) {
        if (rational_abs(value) > 1) return 4;
    }
    for (const GeneralizedChain& chain : chains) {
        bool found = false;
        for (const DyadicCube& cube : chain.cubes) {
            for (int index = 1; index < (1 << f.dim()); ++index) {
                if (rational_abs(f.coefficient(cube, index)) >= t) {
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) return 5;
    }
    if (f.constant() != 0) return 6;
    if ((f + g).is_zero()) return 7;
    return 0;
}

SymmetrizedPair symmetrize_mgcr(const HaarExpansion& f, const HaarExpansion& g,
                                const Rational& t) {
    if (int failed = key_lemma_two_failed_hypothesis(f, g, t); failed != 0) {
        throw std::invalid_argument("symmetrize_mgcr: hypothesis " +
                                    std::to_string(failed) + " failed");
    }

    SymmetrizedPair result{f, g, Rational(0), Rational(0), {}};
    Rational sum_norm = norm(f + g);
    result.ratio_before = norm(f) / sum_norm;

    CubeSet f_cubes = f.cube_spectrum();
    if (!f_cubes.empty()) {
        // One application per chain, at the chain's father, fathers ordered by
        // increasing measure (deepest first); ties resolved by the cube order.
        std::vector<DyadicCube> fathers;
        for (const GeneralizedChain& chain : analyze_cube_set(f_cubes).mgcr) {
            fathers.push_back(*chain.father);
        }
        std::sort(fathers.begin(), fathers.end(),
                  [](const DyadicCube& a, const DyadicCube& b) {
                      if (a.level() != b.level()) return a.level() > b.level();
                      return cube_precedes(a, b);
                  });
        for (const DyadicCube& father : fathers) {
            PairCopyResult step = symmetrize_pair(result.f_prime, result.g_prime, father);
            result.f_prime = std::move(step.f_prime);
            result.g_prime = std::move(step.g_prime);
            result.applied.emplace_back(father, step.successor_position);
        }
    }
    result.ratio_after =
        norm(result.f_prime) / norm(result.f_prime + result.g_prime);
    return result;
}

std::pair<Rational, Rational> induction_margin(const HaarExpansion& f_prime,
                                               const HaarExpansion& g_prime,
                                               const DyadicCube& cube, const Rational& t) {
    Rational lhs = norm_on_cube(f_prime, cube);
    Rational rhs = (5 / t + 2) * norm_on_cube(f_prime + g_prime, cube) - 2 * t - 8;
    return {lhs, rhs};
}

}  // namespace haargreedy
