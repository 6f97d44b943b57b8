#include "haargreedy/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace haargreedy {

namespace {

// coord >> k for 0 <= coord < 2^63 and arbitrary k >= 0.
std::int64_t shift_down(std::int64_t coord, int k) {
    return k >= 63 ? 0 : coord >> k;
}

void require_same_dim(const DyadicCube& a, const DyadicCube& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch: " + a.to_string() + " vs " +
                                    b.to_string());
    }
}

}  // namespace

DyadicCube::DyadicCube(int dim, int level, std::vector<std::int64_t> coords)
    : dim_(dim), level_(level), coords_(std::move(coords)) {
    if (dim_ < 1) throw std::invalid_argument("cube dimension must be positive");
    if (level_ < 0) throw std::invalid_argument("cube level must be non-negative");
    if (static_cast<int>(coords_.size()) != dim_) {
        throw std::invalid_argument("coordinate count does not match dimension");
    }
    for (std::int64_t c : coords_) {
        if (c < 0 || (level_ < 63 && c >= (std::int64_t{1} << level_))) {
            throw std::invalid_argument("coordinate out of range for level " +
                                        std::to_string(level_));
        }
    }
}

DyadicCube DyadicCube::root(int dim) {
    return DyadicCube(dim, 0, std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0));
}

DyadicCube DyadicCube::parent() const {
    if (is_root()) throw std::invalid_argument("the root cube has no parent");
    std::vector<std::int64_t> up(coords_);
    for (auto& c : up) c >>= 1;
    return DyadicCube(dim_, level_ - 1, std::move(up));
}

std::vector<DyadicCube> DyadicCube::immediate_successors() const {
    const int count = 1 << dim_;
    std::vector<DyadicCube> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int pattern = 0; pattern < count; ++pattern) {
        std::vector<std::int64_t> child(coords_);
        for (int axis = 0; axis < dim_; ++axis) {
            // Axis k (1-based) occupies bit d-k, so lexicographic coordinate
            // order coincides with numeric order of the pattern.
            child[static_cast<std::size_t>(axis)] =
                2 * child[static_cast<std::size_t>(axis)] +
                ((pattern >> (dim_ - 1 - axis)) & 1);
        }
        out.emplace_back(dim_, level_ + 1, std::move(child));
    }
    return out;
}

DyadicCube DyadicCube::successor(int position) const {
    if (position < 1 || position > (1 << dim_)) {
        throw std::invalid_argument("successor index must lie in 1..2^d");
    }
    return immediate_successors()[static_cast<std::size_t>(position - 1)];
}

bool DyadicCube::contains(const DyadicCube& other) const {
    require_same_dim(*this, other);
    if (other.level_ < level_) return false;
    const int drop = other.level_ - level_;
    for (int axis = 0; axis < dim_; ++axis) {
        if (shift_down(other.coords_[static_cast<std::size_t>(axis)], drop) !=
            coords_[static_cast<std::size_t>(axis)]) {
            return false;
        }
    }
    return true;
}

bool DyadicCube::disjoint_from(const DyadicCube& other) const {
    return !contains(other) && !other.contains(*this);
}

Rational DyadicCube::lower(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
    return Rational(coords_[static_cast<std::size_t>(axis)]) * pow2(-level_);
}

std::string DyadicCube::to_string() const {
    std::string out = "d" + std::to_string(dim_) + ":n" + std::to_string(level_) + ":(";
    for (int axis = 0; axis < dim_; ++axis) {
        if (axis > 0) out.push_back(',');
        out += std::to_string(coords_[static_cast<std::size_t>(axis)]);
    }
    out.push_back(')');
    return out;
}

DyadicCube DyadicCube::parse(const std::string& text) {
    const auto fail = [&]() -> DyadicCube {
        throw std::invalid_argument("malformed cube literal: " + text);
    };
    if (text.size() < 8 || text[0] != 'd') return fail();
    std::size_t colon1 = text.find(':');
    std::size_t colon2 = colon1 == std::string::npos ? std::string::npos
                                                     : text.find(':', colon1 + 1);
    if (colon2 == std::string::npos) return fail();
    if (text[colon1 + 1] != 'n') return fail();
    if (text[colon2 + 1] != '(' || text.back() != ')') return fail();
    try {
        int dim = std::stoi(text.substr(1, colon1 - 1));
        int level = std::stoi(text.substr(colon1 + 2, colon2 - colon1 - 2));
        std::vector<std::int64_t> coords;
        std::string body = text.substr(colon2 + 2, text.size() - colon2 - 3);
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            std::string token = body.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            coords.push_back(std::stoll(token));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return DyadicCube(dim, level, std::move(coords));
    } catch (const std::invalid_argument&) {
        return fail();
    } catch (const std::out_of_range&) {
        return fail();
    }
}

bool interval_precedes(const Rational& a1, const Rational& len1, const Rational& a2,
                       const Rational& len2) {
    if (len1 != len2) return len1 > len2;
    return a1 < a2;
}

bool cube_precedes(const DyadicCube& a, const DyadicCube& b) {
    require_same_dim(a, b);
    // Axis-1 length decides whenever levels differ; per-axis interval order
    // reduces to (level, coords) lexicographic comparison.
    if (a.level() != b.level()) return a.level() < b.level();
    return a.coords() < b.coords();
}

bool index_precedes(const DyadicCube& cube_a, int index_a, const DyadicCube& cube_b,
                    int index_b) {
    if (cube_a != cube_b) return cube_precedes(cube_a, cube_b);
    return index_a < index_b;
}

std::vector<DyadicCube> chain(const DyadicCube& outer, const DyadicCube& inner) {
    if (!outer.contains(inner)) {
        throw std::invalid_argument("chain endpoints not nested: " + inner.to_string() +
                                    " not inside " + outer.to_string());
    }
    std::vector<DyadicCube> down;
    DyadicCube walk = inner;
    while (walk != outer) {
        down.push_back(walk);
        walk = walk.parent();
    }
    down.push_back(outer);
    std::reverse(down.begin(), down.end());
    return down;
}

bool is_generalized_chain(const CubeSet& cubes) {
    if (cubes.empty()) return false;
    // The cube order puts shallower cubes first, so the candidate maximal cube
    // is the first element; it must contain everything.
    const DyadicCube& top = *cubes.begin();
    for (const DyadicCube& cube : cubes) {
        if (!top.contains(cube)) return false;
        for (const DyadicCube& link : chain(top, cube)) {
            if (!cubes.contains(link)) return false;
        }
    }
    return true;
}

GeneralizedChain make_generalized_chain(const CubeSet& cubes) {
    if (!is_generalized_chain(cubes)) {
        throw std::invalid_argument("cube set is not a generalized chain");
    }
    const DyadicCube top = *cubes.begin();
    std::optional<DyadicCube> father;
    if (!top.is_root()) father = top.parent();
    return GeneralizedChain{cubes, top, father};
}

bool chains_mergeable(const GeneralizedChain& a, const GeneralizedChain& b) {
    for (const DyadicCube& cube : a.cubes) {
        if (b.cubes.contains(cube)) return true;
    }
    if (a.father && b.cubes.contains(*a.father)) return true;
    if (b.father && a.cubes.contains(*b.father)) return true;
    return false;
}

CubeSet sons(const DyadicCube& cube, const CubeSet& set) {
    if (!set.contains(cube)) {
        throw std::invalid_argument("sons: cube not a member of the set");
    }
    CubeSet out;
    for (const DyadicCube& candidate : set) {
        if (candidate == cube || !cube.contains(candidate)) continue;
        bool clean = true;
        DyadicCube walk = candidate.parent();
        while (walk != cube) {
            if (set.contains(walk)) {
                clean = false;
                break;
            }
            walk = walk.parent();
        }
        if (clean) out.insert(candidate);
    }
    return out;
}

CubeSet sons_of_set(const CubeSet& subset, const CubeSet& set) {
    CubeSet out;
    for (const DyadicCube& cube : subset) {
        CubeSet one = sons(cube, set);
        out.insert(one.begin(), one.end());
    }
    return out;
}

CubeSet iterated_sons(const DyadicCube& cube, const CubeSet& set, int k) {
    CubeSet current{cube};
    for (int step = 0; step < k; ++step) {
        current = sons_of_set(current, set);
        if (current.empty()) break;
    }
    return current;
}

CubeSetAnalysis analyze_cube_set(const std::vector<DyadicCube>& cubes) {
    CubeSet set(cubes.begin(), cubes.end());
    return analyze_cube_set(set);
}

CubeSetAnalysis analyze_cube_set(const CubeSet& cubes) {
    if (cubes.empty()) throw std::invalid_argument("MGCR of an empty set");

    // Union-merge fixpoint from singletons, seeded in cube order. Uniqueness
    // of the MGCR makes the strategy irrelevant to the result.
    std::vector<GeneralizedChain> chains;
    chains.reserve(cubes.size());
    for (const DyadicCube& cube : cubes) {
        chains.push_back(make_generalized_chain(CubeSet{cube}));
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

    CubeSetAnalysis analysis;
    analysis.mgcr = std::move(chains);
    for (const DyadicCube& cube : cubes) {
        switch (sons(cube, cubes).size()) {
            case 0: analysis.lambda0.insert(cube); break;
            case 1: analysis.lambda1.insert(cube); break;
            default: analysis.lambda2.insert(cube); break;
        }
    }
    return analysis;
}

}  // namespace haargreedy
