#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "haargreedy/rational.hpp"

namespace haargreedy {

/// A dyadic cube prod_i [k_i 2^-n, (k_i+1) 2^-n) inside [0,1)^d, identified by
/// dimension, level n >= 0 and integer coordinates 0 <= k_i < 2^n. Level 0 is
/// the root cube [0,1)^d. Immutable value type.
class DyadicCube {
public:
    DyadicCube(int dim, int level, std::vector<std::int64_t> coords);

    static DyadicCube root(int dim);

    int dim() const { return dim_; }
    int level() const { return level_; }
    const std::vector<std::int64_t>& coords() const { return coords_; }

    bool is_root() const { return level_ == 0; }
    DyadicCube parent() const;

    /// The 2^d level-(n+1) subcubes, in lexicographic order by coordinates.
    std::vector<DyadicCube> immediate_successors() const;

    /// 1-based successor by lexicographic position (1..2^d).
    DyadicCube successor(int position) const;

    /// Set containment: *this contains other (other subseteq *this).
    bool contains(const DyadicCube& other) const;
    bool disjoint_from(const DyadicCube& other) const;

    Rational side() const { return pow2(-level_); }
    Rational measure() const { return pow2(-static_cast<long>(level_) * dim_); }
    Rational lower(int axis) const;  // left endpoint on the given 0-based axis

    /// Text form "d{dim}:n{level}:(k1,...,kd)".
    std::string to_string() const;
    static DyadicCube parse(const std::string& text);

    bool operator==(const DyadicCube& other) const {
        return dim_ == other.dim_ && level_ == other.level_ && coords_ == other.coords_;
    }
    bool operator!=(const DyadicCube& other) const { return !(*this == other); }

private:
    int dim_;
    int level_;
    std::vector<std::int64_t> coords_;
};

/// The interval order: [a1,a1+len1) precedes [a2,a2+len2) iff len1 > len2, or
/// equal lengths and a1 < a2. Strict (irreflexive).
bool interval_precedes(const Rational& a1, const Rational& len1, const Rational& a2,
                       const Rational& len2);

/// Lexicographic extension of the interval order across axes; a strict total
/// order on cubes of equal dimension. Larger cubes come first.
bool cube_precedes(const DyadicCube& a, const DyadicCube& b);

/// (I,i) precedes (J,j) iff I precedes J, or I = J and i < j.
bool index_precedes(const DyadicCube& cube_a, int index_a, const DyadicCube& cube_b,
                    int index_b);

/// std::set/map comparator realizing the cube order.
struct CubeOrder {
    bool operator()(const DyadicCube& a, const DyadicCube& b) const {
        return cube_precedes(a, b);
    }
};

using CubeSet = std::set<DyadicCube, CubeOrder>;

/// All cubes K with inner subseteq K subseteq outer, ordered by decreasing
/// measure (outer first). Throws if inner is not contained in outer.
std::vector<DyadicCube> chain(const DyadicCube& outer, const DyadicCube& inner);

/// A finite cube set closed under chains below a single maximal cube. The
/// father is the smallest cube strictly containing the maximal cube (its
/// parent), absent iff the maximal cube is the root.
struct GeneralizedChain {
    CubeSet cubes;
    DyadicCube maximal_cube;
    std::optional<DyadicCube> father;
};

/// Checks Definition 4.2 directly: a single maximal cube containing every
/// member, with every member's chain to it inside the set.
bool is_generalized_chain(const CubeSet& cubes);

/// Builds a GeneralizedChain from a set already known to satisfy the
/// definition; throws otherwise.
GeneralizedChain make_generalized_chain(const CubeSet& cubes);

/// The union-merge test: two generalized chains merge into one iff they
/// overlap or one's father belongs to the other.
bool chains_mergeable(const GeneralizedChain& a, const GeneralizedChain& b);

/// Sons of I with respect to S: members J strictly inside I whose chain to I
/// meets S only at the endpoints. Throws if I is not a member of S.
CubeSet sons(const DyadicCube& cube, const CubeSet& set);

/// Union of sons over a subset of S.
CubeSet sons_of_set(const CubeSet& subset, const CubeSet& set);

/// k-fold iterated sons of {cube}.
CubeSet iterated_sons(const DyadicCube& cube, const CubeSet& set, int k);

/// MGCR plus the son-count classes of the input set.
struct CubeSetAnalysis {
    std::vector<GeneralizedChain> mgcr;  // sorted by maximal cube in cube order
    CubeSet lambda0;                     // no sons
    CubeSet lambda1;                     // exactly one son
    CubeSet lambda2;                     // two or more sons
};

/// The unique minimal generalized chain representation of a finite nonempty
/// cube set, with the Lambda classes. Throws on an empty input.
CubeSetAnalysis analyze_cube_set(const std::vector<DyadicCube>& cubes);
CubeSetAnalysis analyze_cube_set(const CubeSet& cubes);

}  // namespace haargreedy
