#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "haargreedy/dyadic.hpp"
#include "haargreedy/rational.hpp"

namespace haargreedy {

/// A (cube, Haar index) pair; the index runs over 1..2^d-1. Index 0 is
/// reserved for the constant function in pair comparisons.
struct HaarKey {
    DyadicCube cube;
    int index;

    bool operator==(const HaarKey& other) const {
        return index == other.index && cube == other.cube;
    }
};

struct HaarKeyOrder {
    bool operator()(const HaarKey& a, const HaarKey& b) const {
        return index_precedes(a.cube, a.index, b.cube, b.index);
    }
};

using CoefficientMap = std::map<HaarKey, Rational, HaarKeyOrder>;

/// The constant value of h_I^{(j)} on a cell strictly finer than I: zero off
/// I, otherwise +-1/mu(I) with the sign given by the per-axis half pattern of
/// the binary digits of j. Throws if the cell is not strictly finer than I
/// and not disjoint from it.
Rational haar_value(const DyadicCube& cube, int index, const DyadicCube& cell);

/// Sign (+1/-1) of h_I^{(j)} on the 1-based immediate successor at the given
/// lexicographic position.
int haar_sign(int dim, int index, int successor_position);

/// A finitely supported multivariate Haar expansion: a constant term plus a
/// finite map of nonzero coefficients. The stored map is exactly the spectrum.
class HaarExpansion {
public:
    explicit HaarExpansion(int dim);

    int dim() const { return dim_; }
    const Rational& constant() const { return constant_; }
    void set_constant(Rational value) { constant_ = std::move(value); }

    const CoefficientMap& coefficients() const { return coeffs_; }

    /// Stored coefficient, zero when the pair is outside the spectrum.
    Rational coefficient(const DyadicCube& cube, int index) const;

    /// Sets a coefficient; a zero value erases the pair from the spectrum.
    void set_coefficient(const DyadicCube& cube, int index, Rational value);
    void add_coefficient(const DyadicCube& cube, int index, const Rational& delta);

    CubeSet cube_spectrum() const;
    std::size_t spectrum_size() const { return coeffs_.size(); }
    bool spectrum_empty() const { return coeffs_.empty(); }
    bool is_zero() const { return constant_ == 0 && coeffs_.empty(); }
    int max_spectrum_level() const;  // -1 when the spectrum is empty

    HaarExpansion& operator+=(const HaarExpansion& other);
    HaarExpansion& operator-=(const HaarExpansion& other);
    HaarExpansion& operator*=(const Rational& scalar);
    friend HaarExpansion operator+(HaarExpansion a, const HaarExpansion& b) {
        return a += b;
    }
    friend HaarExpansion operator-(HaarExpansion a, const HaarExpansion& b) {
        return a -= b;
    }
    friend HaarExpansion operator*(const Rational& scalar, HaarExpansion f) {
        return f *= scalar;
    }

    bool operator==(const HaarExpansion& other) const {
        return dim_ == other.dim_ && constant_ == other.constant_ &&
               coeffs_ == other.coeffs_;
    }

private:
    int dim_;
    Rational constant_;
    CoefficientMap coeffs_;
};

/// Value on `cell` of the constant term plus every spectrum term living on a
/// strict ancestor of `cell`; this is the value of f on cell whenever no
/// spectrum cube is contained in cell.
Rational coarse_value(const HaarExpansion& f, const DyadicCube& cell);

/// Exact integral of f over a cube (terms on cubes inside it are mean-zero).
Rational integral(const HaarExpansion& f, const DyadicCube& cube);
Rational integral(const HaarExpansion& f);

/// The constant value of f on a cell; throws if f is not constant there.
Rational evaluate(const HaarExpansion& f, const DyadicCube& cell);

/// Haar coefficient c_I^{(j)}(f) recomputed through the defining integral
/// mu(I) int_I f h_I^{(j)}; equals the stored coefficient by biorthogonality
/// and exists as an independent route for cross-checking.
Rational coefficient_by_integration(const HaarExpansion& f, const DyadicCube& cube,
                                    int index);

/// Row-major grid of values on the 2^{Ld} level-L cells (axis 1 slowest).
std::vector<Rational> to_grid(const HaarExpansion& f, int level);

/// The unique expansion with spectrum at levels < L reproducing the grid.
HaarExpansion analysis(const std::vector<Rational>& grid, int dim, int level);

/// Integration region: the whole domain, one cube, or a difference I \ K.
class Region {
public:
    static Region whole(int dim);
    static Region cube(DyadicCube cube);
    static Region difference(DyadicCube outer, DyadicCube inner);

    const DyadicCube& outer() const { return outer_; }
    const std::optional<DyadicCube>& inner() const { return inner_; }

private:
    Region(DyadicCube outer, std::optional<DyadicCube> inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {}
    DyadicCube outer_;
    std::optional<DyadicCube> inner_;
};

/// Exact L1 norm of f over a region, by recursive descent that only branches
/// into cells meeting the spectrum.
Rational norm(const HaarExpansion& f, const Region& region);
Rational norm(const HaarExpansion& f);
Rational norm_on_cube(const HaarExpansion& f, const DyadicCube& cube);

/// P_I f: f with every coefficient on cubes inside I removed; constant on I
/// and identical to f outside of it.
HaarExpansion project_outside(const HaarExpansion& f, const DyadicCube& cube);

/// The order-first (cube, index) pair attaining the maximum absolute
/// coefficient; with include_constant a nonzero constant competes as the pair
/// (root, 0), which precedes every Haar pair. Throws on identically zero input.
std::pair<HaarKey, Rational> max_coefficient(const HaarExpansion& f,
                                             bool include_constant);

}  // namespace haargreedy
