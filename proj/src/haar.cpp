#include "haargreedy/haar.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace haargreedy {

namespace {

void require_index(int dim, int index) {
    if (index < 1 || index >= (1 << dim)) {
        throw std::invalid_argument("Haar index must lie in 1..2^d-1, got " +
                                    std::to_string(index));
    }
}

// 1-based lexicographic position of the immediate successor of `cube`
// containing `cell` (cell strictly finer, contained in cube).
int successor_position(const DyadicCube& cube, const DyadicCube& cell) {
    const int drop = cell.level() - cube.level() - 1;
    int pattern = 0;
    for (int axis = 0; axis < cube.dim(); ++axis) {
        std::int64_t shifted = drop >= 63 ? 0 : cell.coords()[static_cast<std::size_t>(axis)] >> drop;
        pattern = (pattern << 1) | static_cast<int>(shifted & 1);
    }
    return pattern + 1;
}

}  // namespace

int haar_sign(int dim, int index, int successor_position) {
    require_index(dim, index);
    if (successor_position < 1 || successor_position > (1 << dim)) {
        throw std::invalid_argument("successor position out of range");
    }
    // Axis k contributes a flip iff epsilon_k = 1 and the cell sits in the
    // right half on that axis; both are bit d-k of their patterns.
    int overlap = index & (successor_position - 1);
    return (std::popcount(static_cast<unsigned>(overlap)) % 2 == 0) ? 1 : -1;
}

Rational haar_value(const DyadicCube& cube, int index, const DyadicCube& cell) {
    require_index(cube.dim(), index);
    if (cell.dim() != cube.dim()) throw std::invalid_argument("dimension mismatch");
    if (cube.disjoint_from(cell)) return Rational(0);
    if (!cube.contains(cell) || cell.level() <= cube.level()) {
        throw std::invalid_argument("cell is not strictly finer than the Haar cube");
    }
    Rational magnitude = 1 / cube.measure();
    return haar_sign(cube.dim(), index, successor_position(cube, cell)) == 1
               ? magnitude
               : Rational(-magnitude);
}

HaarExpansion::HaarExpansion(int dim) : dim_(dim), constant_(0) {
    if (dim < 1) throw std::invalid_argument("expansion dimension must be positive");
}

Rational HaarExpansion::coefficient(const DyadicCube& cube, int index) const {
    auto it = coeffs_.find(HaarKey{cube, index});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void HaarExpansion::set_coefficient(const DyadicCube& cube, int index, Rational value) {
    require_index(dim_, index);
    if (cube.dim() != dim_) throw std::invalid_argument("dimension mismatch");
    HaarKey key{cube, index};
    if (value == 0) {
        coeffs_.erase(key);
    } else {
        coeffs_.insert_or_assign(key, std::move(value));
    }
}

void HaarExpansion::add_coefficient(const DyadicCube& cube, int index,
                                    const Rational& delta) {
    if (delta == 0) return;
    set_coefficient(cube, index, coefficient(cube, index) + delta);
}

CubeSet HaarExpansion::cube_spectrum() const {
    CubeSet out;
    for (const auto& [key, value] : coeffs_) out.insert(key.cube);
    return out;
}

int HaarExpansion::max_spectrum_level() const {
    int level = -1;
    for (const auto& [key, value] : coeffs_) level = std::max(level, key.cube.level());
    return level;
}

HaarExpansion& HaarExpansion::operator+=(const HaarExpansion& other) {
    if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
    constant_ += other.constant_;
    for (const auto& [key, value] : other.coeffs_) {
        add_coefficient(key.cube, key.index, value);
    }
    return *this;
}

HaarExpansion& HaarExpansion::operator-=(const HaarExpansion& other) {
    if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
    constant_ -= other.constant_;
    for (const auto& [key, value] : other.coeffs_) {
        add_coefficient(key.cube, key.index, -value);
    }
    return *this;
}

HaarExpansion& HaarExpansion::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        constant_ = 0;
        coeffs_.clear();
        return *this;
    }
    constant_ *= scalar;
    for (auto& [key, value] : coeffs_) value *= scalar;
    return *this;
}

Rational coarse_value(const HaarExpansion& f, const DyadicCube& cell) {
    Rational value = f.constant();
    if (cell.is_root()) return value;
    // Walk the ancestor chain; only spectrum terms on strict ancestors of the
    // cell contribute a constant value there.
    DyadicCube walk = cell;
    while (!walk.is_root()) {
        DyadicCube up = walk.parent();
        for (int index = 1; index < (1 << f.dim()); ++index) {
            Rational c = f.coefficient(up, index);
            if (c != 0) value += c * haar_value(up, index, cell);
        }
        walk = up;
    }
    return value;
}

Rational integral(const HaarExpansion& f, const DyadicCube& cube) {
    return coarse_value(f, cube) * cube.measure();
}

Rational integral(const HaarExpansion& f) { return f.constant(); }

Rational evaluate(const HaarExpansion& f, const DyadicCube& cell) {
    if (cell.dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
    for (const auto& [key, value] : f.coefficients()) {
        if (cell.contains(key.cube)) {
            throw std::invalid_argument("cell too coarse: f is not constant on " +
                                        cell.to_string());
        }
    }
    return coarse_value(f, cell);
}

Rational coefficient_by_integration(const HaarExpansion& f, const DyadicCube& cube,
                                    int index) {
    require_index(f.dim(), index);
    // c = mu(I) int_I f h = sum over successors of sign * int_succ f, and the
    // integral over a successor only sees terms on its ancestors.
    Rational total(0);
    int position = 1;
    for (const DyadicCube& succ : cube.immediate_successors()) {
        Rational part = integral(f, succ);
        if (haar_sign(cube.dim(), index, position) < 0) part = -part;
        total += part;
        ++position;
    }
    return total;
}

namespace {

// Recursive norm with the spectrum cubes contained in the current cell passed
// down; cells with an empty slice are constant.
Rational norm_descend(const HaarExpansion& f, const DyadicCube& cell,
                      const Rational& value, const std::vector<DyadicCube>& slice) {
    if (slice.empty()) {
        return rational_abs(value) * cell.measure();
    }
    const int arity = 1 << f.dim();
    std::vector<std::vector<DyadicCube>> parts(static_cast<std::size_t>(arity));
    std::vector<DyadicCube> successors = cell.immediate_successors();
    for (const DyadicCube& cube : slice) {
        if (cube == cell) continue;  // handled through the value update below
        for (int b = 0; b < arity; ++b) {
            if (successors[static_cast<std::size_t>(b)].contains(cube)) {
                parts[static_cast<std::size_t>(b)].push_back(cube);
                break;
            }
        }
    }
    Rational total(0);
    for (int b = 0; b < arity; ++b) {
        Rational child_value = value;
        for (int index = 1; index < arity; ++index) {
            Rational c = f.coefficient(cell, index);
            if (c == 0) continue;
            Rational term = c / cell.measure();
            if (haar_sign(f.dim(), index, b + 1) < 0) term = -term;
            child_value += term;
        }
        total += norm_descend(f, successors[static_cast<std::size_t>(b)], child_value,
                              parts[static_cast<std::size_t>(b)]);
    }
    return total;
}

}  // namespace

Rational norm_on_cube(const HaarExpansion& f, const DyadicCube& cube) {
    if (cube.dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<DyadicCube> slice;
    for (const auto& [key, value] : f.coefficients()) {
        if (cube.contains(key.cube) && !(key.cube == cube)) slice.push_back(key.cube);
    }
    std::sort(slice.begin(), slice.end(), CubeOrder{});
    slice.erase(std::unique(slice.begin(), slice.end()), slice.end());
    bool at_cube = false;
    for (int index = 1; index < (1 << f.dim()); ++index) {
        if (f.coefficient(cube, index) != 0) {
            at_cube = true;
            break;
        }
    }
    if (slice.empty() && !at_cube) {
        return rational_abs(coarse_value(f, cube)) * cube.measure();
    }
    if (at_cube) slice.push_back(cube);  // force one level of branching
    return norm_descend(f, cube, coarse_value(f, cube), slice);
}

Rational norm(const HaarExpansion& f, const Region& region) {
    Rational outer = norm_on_cube(f, region.outer());
    if (!region.inner()) return outer;
    return outer - norm_on_cube(f, *region.inner());
}

Rational norm(const HaarExpansion& f) {
    return norm_on_cube(f, DyadicCube::root(f.dim()));
}

Region Region::whole(int dim) { return Region(DyadicCube::root(dim), std::nullopt); }

Region Region::cube(DyadicCube cube) { return Region(std::move(cube), std::nullopt); }

Region Region::difference(DyadicCube outer, DyadicCube inner) {
    if (!outer.contains(inner) || outer == inner) {
        throw std::invalid_argument("difference region requires K strictly inside I");
    }
    return Region(std::move(outer), std::move(inner));
}

HaarExpansion project_outside(const HaarExpansion& f, const DyadicCube& cube) {
    if (cube.dim() != f.dim()) throw std::invalid_argument("dimension mismatch");
    HaarExpansion out(f.dim());
    out.set_constant(f.constant());
    for (const auto& [key, value] : f.coefficients()) {
        if (!cube.contains(key.cube)) out.set_coefficient(key.cube, key.index, value);
    }
    return out;
}

std::pair<HaarKey, Rational> max_coefficient(const HaarExpansion& f,
                                             bool include_constant) {
    std::optional<std::pair<HaarKey, Rational>> best;
    if (include_constant && f.constant() != 0) {
        best = {HaarKey{DyadicCube::root(f.dim()), 0}, f.constant()};
    }
    for (const auto& [key, value] : f.coefficients()) {
        // Map iteration is in pair order, so a strict improvement rule keeps
        // the order-first pair among ties.
        if (!best || rational_abs(value) > rational_abs(best->second)) {
            best = {key, value};
        }
    }
    if (!best) throw std::invalid_argument("max_coefficient of an identically zero input");
    return *best;
}

std::vector<Rational> to_grid(const HaarExpansion& f, int level) {
    if (level < 0) throw std::invalid_argument("grid level must be non-negative");
    if (f.max_spectrum_level() >= level) {
        throw std::invalid_argument("grid level too coarse for the spectrum");
    }
    const int dim = f.dim();
    std::size_t cells = std::size_t{1} << (static_cast<std::size_t>(level) * dim);
    std::vector<Rational> grid;
    grid.reserve(cells);
    std::vector<std::int64_t> coords(static_cast<std::size_t>(dim), 0);
    for (std::size_t flat = 0; flat < cells; ++flat) {
        std::size_t rest = flat;
        for (int axis = dim - 1; axis >= 0; --axis) {
            coords[static_cast<std::size_t>(axis)] =
                static_cast<std::int64_t>(rest & ((std::size_t{1} << level) - 1));
            rest >>= level;
        }
        grid.push_back(evaluate(f, DyadicCube(dim, level, coords)));
    }
    return grid;
}

HaarExpansion analysis(const std::vector<Rational>& grid, int dim, int level) {
    if (dim < 1) throw std::invalid_argument("grid dimension must be positive");
    if (level < 0) throw std::invalid_argument("grid level must be non-negative");
    std::size_t expected = std::size_t{1} << (static_cast<std::size_t>(level) * dim);
    if (grid.size() != expected) {
        throw std::invalid_argument("malformed grid: expected " + std::to_string(expected) +
                                    " values, got " + std::to_string(grid.size()));
    }

    HaarExpansion out(dim);
    // Bottom-up cell averages; at each coarser cube the coefficients are
    // signed combinations of the successor averages.
    std::map<DyadicCube, Rational, CubeOrder> averages;
    std::vector<std::int64_t> coords(static_cast<std::size_t>(dim), 0);
    for (std::size_t flat = 0; flat < expected; ++flat) {
        std::size_t rest = flat;
        for (int axis = dim - 1; axis >= 0; --axis) {
            coords[static_cast<std::size_t>(axis)] =
                static_cast<std::int64_t>(rest & ((std::size_t{1} << level) - 1));
            rest >>= level;
        }
        averages.emplace(DyadicCube(dim, level, coords), grid[flat]);
    }
    const int arity = 1 << dim;
    for (int current = level; current > 0; --current) {
        std::map<DyadicCube, Rational, CubeOrder> coarser;
        for (const auto& [cell, value] : averages) coarser.emplace(cell.parent(), 0);
        for (auto& [up, mean] : coarser) {
            std::vector<Rational> child_means;
            child_means.reserve(static_cast<std::size_t>(arity));
            for (const DyadicCube& succ : up.immediate_successors()) {
                child_means.push_back(averages.at(succ));
                mean += child_means.back();
            }
            mean /= arity;
            for (int index = 1; index < arity; ++index) {
                Rational c(0);
                for (int b = 0; b < arity; ++b) {
                    if (haar_sign(dim, index, b + 1) > 0) {
                        c += child_means[static_cast<std::size_t>(b)];
                    } else {
                        c -= child_means[static_cast<std::size_t>(b)];
                    }
                }
                out.set_coefficient(up, index, c * up.measure() / arity);
            }
        }
        averages = std::move(coarser);
    }
    out.set_constant(averages.at(DyadicCube::root(dim)));
    return out;
}

}  // namespace haargreedy
