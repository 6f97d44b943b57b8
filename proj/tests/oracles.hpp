// Test-only oracles: independent routes to the quantities the library
// computes, used to freeze expected values. They deliberately avoid the
// implementation paths they check.
#pragma once

#include <algorithm>
#include <vector>

#include "haargreedy/dyadic.hpp"
#include "haargreedy/haar.hpp"

namespace haargreedy::oracles {

/// All level-`level` cells of [0,1)^d in row-major order.
inline std::vector<DyadicCube> all_cells(int dim, int level) {
    std::vector<DyadicCube> cells;
    std::size_t count = std::size_t{1} << (static_cast<std::size_t>(level) * dim);
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::vector<std::int64_t> coords(static_cast<std::size_t>(dim), 0);
        std::size_t rest = flat;
        for (int axis = dim - 1; axis >= 0; --axis) {
            coords[static_cast<std::size_t>(axis)] =
                static_cast<std::int64_t>(rest & ((std::size_t{1} << level) - 1));
            rest >>= level;
        }
        cells.emplace_back(dim, level, std::move(coords));
    }
    return cells;
}

/// Riemann sum of |f| over a grid strictly finer than the spectrum.
inline Rational grid_norm(const HaarExpansion& f, int level) {
    Rational total(0);
    Rational cell_measure = pow2(-static_cast<long>(level) * f.dim());
    for (const DyadicCube& cell : all_cells(f.dim(), level)) {
        total += rational_abs(evaluate(f, cell)) * cell_measure;
    }
    return total;
}

/// Haar coefficient through brute-force grid integration at a fine level.
inline Rational grid_coefficient(const HaarExpansion& f, const DyadicCube& cube,
                                 int index, int level) {
    Rational total(0);
    Rational cell_measure = pow2(-static_cast<long>(level) * f.dim());
    for (const DyadicCube& cell : all_cells(f.dim(), level)) {
        Rational h = haar_value(cube, index, cell);
        if (h == 0) continue;
        total += evaluate(f, cell) * h * cell_measure;
    }
    return cube.measure() * total;
}

/// Pointwise grid-level copy of f from one successor of delta to the others.
inline std::vector<Rational> grid_copy(const HaarExpansion& f, const DyadicCube& delta,
                                       int successor_position, int level) {
    std::vector<DyadicCube> successors = delta.immediate_successors();
    const DyadicCube& source =
        successors[static_cast<std::size_t>(successor_position - 1)];
    std::vector<DyadicCube> cells = all_cells(f.dim(), level);
    std::vector<Rational> values;
    values.reserve(cells.size());
    for (const DyadicCube& cell : cells) {
        const DyadicCube* home = nullptr;
        for (const DyadicCube& succ : successors) {
            if (succ.contains(cell)) home = &succ;
        }
        if (home == nullptr || *home == source) {
            values.push_back(evaluate(f, cell));
            continue;
        }
        // Translate back into the source successor.
        std::vector<std::int64_t> coords(cell.coords());
        int drop = cell.level() - source.level();
        for (int axis = 0; axis < f.dim(); ++axis) {
            auto a = static_cast<std::size_t>(axis);
            coords[a] += (source.coords()[a] - home->coords()[a]) << drop;
        }
        values.push_back(evaluate(f, DyadicCube(f.dim(), cell.level(), coords)));
    }
    return values;
}

/// All set partitions of `items` (Bell-number many; keep inputs tiny).
inline std::vector<std::vector<std::vector<DyadicCube>>> all_partitions(
    const std::vector<DyadicCube>& items) {
    std::vector<std::vector<std::vector<DyadicCube>>> out;
    if (items.empty()) return out;
    if (items.size() == 1) {
        out.push_back({{items[0]}});
        return out;
    }
    std::vector<DyadicCube> rest(items.begin() + 1, items.end());
    for (auto& partial : all_partitions(rest)) {
        for (std::size_t block = 0; block < partial.size(); ++block) {
            auto extended = partial;
            extended[block].push_back(items[0]);
            out.push_back(std::move(extended));
        }
        auto fresh = partial;
        fresh.push_back({items[0]});
        out.push_back(std::move(fresh));
    }
    return out;
}

/// The MGCR by exhaustive search over all partitions: the unique partition
/// whose blocks are generalized chains with pairwise non-chain unions.
inline std::vector<CubeSet> exhaustive_mgcr(const std::vector<DyadicCube>& cubes) {
    std::vector<CubeSet> found;
    for (auto& partition : all_partitions(cubes)) {
        bool valid = true;
        std::vector<CubeSet> blocks;
        for (auto& block : partition) {
            CubeSet set(block.begin(), block.end());
            if (!is_generalized_chain(set)) {
                valid = false;
                break;
            }
            blocks.push_back(std::move(set));
        }
        if (!valid) continue;
        for (std::size_t a = 0; a < blocks.size() && valid; ++a) {
            for (std::size_t b = a + 1; b < blocks.size() && valid; ++b) {
                CubeSet united = blocks[a];
                united.insert(blocks[b].begin(), blocks[b].end());
                if (is_generalized_chain(united)) valid = false;
            }
        }
        if (!valid) continue;
        if (!found.empty()) throw std::logic_error("MGCR is not unique on this input");
        std::sort(blocks.begin(), blocks.end(), [](const CubeSet& x, const CubeSet& y) {
            return cube_precedes(*x.begin(), *y.begin());
        });
        found = std::move(blocks);
    }
    if (found.empty()) throw std::logic_error("no MGCR found by exhaustive search");
    return found;
}

}  // namespace haargreedy::oracles
