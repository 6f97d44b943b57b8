#include "haargreedy/constructions.hpp"

#include <stdexcept>

namespace haargreedy {

namespace {

void require_unit_interval(const Rational& value, const char* name) {
    if (!(value > 0 && value < 1)) {
        throw std::invalid_argument(std::string(name) + " must lie strictly in (0,1)");
    }
}

}  // namespace

std::vector<DyadicCube> nested_corner_chain(int depth) {
    if (depth < 0) throw std::invalid_argument("chain depth must be non-negative");
    std::vector<DyadicCube> out;
    out.reserve(static_cast<std::size_t>(depth) + 1);
    for (int n = 0; n <= depth; ++n) {
        out.emplace_back(2, n, std::vector<std::int64_t>{0, 0});
    }
    return out;
}

HaarExpansion build_f_n(int n) {
    if (n < 1) throw std::invalid_argument("f_N requires N >= 1");
    HaarExpansion f(2);
    f.set_constant(1);
    for (const DyadicCube& corner : nested_corner_chain(n - 1)) {
        for (int j = 1; j <= 3; ++j) f.set_coefficient(corner, j, 1);
    }
    return f;
}

HaarExpansion build_f_n_eps(int n, const Rational& eps) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("f_N^eps requires even N >= 2");
    require_unit_interval(eps, "eps");
    HaarExpansion f(2);
    f.set_constant(1);
    Rational damped = 1 - eps;
    for (const DyadicCube& corner : nested_corner_chain(n - 1)) {
        const Rational& value = corner.level() % 2 == 0 ? damped : Rational(1);
        for (int j = 1; j <= 3; ++j) f.set_coefficient(corner, j, value);
    }
    return f;
}

HaarExpansion build_g_n_eps(int n, const Rational& eps, const Rational& t) {
    if (n < 1) throw std::invalid_argument("g_N^eps requires N >= 1");
    require_unit_interval(eps, "eps");
    require_unit_interval(t, "t");
    HaarExpansion g(2);
    g.set_constant(t);
    Rational damped = t * (1 - eps);
    std::vector<DyadicCube> corners = nested_corner_chain(n);
    for (int level = 0; level < n; ++level) {
        const DyadicCube& corner = corners[static_cast<std::size_t>(level)];
        g.set_coefficient(corner, 1, t);
        g.set_coefficient(corner, 2, t);
        g.set_coefficient(corner, 3, damped);
    }
    g.set_coefficient(corners.back(), 1, 1);
    return g;
}

namespace {

// Descends the dyadic tree of [0,1); `prefix` is the value of the first
// `level` factors on the current interval.
void rademacher_descend(HaarExpansion& f, const DyadicCube& interval,
                        const Rational& prefix, int depth, const Rational& u) {
    if (interval.level() == depth) return;
    // c_I = u * mu(I) * prod_{n <= level(I)} (1 + u r_n(I)).
    f.set_coefficient(interval, 1, u * interval.measure() * prefix);
    std::vector<DyadicCube> halves = interval.immediate_successors();
    rademacher_descend(f, halves[0], prefix * (1 + u), depth, u);
    rademacher_descend(f, halves[1], prefix * (1 - u), depth, u);
}

}  // namespace

HaarExpansion build_rademacher_product(int n, const Rational& u) {
    if (n < 1) throw std::invalid_argument("the Rademacher product requires N >= 1");
    require_unit_interval(u, "u");
    HaarExpansion f(1);
    f.set_constant(1);
    rademacher_descend(f, DyadicCube::root(1), Rational(1), n, u);
    return f;
}

HaarExpansion build_rademacher_partial_sum(int n, const Rational& u) {
    if (n < 1) throw std::invalid_argument("the Rademacher sum requires N >= 1");
    require_unit_interval(u, "u");
    HaarExpansion f(1);
    f.set_constant(1);
    // r_n = sum over level-(n-1) intervals I of mu(I) h_I, so every interval
    // above level N carries the coefficient u * mu(I).
    std::vector<DyadicCube> current{DyadicCube::root(1)};
    for (int level = 0; level < n; ++level) {
        std::vector<DyadicCube> next;
        next.reserve(current.size() * 2);
        for (const DyadicCube& interval : current) {
            f.set_coefficient(interval, 1, u * interval.measure());
            if (level + 1 < n) {
                for (DyadicCube& child : interval.immediate_successors()) {
                    next.push_back(std::move(child));
                }
            }
        }
        current = std::move(next);
    }
    return f;
}

Rational khinchine_l1(int n) {
    if (n < 1) throw std::invalid_argument("khinchine_l1 requires N >= 1");
    mpz_class total(0);
    mpz_class binom;
    for (int j = 0; j <= n; ++j) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(j));
        long deviation = n - 2L * j;
        total += binom * mpz_class(deviation < 0 ? -deviation : deviation);
    }
    return Rational(total) * pow2(-n);
}

Rational walsh_inner_product(const HaarExpansion& f, const std::set<int>& indices) {
    if (f.dim() != 1) throw std::invalid_argument("Walsh products live on d = 1");
    int depth = f.max_spectrum_level() + 1;
    for (int index : indices) {
        if (index < 1) throw std::invalid_argument("Walsh indices must be >= 1");
        depth = std::max(depth, index);
    }
    // w_A is constant on level-depth intervals: its value is the sign product
    // of the bits selecting left/right halves at the scales in A.
    Rational total(0);
    std::size_t cells = std::size_t{1} << depth;
    Rational cell_measure = pow2(-depth);
    for (std::size_t k = 0; k < cells; ++k) {
        DyadicCube cell(1, depth, {static_cast<std::int64_t>(k)});
        int sign = 1;
        for (int index : indices) {
            if ((k >> (depth - index)) & 1U) sign = -sign;
        }
        Rational value = evaluate(f, cell);
        total += (sign > 0 ? value : Rational(-value)) * cell_measure;
    }
    return total;
}

}  // namespace haargreedy
