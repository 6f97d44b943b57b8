#pragma once

#include <utility>
#include <vector>

#include "haargreedy/haar.hpp"

namespace haargreedy {

/// L_i(f, Delta): agrees with f off Delta and on the i-th immediate successor,
/// and copies f from that successor to the other 2^d - 1. Implemented by
/// coefficient surgery; coefficients at Delta itself vanish (all successor
/// means become equal) and ancestors absorb the change of the integral over
/// Delta. The successor position is 1-based.
HaarExpansion copy_from_successor(const HaarExpansion& f, const DyadicCube& delta,
                                  int successor_position);

/// Translate a cube contained in the source successor to the image successor.
DyadicCube translate_between_successors(const DyadicCube& cube, const DyadicCube& source,
                                        const DyadicCube& target);

struct PairCopyResult {
    HaarExpansion f_prime;
    HaarExpansion g_prime;
    int successor_position;
};

/// The pair operator L((f,g), Delta): applies the same L_i to both components,
/// choosing the smallest i with ||L_i f|| > (||f||/||f+g||) ||L_i(f+g)|| and
/// ||L_i(f+g)|| > 0, else the smallest i with ||L_i(f+g)|| > 0.
/// Requires Delta outside both cube-spectra, index-disjoint spectra, and
/// f+g with nonempty spectrum.
PairCopyResult symmetrize_pair(const HaarExpansion& f, const HaarExpansion& g,
                               const DyadicCube& delta);

struct SymmetrizedPair {
    HaarExpansion f_prime;
    HaarExpansion g_prime;
    Rational ratio_before;  // ||f|| / ||f+g||
    Rational ratio_after;   // ||f'|| / ||f'+g'||
    std::vector<std::pair<DyadicCube, int>> applied;  // (father, chosen successor)
};

/// Checks the hypotheses of the second key lemma for (f, g); returns the
/// 1-based number of the first failed hypothesis (0 if all hold):
///   1) disjoint cube-spectra, 2) root absent from both cube-spectra,
///   3) chain fathers absent from the cube-spectrum of g,
///   4) |coefficients of g| <= 1 (including its constant term),
///   5) every chain of MGCR(f) carries a coefficient of magnitude >= t.
/// Additionally f must have zero constant term and f+g must be nonzero
/// (reported as hypotheses 6 and 7).
int key_lemma_two_failed_hypothesis(const HaarExpansion& f, const HaarExpansion& g,
                                    const Rational& t);

/// The symmetrization pipeline: applies the pair operator at the father of
/// each MGCR chain of f, in increasing father-measure order, one pass.
/// Throws naming the failed hypothesis if the inputs are inadmissible.
SymmetrizedPair symmetrize_mgcr(const HaarExpansion& f, const HaarExpansion& g,
                                const Rational& t);

/// Optional diagnostic for the per-cube induction inequality
/// ||f'||_I < (5/t + 2)||f'+g'||_I - 2t - 8; returns (lhs, rhs).
std::pair<Rational, Rational> induction_margin(const HaarExpansion& f_prime,
                                               const HaarExpansion& g_prime,
                                               const DyadicCube& cube, const Rational& t);

}  // namespace haargreedy
