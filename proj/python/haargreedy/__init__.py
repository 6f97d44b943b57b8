"""Weak thresholding greedy algorithm for the multivariate Haar basis of L1[0,1]^d.

All scalar values cross the C++ boundary as exact "p/q" strings; `to_fraction`
turns them into fractions.Fraction.
"""

from fractions import Fraction

from ._core import (
    DyadicCube,
    HaarExpansion,
    build_f_n,
    build_f_n_eps,
    build_g_n_eps,
    build_rademacher_partial_sum,
    build_rademacher_product,
    coefficient_by_integration,
    evaluate,
    gen_expansion,
    khinchine_l1,
    norm,
    norm_on_cube,
    project_outside,
    run_greedy,
    run_suite,
    suite_names,
    uniform_bound_constant,
)

__all__ = [
    "DyadicCube",
    "HaarExpansion",
    "build_f_n",
    "build_f_n_eps",
    "build_g_n_eps",
    "build_rademacher_partial_sum",
    "build_rademacher_product",
    "coefficient_by_integration",
    "evaluate",
    "gen_expansion",
    "khinchine_l1",
    "norm",
    "norm_on_cube",
    "project_outside",
    "run_greedy",
    "run_suite",
    "suite_names",
    "to_fraction",
    "uniform_bound_constant",
]


def to_fraction(value: str) -> Fraction:
    """Parse an exact "p/q" string produced by the C++ core."""
    return Fraction(value)
