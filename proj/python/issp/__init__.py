"""Indicator-based subset selection with candidate-list local search."""

from ._core import (
    DegenerateSubsetError,
    epsilon,
    generate,
    hv,
    igd,
    igd_plus,
    nearest_lists,
    nr2,
    r2,
    random_lists,
    reference_set,
    relative_error,
    s_energy,
    select,
    weight_vectors,
    wilcoxon_rank_sum,
)

__all__ = [
    "DegenerateSubsetError",
    "epsilon",
    "generate",
    "hv",
    "igd",
    "igd_plus",
    "nearest_lists",
    "nr2",
    "r2",
    "random_lists",
    "reference_set",
    "relative_error",
    "s_energy",
    "select",
    "weight_vectors",
    "wilcoxon_rank_sum",
]
