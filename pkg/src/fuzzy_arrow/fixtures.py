"""The three-alternative example relations and the named witness profiles.

``R1``, ``R2`` and ``R3`` rank ``x > y > z`` with every upward degree 1 and
reverse degrees ``(R(y,x), R(z,y), R(z,x))`` of ``(7/10, 3/10, 8/10)``,
``(7/10, 3/10, 2/10)`` and ``(7/10, 3/10, 3/10)``. R1 is not linear for any
t-norm, R2 is Lukasiewicz-linear but not min-linear, R3 is min-linear.
"""

from __future__ import annotations

from fractions import Fraction

from .aggregation import (
    complement_witness_profile,
    condorcet_profile,
    decisive_witness_profile,
    intersection_witness_profile,
    opposed_pair_profile,
)
from .relations import FuzzyRelation

ALTERNATIVES = ("x", "y", "z")

_REVERSE = {
    "R1": ("7/10", "3/10", "8/10"),
    "R2": ("7/10", "3/10", "2/10"),
    "R3": ("7/10", "3/10", "3/10"),
}


def example_relation(name: str) -> FuzzyRelation:
    yx, zy, zx = (Fraction(v) for v in _REVERSE[name])
    return FuzzyRelation(
        ALTERNATIVES,
        [
            [1, 1, 1],
            [yx, 1, 1],
            [zx, zy, 1],
        ],
    )


def example_relations() -> dict:
    return {name: example_relation(name) for name in _REVERSE}


def witness_profiles() -> dict:
    """Named crisp profiles: the standard counterexample and decisiveness constructions."""
    soc2 = ("1", "2")
    soc3 = ("1", "2", "3")
    return {
        "opposed_pair": opposed_pair_profile(ALTERNATIVES, soc2),
        "condorcet": condorcet_profile(ALTERNATIVES, soc3),
        "decisive_1_of_2": decisive_witness_profile(soc2, ["1"], ALTERNATIVES),
        "decisive_12_of_3": decisive_witness_profile(soc3, ["1", "2"], ALTERNATIVES),
        "intersection_12_23": intersection_witness_profile(soc3, ["1", "2"], ["2", "3"], ALTERNATIVES),
        "complement_1_of_3": complement_witness_profile(soc3, ["1"], ALTERNATIVES),
    }
