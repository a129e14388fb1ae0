"""Constructors for linear preferences.

Includes the extension of a linear preference from a subset, constant-degree
and consecutive-degree constructions, exhaustive enumeration over a degree
grid, and a seeded sampler.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Sequence

from .degrees import ONE, ZERO, DegreeGrid, degree, get_tnorm
from .errors import FormatError, GridNotClosedError
from .relations import (
    FuzzyRelation,
    TotalPreorder,
    _check_labels,
    enumerate_total_preorders,
    require_linear,
)

#: Largest alternative set accepted by :func:`enumerate_linear` and :func:`sample_linear`.
MAX_ENUM_ALTERNATIVES = 5


def extend(partial: FuzzyRelation, alternatives: Sequence[str], t) -> FuzzyRelation:
    """Extend a linear preference on Z to all of ``alternatives``.

    Alternatives outside Z are placed strictly below every member of Z
    (degree 1 upward, 0 downward) and are mutually indifferent at degree 1.
    The output uses the label order of ``alternatives``.
    """
    require_linear(partial, t)
    alts = _check_labels(alternatives)
    inside = set(partial.alternatives)
    if not inside <= set(alts):
        raise FormatError(f"{sorted(inside - set(alts))} are not in the ambient set")

    def value(x, y):
        if x in inside and y in inside:
            return partial[x, y]
        if x in inside:
            return ONE
        if y in inside:
            return ZERO
        return ONE

    return FuzzyRelation._trusted(
        alts, tuple(tuple(value(x, y) for y in alts) for x in alts)
    )


def constant_degree(p: TotalPreorder, alpha) -> FuzzyRelation:
    """1 where ``x >= y`` in ``p``, ``alpha`` where ``y > x``."""
    alpha = degree(alpha)
    rows = tuple(
        tuple(ONE if rx <= ry else alpha for ry in p.ranks) for rx in p.ranks
    )
    return FuzzyRelation._trusted(p.alternatives, rows)


@dataclass(frozen=True)
class ConsecutiveSpec:
    """A strict ranking (best first) plus the reverse degree of each adjacent pair.

    ``reverse_degrees[i]`` is ``R(ranking[i+1], ranking[i])``.
    """

    ranking: tuple
    reverse_degrees: tuple

    def __post_init__(self):
        ranking = _check_labels(self.ranking)
        rev = tuple(degree(v) for v in self.reverse_degrees)
        if len(rev) != len(ranking) - 1:
            raise FormatError(
                f"{len(ranking)} alternatives need {len(ranking) - 1} reverse degrees, got {len(rev)}"
            )
        object.__setattr__(self, "ranking", ranking)
        object.__setattr__(self, "reverse_degrees", rev)


def from_consecutive(spec: ConsecutiveSpec, t, fill="min", alternatives=None) -> FuzzyRelation:
    """Assemble a linear preference from its consecutive reverse degrees.

    The degree of a non-adjacent reversal ``R(low, high)`` is the minimum
    (``fill="min"``) or the iterated t-norm (``fill="tnorm"``) of the
    adjacent reverse degrees between them.
    """
    t = get_tnorm(t)
    if fill == "min":
        combine = min
    elif fill == "tnorm":
        combine = t
    else:
        raise ValueError(f"fill must be 'min' or 'tnorm', got {fill!r}")
    ranking = spec.ranking
    pos = {a: k for k, a in enumerate(ranking)}
    alts = _check_labels(alternatives) if alternatives is not None else ranking
    if set(alts) != set(ranking):
        raise FormatError("alternatives must be a reordering of the ranking")
    rev = spec.reverse_degrees

    def value(x, y):
        i, j = pos[x], pos[y]
        if i <= j:
            return ONE
        return reduce(combine, rev[j:i])

    return FuzzyRelation._trusted(
        alts, tuple(tuple(value(x, y) for y in alts) for x in alts)
    )


def _closed_table(grid: DegreeGrid, t):
    table = grid.operation_table(t)
    if any(k is None for row in table for k in row):
        raise GridNotClosedError(
            f"grid m={grid.resolution} is not closed under the {get_tnorm(t).name} t-norm"
        )
    return table


def _check_size(alts):
    if len(alts) > MAX_ENUM_ALTERNATIVES:
        raise ValueError(
            f"enumeration is capped at {MAX_ENUM_ALTERNATIVES} alternatives, got {len(alts)}"
        )


@lru_cache(maxsize=None)
def _triples_by_position(n):
    # triple (i, j, k) is checked once all of (i,j), (j,k), (i,k) are assigned,
    # i.e. at the largest of their row-major positions
    buckets = [[] for _ in range(n * n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        last = max(i * n + j, j * n + k, i * n + k)
        buckets[last].append((i * n + j, j * n + k, i * n + k))
    return tuple(tuple(b) for b in buckets)


def enumerate_linear(alternatives, grid: DegreeGrid, t) -> Iterator[FuzzyRelation]:
    """Every grid-valued T-linear relation on ``alternatives``, once each.

    Order is lexicographic over the row-major degree matrix. The search
    assigns cells in that order and prunes on completeness and on every
    transitivity triple as soon as its three cells are known.
    """
    alts = _check_labels(alternatives)
    _check_size(alts)
    table = _closed_table(grid, t)
    n = len(alts)
    top = grid.resolution
    carrier = grid.carrier
    triples = _triples_by_position(n)
    cells = [0] * (n * n)
    choices = []
    for p in range(n * n):
        r, c = divmod(p, n)
        choices.append((top,) if r == c else tuple(range(top + 1)))

    def build():
        return FuzzyRelation._trusted(
            alts,
            tuple(tuple(carrier[cells[r * n + c]] for c in range(n)) for r in range(n)),
        )

    def search(p):
        if p == n * n:
            yield build()
            return
        r, c = divmod(p, n)
        mirror = c * n + r if r > c else None
        for v in choices[p]:
            if mirror is not None and v != top and cells[mirror] != top:
                continue
            cells[p] = v
            if all(cells[xz] >= table[cells[xy]][cells[yz]] for xy, yz, xz in triples[p]):
                yield from search(p + 1)

    yield from search(0)


@lru_cache(maxsize=None)
def _preorders(alts):
    return tuple(enumerate_total_preorders(alts))


def _sample(rng: random.Random, alts, grid: DegreeGrid) -> FuzzyRelation:
    p = rng.choice(_preorders(alts))
    below_one = grid.carrier[:-1]
    k = max(p.ranks)
    gaps = [rng.choice(below_one) for _ in range(k)]

    def value(rx, ry):
        if rx <= ry:
            return ONE
        return min(gaps[ry:rx])

    return FuzzyRelation._trusted(
        alts, tuple(tuple(value(rx, ry) for ry in p.ranks) for rx in p.ranks)
    )


def sample_linear(alternatives, grid: DegreeGrid, t, seed) -> FuzzyRelation:
    """Draw one linear relation, deterministically for a given ``seed``.

    Two stages: a total preorder chosen uniformly, then a reverse degree
    below 1 for each pair of adjacent indifference classes, with
    non-adjacent reversals min-filled. The result is not uniform over
    linear relations, and it is min-transitive, so linear for every t-norm.
    ``seed`` may also be a :class:`random.Random` to draw from.
    """
    alts = _check_labels(alternatives)
    _check_size(alts)
    _closed_table(grid, t)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return _sample(rng, alts, grid)
