"""Fuzzy relations over a finite alternative set, and their predicates.

A :class:`FuzzyRelation` is an immutable square matrix of exact degrees.
The checkers return a :class:`Verdict`, which is truthy iff the check
passed and otherwise carries a deterministic witness.

Witness choice: the boolean checks (reflexivity, completeness,
S-connectedness) report the first offending element in the alternative
order. The graded checks (T-transitivity, betweenness) report the
violation with the largest deficit, ties going to the first in
lexicographic scan order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .degrees import ONE, ZERO, degree, get_tconorm, get_tnorm
from .errors import (
    FormatError,
    NotLinearError,
    UnknownAlternativeError,
    UnknownOperatorError,
)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``witness`` is a plain dict (labels, degrees, relations or profiles)
    for a failure, None for a pass. ``reason`` names the failed
    sub-check for composite checks such as :func:`is_linear`.
    """

    check: str
    passed: bool
    witness: Optional[dict] = None
    reason: Optional[str] = None

    def __bool__(self):
        return self.passed

    @classmethod
    def ok(cls, check):
        return cls(check, True)

    @classmethod
    def fail(cls, check, witness, reason=None):
        return cls(check, False, witness, reason)


def _check_labels(alternatives) -> tuple:
    alts = tuple(alternatives)
    if not alts:
        raise FormatError("alternative set must be non-empty")
    if any(not isinstance(a, str) for a in alts):
        raise FormatError("alternative labels must be strings")
    if len(set(alts)) != len(alts):
        raise FormatError(f"duplicate alternative labels in {alts}")
    return alts


class FuzzyRelation:
    """A relation ``R: X x X -> [0, 1]`` with exact rational degrees.

    ``degrees[i][j]`` is ``R(alternatives[i], alternatives[j])``. Use
    ``R[x, y]`` for label-based lookup.
    """

    __slots__ = ("alternatives", "degrees", "_pos", "_hash", "_memo")

    def __init__(self, alternatives: Sequence[str], degrees):
        alts = _check_labels(alternatives)
        rows = tuple(tuple(degree(v) for v in row) for row in degrees)
        if len(rows) != len(alts) or any(len(r) != len(alts) for r in rows):
            raise FormatError(
                f"degree matrix must be {len(alts)}x{len(alts)} to match the alternatives"
            )
        self._init(alts, rows)

    def _init(self, alts, rows):
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "degrees", rows)
        object.__setattr__(self, "_pos", {a: i for i, a in enumerate(alts)})
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_memo", {})

    @classmethod
    def _trusted(cls, alts, rows):
        # Skips validation; callers guarantee labels and degrees are sound.
        obj = object.__new__(cls)
        obj._init(alts, rows)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FuzzyRelation is immutable")

    @classmethod
    def from_function(cls, alternatives, func):
        alts = _check_labels(alternatives)
        return cls(alts, [[func(x, y) for y in alts] for x in alts])

    @property
    def size(self) -> int:
        return len(self.alternatives)

    def index(self, label: str) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise UnknownAlternativeError(f"unknown alternative {label!r}") from None

    def __getitem__(self, pair) -> Fraction:
        x, y = pair
        return self.degrees[self.index(x)][self.index(y)]

    def __eq__(self, other):
        if not isinstance(other, FuzzyRelation):
            return NotImplemented
        return self.alternatives == other.alternatives and self.degrees == other.degrees

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.alternatives, self.degrees)))
        return self._hash

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.degrees)
        return f"FuzzyRelation({list(self.alternatives)}, [{rows}])"

    def is_crisp(self) -> bool:
        return all(v == 0 or v == 1 for row in self.degrees for v in row)


@dataclass(frozen=True)
class TotalPreorder:
    """Total preorder encoded by contiguous ranks; rank 0 is most preferred."""

    alternatives: tuple
    ranks: tuple
    _pos: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        alts = _check_labels(self.alternatives)
        ranks = tuple(self.ranks)
        if len(ranks) != len(alts):
            raise FormatError("one rank per alternative is required")
        levels = sorted(set(ranks))
        canon = {r: k for k, r in enumerate(levels)}
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "ranks", tuple(canon[r] for r in ranks))
        object.__setattr__(self, "_pos", {a: i for i, a in enumerate(alts)})

    @classmethod
    def from_blocks(cls, blocks, alternatives=None):
        """Build from indifference classes listed best first.

        ``alternatives`` fixes the label order; by default it is the
        concatenation of the blocks.
        """
        blocks = [list(b) for b in blocks]
        if alternatives is None:
            alternatives = [a for b in blocks for a in b]
        rank = {a: k for k, b in enumerate(blocks) for a in b}
        if set(rank) != set(alternatives) or sum(map(len, blocks)) != len(rank):
            raise FormatError("blocks must partition the alternative set")
        return cls(tuple(alternatives), tuple(rank[a] for a in alternatives))

    @classmethod
    def from_ranking(cls, ranking, alternatives=None):
        return cls.from_blocks([[a] for a in ranking], alternatives)

    def rank(self, x) -> int:
        try:
            return self.ranks[self._pos[x]]
        except KeyError:
            raise UnknownAlternativeError(f"unknown alternative {x!r}") from None

    def weakly_prefers(self, x, y) -> bool:
        return self.rank(x) <= self.rank(y)

    def strictly_prefers(self, x, y) -> bool:
        return self.rank(x) < self.rank(y)

    def indifferent(self, x, y) -> bool:
        return self.rank(x) == self.rank(y)

    def blocks(self) -> list:
        out = [[] for _ in range(max(self.ranks) + 1)]
        for a, r in zip(self.alternatives, self.ranks):
            out[r].append(a)
        return out

    def __str__(self):
        return " > ".join("~".join(b) for b in self.blocks())


def enumerate_total_preorders(alternatives) -> Iterator[TotalPreorder]:
    """Every total preorder on ``alternatives``, each exactly once."""
    alts = _check_labels(alternatives)
    n = len(alts)
    for ranks in itertools.product(range(n), repeat=n):
        if set(ranks) == set(range(max(ranks) + 1)):
            yield TotalPreorder(alts, ranks)


# -- strict preference ---------------------------------------------------------

def _difference(rxy, ryx):
    d = rxy - ryx
    return d if d > 0 else ZERO


STRICT_OPERATORS = {"difference": _difference}


def strict_from_degrees(rxy, ryx, op="difference") -> Fraction:
    try:
        return STRICT_OPERATORS[op](rxy, ryx)
    except KeyError:
        raise UnknownOperatorError(f"unknown strict operator {op!r}") from None


def strict_degree(R: FuzzyRelation, x, y, op="difference") -> Fraction:
    """Degree to which ``x`` is strictly preferred to ``y`` under ``R``."""
    i, j = R.index(x), R.index(y)
    return strict_from_degrees(R.degrees[i][j], R.degrees[j][i], op)


def strict_matrix(R: FuzzyRelation, op="difference") -> tuple:
    """All strict degrees ``P[i][j]``, computed once per relation object."""
    key = ("strict", op)
    cached = R._memo.get(key)
    if cached is None:
        d = R.degrees
        n = R.size
        cached = tuple(
            tuple(strict_from_degrees(d[i][j], d[j][i], op) for j in range(n)) for i in range(n)
        )
        R._memo[key] = cached
    return cached


def degree_codes(R: FuzzyRelation) -> tuple:
    """Matrix of ``(numerator, denominator)`` pairs, a cheap exact hashing key."""
    cached = R._memo.get("codes")
    if cached is None:
        cached = tuple(tuple((v.numerator, v.denominator) for v in row) for row in R.degrees)
        R._memo["codes"] = cached
    return cached


def strict_signs(R: FuzzyRelation) -> tuple:
    """Boolean matrix of ``R(x,y) > R(y,x)``, i.e. of positive strict preference."""
    cached = R._memo.get("signs")
    if cached is None:
        d = R.degrees
        n = R.size
        cached = tuple(tuple(d[i][j] > d[j][i] for j in range(n)) for i in range(n))
        R._memo["signs"] = cached
    return cached


# -- predicates ----------------------------------------------------------------

def check_reflexive(R: FuzzyRelation) -> Verdict:
    for i, x in enumerate(R.alternatives):
        if R.degrees[i][i] != 1:
            return Verdict.fail("reflexive", {"alternative": x, "degree": R.degrees[i][i]})
    return Verdict.ok("reflexive")


def check_complete(R: FuzzyRelation) -> Verdict:
    d = R.degrees
    for i, j in itertools.combinations(range(R.size), 2):
        if d[i][j] != 1 and d[j][i] != 1:
            x, y = R.alternatives[i], R.alternatives[j]
            return Verdict.fail(
                "complete", {"pair": [x, y], "forward": d[i][j], "backward": d[j][i]}
            )
    return Verdict.ok("complete")


def check_s_connected(R: FuzzyRelation, s) -> Verdict:
    s = get_tconorm(s)
    d = R.degrees
    for i, j in itertools.product(range(R.size), repeat=2):
        value = s(d[i][j], d[j][i])
        if value != 1:
            x, y = R.alternatives[i], R.alternatives[j]
            return Verdict.fail(
                "s_connected",
                {"pair": [x, y], "forward": d[i][j], "backward": d[j][i], "conorm": value},
            )
    return Verdict.ok("s_connected")


def check_t_transitive(R: FuzzyRelation, t) -> Verdict:
    """``R(x,z) >= T(R(x,y), R(y,z))`` over all ordered triples, repeats included."""
    t = get_tnorm(t)
    d = R.degrees
    worst = None
    for i, j, k in itertools.product(range(R.size), repeat=3):
        rhs = t(d[i][j], d[j][k])
        deficit = rhs - d[i][k]
        if deficit > 0 and (worst is None or deficit > worst[0]):
            worst = (deficit, i, j, k, rhs)
    if worst is None:
        return Verdict.ok("t_transitive")
    _, i, j, k, rhs = worst
    a = R.alternatives
    return Verdict.fail(
        "t_transitive",
        {
            "triple": [a[i], a[j], a[k]],
            "lhs": d[i][k],
            "rhs": rhs,
            "tnorm": t.name,
        },
    )


def is_linear(R: FuzzyRelation, t) -> Verdict:
    """Reflexive, complete and T-transitive."""
    t = get_tnorm(t)
    key = ("linear", t.name)
    cached = R._memo.get(key)
    if cached is None:
        cached = _is_linear(R, t)
        R._memo[key] = cached
    return cached


def _is_linear(R, t):
    for check in (check_reflexive, check_complete):
        sub = check(R)
        if not sub:
            return Verdict.fail("linear", sub.witness, reason=sub.check)
    sub = check_t_transitive(R, t)
    if not sub:
        return Verdict.fail("linear", sub.witness, reason=sub.check)
    return Verdict.ok("linear")


def require_linear(R: FuzzyRelation, t) -> None:
    v = is_linear(R, t)
    if not v:
        raise NotLinearError(f"relation is not linear: {v.reason} check failed", v)


def associated_preorder(R: FuzzyRelation, tnorm="drastic") -> TotalPreorder:
    """The preorder ``x >= y iff R(x,y) = 1``.

    ``tnorm`` is the t-norm of the precondition. The default, the drastic
    t-norm, is the weakest one, so a relation linear for any registered
    t-norm passes it.
    """
    require_linear(R, tnorm)
    d = R.degrees
    # number of alternatives strictly above each one gives contiguous ranks after canonicalization
    ranks = [sum(1 for j in range(R.size) if d[j][i] == 1 and d[i][j] != 1) for i in range(R.size)]
    return TotalPreorder(R.alternatives, ranks)


def lift_preorder(p: TotalPreorder) -> FuzzyRelation:
    alts = p.alternatives
    rows = tuple(
        tuple(ONE if rx <= ry else ZERO for ry in p.ranks) for rx in p.ranks
    )
    return FuzzyRelation._trusted(alts, rows)


def collapse_to_crisp(R: FuzzyRelation) -> FuzzyRelation:
    rows = tuple(tuple(ONE if v == 1 else ZERO for v in row) for row in R.degrees)
    return FuzzyRelation._trusted(R.alternatives, rows)


def restrict(R: FuzzyRelation, subset: Iterable[str]) -> FuzzyRelation:
    """Restriction to ``subset``; keeps the parent's alternative order."""
    wanted = set(subset)
    if not wanted:
        raise FormatError("restriction to an empty set")
    for y in wanted:
        R.index(y)
    idx = [i for i, a in enumerate(R.alternatives) if a in wanted]
    rows = tuple(tuple(R.degrees[i][j] for j in idx) for i in idx)
    return FuzzyRelation._trusted(tuple(R.alternatives[i] for i in idx), rows)


def check_betweenness_monotone(R: FuzzyRelation, tnorm="drastic", diagnostic=False) -> Verdict:
    """If ``x >= a >= b >= y`` in the associated preorder then ``R(y,x) <= R(b,a)``.

    Outside diagnostic mode the relation must be linear for ``tnorm``;
    in diagnostic mode ``>=`` is read directly off the degree-1 cells.
    """
    if not diagnostic:
        require_linear(R, tnorm)
    d = R.degrees
    n = R.size
    worst = None
    for x, a, b, y in itertools.product(range(n), repeat=4):
        if d[x][a] == 1 and d[a][b] == 1 and d[b][y] == 1:
            deficit = d[y][x] - d[b][a]
            if deficit > 0 and (worst is None or deficit > worst[0]):
                worst = (deficit, x, a, b, y)
    if worst is None:
        return Verdict.ok("betweenness")
    _, x, a, b, y = worst
    alts = R.alternatives
    return Verdict.fail(
        "betweenness",
        {
            "quadruple": [alts[x], alts[a], alts[b], alts[y]],
            "outer": d[y][x],
            "inner": d[b][a],
        },
    )


def check_sandwich(R: FuzzyRelation, t) -> Verdict:
    """For every chain ``x >= y >= z``: ``T(R(z,y), R(y,x)) <= R(z,x) <= min(R(z,y), R(y,x))``."""
    t = get_tnorm(t)
    d = R.degrees
    for x, y, z in itertools.product(range(R.size), repeat=3):
        if d[x][y] == 1 and d[y][z] == 1:
            lo = t(d[z][y], d[y][x])
            hi = min(d[z][y], d[y][x])
            if not lo <= d[z][x] <= hi:
                a = R.alternatives
                return Verdict.fail(
                    "sandwich",
                    {"chain": [a[x], a[y], a[z]], "lower": lo, "value": d[z][x], "upper": hi},
                )
    return Verdict.ok("sandwich")
