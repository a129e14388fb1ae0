"""Exact degrees in [0, 1], t-norms, t-conorms and discretization grids.

Degrees are plain :class:`fractions.Fraction` instances. Nothing in the
package compares degrees with floats: completeness is a test of exact
equality with 1, which floating point would make unreliable.

Registered t-norms: ``minimum``, ``lukasiewicz``, ``product``, ``drastic``.
Registered t-conorms: ``maximum``, ``lukasiewicz-sum``, ``probabilistic-sum``,
``drastic``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Union

from .errors import DegreeError, UnknownOperatorError

DegreeLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def degree(value: DegreeLike) -> Fraction:
    """Coerce ``value`` to a Fraction and check it lies in [0, 1].

    Accepts Fractions, ints and strings such as ``"3/10"``. Floats are
    rejected outright, since their binary expansion is rarely what the
    caller meant.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise DegreeError(f"degrees must be exact, got {value!r}")
    try:
        frac = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DegreeError(f"not a rational degree: {value!r}") from exc
    if not ZERO <= frac <= ONE:
        raise DegreeError(f"degree {frac} outside [0, 1]")
    return frac


def format_degree(value: Fraction) -> str:
    """Canonical ``"p/q"`` string (``"0"`` and ``"1"`` for the endpoints)."""
    return str(Fraction(value))


def parse_degree(text: str) -> Fraction:
    if not isinstance(text, str):
        raise DegreeError(f"serialized degrees must be strings, got {text!r}")
    if "." in text or "e" in text.lower():
        raise DegreeError(f"serialized degrees must be 'p/q', got {text!r}")
    return degree(text)


# -- t-norms -----------------------------------------------------------------

def _t_minimum(a, b):
    return a if a <= b else b


def _t_lukasiewicz(a, b):
    s = a + b - 1
    return s if s > 0 else ZERO


def _t_product(a, b):
    return a * b


def _t_drastic(a, b):
    if a == 1:
        return b
    if b == 1:
        return a
    return ZERO


def _s_maximum(a, b):
    return a if a >= b else b


def _s_lukasiewicz(a, b):
    s = a + b
    return s if s < 1 else ONE


def _s_probabilistic(a, b):
    return a + b - a * b


def _s_drastic(a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    return ONE


@dataclass(frozen=True)
class TNorm:
    name: str
    func: Callable[[Fraction, Fraction], Fraction]

    def __call__(self, a, b):
        return self.func(a, b)


@dataclass(frozen=True)
class TConorm:
    name: str
    func: Callable[[Fraction, Fraction], Fraction]
    no_one_divisors: bool

    def __call__(self, a, b):
        return self.func(a, b)


TNORMS = {
    t.name: t
    for t in (
        TNorm("minimum", _t_minimum),
        TNorm("lukasiewicz", _t_lukasiewicz),
        TNorm("product", _t_product),
        TNorm("drastic", _t_drastic),
    )
}

TCONORMS = {
    s.name: s
    for s in (
        TConorm("maximum", _s_maximum, no_one_divisors=True),
        TConorm("lukasiewicz-sum", _s_lukasiewicz, no_one_divisors=False),
        TConorm("probabilistic-sum", _s_probabilistic, no_one_divisors=True),
        TConorm("drastic", _s_drastic, no_one_divisors=False),
    )
}


def get_tnorm(t: Union[str, TNorm]) -> TNorm:
    if isinstance(t, TNorm):
        return t
    try:
        return TNORMS[t]
    except (KeyError, TypeError):
        raise UnknownOperatorError(
            f"unknown t-norm {t!r}; expected one of {sorted(TNORMS)}"
        ) from None


def get_tconorm(s: Union[str, TConorm]) -> TConorm:
    if isinstance(s, TConorm):
        return s
    try:
        return TCONORMS[s]
    except (KeyError, TypeError):
        raise UnknownOperatorError(
            f"unknown t-conorm {s!r}; expected one of {sorted(TCONORMS)}"
        ) from None


def tnorm_apply(t, a: DegreeLike, b: DegreeLike) -> Fraction:
    """Evaluate the t-norm ``t`` (id or :class:`TNorm`) at ``(a, b)``."""
    return get_tnorm(t)(degree(a), degree(b))


def tconorm_apply(s, a: DegreeLike, b: DegreeLike) -> Fraction:
    return get_tconorm(s)(degree(a), degree(b))


@dataclass(frozen=True)
class DegreeGrid:
    """The uniform carrier {0, 1/m, ..., 1}."""

    resolution: int

    def __post_init__(self):
        if not isinstance(self.resolution, int) or self.resolution < 1:
            raise DegreeError(f"grid resolution must be a positive int, got {self.resolution!r}")

    @cached_property
    def carrier(self) -> tuple:
        m = self.resolution
        return tuple(Fraction(k, m) for k in range(m + 1))

    @property
    def interior(self) -> tuple:
        return self.carrier[1:-1]

    def __contains__(self, value) -> bool:
        return value in self._index

    @cached_property
    def _index(self):
        return {v: k for k, v in enumerate(self.carrier)}

    def index(self, value) -> int:
        return self._index[value]

    def operation_table(self, t):
        """Table ``tab[i][j]`` = grid index of ``T(i/m, j/m)``, or None if off-grid."""
        t = get_tnorm(t)
        c = self.carrier
        return tuple(
            tuple(self._index.get(t(a, b)) for b in c) for a in c
        )

    def is_closed_under(self, t) -> bool:
        return all(k is not None for row in self.operation_table(t) for k in row)


def find_one_divisor_on_grid(s, grid: DegreeGrid) -> Optional[tuple]:
    """First pair ``(a, b)`` of interior grid points with ``S(a, b) = 1``.

    Returns None when the grid holds no such pair; a None result is only
    evidence, not proof, that ``s`` has no 1-divisors.
    """
    s = get_tconorm(s)
    if grid.resolution < 2:
        raise DegreeError("grid resolution must be at least 2 to have interior points")
    for a in grid.interior:
        for b in grid.interior:
            if s(a, b) == 1:
                return (a, b)
    return None
