"""Families of coalitions over a finite society, and filter/ultrafilter tests.

A coalition is a bitmask over the society ordering: bit ``i`` stands for
``society[i]``. A :class:`CoalitionFamily` is a frozen set of such masks.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator, Optional

from .errors import FormatError, StructureError, UnknownAlternativeError
from .relations import Verdict

#: Largest society accepted by the exhaustive family operations (2**16 coalitions).
MAX_SOCIETY = int(os.environ.get("FUZZY_ARROW_MAX_SOCIETY", 16))


def make_society(n: int) -> tuple:
    """Society ``("1", ..., "n")``."""
    if n < 1:
        raise FormatError("a society needs at least one individual")
    return tuple(str(i) for i in range(1, n + 1))


def check_society(society) -> tuple:
    soc = tuple(society)
    if not soc:
        raise FormatError("society must be non-empty")
    if any(not isinstance(i, str) for i in soc):
        raise FormatError("individual identifiers must be strings")
    if len(set(soc)) != len(soc):
        raise FormatError(f"duplicate individuals in {soc}")
    return soc


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class CoalitionFamily:
    """A set of coalitions of ``society``."""

    __slots__ = ("society", "members", "_pos")

    def __init__(self, society, members: Iterable[int] = ()):
        soc = check_society(society)
        full = (1 << len(soc)) - 1
        masks = frozenset(members)
        for m in masks:
            if not isinstance(m, int) or m < 0 or m & ~full:
                raise FormatError(f"coalition mask {m!r} is not a subset of the society")
        self.society = soc
        self.members = masks
        self._pos = {a: i for i, a in enumerate(soc)}

    # construction and conversion

    def mask(self, coalition) -> int:
        """Bitmask of an iterable of individual ids (ints pass through)."""
        if isinstance(coalition, int):
            return coalition
        m = 0
        for ind in coalition:
            try:
                m |= 1 << self._pos[ind]
            except KeyError:
                raise UnknownAlternativeError(f"unknown individual {ind!r}") from None
        return m

    def members_of(self, mask: int) -> tuple:
        return tuple(a for i, a in enumerate(self.society) if mask >> i & 1)

    @classmethod
    def from_coalitions(cls, society, coalitions):
        fam = cls(society)
        return cls(society, (fam.mask(c) for c in coalitions))

    @classmethod
    def principal(cls, society, k):
        """``{C : k in C}``."""
        soc = check_society(society)
        if k not in soc:
            raise UnknownAlternativeError(f"unknown individual {k!r}")
        bit = 1 << soc.index(k)
        return cls(soc, (m for m in range(1 << len(soc)) if m & bit))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.society)) - 1

    def coalitions(self) -> list:
        """Members as tuples of ids, sorted by size then by society order."""
        keyed = sorted(
            self.members,
            key=lambda m: (popcount(m), [i for i in range(len(self.society)) if m >> i & 1]),
        )
        return [self.members_of(m) for m in keyed]

    def __contains__(self, coalition) -> bool:
        return self.mask(coalition) in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.coalitions())

    def __eq__(self, other):
        if not isinstance(other, CoalitionFamily):
            return NotImplemented
        return self.society == other.society and self.members == other.members

    def __hash__(self):
        return hash((self.society, self.members))

    def __repr__(self):
        body = ", ".join("{" + ",".join(c) + "}" for c in self.coalitions())
        return f"CoalitionFamily([{body}])"


def _require_small(society):
    if len(society) > MAX_SOCIETY:
        raise ValueError(f"family operations are capped at {MAX_SOCIETY} individuals")


def is_filter(F: CoalitionFamily) -> Verdict:
    """Non-empty, excludes the empty coalition, upward closed, closed under intersection."""
    _require_small(F.society)
    members = F.members
    if not members:
        return Verdict.fail("filter", {}, reason="empty_family")
    if 0 in members:
        return Verdict.fail("filter", {"coalition": []}, reason="contains_empty")
    full = F.full_mask
    for u in sorted(members):
        # supersets of u: u | s for every s in the complement's subsets
        rest = full & ~u
        s = rest
        while True:
            v = u | s
            if v not in members:
                return Verdict.fail(
                    "filter",
                    {"coalition": list(F.members_of(u)), "missing_superset": list(F.members_of(v))},
                    reason="upward_closure",
                )
            if s == 0:
                break
            s = (s - 1) & rest
    ordered = sorted(members)
    for a_i, u in enumerate(ordered):
        for v in ordered[a_i + 1:]:
            if u & v not in members:
                return Verdict.fail(
                    "filter",
                    {
                        "coalitions": [list(F.members_of(u)), list(F.members_of(v))],
                        "missing_intersection": list(F.members_of(u & v)),
                    },
                    reason="intersection",
                )
    return Verdict.ok("filter")


def is_ultrafilter(F: CoalitionFamily) -> Verdict:
    """A filter containing, for every coalition V, either V or its complement."""
    v = is_filter(F)
    if not v:
        return Verdict.fail("ultrafilter", v.witness, reason=v.reason)
    full = F.full_mask
    for m in range(full + 1):
        if m not in F.members and (full & ~m) not in F.members:
            return Verdict.fail(
                "ultrafilter",
                {"coalition": list(F.members_of(m)), "complement": list(F.members_of(full & ~m))},
                reason="neither_set_nor_complement",
            )
    return Verdict.ok("ultrafilter")


def principal_element(U: CoalitionFamily) -> Optional[str]:
    """The individual ``k`` with ``{k}`` in ``U``.

    Raises StructureError if ``U`` is not an ultrafilter. In a finite
    society every ultrafilter is principal, so the result is never None
    once the precondition holds.
    """
    v = is_ultrafilter(U)
    if not v:
        raise StructureError(f"not an ultrafilter ({v.reason})", v)
    return _singleton(U)


def _singleton(U):
    for i, k in enumerate(U.society):
        if 1 << i in U.members:
            return k
    return None


def enumerate_families(society) -> Iterator[CoalitionFamily]:
    """All 2**(2**n) families of coalitions; only practical for n <= 3."""
    soc = check_society(society)
    coalitions = range(1 << len(soc))
    for bits in range(1 << (1 << len(soc))):
        yield CoalitionFamily(soc, (c for c in coalitions if bits >> c & 1))


def enumerate_ultrafilters(society) -> Iterator[CoalitionFamily]:
    """Every ultrafilter, found by building each candidate from its choices.

    A family containing exactly one of V and V^c for every V is determined
    by which member of each complementary pair it keeps, so there are
    2**(2**(n-1)) candidates rather than 2**(2**n); each is tested with
    :func:`is_ultrafilter`. Feasible for n <= 5.
    """
    soc = check_society(society)
    _require_small(soc)
    full = (1 << len(soc)) - 1
    pairs = [(m, full & ~m) for m in range(full + 1) if m < (full & ~m)]
    for bits in range(1 << len(pairs)):
        chosen = [b if bits >> i & 1 else a for i, (a, b) in enumerate(pairs)]
        fam = CoalitionFamily(soc, chosen)
        if is_ultrafilter(fam):
            yield fam
