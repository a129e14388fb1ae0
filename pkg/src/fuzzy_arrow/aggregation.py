"""Profiles, aggregation rules, profile spaces and Arrovian axiom checkers.

Every checker quantifies over a finite :class:`SpaceSpec` (an exhaustive
enumeration or a seeded sample of profiles on a degree grid). A passing
verdict certifies the axiom on that space only, never on [0, 1].
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator, Optional

from .builders import _closed_table, _sample, enumerate_linear, extend, MAX_ENUM_ALTERNATIVES
from .degrees import ONE, ZERO, DegreeGrid, get_tnorm
from .errors import (
    BudgetExceededError,
    FormatError,
    StructureError,
    UnknownAlternativeError,
    UnknownOperatorError,
)
from .families import CoalitionFamily, _singleton, check_society, is_ultrafilter
from .relations import (
    FuzzyRelation,
    TotalPreorder,
    Verdict,
    _check_labels,
    is_linear,
    degree_codes,
    lift_preorder,
    strict_from_degrees,
    strict_matrix,
    strict_signs,
)

DEFAULT_BUDGET = 2_000_000
#: Exhaustive spaces up to this many profiles are materialized once and reused.
PROFILE_CACHE_LIMIT = 250_000

_LABELS = ("x", "y", "z", "w", "v", "u", "s", "r")


def default_alternatives(n: int) -> tuple:
    if n <= len(_LABELS):
        return _LABELS[:n]
    return tuple(f"a{i}" for i in range(1, n + 1))


def scan_budget() -> int:
    """Profile budget for exhaustive scans; ``FUZZY_ARROW_BUDGET`` overrides the default."""
    raw = os.environ.get("FUZZY_ARROW_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class Profile:
    """One fuzzy relation per individual, all over the same alternatives."""

    __slots__ = ("society", "relations", "_pos", "_hash")

    def __init__(self, society, relations):
        soc = check_society(society)
        rels = tuple(relations)
        if len(rels) != len(soc):
            raise FormatError("a profile needs exactly one relation per individual")
        alts = rels[0].alternatives
        if any(r.alternatives != alts for r in rels):
            raise FormatError("all relations in a profile must share one alternative set")
        self._init(soc, rels)

    def _init(self, soc, rels):
        self.society = soc
        self.relations = rels
        self._pos = None
        self._hash = None

    @classmethod
    def _trusted(cls, soc, rels):
        obj = object.__new__(cls)
        obj._init(soc, rels)
        return obj

    @classmethod
    def from_mapping(cls, society, mapping):
        soc = check_society(society)
        if set(mapping) != set(soc):
            raise FormatError("profile relations must be keyed by exactly the society members")
        return cls(soc, [mapping[k] for k in soc])

    @property
    def alternatives(self) -> tuple:
        return self.relations[0].alternatives

    def __getitem__(self, individual) -> FuzzyRelation:
        if self._pos is None:
            self._pos = {k: i for i, k in enumerate(self.society)}
        try:
            return self.relations[self._pos[individual]]
        except KeyError:
            raise UnknownAlternativeError(f"unknown individual {individual!r}") from None

    def items(self):
        return zip(self.society, self.relations)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.society == other.society and self.relations == other.relations

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.society, self.relations))
        return self._hash

    def __repr__(self):
        return f"Profile({dict(self.items())!r})"


def check_profile(profile: Profile, t) -> Verdict:
    for k, R in profile.items():
        v = is_linear(R, t)
        if not v:
            return Verdict.fail("profile", {"individual": k, "detail": v.witness}, reason=v.reason)
    return Verdict.ok("profile")


def strict_masks(profile: Profile, i: int, j: int) -> tuple:
    """Bitmasks of individuals strictly preferring alternative ``i`` to ``j``, and ``j`` to ``i``."""
    # P(x,y) > 0 iff R(x,y) > R(y,x) for any admissible strict operator
    fwd = bwd = 0
    for b, R in enumerate(profile.relations):
        sg = strict_signs(R)
        if sg[i][j]:
            fwd |= 1 << b
        elif sg[j][i]:
            bwd |= 1 << b
    return fwd, bwd


# -- rules ---------------------------------------------------------------------

class AggregationRule:
    """A deterministic map from profiles to fuzzy relations.

    ``lp_valued`` records whether the rule is meant to land in the linear
    preferences; the engine verifies it rather than trusting it.
    """

    rule_id = "rule"
    lp_valued = False

    def __call__(self, profile: Profile) -> FuzzyRelation:
        raise NotImplementedError

    @property
    def params(self) -> dict:
        return {}

    def describe(self) -> dict:
        return {"id": self.rule_id, "params": self.params}

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"


class FunctionRule(AggregationRule):
    """Wrap a plain function ``profile -> FuzzyRelation`` as a rule."""

    def __init__(self, func: Callable, rule_id: Optional[str] = None, lp_valued=False):
        self.func = func
        self.rule_id = rule_id or getattr(func, "__name__", "custom")
        self.lp_valued = lp_valued

    def __call__(self, profile):
        return self.func(profile)


def _relation_from(alts, func):
    n = len(alts)
    rows = tuple(tuple(ONE if i == j else func(i, j) for j in range(n)) for i in range(n))
    return FuzzyRelation._trusted(alts, rows)


class UltrafilterRule(AggregationRule):
    """Social ``x >= y`` unless the individuals strictly preferring ``y`` form a member of ``U``.

    Output is crisp: ``(x, y)`` gets 1 when the strict supporters of ``x``
    over ``y`` form a coalition in ``U``, 0 when those of ``y`` over ``x``
    do, and 1 otherwise.
    """

    rule_id = "ultrafilter"
    lp_valued = True

    def __init__(self, family: CoalitionFamily):
        v = is_ultrafilter(family)
        if not v:
            raise StructureError(f"ultrafilter rule needs an ultrafilter ({v.reason} failed)", v)
        self.family = family

    @classmethod
    def principal(cls, society, k):
        return cls(CoalitionFamily.principal(society, k))

    @property
    def params(self):
        k = _singleton(self.family)
        return {"principal": k, "coalitions": [list(c) for c in self.family.coalitions()]}

    def __call__(self, profile):
        if profile.society != self.family.society:
            raise FormatError("profile society differs from the ultrafilter's society")
        members = self.family.members
        n = len(profile.alternatives)
        out = [[ONE] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            fwd, bwd = strict_masks(profile, i, j)
            if fwd in members:
                out[j][i] = ZERO
            elif bwd in members:
                out[i][j] = ZERO
        return FuzzyRelation._trusted(profile.alternatives, tuple(map(tuple, out)))


def aggregate_ultrafilter(U: CoalitionFamily, profile: Profile) -> FuzzyRelation:
    """One-shot form of :class:`UltrafilterRule`."""
    return UltrafilterRule(U)(profile)


class DictatorRule(AggregationRule):
    """Output is the relation of individual ``k``."""

    rule_id = "dictator"
    lp_valued = True

    def __init__(self, k: str):
        self.k = k

    @property
    def params(self):
        return {"k": self.k}

    def __call__(self, profile):
        return profile[self.k]


class ConstantIndifferenceRule(AggregationRule):
    """Every pair socially indifferent at degree 1; breaks weak Pareto."""

    rule_id = "constant-indifference"
    lp_valued = True

    def __call__(self, profile):
        return _relation_from(profile.alternatives, lambda i, j: ONE)


class PointwiseMeanRule(AggregationRule):
    """Arithmetic mean of the individual degrees; not complete in general."""

    rule_id = "pointwise-mean"

    def __call__(self, profile):
        n = len(profile.relations)
        rels = [R.degrees for R in profile.relations]
        return _relation_from(
            profile.alternatives, lambda i, j: Fraction(sum(d[i][j] for d in rels), n)
        )


class PairwiseMajorityRule(AggregationRule):
    """``x >= y`` (degree 1) iff at least as many individuals strictly prefer x as y, else 0.

    Intransitive on a Condorcet profile.
    """

    rule_id = "pairwise-majority"

    def __call__(self, profile):
        n = len(profile.alternatives)
        out = [[ONE] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            fwd, bwd = strict_masks(profile, i, j)
            a, b = bin(fwd).count("1"), bin(bwd).count("1")
            if a > b:
                out[j][i] = ZERO
            elif b > a:
                out[i][j] = ZERO
        return FuzzyRelation._trusted(profile.alternatives, tuple(map(tuple, out)))


def make_rule(rule_id: str, society=None, **params) -> AggregationRule:
    """Build a built-in rule from its id and parameters.

    ``ultrafilter`` takes ``principal=k`` or ``family=CoalitionFamily``;
    ``dictator`` takes ``k``.
    """
    if rule_id == "ultrafilter":
        if "family" in params:
            return UltrafilterRule(params["family"])
        if "principal" in params:
            if society is None:
                raise FormatError("ultrafilter principal=k needs the society")
            return UltrafilterRule.principal(society, str(params["principal"]))
        raise FormatError("ultrafilter rule needs principal=k or family")
    if rule_id == "dictator":
        k = params.get("k")
        if k is None:
            raise FormatError("dictator rule needs k")
        if society is not None and str(k) not in society:
            raise FormatError(f"dictator {k!r} is not in the society")
        return DictatorRule(str(k))
    simple = {
        "constant-indifference": ConstantIndifferenceRule,
        "pointwise-mean": PointwiseMeanRule,
        "pairwise-majority": PairwiseMajorityRule,
    }
    if rule_id in simple:
        if params:
            raise FormatError(f"{rule_id} takes no parameters")
        return simple[rule_id]()
    raise UnknownOperatorError(f"unknown rule {rule_id!r}")


BUILTIN_RULES = (
    "ultrafilter",
    "dictator",
    "constant-indifference",
    "pointwise-mean",
    "pairwise-majority",
)


# -- profile spaces ------------------------------------------------------------

@dataclass(frozen=True)
class SpaceSpec:
    """A finite set of profiles to quantify over.

    ``mode="exhaustive"`` takes every profile of grid-valued linear
    relations; ``mode="sampled"`` draws ``count`` profiles from the seeded
    two-stage sampler of :func:`~fuzzy_arrow.builders.sample_linear`.
    """

    alternatives: tuple
    society: tuple
    grid: DegreeGrid = DegreeGrid(1)
    tnorm: str = "minimum"
    mode: str = "exhaustive"
    count: int = 0
    seed: Optional[int] = None
    budget: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alternatives", _check_labels(self.alternatives))
        object.__setattr__(self, "society", check_society(self.society))
        get_tnorm(self.tnorm)
        if len(self.alternatives) > MAX_ENUM_ALTERNATIVES:
            raise ValueError(f"spaces are capped at {MAX_ENUM_ALTERNATIVES} alternatives")
        _closed_table(self.grid, self.tnorm)
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {self.mode!r}")
        if self.mode == "sampled" and (self.seed is None or self.count < 1):
            raise ValueError("sampled spaces need a seed and a positive count")

    @classmethod
    def exhaustive(cls, n_alternatives, n_individuals, resolution=1, tnorm="minimum", **kw):
        from .families import make_society

        return cls(
            default_alternatives(n_alternatives),
            make_society(n_individuals),
            DegreeGrid(resolution),
            tnorm,
            **kw,
        )

    @classmethod
    def sampled(cls, n_alternatives, n_individuals, resolution, tnorm, count, seed, **kw):
        from .families import make_society

        return cls(
            default_alternatives(n_alternatives),
            make_society(n_individuals),
            DegreeGrid(resolution),
            tnorm,
            mode="sampled",
            count=count,
            seed=seed,
            **kw,
        )

    @cached_property
    def linear_relations(self) -> tuple:
        return tuple(enumerate_linear(self.alternatives, self.grid, self.tnorm))

    def size(self) -> int:
        if self.mode == "sampled":
            return self.count
        return len(self.linear_relations) ** len(self.society)

    def _budget(self):
        return self.budget if self.budget is not None else scan_budget()

    def profiles(self) -> Iterator[Profile]:
        size = self.size()
        if size > self._budget():
            raise BudgetExceededError(
                f"space holds {size} profiles, over the budget of {self._budget()}"
            )
        if self.mode == "sampled":
            yield from self._samples
        elif size <= PROFILE_CACHE_LIMIT:
            yield from self._exhaustive
        else:
            yield from self._iter_exhaustive()

    def _iter_exhaustive(self):
        for rels in itertools.product(self.linear_relations, repeat=len(self.society)):
            yield Profile._trusted(self.society, rels)

    @cached_property
    def _exhaustive(self) -> tuple:
        return tuple(self._iter_exhaustive())

    @cached_property
    def _samples(self) -> tuple:
        rng = random.Random(self.seed)
        n = len(self.society)
        return tuple(
            Profile._trusted(
                self.society, tuple(_sample(rng, self.alternatives, self.grid) for _ in range(n))
            )
            for _ in range(self.count)
        )

    def describe(self) -> dict:
        out = {
            "alternatives": list(self.alternatives),
            "society": list(self.society),
            "grid": self.grid.resolution,
            "tnorm": self.tnorm,
            "mode": self.mode,
            "profiles": self.size(),
        }
        if self.mode == "sampled":
            out["seed"] = self.seed
        return out


def _evaluations(f, space: SpaceSpec):
    for prof in space.profiles():
        yield prof, f(prof)


class MemoRule(AggregationRule):
    """Caches another rule's outputs by profile; used to share work across checkers."""

    def __init__(self, rule):
        self.rule = rule
        self.rule_id = getattr(rule, "rule_id", getattr(rule, "__name__", "custom"))
        self.lp_valued = getattr(rule, "lp_valued", False)
        self._cache = {}
        self._interned = {}

    @property
    def params(self):
        return getattr(self.rule, "params", {})

    def __call__(self, profile):
        out = self._cache.get(profile)
        if out is None:
            out = self.rule(profile)
            # equal outputs share one object, so per-relation caches are reused
            key = (out.alternatives, degree_codes(out))
            out = self._cache[profile] = self._interned.setdefault(key, out)
        return out


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(n) if i != j]




# -- checkers ------------------------------------------------------------------

def check_range(f, space: SpaceSpec) -> Verdict:
    """Every output is linear for the space's t-norm."""
    for prof, out in _evaluations(f, space):
        v = is_linear(out, space.tnorm)
        if not v:
            return Verdict.fail(
                "range", {"profile": prof, "output": out, "detail": v.witness}, reason=v.reason
            )
    return Verdict.ok("range")


def check_weak_pareto(f, space: SpaceSpec) -> Verdict:
    alts = space.alternatives
    pairs = _pairs(len(alts))
    for prof, out in _evaluations(f, space):
        signs = [strict_signs(R) for R in prof.relations]
        os_ = strict_signs(out)
        for i, j in pairs:
            if all(s[i][j] for s in signs) and not os_[i][j]:
                return Verdict.fail(
                    "weak_pareto", {"profile": prof, "pair": [alts[i], alts[j]], "output": out}
                )
    return Verdict.ok("weak_pareto")


def check_strong_pareto(f, space: SpaceSpec) -> Verdict:
    alts = space.alternatives
    pairs = _pairs(len(alts))
    for prof, out in _evaluations(f, space):
        strict = [strict_matrix(R) for R in prof.relations]
        po = strict_matrix(out)
        for i, j in pairs:
            floor = min(p[i][j] for p in strict)
            got = po[i][j]
            if got < floor:
                return Verdict.fail(
                    "strong_pareto",
                    {
                        "profile": prof,
                        "pair": [alts[i], alts[j]],
                        "output": out,
                        "social_strict": got,
                        "min_individual_strict": floor,
                    },
                )
    return Verdict.ok("strong_pareto")


def _restriction(d, i, j):
    return (d[i][i], d[i][j], d[j][i], d[j][j])


def check_iia(f, space: SpaceSpec) -> Verdict:
    """Outputs restricted to a pair depend only on the profile restricted to it.

    Profiles are bucketed by the restricted degrees of every individual,
    so the scan is linear in the size of the space.
    """
    alts = space.alternatives
    pairs = list(itertools.combinations(range(len(alts)), 2))
    seen = {}
    for prof, out in _evaluations(f, space):
        rels = [degree_codes(R) for R in prof.relations]
        oc = degree_codes(out)
        for i, j in pairs:
            key = (i, j, tuple(_restriction(d, i, j) for d in rels))
            value = _restriction(oc, i, j)
            first = seen.setdefault(key, (prof, out, value))
            if first[2] != value:
                return Verdict.fail(
                    "iia",
                    {
                        "pair": [alts[i], alts[j]],
                        "profile": first[0],
                        "other_profile": prof,
                        "output": first[1],
                        "other_output": out,
                    },
                )
    return Verdict.ok("iia")


def check_neutrality(f, space: SpaceSpec) -> Verdict:
    """Pairs with identical individual degrees, none fully indifferent, get identical outputs."""
    alts = space.alternatives
    pairs = _pairs(len(alts))
    seen = {}
    one = (1, 1)
    for prof, out in _evaluations(f, space):
        rels = [degree_codes(R) for R in prof.relations]
        od = degree_codes(out)
        for i, j in pairs:
            key = tuple((d[i][j], d[j][i]) for d in rels)
            if any(a == one and b == one for a, b in key):
                continue
            value = (od[i][j], od[j][i])
            first = seen.setdefault(key, (prof, (i, j), value, out))
            if first[2] != value:
                fi, fj = first[1]
                return Verdict.fail(
                    "neutrality",
                    {
                        "profile": first[0],
                        "pair": [alts[fi], alts[fj]],
                        "output": first[3],
                        "other_profile": prof,
                        "other_pair": [alts[i], alts[j]],
                        "other_output": out,
                    },
                )
    return Verdict.ok("neutrality")


def check_qualitative_iia(f, space: SpaceSpec) -> Verdict:
    """Same strict directions on a pair, nobody indifferent, give the same social preorder on it.

    The social preorder is read off the degree-1 cells, so the check also
    runs on rules whose outputs are not linear.
    """
    alts = space.alternatives
    pairs = list(itertools.combinations(range(len(alts)), 2))
    seen = {}
    one = (1, 1)
    for prof, out in _evaluations(f, space):
        rels = [degree_codes(R) for R in prof.relations]
        od = degree_codes(out)
        for i, j in pairs:
            if any(d[i][j] == one and d[j][i] == one for d in rels):
                continue
            key = (i, j, tuple(d[i][j] == one for d in rels))
            value = (od[i][j] == one, od[j][i] == one)
            first = seen.setdefault(key, (prof, out, value))
            if first[2] != value:
                return Verdict.fail(
                    "qualitative_iia",
                    {
                        "pair": [alts[i], alts[j]],
                        "profile": first[0],
                        "other_profile": prof,
                        "output": first[1],
                        "other_output": out,
                    },
                )
    return Verdict.ok("qualitative_iia")


def find_dictator(f, space: SpaceSpec, strict_mode="weak") -> Optional[str]:
    """Least-indexed individual whose strict preferences the rule always reproduces.

    ``weak``: ``P_k(x,y) > 0`` implies ``P_f(x,y) > 0``. ``strong``:
    ``P_f(x,y) >= P_k(x,y)`` pointwise, which on a finite degree set is the
    same as the threshold condition for every alpha in [0, 1).
    """
    if strict_mode not in ("weak", "strong"):
        raise ValueError(f"strict_mode must be 'weak' or 'strong', got {strict_mode!r}")
    candidates = list(range(len(space.society)))
    pairs = _pairs(len(space.alternatives))
    for prof, out in _evaluations(f, space):
        po = strict_matrix(out)
        keep = []
        for k in candidates:
            pk_row = strict_matrix(prof.relations[k])
            ok = True
            for i, j in pairs:
                pk = pk_row[i][j]
                pf = po[i][j]
                if (strict_mode == "weak" and pk > 0 and not pf > 0) or (
                    strict_mode == "strong" and pf < pk
                ):
                    ok = False
                    break
            if ok:
                keep.append(k)
        candidates = keep
        if not candidates:
            return None
    return space.society[candidates[0]]


# -- witness profiles from the proofs ------------------------------------------

def crisp(alternatives, blocks) -> FuzzyRelation:
    """Crisp relation of the preorder given by ``blocks`` (best first)."""
    return lift_preorder(TotalPreorder.from_blocks(blocks, alternatives))


def _extended(alternatives, partial_blocks):
    inside = [a for b in partial_blocks for a in b]
    partial = crisp(inside, partial_blocks)
    return extend(partial, alternatives, "minimum")


def decisive_witness_profile(society, coalition, alternatives, x=None, y=None) -> Profile:
    """Members of ``coalition`` rank ``x > y``, the rest ``y > x``; everything else below, indifferent."""
    soc = check_society(society)
    alts = _check_labels(alternatives)
    x = alts[0] if x is None else x
    y = alts[1] if y is None else y
    members = set(coalition)
    up = _extended(alts, [[x], [y]])
    down = _extended(alts, [[y], [x]])
    return Profile(soc, [up if k in members else down for k in soc])


def opposed_pair_profile(alternatives=("x", "y"), society=("1", "2")) -> Profile:
    """First individual ``x > y``, second ``y > x``, extended crisply to the rest."""
    return decisive_witness_profile(society, [society[0]], alternatives)


def condorcet_profile(alternatives=("x", "y", "z"), society=("1", "2", "3")) -> Profile:
    """The cyclic profile x>y>z, y>z>x, z>x>y (extended to any further alternatives)."""
    alts = _check_labels(alternatives)
    x, y, z = alts[:3]
    orders = ([[x], [y], [z]], [[y], [z], [x]], [[z], [x], [y]])
    return Profile(society, [_extended(alts, o) for o in orders])


def intersection_witness_profile(society, first, second, alternatives) -> Profile:
    """Profile showing decisive coalitions are closed under intersection.

    With ``U = first`` and ``W = second``: members of both rank x>z>y,
    of U only z>y>x, of W only y>x>z, of neither y>z>x. If U and W are
    decisive, x beats y socially although only the intersection prefers it.
    """
    alts = _check_labels(alternatives)
    x, y, z = alts[:3]
    u, w = set(first), set(second)
    table = {
        (True, True): [[x], [z], [y]],
        (True, False): [[z], [y], [x]],
        (False, True): [[y], [x], [z]],
        (False, False): [[y], [z], [x]],
    }
    return Profile(society, [_extended(alts, table[(k in u, k in w)]) for k in society])


def complement_witness_profile(society, coalition, alternatives, z=None) -> Profile:
    """Profile showing a coalition or its complement is decisive.

    Everyone ranks the alternatives other than ``z`` in label order;
    members of ``coalition`` put ``z`` last, the others put it first.
    """
    alts = _check_labels(alternatives)
    z = alts[-1] if z is None else z
    rest = [[a] for a in alts if a != z]
    members = set(coalition)
    low = crisp(alts, rest + [[z]])
    high = crisp(alts, [[z]] + rest)
    return Profile(society, [low if k in members else high for k in society])
