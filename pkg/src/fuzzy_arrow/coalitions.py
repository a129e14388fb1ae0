"""Decisive coalitions of a rule, and the full axiom audit.

:func:`decisive_family` computes the decisive coalitions of a rule in two
independent ways, and :func:`audit_rule` runs every checker on a space and
cross-validates the results against the finite-society dictatorship
theorem: a rule into linear preferences that is weakly Paretian and
independent of irrelevant alternatives has an ultrafilter of decisive
coalitions, generated by its dictator.
"""

from __future__ import annotations

from .aggregation import (
    MemoRule,
    condorcet_profile,
    SpaceSpec,
    check_iia,
    check_neutrality,
    check_qualitative_iia,
    check_range,
    check_strong_pareto,
    check_weak_pareto,
    decisive_witness_profile,
    find_dictator,
    strict_masks,
)
from .errors import FuzzyArrowError, StructureError
from .families import (  # noqa: F401  (re-exported)
    CoalitionFamily,
    _require_small,
    enumerate_ultrafilters,
    is_filter,
    is_ultrafilter,
    principal_element,
)
from .relations import is_linear, strict_from_degrees, strict_signs

MODES = ("canonical-witness", "exhaustive")


def decisive_family(f, space: SpaceSpec, mode="canonical-witness") -> CoalitionFamily:
    """Coalitions ``C`` whose strict ``x > y``, against ``y > x`` from everyone else, wins socially.

    ``canonical-witness`` aggregates one crisp profile per coalition (C
    ranks the first two alternatives one way, the rest the other way,
    remaining alternatives below and indifferent). For weakly Paretian,
    independent rules this equals the decisive family; otherwise it
    over-approximates it.

    ``exhaustive`` applies the definition literally on the space: every
    profile and every ordered pair where the society splits exactly into
    C and its complement must produce a social strict preference for C's
    side. Coalitions the space never tests stay in the family.
    """
    soc = space.society
    _require_small(soc)
    full = (1 << len(soc)) - 1
    if mode == "canonical-witness":
        members = []
        for mask in range(full + 1):
            coalition = [k for b, k in enumerate(soc) if mask >> b & 1]
            prof = decisive_witness_profile(soc, coalition, space.alternatives)
            d = f(prof).degrees
            if strict_from_degrees(d[0][1], d[1][0]) > 0:
                members.append(mask)
        return CoalitionFamily(soc, members)
    if mode == "exhaustive":
        refuted = set()
        n = len(space.alternatives)
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        for prof in space.profiles():
            out = None
            for i, j in pairs:
                fwd, bwd = strict_masks(prof, i, j)
                if fwd | bwd != full or fwd in refuted:
                    continue
                if out is None:
                    out = strict_signs(f(prof))
                if not out[i][j]:
                    refuted.add(fwd)
        return CoalitionFamily(soc, (m for m in range(full + 1) if m not in refuted))
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


AXIOM_CHECKS = (
    ("range", check_range),
    ("weak_pareto", check_weak_pareto),
    ("strong_pareto", check_strong_pareto),
    ("iia", check_iia),
    ("neutrality", check_neutrality),
    ("qualitative_iia", check_qualitative_iia),
)


def _replay_profiles(space: SpaceSpec) -> dict:
    soc, alts = space.society, space.alternatives
    out = {}
    if len(soc) >= 2 and len(alts) >= 2:
        out["opposed_pair"] = decisive_witness_profile(soc, soc[:1], alts)
    if len(soc) == 3 and len(alts) >= 3:
        out["condorcet"] = condorcet_profile(alts, soc)
    return out


def replay_witnesses(f, space: SpaceSpec) -> dict:
    """Aggregate the named crisp proof profiles that fit the space and test the outputs."""
    report = {}
    for name, prof in _replay_profiles(space).items():
        out = f(prof)
        report[name] = {"profile": prof, "output": out, "linear": is_linear(out, space.tnorm)}
    return report


def _skipped(cause):
    return {"skipped": str(cause)}


def audit_rule(f, space: SpaceSpec) -> dict:
    """Run every checker on ``space`` and cross-validate the outcomes.

    The report maps section names to verdicts, families or individuals;
    a section that could not be computed holds ``{"skipped": cause}``.
    Cross-checks apply when the rule is linear-valued, weakly Paretian
    and IIA on the space; otherwise they are reported as not applicable.
    """
    describe = getattr(f, "describe", None)
    report = {
        "rule": describe() if describe else {"id": getattr(f, "__name__", "custom"), "params": {}},
        "space": space.describe(),
    }
    f = MemoRule(f)
    axioms = {}
    for name, check in AXIOM_CHECKS:
        try:
            axioms[name] = check(f, space)
        except FuzzyArrowError as exc:
            axioms[name] = _skipped(exc)
    report["axioms"] = axioms

    families = {}
    for mode in MODES:
        try:
            families[mode] = decisive_family(f, space, mode)
        except FuzzyArrowError as exc:
            families[mode] = _skipped(exc)
    report["decisive_family"] = families["exhaustive"]
    report["decisive_family_canonical"] = families["canonical-witness"]

    family = families["exhaustive"]
    if isinstance(family, CoalitionFamily):
        report["ultrafilter_verdict"] = is_ultrafilter(family)
        try:
            report["principal"] = principal_element(family)
        except StructureError as exc:
            report["principal"] = _skipped(exc)
    else:
        report["ultrafilter_verdict"] = _skipped("decisive family unavailable")
        report["principal"] = _skipped("decisive family unavailable")

    dictators = {}
    for strict_mode in ("weak", "strong"):
        try:
            dictators[strict_mode] = find_dictator(f, space, strict_mode)
        except FuzzyArrowError as exc:
            dictators[strict_mode] = _skipped(exc)
    report["dictator"] = dictators
    try:
        report["witness_replays"] = replay_witnesses(f, space)
    except FuzzyArrowError as exc:
        report["witness_replays"] = _skipped(exc)

    hypotheses = all(
        axioms[k] is not None and getattr(axioms[k], "passed", False)
        for k in ("range", "weak_pareto", "iia")
    )
    cross = {"hypotheses_hold": hypotheses}
    if hypotheses and all(isinstance(v, CoalitionFamily) for v in families.values()):
        cross["modes_agree"] = families["canonical-witness"] == families["exhaustive"]
        cross["family_is_ultrafilter"] = bool(report["ultrafilter_verdict"])
        cross["principal_matches_dictator"] = report["principal"] == dictators["weak"]
        if getattr(axioms["strong_pareto"], "passed", False):
            cross["strong_dictator_matches"] = dictators["strong"] == dictators["weak"]
        cross["consistent"] = all(v for k, v in cross.items() if k != "hypotheses_hold")
    else:
        cross["consistent"] = None
    report["cross_checks"] = cross
    return report
