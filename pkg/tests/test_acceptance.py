"""One section per acceptance criterion; the conftest hook prints a PASS/FAIL line for each."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction as F

import pytest

from fuzzy_arrow import (
    TNORMS,
    CoalitionFamily,
    DegreeGrid,
    SpaceSpec,
    UltrafilterRule,
    audit_rule,
    check_betweenness_monotone,
    check_iia,
    check_neutrality,
    check_qualitative_iia,
    check_range,
    check_sandwich,
    check_strong_pareto,
    check_weak_pareto,
    decisive_family,
    enumerate_linear,
    extend,
    find_dictator,
    is_linear,
    is_ultrafilter,
    make_rule,
    make_society,
    principal_element,
    restrict,
)
from fuzzy_arrow.aggregation import default_alternatives
from fuzzy_arrow.fixtures import example_relation
from fuzzy_arrow.relations import STRICT_OPERATORS, associated_preorder, strict_matrix
from fuzzy_arrow.serialization import dumps, profile_from_json, relation_from_json

import oracles

SEED = 20240611
SAMPLES = 10_000


def principal_ultrafilters():
    for n in (2, 3):
        soc = make_society(n)
        for k in soc:
            yield CoalitionFamily.principal(soc, k)


ULTRAFILTERS = list(principal_ultrafilters())
UF_IDS = [f"N{len(U.society)}-k{principal_element(U)}" for U in ULTRAFILTERS]

_spaces: dict = {}


def space(kind, n_alt, n_ind, m, t):
    """Shared spaces, so sampled profiles are drawn once per configuration."""
    key = (kind, n_alt, n_ind, m, t)
    if key not in _spaces:
        if kind == "exhaustive":
            _spaces[key] = SpaceSpec.exhaustive(n_alt, n_ind, m, t)
        else:
            _spaces[key] = SpaceSpec.sampled(n_alt, n_ind, m, t, SAMPLES, SEED)
    return _spaces[key]


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
@pytest.mark.parametrize("t", sorted(TNORMS))
def test_r1_not_linear_for_any_tnorm(t):
    v = is_linear(example_relation("R1"), t)
    assert not v.passed
    assert v.reason == "t_transitive"
    assert v.witness["triple"] == ["z", "x", "y"]
    assert v.witness["rhs"] == F(8, 10)
    assert v.witness["lhs"] == F(3, 10)


@pytest.mark.criterion(1)
def test_r2_lukasiewicz_but_not_minimum():
    R2 = example_relation("R2")
    assert is_linear(R2, "lukasiewicz")
    v = is_linear(R2, "minimum")
    assert not v and v.reason == "t_transitive"
    assert v.witness["lhs"] == F(2, 10) and v.witness["rhs"] == F(3, 10)


@pytest.mark.criterion(1)
def test_r3_minimum_linear():
    assert is_linear(example_relation("R3"), "minimum")


# -- 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_betweenness_and_sandwich_sweep(t, m):
    seen = 0
    for R in enumerate_linear(default_alternatives(4), DegreeGrid(m), t):
        assert check_betweenness_monotone(R, t), R
        assert check_sandwich(R, t), R
        seen += 1
    assert seen == oracles.LINEAR_COUNTS[(4, m, t)]


# -- 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("n_x", [4, 5])
def test_extension_sweep(t, m, n_x):
    X = default_alternatives(n_x)
    checked = 0
    for size in (2, 3):
        for Z in itertools.combinations(X, size):
            for partial in enumerate_linear(Z, DegreeGrid(m), t):
                R = extend(partial, X, t)
                assert is_linear(R, t), (Z, partial)
                assert restrict(R, Z) == partial
                checked += 1
    assert checked > 0


# -- 4 ---------------------------------------------------------------------------

def _assert_rule_conforms(U, sp):
    rule = UltrafilterRule(U)
    for check in (check_range, check_iia, check_weak_pareto, check_strong_pareto):
        v = check(rule, sp)
        assert v.passed, (check.__name__, v.reason, v.witness)
    for mode in ("canonical-witness", "exhaustive"):
        assert decisive_family(rule, sp, mode) == U, mode


@pytest.mark.criterion(4)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
@pytest.mark.parametrize("U", ULTRAFILTERS, ids=UF_IDS)
def test_ultrafilter_rule_exhaustive_m1(U, t):
    _assert_rule_conforms(U, space("exhaustive", 3, len(U.society), 1, t))


@pytest.mark.criterion(4)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
@pytest.mark.parametrize("U", ULTRAFILTERS, ids=UF_IDS)
def test_ultrafilter_rule_sampled_m2(U, t):
    sp = space("sampled", 3, len(U.society), 2, t)
    assert sp.size() >= 10_000
    _assert_rule_conforms(U, sp)


# -- 5 ---------------------------------------------------------------------------

def builtin_rules(society):
    rules = [make_rule("ultrafilter", society, principal=k) for k in society]
    rules += [make_rule("dictator", society, k=k) for k in society]
    rules += [make_rule(r) for r in ("constant-indifference", "pointwise-mean", "pairwise-majority")]
    return rules


@pytest.mark.criterion(5)
def test_wp_iia_rules_have_principal_decisive_ultrafilter():
    sp = space("exhaustive", 3, 2, 1, "minimum")
    qualifying = []
    for rule in builtin_rules(sp.society):
        report = audit_rule(rule, sp)
        ax = report["axioms"]
        if not (ax["range"] and ax["weak_pareto"] and ax["iia"]):
            continue
        qualifying.append(rule.rule_id)
        family = report["decisive_family"]
        assert is_ultrafilter(family)
        assert report["decisive_family_canonical"] == family
        k = principal_element(family)
        assert k is not None and CoalitionFamily.principal(sp.society, k) == family
        assert k == find_dictator(rule, sp, "weak") == report["dictator"]["weak"]
        assert report["cross_checks"]["consistent"] is True
    assert sorted(qualifying) == ["dictator", "dictator", "ultrafilter", "ultrafilter"]


@pytest.mark.criterion(5)
def test_wp_iia_without_range_is_not_enough():
    # mean and majority pass WP+IIA on the space yet are not LP-valued; their families are not ultrafilters
    sp = space("exhaustive", 3, 2, 1, "minimum")
    for rule_id in ("pointwise-mean", "pairwise-majority"):
        rule = make_rule(rule_id)
        assert check_weak_pareto(rule, sp) and check_iia(rule, sp)
        assert not check_range(rule, sp)
        assert not is_ultrafilter(decisive_family(rule, sp, "exhaustive"))
        assert find_dictator(rule, sp) is None


@pytest.mark.criterion(5)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
def test_strong_dictator_inequality_on_samples(t):
    sp = space("sampled", 3, 2, 2, t)
    assert sp.size() >= 10_000
    for rule in builtin_rules(sp.society)[:4]:
        assert check_strong_pareto(rule, sp)
        k = find_dictator(rule, sp, "weak")
        assert find_dictator(rule, sp, "strong") == k
        ki = sp.society.index(k)
        for prof in sp.profiles():
            pf, pk = strict_matrix(rule(prof)), strict_matrix(prof.relations[ki])
            assert all(a >= b for rf, rk in zip(pf, pk) for a, b in zip(rf, rk))


# -- 6 ---------------------------------------------------------------------------

def _replay(rule, verdict_witness):
    """Serialize the witness profile, parse it back, and re-aggregate."""
    text = dumps(verdict_witness["profile"])
    prof = profile_from_json(json.loads(text))
    assert dumps(prof) == text
    return prof, rule(prof)


@pytest.mark.criterion(6)
def test_mean_completeness_violation_replays():
    rule = make_rule("pointwise-mean")
    v = check_range(rule, space("exhaustive", 2, 2, 1, "minimum"))
    assert not v and v.reason == "complete"
    prof, out = _replay(rule, v.witness)
    # the witness is the opposed crisp pair
    r1, r2 = prof.relations
    assert all(x in (0, 1) for R in (r1, r2) for row in R.degrees for x in row)
    assert associated_preorder(r1).strictly_prefers("y", "x")
    assert associated_preorder(r2).strictly_prefers("x", "y")
    again = is_linear(out, "minimum")
    assert again.reason == "complete" and again.witness == v.witness["detail"]
    assert out["x", "y"] == out["y", "x"] == F(1, 2)


def _is_condorcet(prof):
    orders = []
    for R in prof.relations:
        p = associated_preorder(R)
        if len(p.blocks()) != len(p.alternatives):
            return False
        orders.append(tuple(b[0] for b in p.blocks()))
    first = orders[0]
    rotations = {first[i:] + first[:i] for i in range(len(first))}
    return len(set(orders)) == 3 and set(orders) <= rotations


@pytest.mark.criterion(6)
def test_majority_condorcet_violation_found_and_replays():
    rule = make_rule("pairwise-majority")
    sp = space("exhaustive", 3, 3, 1, "minimum")
    assert not check_range(rule, sp)
    # search the space for strict-order profiles breaking transitivity: they are exactly the cycles
    found = []
    for prof in sp.profiles():
        if all(len(associated_preorder(R).blocks()) == 3 for R in prof.relations):
            v = is_linear(rule(prof), "minimum")
            if not v:
                found.append((prof, v))
    assert found and all(_is_condorcet(p) for p, _ in found)
    assert len(found) == 12  # two cyclic orders, their three rotations dealt out to three voters: 2 * 3!
    prof, v = found[0]
    replayed, out = _replay(rule, {"profile": prof})
    again = is_linear(out, "minimum")
    assert again.reason == "t_transitive" and again.witness == v.witness


@pytest.mark.criterion(6)
def test_constant_indifference_weak_pareto_violation_replays():
    rule = make_rule("constant-indifference")
    v = check_weak_pareto(rule, space("exhaustive", 3, 2, 1, "minimum"))
    assert not v
    prof, out = _replay(rule, v.witness)
    x, y = v.witness["pair"]
    assert all(R[x, y] > R[y, x] for R in prof.relations)
    assert out[x, y] == out[y, x] == 1
    assert relation_from_json(json.loads(dumps(v.witness["output"]))) == out


# -- 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("k", ["1", "2"])
def test_ultrafilter_neutrality_and_qualitative_iia(k, m, t):
    sp = space("exhaustive", 3, 2, m, t)
    rule = make_rule("ultrafilter", sp.society, principal=k)
    assert check_neutrality(rule, sp)
    assert check_qualitative_iia(rule, sp)


# -- 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8)
@pytest.mark.parametrize("n, expected", [(2, 3), (3, 13), (4, 75)])
def test_crisp_counts_match_brute_force(n, expected):
    assert oracles.crisp_preorder_count(n) == expected == oracles.fubini(n)
    for t in ("minimum", "lukasiewicz", "product", "drastic"):
        assert sum(1 for _ in enumerate_linear(default_alternatives(n), DegreeGrid(1), t)) == expected


@pytest.mark.criterion(8)
@pytest.mark.parametrize("t", ["minimum", "lukasiewicz"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_m2_counts_frozen_and_rechecked(n, t):
    got = [
        tuple(tuple(int(v * 2) for v in row) for row in R.degrees)
        for R in enumerate_linear(default_alternatives(n), DegreeGrid(2), t)
    ]
    assert len(got) == oracles.LINEAR_COUNTS[(n, 2, t)]
    assert len(set(got)) == len(got)
    assert sorted(got) == got  # row-major lexicographic
    assert set(got) == set(oracles.brute_force_linear_matrices(n, 2, t))


# -- 9 ---------------------------------------------------------------------------

@pytest.mark.criterion(9)
@pytest.mark.parametrize("m", range(1, 9))
def test_difference_rule_axioms(m):
    P = STRICT_OPERATORS["difference"]
    grid = DegreeGrid(m).carrier
    pairs = list(itertools.product(grid, repeat=2))
    # i
    assert P(F(1), F(0)) == 1
    for a, b in pairs:
        # ii
        assert (P(a, b) > 0) == (a > b)
        assert 0 <= P(a, b) <= 1
    # iii: R(x,y) >= R'(a,b) and R(y,x) <= R'(b,a) imply P_R(x,y) >= P_R'(a,b)
    for (rxy, ryx), (rab, rba) in itertools.product(pairs, repeat=2):
        if rxy >= rab and ryx <= rba:
            assert P(rxy, ryx) >= P(rab, rba)
