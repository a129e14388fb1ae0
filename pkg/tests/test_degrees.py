from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from fuzzy_arrow.degrees import (
    TCONORMS,
    TNORMS,
    DegreeGrid,
    degree,
    find_one_divisor_on_grid,
    format_degree,
    get_tnorm,
    parse_degree,
    tconorm_apply,
    tnorm_apply,
)
from fuzzy_arrow.errors import DegreeError, UnknownOperatorError

unit = st.fractions(min_value=0, max_value=1, max_denominator=24)
tnorm_ids = st.sampled_from(sorted(TNORMS))
tconorm_ids = st.sampled_from(sorted(TCONORMS))


def test_degree_coercion():
    assert degree("3/10") == F(3, 10)
    assert degree(1) == 1 and degree(F(0)) == 0
    for bad in (0.5, True, "1.5", "-1/2", "abc", "1/0", None):
        with pytest.raises(DegreeError):
            degree(bad)


def test_format_and_parse_are_canonical():
    assert format_degree(F(3, 10)) == "3/10"
    assert format_degree(F(8, 10)) == "4/5"
    assert format_degree(F(1)) == "1" and format_degree(F(0)) == "0"
    assert parse_degree("6/20") == F(3, 10)
    for bad in ("0.3", "3e-1", 0.3, 1):
        with pytest.raises(DegreeError):
            parse_degree(bad)


@given(unit)
def test_format_parse_round_trip(a):
    assert parse_degree(format_degree(a)) == a
    assert format_degree(parse_degree(format_degree(a))) == format_degree(a)


@pytest.mark.parametrize(
    "t, a, b, expected",
    [
        ("lukasiewicz", "3/10", "7/10", 0),
        ("minimum", "3/10", "7/10", F(3, 10)),
        ("product", "1/2", "3/5", F(3, 10)),
        ("drastic", "1/2", "1/2", 0),
        ("drastic", "1", "1/2", F(1, 2)),
    ],
)
def test_tnorm_values(t, a, b, expected):
    assert tnorm_apply(t, a, b) == expected


@pytest.mark.parametrize("t", sorted(TNORMS))
def test_one_is_the_tnorm_unit(t):
    assert tnorm_apply(t, 1, "4/10") == F(4, 10)


@pytest.mark.parametrize(
    "s, a, b, expected",
    [
        ("maximum", 1, 0, 1),
        ("lukasiewicz-sum", "6/10", "7/10", 1),
        ("maximum", "6/10", "7/10", F(7, 10)),
        ("probabilistic-sum", "1/2", "1/2", F(3, 4)),
        ("drastic", "1/2", "1/2", 1),
        ("drastic", "1/2", "0", F(1, 2)),
    ],
)
def test_tconorm_values(s, a, b, expected):
    assert tconorm_apply(s, a, b) == expected


def test_unknown_operators():
    with pytest.raises(UnknownOperatorError, match="hamacher"):
        tnorm_apply("hamacher", 0, 0)
    with pytest.raises(UnknownOperatorError):
        tconorm_apply("nope", 0, 0)
    with pytest.raises(KeyError):
        get_tnorm("nope")


@given(tnorm_ids, unit, unit, unit)
def test_tnorm_laws(name, a, b, c):
    t = TNORMS[name]
    assert t(a, b) == t(b, a)
    assert t(a, F(1)) == a
    assert t(t(a, b), c) == t(a, t(b, c))
    lo, hi = min(a, c), max(a, c)
    assert t(lo, b) <= t(hi, b)
    assert t(a, b) <= min(a, b)


@given(tconorm_ids, unit, unit, unit)
def test_tconorm_laws(name, a, b, c):
    s = TCONORMS[name]
    assert s(a, b) == s(b, a)
    assert s(a, F(0)) == a
    assert s(s(a, b), c) == s(a, s(b, c))
    lo, hi = min(a, c), max(a, c)
    assert s(lo, b) <= s(hi, b)
    assert s(a, b) >= max(a, b)


@given(tconorm_ids, unit, unit)
def test_declared_one_divisor_flag_is_never_contradicted(name, a, b):
    s = TCONORMS[name]
    if s.no_one_divisors and s(a, b) == 1:
        assert a == 1 or b == 1


def test_grid_carrier():
    g = DegreeGrid(4)
    assert g.carrier == (0, F(1, 4), F(1, 2), F(3, 4), 1)
    assert g.interior == (F(1, 4), F(1, 2), F(3, 4))
    assert F(1, 2) in g and F(1, 3) not in g
    assert g.index(F(3, 4)) == 3
    for bad in (0, -1, 1.5):
        with pytest.raises(DegreeError):
            DegreeGrid(bad)


@given(st.integers(1, 40))
def test_carrier_has_m_plus_one_distinct_points(m):
    c = DegreeGrid(m).carrier
    assert len(set(c)) == m + 1 and c[0] == 0 and c[-1] == 1


def test_grid_closure():
    for m in range(1, 9):
        g = DegreeGrid(m)
        assert g.is_closed_under("minimum")
        assert g.is_closed_under("lukasiewicz")
        assert g.is_closed_under("drastic")
        assert g.is_closed_under("product") == (m == 1)
    table = DegreeGrid(2).operation_table("product")
    assert table[1][1] is None  # 1/4 is off the grid


def test_one_divisor_search():
    assert find_one_divisor_on_grid("maximum", DegreeGrid(10)) is None
    a, b = find_one_divisor_on_grid("lukasiewicz-sum", DegreeGrid(10))
    assert 0 < a < 1 and 0 < b < 1 and a + b >= 1
    assert find_one_divisor_on_grid("drastic", DegreeGrid(2)) == (F(1, 2), F(1, 2))
    assert find_one_divisor_on_grid("probabilistic-sum", DegreeGrid(12)) is None
    with pytest.raises(DegreeError):
        find_one_divisor_on_grid("maximum", DegreeGrid(1))


def test_maximum_has_no_one_divisor_up_to_64():
    assert all(find_one_divisor_on_grid("maximum", DegreeGrid(m)) is None for m in range(2, 65))
