"""Exact, finite-space verification of Arrovian aggregation of fuzzy preferences.

Degrees are exact rationals. Linear fuzzy preferences are enumerated or
sampled on uniform degree grids, rules are audited against Pareto,
independence and neutrality conditions, and decisive coalition families
are extracted and checked for the ultrafilter property.
"""

from __future__ import annotations

from .aggregation import (
    BUILTIN_RULES,
    AggregationRule,
    ConstantIndifferenceRule,
    DictatorRule,
    FunctionRule,
    MemoRule,
    PairwiseMajorityRule,
    PointwiseMeanRule,
    Profile,
    SpaceSpec,
    UltrafilterRule,
    aggregate_ultrafilter,
    check_iia,
    check_neutrality,
    check_profile,
    check_qualitative_iia,
    check_range,
    check_strong_pareto,
    check_weak_pareto,
    complement_witness_profile,
    condorcet_profile,
    crisp,
    decisive_witness_profile,
    find_dictator,
    intersection_witness_profile,
    make_rule,
    opposed_pair_profile,
)
from .builders import (
    ConsecutiveSpec,
    constant_degree,
    enumerate_linear,
    extend,
    from_consecutive,
    sample_linear,
)
from .coalitions import audit_rule, decisive_family, replay_witnesses
from .degrees import (
    TCONORMS,
    TNORMS,
    DegreeGrid,
    degree,
    find_one_divisor_on_grid,
    format_degree,
    parse_degree,
    tconorm_apply,
    tnorm_apply,
)
from .errors import (
    BudgetExceededError,
    DegreeError,
    FormatError,
    FuzzyArrowError,
    GridNotClosedError,
    NotLinearError,
    StructureError,
    UnknownAlternativeError,
    UnknownOperatorError,
)
from .families import (
    CoalitionFamily,
    enumerate_ultrafilters,
    is_filter,
    is_ultrafilter,
    make_society,
    principal_element,
)
from .relations import (
    FuzzyRelation,
    TotalPreorder,
    Verdict,
    associated_preorder,
    check_betweenness_monotone,
    check_complete,
    check_reflexive,
    check_s_connected,
    check_sandwich,
    check_t_transitive,
    collapse_to_crisp,
    enumerate_total_preorders,
    is_linear,
    lift_preorder,
    restrict,
    strict_degree,
)

__version__ = "0.1.0"
