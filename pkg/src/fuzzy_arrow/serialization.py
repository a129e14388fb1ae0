"""JSON formats for relations, profiles, families and reports.

Degrees are written as canonical ``"p/q"`` strings. :func:`dumps` is the
single canonical serializer: parsing its output and dumping again gives
identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .aggregation import Profile
from .degrees import format_degree, parse_degree
from .errors import FormatError
from .families import CoalitionFamily
from .relations import FuzzyRelation, TotalPreorder, Verdict


def relation_to_json(R: FuzzyRelation) -> dict:
    return {
        "alternatives": list(R.alternatives),
        "degrees": [[format_degree(v) for v in row] for row in R.degrees],
    }


def relation_from_json(obj) -> FuzzyRelation:
    try:
        alts = obj["alternatives"]
        rows = obj["degrees"]
    except (KeyError, TypeError):
        raise FormatError("relation JSON needs 'alternatives' and 'degrees'") from None
    if not isinstance(alts, list) or not isinstance(rows, list):
        raise FormatError("'alternatives' and 'degrees' must be lists")
    if any(not isinstance(r, list) for r in rows):
        raise FormatError("'degrees' must be a list of rows")
    return FuzzyRelation(alts, [[parse_degree(v) for v in row] for row in rows])


def profile_to_json(P: Profile) -> dict:
    return {
        "society": list(P.society),
        "alternatives": list(P.alternatives),
        "relations": {k: relation_to_json(R) for k, R in P.items()},
    }


def profile_from_json(obj) -> Profile:
    try:
        society = obj["society"]
        alts = obj["alternatives"]
        rels = obj["relations"]
    except (KeyError, TypeError):
        raise FormatError("profile JSON needs 'society', 'alternatives' and 'relations'") from None
    if not isinstance(rels, dict):
        raise FormatError("'relations' must map individuals to relations")
    mapping = {k: relation_from_json(v) for k, v in rels.items()}
    prof = Profile.from_mapping(society, mapping)
    if list(prof.alternatives) != list(alts):
        raise FormatError("relation alternatives disagree with the profile's")
    return prof


def family_to_json(F: CoalitionFamily) -> dict:
    return {"society": list(F.society), "coalitions": [list(c) for c in F.coalitions()]}


def family_from_json(obj) -> CoalitionFamily:
    try:
        society = obj["society"]
        coalitions = obj["coalitions"]
    except (KeyError, TypeError):
        raise FormatError("family JSON needs 'society' and 'coalitions'") from None
    return CoalitionFamily.from_coalitions(society, coalitions)


def to_jsonable(obj):
    """Recursively convert library objects to JSON-ready values."""
    if isinstance(obj, Fraction):
        return format_degree(obj)
    if isinstance(obj, FuzzyRelation):
        return relation_to_json(obj)
    if isinstance(obj, Profile):
        return profile_to_json(obj)
    if isinstance(obj, CoalitionFamily):
        return family_to_json(obj)
    if isinstance(obj, TotalPreorder):
        return {"alternatives": list(obj.alternatives), "ranks": list(obj.ranks)}
    if isinstance(obj, Verdict):
        out = {"check": obj.check, "passed": obj.passed}
        if obj.reason is not None:
            out["reason"] = obj.reason
        if obj.witness is not None:
            out["witness"] = to_jsonable(obj.witness)
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(obj, indent=2) -> str:
    return json.dumps(to_jsonable(obj), indent=indent, ensure_ascii=False) + "\n"


def dumps_line(obj) -> str:
    """Single-line form used for newline-delimited streams."""
    return json.dumps(to_jsonable(obj), separators=(",", ":"), ensure_ascii=False)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
