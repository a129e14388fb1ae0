"""Command-line front end.

Exit codes: 0 success (or a documented contract met), 1 substantive
failure, 2 usage, parse or structural error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .aggregation import Profile, SpaceSpec, default_alternatives, make_rule, scan_budget
from .builders import enumerate_linear, sample_linear
from .coalitions import audit_rule
from .degrees import TCONORMS, TNORMS, DegreeGrid
from .errors import BudgetExceededError, FormatError, FuzzyArrowError
from .families import CoalitionFamily, make_society
from .fixtures import example_relations, witness_profiles
from .relations import (
    check_betweenness_monotone,
    check_complete,
    check_reflexive,
    check_s_connected,
    check_t_transitive,
)
from .serialization import (
    dumps,
    dumps_line,
    family_from_json,
    load_json,
    profile_to_json,
    relation_from_json,
    relation_to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- check ---------------------------------------------------------------------

def cmd_check(args) -> int:
    R = relation_from_json(load_json(args.file))
    verdicts = {
        "reflexive": check_reflexive(R),
        "complete": check_complete(R),
        "t_transitive": check_t_transitive(R, args.tnorm),
        "s_connected": check_s_connected(R, args.tconorm),
        "betweenness": check_betweenness_monotone(R, diagnostic=True),
    }
    passed = all(verdicts.values())
    report = {
        "relation": relation_to_json(R),
        "tnorm": args.tnorm,
        "tconorm": args.tconorm,
        "verdicts": verdicts,
        "linear": bool(verdicts["reflexive"] and verdicts["complete"] and verdicts["t_transitive"]),
        "passed": passed,
    }
    _emit(dumps(report), args.out)
    return EXIT_OK if passed else EXIT_FAIL


# -- audit ---------------------------------------------------------------------

def parse_rule_spec(tokens, society):
    """``["ultrafilter:principal=1"]`` or ``["ultrafilter", "principal=1"]`` to a rule."""
    parts = [p for tok in tokens for p in re.split(r"[\s:,]+", tok) if p]
    if not parts:
        raise UsageError("missing rule id")
    rule_id, params = parts[0], {}
    for item in parts[1:]:
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UsageError(f"rule parameter {item!r} is not key=value")
        params[key] = value
    if rule_id == "ultrafilter" and "family" in params:
        fam = family_from_json(load_json(params["family"]))
        if fam.society != tuple(society):
            raise FormatError(f"family society {list(fam.society)} differs from {list(society)}")
        params["family"] = fam
    return make_rule(rule_id, society, **params)


def load_contracts() -> dict:
    text = resources.files("fuzzy_arrow").joinpath("contracts.json").read_text(encoding="utf-8")
    return json.loads(text)


def _holds(cond, space) -> bool:
    return len(space.society) >= cond.get("min_society", 0) and len(
        space.alternatives
    ) >= cond.get("min_alternatives", 0)


def contract_mismatches(rule, space, report, contract) -> list:
    """Differences between an audit report and the rule's documented behaviour."""
    problems = []
    failures = contract.get("failures", {})
    for name, verdict in report["axioms"].items():
        if isinstance(verdict, dict):
            problems.append(f"{name}: skipped ({verdict['skipped']})")
            continue
        cond = failures.get(name)
        should_fail = cond is not None and _holds(cond, space)
        if should_fail and verdict.passed:
            problems.append(f"{name}: documented failure not reproduced")
        elif not should_fail and not verdict.passed:
            problems.append(f"{name}: unexpected failure ({verdict.reason or 'see witness'})")
        elif should_fail and "reason" in cond and verdict.reason != cond["reason"]:
            problems.append(f"{name}: failed for {verdict.reason!r}, documented {cond['reason']!r}")

    if not _holds(contract.get("when", {}), space):
        return problems
    params = rule.params
    expected = contract.get("dictator")
    expected = params.get(expected, expected) if isinstance(expected, str) else expected
    got = report["dictator"]["weak"]
    if got != expected:
        problems.append(f"dictator: got {got!r}, documented {expected!r}")

    family = contract.get("family")
    if family is not None:
        if family == "input":
            want = rule.family
        elif family == "empty":
            want = CoalitionFamily(space.society)
        else:
            want = CoalitionFamily.principal(space.society, params[family.split(":")[1]])
        for key in ("decisive_family", "decisive_family_canonical"):
            if report[key] != want:
                problems.append(f"{key}: got {report[key]!r}, documented {want!r}")
    if contract.get("consistent") and report["cross_checks"].get("consistent") is not True:
        problems.append("cross_checks: theorem cross-validation failed")
    return problems


def _space(args) -> SpaceSpec:
    kw = {"budget": args.budget}
    if args.mode == "sampled":
        if args.seed is None:
            raise UsageError("--mode sampled needs --seed")
        return SpaceSpec.sampled(
            args.alts, args.society, args.grid, args.tnorm, args.count, args.seed, **kw
        )
    return SpaceSpec.exhaustive(args.alts, args.society, args.grid, args.tnorm, **kw)


def cmd_audit(args) -> int:
    space = _space(args)
    rule = parse_rule_spec(args.rule, space.society)
    budget = args.budget if args.budget is not None else scan_budget()
    if space.size() > budget:
        raise BudgetExceededError(f"space holds {space.size()} profiles, over the budget of {budget}")
    report = audit_rule(rule, space)
    contract = load_contracts().get(rule.rule_id)
    problems = contract_mismatches(rule, space, report, contract) if contract else ["no contract"]
    report["contract"] = {"met": not problems, "mismatches": problems}
    _emit(dumps(report), args.out)
    return EXIT_OK if not problems else EXIT_FAIL


# -- enumerate / sample / fixtures ---------------------------------------------

def cmd_enumerate(args) -> int:
    budget = args.budget if args.budget is not None else scan_budget()
    lines = []
    for count, R in enumerate(enumerate_linear(default_alternatives(args.alts), DegreeGrid(args.grid), args.tnorm), 1):
        if count > budget:
            raise BudgetExceededError(f"more than {budget} relations; raise --budget")
        lines.append(dumps_line(relation_to_json(R)))
    lines.append(dumps_line({"count": len(lines)}))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.seed is None:
        raise UsageError("sample needs --seed")
    rng = random.Random(args.seed)
    alts, grid = default_alternatives(args.alts), DegreeGrid(args.grid)
    lines = []
    for _ in range(args.count):
        if args.society:
            soc = make_society(args.society)
            prof = Profile(soc, [sample_linear(alts, grid, args.tnorm, rng) for _ in soc])
            lines.append(dumps_line(profile_to_json(prof)))
        else:
            lines.append(dumps_line(relation_to_json(sample_linear(alts, grid, args.tnorm, rng))))
    lines.append(dumps_line({"count": args.count, "seed": args.seed}))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    root = Path(args.out or "fixtures")
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for name, R in example_relations().items():
        path = root / f"{name}.json"
        path.write_text(dumps(R), encoding="utf-8")
        written.append(str(path))
    for name, prof in witness_profiles().items():
        path = root / f"profile_{name}.json"
        path.write_text(dumps(prof), encoding="utf-8")
        written.append(str(path))
    sys.stdout.write("\n".join(written) + "\n")
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fuzzy-arrow", description="Audit aggregation rules for fuzzy linear preferences."
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    tnorms, tconorms = sorted(TNORMS), sorted(TCONORMS)

    def space_flags(q, grid=1):
        q.add_argument("--alts", type=int, default=3, help="number of alternatives")
        q.add_argument("--grid", type=int, default=grid, help="grid resolution m")
        q.add_argument("--tnorm", default="minimum", choices=tnorms)
        q.add_argument("--budget", type=int, default=None)
        q.add_argument("--out", default=None, help="output path (default stdout)")

    q = sub.add_parser("check", help="check a relation file")
    q.add_argument("file")
    q.add_argument("--tnorm", default="minimum", choices=tnorms)
    q.add_argument("--tconorm", default="maximum", choices=tconorms)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("audit", help="audit a built-in rule on a profile space")
    q.add_argument("rule", nargs="+", help="rule id and key=value parameters")
    q.add_argument("--society", type=int, default=2, help="number of individuals")
    q.add_argument("--mode", default="exhaustive", choices=("exhaustive", "sampled"))
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--count", type=int, default=10_000, help="profiles drawn in sampled mode")
    space_flags(q)
    q.set_defaults(func=cmd_audit)

    q = sub.add_parser("enumerate", help="stream every linear relation on a grid")
    space_flags(q)
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("sample", help="draw seeded relations or profiles")
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--count", type=int, default=1)
    q.add_argument("--society", type=int, default=0, help="draw profiles of this size")
    space_flags(q, grid=2)
    q.set_defaults(func=cmd_sample)

    q = sub.add_parser("fixtures", help="write the example relations and witness profiles")
    q.add_argument("--out", default=None, help="directory (default ./fixtures)")
    q.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FuzzyArrowError, UsageError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fuzzy-arrow {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
