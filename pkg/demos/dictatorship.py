"""Audit the built-in rules on a small exhaustive space and read off their decisive coalitions.

A rule into linear relations that is weakly Paretian and independent of
irrelevant alternatives should have an ultrafilter of decisive coalitions,
and the generator of that ultrafilter should be a dictator. The audit
checks this directly for each rule.

Run: python3 demos/dictatorship.py
"""

from __future__ import annotations

from fuzzy_arrow import SpaceSpec, audit_rule, make_rule

space = SpaceSpec.exhaustive(3, 3, 1, "minimum")
print(f"space: {space.size()} profiles over 3 alternatives and 3 individuals\n")

rules = [
    make_rule("ultrafilter", space.society, principal="2"),
    make_rule("dictator", space.society, k="3"),
    make_rule("constant-indifference"),
    make_rule("pointwise-mean"),
    make_rule("pairwise-majority"),
]

for rule in rules:
    r = audit_rule(rule, space)
    failing = [k for k, v in r["axioms"].items() if not v]
    fam = r["decisive_family"]
    shown = {k: v for k, v in rule.params.items() if k != "coalitions"}
    print(rule.rule_id, shown or "")
    print("  failing axioms:", ", ".join(failing) or "none")
    print("  decisive coalitions:", " ".join("{" + ",".join(c) + "}" for c in fam.coalitions()) or "none")
    print("  ultrafilter:", "yes" if r["ultrafilter_verdict"] else f"no ({r['ultrafilter_verdict'].reason})")
    print("  dictator:", r["dictator"]["weak"])
    print("  cross-checks consistent:", r["cross_checks"]["consistent"])
    print()
