"""Why pairwise majority leaves the linear relations as soon as there are three alternatives.

Run: python3 demos/condorcet.py
"""

from __future__ import annotations

from fuzzy_arrow import associated_preorder, condorcet_profile, is_linear, make_rule
from fuzzy_arrow.degrees import format_degree

profile = condorcet_profile()
for k, R in profile.items():
    print(f"individual {k}: {associated_preorder(R)}")

out = make_rule("pairwise-majority")(profile)
alts = out.alternatives
print("\nmajority output:")
for a in alts:
    print("  " + "  ".join(f"R({a},{b})={format_degree(out[a, b])}" for b in alts))

v = is_linear(out, "minimum")
a, b, c = v.witness["triple"]
print(f"\nlinear? no: {a} beats {b} and {b} beats {c}, yet R({a},{c}) = {format_degree(v.witness['lhs'])}")

mean = make_rule("pointwise-mean")(profile)
print("pointwise mean linear?", bool(is_linear(mean, "minimum")), f"({is_linear(mean, 'minimum').reason})")
