"""Which of the three example relations are linear, and why the others are not.

Run: python3 demos/example_relations.py
"""

from __future__ import annotations

from fuzzy_arrow import check_sandwich, is_linear
from fuzzy_arrow.degrees import format_degree
from fuzzy_arrow.fixtures import example_relations


def show(verdict):
    if verdict:
        return "yes"
    w = verdict.witness
    if "triple" in w:
        a, b, c = w["triple"]
        return f"no: R({a},{c}) = {format_degree(w['lhs'])} < T(R({a},{b}), R({b},{c})) = {format_degree(w['rhs'])}"
    return f"no ({verdict.reason})"


for name, R in example_relations().items():
    print(f"{name}: reverse degrees y>x {format_degree(R['y', 'x'])}, z>y {format_degree(R['z', 'y'])}, "
          f"z>x {format_degree(R['z', 'x'])}")
    for t in ("minimum", "lukasiewicz"):
        v = is_linear(R, t)
        line = f"  {t:<12} linear: {show(v)}"
        if v:
            line += f"; sandwich: {'holds' if check_sandwich(R, t) else 'fails'}"
        print(line)
