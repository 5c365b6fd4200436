"""Blocking vertices versus cocircuit stars on lift frameworks with a loop.

For a connected framework H of a 3-connected matroid N one expects v to be
blocking exactly when st*(v) is not a cocircuit.  This script counts how
often that holds, and shows a lift framework of M(W4) where it does not:
the unbalanced loop lies outside every st*(v) and lifts the rank of the
complement by one.  The rank form r(E(H' - v)) <= r(N) - 2 always holds.

Run:  python3 demos/star_cocircuits.py
"""

from quasigraphic import graph as gr
from quasigraphic.analysis import analyze, check_star_cocircuits, framework_blocking_vertices, star_star
from quasigraphic.frameworks import enumerate_frameworks
from quasigraphic.matroid import cycle_matroid, uniform

suites = {
    "U3,6": uniform(3, 6),
    "U4,6": uniform(4, 6),
    "M(K4)": cycle_matroid(gr.complete_graph(4)),
    "M(W4)": cycle_matroid(gr.wheel_graph(4)),
}
for name, n in suites.items():
    frameworks = [analyze(g, n) for g in enumerate_frameworks(n).all_graphs()]
    literal = sum(bool(check_star_cocircuits(a)) for a in frameworks)
    rank_form = sum(bool(check_star_cocircuits(a, literal=False)) for a in frameworks)
    print(f"{name:6s} {len(frameworks):3d} frameworks: literal statement fails on {literal}, rank form on {rank_form}")

w4 = cycle_matroid(gr.wheel_graph(4))
h = gr.multigraph(4, {"e0": (0, 0), "e1": (0, 1), "e2": (0, 2), "e3": (0, 3),
                      "e4": (0, 1), "e5": (1, 2), "e6": (2, 3), "e7": (0, 3)})
a = analyze(h, w4)
st = star_star(a, 0)
rest = [e for e in w4.ground if e not in st]
print()
print(f"lift framework of M(W4) with loop e0 at vertex 0 (lift: {a.representation.is_lift})")
print(f"  blocking vertices of H': {sorted(framework_blocking_vertices(a))}")
print(f"  st*(0) = {sorted(st)}; r(complement) = {w4.rank(rest)} = r(N) - 1, so st*(0) is a cocircuit")
