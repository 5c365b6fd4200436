"""Signed graphs that represent a graphic matroid, and how to undo them.

Pinch two vertices of K5, recover a signature from the bias alone, then split
the pinched vertex again to get a graph whose cycle matroid is the lift.

Run:  python3 demos/signed_constructions.py
"""

from quasigraphic import graph as gr
from quasigraphic.biased import (
    blocking_vertices,
    find_signature,
    frame_matroid,
    lift_matroid,
    split_blocking_vertex,
    standard_partition,
)
from quasigraphic.constructions import pinch, simple_curling
from quasigraphic.matroid import cycle_matroid

k5 = gr.complete_graph(5)
c = pinch(k5, 0, 1)
print(f"pinch K5 at 0,1: {c.graph.n} vertices, negative edges {sorted(c.signature)}")
print(f"  frame matroid equals M(K5): {frame_matroid(c.biased) == cycle_matroid(k5)}")

sigma = find_signature(c.biased)
print(f"  signature recovered from the balanced cycles: {sorted(sigma)}")

v = min(blocking_vertices(c.biased))
print(f"  blocking vertex {v}; standard partition {[sorted(x) for x in standard_partition(c.biased, v)]}")
g = split_blocking_vertex(c.biased, v)
print(f"  split graph has {g.n} vertices; M(split) equals the lift: {cycle_matroid(g) == lift_matroid(c.biased)}")

curl = simple_curling(gr.wheel_graph(4), 0)
print(f"curl W4 at the hub: {len(curl.graph.loops())} negative loops on the rim;"
      f" frame equals M(W4): {frame_matroid(curl.biased) == cycle_matroid(gr.wheel_graph(4))}")
