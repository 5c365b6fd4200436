"""Signed-graph and fat-theta constructions that represent cycle matroids.

Each builder returns a :class:`Construction` holding the biased graph ``H``,
its signature when it has one, and the base graph ``G`` whose cycle matroid
``H`` is meant to represent (as a frame matroid for pinches, curlings and
twistings, as a lift matroid for fat thetas).

Loops sitting on a marked vertex keep sign +1: negating them would turn a
matroid loop of ``M(G)`` into an independent element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .biased import BiasedGraph, from_signature
from .graph import GraphError, Multigraph, cycle_masks, disjoint_union, identify


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class Construction:
    biased: BiasedGraph
    base: Multigraph
    signature: frozenset | None = None

    @property
    def graph(self) -> Multigraph:
        return self.biased.graph


@dataclass(frozen=True)
class Part:
    """One piece of a twisting or fat theta with its marked vertices."""

    graph: Multigraph
    marks: tuple  # (x, y) or (x, y, z)


def _links_at(g: Multigraph, vertices) -> set:
    vertices = set(vertices)
    return {lab for lab, u, v in g.edges if u != v and (u in vertices or v in vertices)}


def pinch(g: Multigraph, v1: int, v2: int) -> Construction:
    """Identify ``v1`` and ``v2``; the links that met ``v1`` become negative."""
    if v1 == v2:
        raise ConstructionError("pinch needs two distinct vertices")
    sigma = frozenset(_links_at(g, [v1]))
    h = identify(g, [(v1, v2)])
    return Construction(from_signature(h, sigma), g, sigma)


def simple_curling(g: Multigraph, v: int) -> Construction:
    """Turn every edge ``vu`` into a negative loop at ``u`` and drop ``v``."""
    if g.loops(v):
        raise ConstructionError(f"vertex {v} carries a loop; simple curling is undefined there")
    sigma = set()
    edges = []
    for lab, a, b in g.edges:
        if a == v or b == v:
            u = b if a == v else a
            edges.append((lab, u, u))
            sigma.add(lab)
        else:
            edges.append((lab, a, b))
    moved = Multigraph(g.n, tuple(edges), g.name)
    h, _ = moved.delete_vertices([v])
    sigma = frozenset(sigma)
    return Construction(from_signature(h, sigma), g, sigma)


def _prepare(parts, nmarks, count=None):
    parts = [p if isinstance(p, Part) else Part(p[0], tuple(p[1])) for p in parts]
    if count is not None and len(parts) != count:
        raise ConstructionError(f"expected {count} parts, got {len(parts)}")
    for i, p in enumerate(parts):
        if len(p.marks) != nmarks:
            raise ConstructionError(f"part {i + 1} needs {nmarks} marked vertices")
        if len(set(p.marks)) != nmarks:
            raise ConstructionError(f"marked vertices of part {i + 1} are not distinct")
        if any(not 0 <= m < p.graph.n for m in p.marks):
            raise ConstructionError(f"part {i + 1} marks a vertex outside its graph")
    try:
        union, offsets = disjoint_union(*(p.graph for p in parts))
    except GraphError as exc:
        raise ConstructionError(f"parts share edge labels: {exc}") from None
    marks = [tuple(m + off for m in p.marks) for p, off in zip(parts, offsets)]
    return parts, union, marks


def four_twisting(parts) -> Construction:
    """4-twisting of four parts with marks ``(x_i, y_i, z_i)``.

    ``H`` identifies all x's, all y's and all z's and negates the links at
    ``x_1``, ``y_2`` and ``z_3``; the base graph identifies
    ``x_i, y_{3-i}, z_{i+2}`` (indices mod 4) to ``w_i``.
    """
    parts, union, marks = _prepare(parts, 3, 4)
    x = [m[0] for m in marks]
    y = [m[1] for m in marks]
    z = [m[2] for m in marks]
    sigma = frozenset(_links_at(union, [x[0]]) | _links_at(union, [y[1]]) | _links_at(union, [z[2]]))
    h = identify(union, [x, y, z])
    # 0-based j = i - 1: y_{3-i} -> y[(1 - j) % 4], z_{i+2} -> z[(j + 2) % 4]
    groups = [(x[j], y[(1 - j) % 4], z[(j + 2) % 4]) for j in range(4)]
    base = identify(union, groups)
    return Construction(from_signature(h, sigma), base, sigma)


def consecutive_twisting(parts) -> Construction:
    """Consecutive k-twisting (k >= 3) of parts with marks ``(x_i, y_i, z_i)``.

    ``H`` identifies ``y_{i-1}, z_i, x_{i+1}`` to ``u_i`` and negates the
    links at ``y_1`` or ``x_2``; the base graph identifies every ``z_i`` to
    one vertex and ``y_{i-1}, x_i`` to ``w_i``.
    """
    parts, union, marks = _prepare(parts, 3)
    k = len(parts)
    if k < 3:
        raise ConstructionError("consecutive twisting needs at least three parts")
    x = [m[0] for m in marks]
    y = [m[1] for m in marks]
    z = [m[2] for m in marks]
    sigma = frozenset(_links_at(union, [y[0], x[1]]))
    h = identify(union, [(y[(i - 1) % k], z[i], x[(i + 1) % k]) for i in range(k)])
    base = identify(union, [z] + [(y[(i - 1) % k], x[i]) for i in range(k)])
    return Construction(from_signature(h, sigma), base, sigma)


def fat_theta(parts) -> Construction:
    """Fat theta of three non-empty parts with marks ``(x_i, y_i)``.

    A cycle of ``H`` is balanced exactly when all of its edges come from one
    part.  The base graph identifies ``y_i`` with ``x_{i+1}``.
    """
    parts, union, marks = _prepare(parts, 2, 3)
    if any(len(p.graph) == 0 for p in parts):
        raise ConstructionError("fat theta parts must be non-empty")
    x = [m[0] for m in marks]
    y = [m[1] for m in marks]
    h = identify(union, [x, y])
    owner = {}
    for i, p in enumerate(parts):
        for lab in p.graph.labels:
            owner[lab] = i
    balanced = [c for c in cycle_masks(h) if len({owner[lab] for lab in h.labels_of(c)}) == 1]
    base = identify(union, [(y[i], x[(i + 1) % 3]) for i in range(3)])
    return Construction(BiasedGraph(h, balanced, check=False), base, None)
