"""Biased graphs: balance, signatures, and the frame and lift matroids.

A :class:`BiasedGraph` pairs a multigraph with its set of balanced cycles.
Cycles are stored as edge bitmasks over the graph's edge order.

The frame-matroid independence bound is applied per component: a set is
independent when every component of the induced subgraph has at most as many
edges as vertices and contains no balanced cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import graph as gr
from .graph import Multigraph, bits, popcount
from .matroid import Matroid, UnsupportedSize

#: largest edge count for the subset-scan matroid constructions
SUBSET_SCAN_LIMIT = 16


class BiasError(ValueError):
    pass


class InconsistentBias(BiasError):
    """A cycle of the graph is neither a circuit nor independent in the matroid."""

    def __init__(self, cycle):
        super().__init__(f"cycle {sorted(cycle)} is neither a circuit nor independent")
        self.cycle = frozenset(cycle)


class ThetaViolation(BiasError):
    def __init__(self, theta):
        super().__init__(f"theta on {sorted(theta)} holds exactly two balanced cycles")
        self.theta = frozenset(theta)


@dataclass(frozen=True)
class BalancingSet:
    vertices: frozenset
    edges: frozenset
    minimal: bool = False

    def __len__(self):
        return len(self.vertices) + len(self.edges)


class BiasedGraph:
    """A graph together with a theta-closed family of balanced cycles."""

    def __init__(self, graph: Multigraph, balanced, check: bool = True):
        self.graph = graph
        masks = set()
        for c in balanced:
            masks.add(c if isinstance(c, int) else graph.mask(c))
        self.balanced_masks = frozenset(masks)
        if check:
            for c in self.balanced_masks:
                if not gr.is_cycle_mask(graph, c):
                    raise BiasError(f"{sorted(graph.labels_of(c))} is not a cycle")
            bad = theta_violation(self)
            if bad is not None:
                raise ThetaViolation(bad)

    def __repr__(self):
        return f"<BiasedGraph {self.graph!r} balanced={len(self.balanced_masks)}/{len(self.cycle_masks)}>"

    @cached_property
    def cycle_masks(self) -> tuple:
        return tuple(gr.cycle_masks(self.graph))

    @property
    def balanced(self) -> frozenset:
        return frozenset(self.graph.labels_of(c) for c in self.balanced_masks)

    def unbalanced_masks(self) -> list[int]:
        return [c for c in self.cycle_masks if c not in self.balanced_masks]

    def is_balanced_cycle(self, cycle) -> bool:
        return self.graph.mask(cycle) in self.balanced_masks

    def restrict_mask(self, mask: int) -> "BiasedGraph":
        """The biased subgraph on the given edges (vertices kept)."""
        labels = self.graph.labels_of(mask)
        sub = self.graph.subgraph(labels)
        keep = [sub.mask(self.graph.labels_of(c)) for c in self.balanced_masks if c & mask == c]
        return BiasedGraph(sub, keep, check=False)

    def delete_edges(self, labels) -> "BiasedGraph":
        return self.restrict_mask(self.graph.full_mask & ~self.graph.mask(labels))

    def delete_vertices(self, vertices) -> "BiasedGraph":
        """``B - S``; the surviving vertices are renumbered densely."""
        vertices = set(vertices)
        dead = 0
        for v in vertices:
            dead |= self.graph.incidence[v]
        kept = self.restrict_mask(self.graph.full_mask & ~dead)
        sub, _ = kept.graph.delete_vertices(vertices)
        return BiasedGraph(sub, [kept.graph.labels_of(c) for c in kept.balanced_masks], check=False)

    def with_graph(self, graph: Multigraph) -> "BiasedGraph":
        """Same bias carried over to a graph with the same labels and cycles."""
        return BiasedGraph(graph, [self.graph.labels_of(c) for c in self.balanced_masks])


# -- construction of biases ------------------------------------------------------

def from_signature(g: Multigraph, sigma) -> BiasedGraph:
    """Signed graph: a cycle is balanced iff it meets ``sigma`` evenly."""
    s = g.mask(sigma)
    bal = [c for c in gr.cycle_masks(g) if popcount(c & s) % 2 == 0]
    return BiasedGraph(g, bal, check=False)


def derive_bias(g: Multigraph, n: Matroid) -> BiasedGraph:
    """Balanced cycles of ``g`` are those whose edge sets are circuits of ``n``.

    Raises :class:`InconsistentBias` on the first cycle that is neither a
    circuit nor an independent set.
    """
    if set(g.labels) != set(n.ground):
        raise BiasError("graph and matroid have different element sets")
    bal = []
    for c in gr.cycle_masks(g):
        labels = g.labels_of(c)
        m = n.mask(labels)
        if m in n.circuits:
            bal.append(c)
        elif not n.is_independent(m):
            raise InconsistentBias(labels)
    return BiasedGraph(g, bal, check=False)


def theta_violation(b: BiasedGraph):
    """Edge set of a theta holding exactly two balanced cycles, or None."""
    g = b.graph
    for mask, _, paths in gr.theta_masks(g):
        p, q, r = paths
        count = sum((x | y) in b.balanced_masks for x, y in ((p, q), (p, r), (q, r)))
        if count == 2:
            return g.labels_of(mask)
    return None


def check_theta_property(b: BiasedGraph) -> bool:
    return theta_violation(b) is None


# -- balance predicates ------------------------------------------------------------

def is_balanced(b: BiasedGraph) -> bool:
    return all(c in b.balanced_masks for c in b.cycle_masks)


def is_contra_balanced(b: BiasedGraph) -> bool:
    return not any(c in b.balanced_masks for c in b.cycle_masks)


def _balanced_within(b: BiasedGraph, mask: int) -> bool:
    return all(c in b.balanced_masks for c in b.cycle_masks if c & mask == c)


def contra_balanced_theta(b: BiasedGraph):
    """A theta all three of whose cycles are unbalanced, or None."""
    for mask, _, (p, q, r) in gr.theta_masks(b.graph):
        if not any((x | y) in b.balanced_masks for x, y in ((p, q), (p, r), (q, r))):
            return b.graph.labels_of(mask)
    return None


# -- frame and lift matroids ----------------------------------------------------------

def _unique_cycle(g: Multigraph, mask: int) -> int:
    """Strip pendant edges until only the cycle of a unicyclic edge set remains."""
    deg = {}
    for i in bits(mask):
        u, v = g.ends[i]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    changed = True
    while changed:
        changed = False
        for i in bits(mask):
            u, v = g.ends[i]
            if u != v and (deg[u] == 1 or deg[v] == 1):
                mask &= ~(1 << i)
                deg[u] -= 1
                deg[v] -= 1
                changed = True
    return mask


def _frame_independent(b: BiasedGraph, mask: int) -> bool:
    g = b.graph
    for vs, emask in gr._component_masks(g, mask, sorted(g.vertices_of(mask))):
        e = popcount(emask)
        if e > len(vs):
            return False
        if e == len(vs) and _unique_cycle(g, emask) in b.balanced_masks:
            return False
    return True


def _lift_independent(b: BiasedGraph, mask: int) -> bool:
    g = b.graph
    vs = g.vertices_of(mask)
    comps = len(gr._component_masks(g, mask, sorted(vs)))
    excess = popcount(mask) - len(vs) + comps
    if excess > 1:
        return False
    if excess == 1 and _unique_cycle(g, mask) in b.balanced_masks:
        return False
    return True


def matroid_from_independence(g: Multigraph, independent, name: str = "") -> Matroid:
    """Scan all edge subsets and keep the minimal dependent ones."""
    m = len(g)
    if m > SUBSET_SCAN_LIMIT:
        raise UnsupportedSize(f"subset scan over {m} edges (limit {SUBSET_SCAN_LIMIT})")
    indep = bytearray(1 << m)
    circuits = []
    for mask in sorted(range(1 << m), key=popcount):
        subs_ok = all(indep[mask ^ (1 << i)] for i in bits(mask)) if mask else True
        if subs_ok:
            if independent(mask):
                indep[mask] = 1
            else:
                circuits.append(mask)
    return Matroid(g.labels, circuits, name, check=False)


def frame_matroid(b: BiasedGraph) -> Matroid:
    return matroid_from_independence(b.graph, lambda m: _frame_independent(b, m), "frame")


def lift_matroid(b: BiasedGraph) -> Matroid:
    return matroid_from_independence(b.graph, lambda m: _lift_independent(b, m), "lift")


# -- signatures ------------------------------------------------------------------------

def _spanning_forest(g: Multigraph) -> int:
    """Edges of the spanning forest chosen greedily in edge order."""
    parent = list(range(g.n))
    tree = 0
    for i, (u, v) in enumerate(g.ends):
        ru, rv = gr._find(parent, u), gr._find(parent, v)
        if ru != rv:
            parent[ru] = rv
            tree |= 1 << i
    return tree


def _tree_path(g: Multigraph, tree: int, u: int, v: int) -> int:
    adj: dict = {}
    for i in bits(tree):
        a, c = g.ends[i]
        adj.setdefault(a, []).append((i, c))
        adj.setdefault(c, []).append((i, a))
    stack = [(u, -1, 0)]
    while stack:
        cur, came, path = stack.pop()
        if cur == v:
            return path
        for i, w in adj.get(cur, ()):
            if i != came:
                stack.append((w, i, path | (1 << i)))
    raise BiasError("endpoints are not joined by the forest")


def find_signature(b: BiasedGraph):
    """A signature reproducing the balanced cycles of ``b``, or None.

    Forest edges get sign +1; a non-forest edge is negative exactly when its
    fundamental cycle is unbalanced.  The candidate is then checked against
    every cycle.
    """
    g = b.graph
    tree = _spanning_forest(g)
    sigma = 0
    for i, (u, v) in enumerate(g.ends):
        if tree >> i & 1:
            continue
        fundamental = (1 << i) | (0 if u == v else _tree_path(g, tree, u, v))
        if fundamental not in b.balanced_masks:
            sigma |= 1 << i
    for c in b.cycle_masks:
        if (popcount(c & sigma) % 2 == 0) != (c in b.balanced_masks):
            return None
    return g.labels_of(sigma)


# -- balancing sets and blocking vertices -----------------------------------------------

def _remove(b: BiasedGraph, vertices, edge_mask: int) -> int:
    dead = edge_mask
    for v in vertices:
        dead |= b.graph.incidence[v]
    return b.graph.full_mask & ~dead


def is_balancing(b: BiasedGraph, vertices=(), edges=()) -> bool:
    return _balanced_within(b, _remove(b, vertices, b.graph.mask(edges)))


def balancing_sets(b: BiasedGraph, allow_vertices: bool = False, max_size: int | None = None):
    """All balancing sets with at most ``max_size`` members, minimal ones flagged.

    Members are vertices (when allowed) and edges; deleting a vertex deletes
    its star.
    """
    g = b.graph
    items = [("e", i) for i in range(len(g))]
    if allow_vertices:
        items = [("v", v) for v in range(g.n)] + items
    max_size = len(items) if max_size is None else max_size
    found = []
    keys = set()
    for size in range(0, max_size + 1):
        for combo in itertools.combinations(items, size):
            vs = [x for t, x in combo if t == "v"]
            em = sum(1 << x for t, x in combo if t == "e")
            if _balanced_within(b, _remove(b, vs, em)):
                found.append((frozenset(vs), em))
                keys.add((frozenset(vs), em))
    out = []
    for vs, em in found:
        minimal = True
        for v in vs:
            if (vs - {v}, em) in keys:
                minimal = False
                break
        if minimal:
            for i in bits(em):
                if (vs, em & ~(1 << i)) in keys:
                    minimal = False
                    break
        out.append(BalancingSet(vs, g.labels_of(em), minimal))
    return out


def blocking_vertices(b: BiasedGraph) -> frozenset:
    """Vertices on every unbalanced cycle (empty when ``b`` is balanced)."""
    unbalanced = b.unbalanced_masks()
    if not unbalanced:
        return frozenset()
    g = b.graph
    return frozenset(v for v in range(g.n) if all(c & g.incidence[v] for c in unbalanced))


def standard_partition(b: BiasedGraph, v: int) -> list[frozenset]:
    """Classes of ``e ~ f`` (every cycle through both is balanced) on st(v) minus loops."""
    g = b.graph
    if v not in blocking_vertices(b):
        raise BiasError(f"vertex {v} is not a blocking vertex")
    rest, _ = g.delete_vertices([v])
    if rest.n and not gr.is_connected(rest):
        raise BiasError(f"deleting vertex {v} disconnects the graph")
    links = [i for i in bits(g.incidence[v]) if not g.loop_mask >> i & 1]
    through = [c for c in b.cycle_masks if c & g.incidence[v]]

    def related(i, j):
        both = (1 << i) | (1 << j)
        return all(c in b.balanced_masks for c in through if c & both == both)

    classes: list[list[int]] = []
    for i in links:
        for cls in classes:
            if related(cls[0], i):
                cls.append(i)
                break
        else:
            classes.append([i])
    for cls in classes:
        for i, j in itertools.combinations(cls, 2):
            if not related(i, j):
                raise BiasError("relation is not transitive on this input")
    return [g.labels_of(sum(1 << i for i in cls)) for cls in classes]


def split_blocking_vertex(b: BiasedGraph, v: int) -> Multigraph:
    """Split blocking vertex ``v`` of a signed graph into ``v`` and a new vertex.

    One class of the standard partition stays on ``v``, the other moves to
    the new vertex; unbalanced loops at ``v`` become links between the two
    halves.  The lift matroid of ``b`` is the cycle matroid of the result.
    """
    if find_signature(b) is None:
        raise BiasError("biased graph is not a signed graph")
    classes = standard_partition(b, v)
    if len(classes) > 2:
        raise BiasError("standard partition has more than two classes")
    moved = classes[1] if len(classes) == 2 else frozenset()
    g = b.graph
    new = g.n
    edges = []
    for lab, x, y in g.edges:
        i = g.index[lab]
        if x == y == v and (1 << i) not in b.balanced_masks:
            edges.append((lab, v, new))
        elif lab in moved:
            edges.append((lab, new if x == v else x, new if y == v else y))
        else:
            edges.append((lab, x, y))
    return Multigraph(g.n + 1, tuple(edges), g.name)
