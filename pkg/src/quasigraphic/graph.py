"""Multigraphs with loops and parallel edges.

Vertices are the integers ``0 .. n-1``; every edge carries a string label
that doubles as a matroid element.  Internally most routines work on edge
*indices* and integer bitmasks over the edge order, which keeps the
exhaustive scans cheap.

Connectivity follows the literal convention: ``G`` is k-connected when
``G - S`` has exactly one component for every proper vertex subset ``S``
with ``|S| < k``.  A disconnected graph is therefore not k-connected for any
``k >= 1``, and a graph on ``n`` vertices that is complete enough can be
k-connected for every ``k`` (only proper subsets are removed).

The cycle and theta enumerations are exponential.  They are intended for
graphs with at most 16 edges; vertex-subset scans for at most 12 vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    pass


class WhitneyFlipError(GraphError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} is shared by both sides of the flip")
        self.vertex = vertex


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Multigraph:
    """An undirected multigraph with labelled edges.

    ``edges`` is a tuple of ``(label, u, v)`` triples with ``u <= v``; a loop
    has ``u == v``.  Build one with :func:`multigraph` or the constructor.
    """

    n: int
    edges: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        norm = []
        seen = set()
        for label, u, v in self.edges:
            label = str(label)
            if label in seen:
                raise GraphError(f"duplicate edge label {label!r}")
            seen.add(label)
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {label!r} has an endpoint outside 0..{self.n - 1}")
            norm.append((label, min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(norm))

    # -- basic accessors -------------------------------------------------

    @cached_property
    def labels(self) -> tuple:
        return tuple(e[0] for e in self.edges)

    @cached_property
    def index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def ends(self) -> tuple:
        return tuple((u, v) for _, u, v in self.edges)

    def endpoints(self, label) -> tuple:
        return self.ends[self.index[label]]

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        body = ", ".join(f"{lab}:{u}-{v}" for lab, u, v in self.edges)
        return f"Multigraph(n={self.n}, [{body}])"

    def mask(self, labels: Iterable) -> int:
        idx = self.index
        m = 0
        for lab in labels:
            m |= 1 << idx[lab]
        return m

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.labels[i] for i in bits(mask))

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    @cached_property
    def incidence(self) -> tuple:
        """Bitmask of edges incident with each vertex (loops included)."""
        inc = [0] * self.n
        for i, (u, v) in enumerate(self.ends):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        return tuple(inc)

    @cached_property
    def loop_mask(self) -> int:
        return sum(1 << i for i, (u, v) in enumerate(self.ends) if u == v)

    def star(self, v) -> frozenset:
        return self.labels_of(self.incidence[v])

    def loops(self, v=None) -> frozenset:
        """Loops at ``v``, or every loop of the graph when ``v`` is None."""
        m = self.loop_mask if v is None else self.loop_mask & self.incidence[v]
        return self.labels_of(m)

    def degree(self, v) -> int:
        return sum((u == v) + (w == v) for u, w in self.ends)

    def vertices_of(self, mask: int) -> frozenset:
        vs = set()
        for i in bits(mask):
            vs.update(self.ends[i])
        return frozenset(vs)

    def is_simple(self) -> bool:
        pairs = [e for e in self.ends]
        return all(u != v for u, v in pairs) and len(set(pairs)) == len(pairs)

    # -- derived graphs --------------------------------------------------

    def subgraph(self, labels: Iterable) -> "Multigraph":
        """Keep only the given edges (all vertices are kept)."""
        keep = set(labels)
        return Multigraph(self.n, tuple(e for e in self.edges if e[0] in keep), self.name)

    def delete_edges(self, labels: Iterable) -> "Multigraph":
        drop = set(labels)
        return Multigraph(self.n, tuple(e for e in self.edges if e[0] not in drop), self.name)

    def delete_vertices(self, vertices: Iterable):
        """Return ``(G - S, old_to_new)`` with the survivors renumbered densely."""
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        remap = {v: i for i, v in enumerate(keep)}
        edges = tuple(
            (lab, remap[u], remap[v]) for lab, u, v in self.edges if u in remap and v in remap
        )
        return Multigraph(len(keep), edges, self.name), remap

    def without_isolated(self):
        """Drop vertices that meet no edge; returns ``(graph, old_to_new)``."""
        used = self.vertices_of(self.full_mask)
        return self.delete_vertices(v for v in range(self.n) if v not in used)

    def relabeled(self, labels) -> "Multigraph":
        """Rename edges.  ``labels`` is a mapping or a sequence in edge order."""
        if isinstance(labels, Mapping):
            new = [labels.get(lab, lab) for lab in self.labels]
        else:
            new = list(labels)
            if len(new) != len(self.edges):
                raise GraphError("label sequence has the wrong length")
        return Multigraph(self.n, tuple((nl, u, v) for nl, (_, u, v) in zip(new, self.edges)), self.name)

    def renumbered(self, perm) -> "Multigraph":
        """Apply the vertex map ``perm`` (sequence or dict, old -> new)."""
        return Multigraph(self.n, tuple((lab, perm[u], perm[v]) for lab, u, v in self.edges), self.name)

    def sorted_edges(self) -> "Multigraph":
        return Multigraph(self.n, tuple(sorted(self.edges)), self.name)


def multigraph(n: int, edges, name: str = "") -> Multigraph:
    """Build a graph from ``{label: (u, v)}`` or an iterable of ``(label, u, v)``."""
    if isinstance(edges, Mapping):
        edges = [(lab, uv[0], uv[1]) for lab, uv in edges.items()]
    return Multigraph(n, tuple(edges), name)


def disjoint_union(*graphs: Multigraph) -> tuple[Multigraph, list]:
    """Disjoint union; returns the graph and each part's vertex offset."""
    edges, offsets, n = [], [], 0
    for g in graphs:
        offsets.append(n)
        edges.extend((lab, u + n, v + n) for lab, u, v in g.edges)
        n += g.n
    return Multigraph(n, tuple(edges)), offsets


def identify(g: Multigraph, groups) -> Multigraph:
    """Identify each group of vertices to a single vertex, renumbering densely.

    Vertices keep their relative order; a merged vertex takes the position of
    the smallest member of its group.
    """
    rep = list(range(g.n))
    for group in groups:
        group = list(group)
        r = min(group)
        for v in group:
            rep[v] = r
    keep = sorted(set(rep))
    remap = {v: i for i, v in enumerate(keep)}
    return Multigraph(len(keep), tuple((lab, remap[rep[u]], remap[rep[v]]) for lab, u, v in g.edges), g.name)


# -- standard graphs ------------------------------------------------------

def _auto(pairs, n, name, prefix="e"):
    return Multigraph(n, tuple((f"{prefix}{i}", u, v) for i, (u, v) in enumerate(pairs)), name)


def complete_graph(n: int) -> Multigraph:
    return _auto(itertools.combinations(range(n), 2), n, f"K{n}")


def cycle_graph(n: int) -> Multigraph:
    if n == 1:
        return _auto([(0, 0)], 1, "C1")
    return _auto([(i, (i + 1) % n) for i in range(n)], n, f"C{n}")


def path_graph(n: int) -> Multigraph:
    return _auto([(i, i + 1) for i in range(n - 1)], n, f"P{n}")


def star_graph(n: int) -> Multigraph:
    """K_{1,n} with centre 0."""
    return _auto([(0, i) for i in range(1, n + 1)], n + 1, f"K1,{n}")


def wheel_graph(r: int) -> Multigraph:
    """The rank-r wheel W_r: hub 0 joined to a rim cycle on 1..r."""
    rim = [(i, i % r + 1) for i in range(1, r + 1)]
    spokes = [(0, i) for i in range(1, r + 1)]
    return _auto(spokes + rim, r + 1, f"W{r}")


def complete_bipartite(a: int, b: int) -> Multigraph:
    return _auto([(i, a + j) for i in range(a) for j in range(b)], a + b, f"K{a},{b}")


def prism_graph() -> Multigraph:
    """Triangular prism: two triangles joined by a perfect matching."""
    pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return _auto(pairs, 6, "prism")


def graph_k() -> Multigraph:
    """2C_4 with a pair of non-adjacent edges deleted (3-regular, 4 vertices)."""
    pairs = [(0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (3, 0)]
    return _auto(pairs, 4, "K")


def k_multiply(g: Multigraph, k: int) -> Multigraph:
    """Replace every edge of a simple graph by a parallel class of ``k`` edges.

    Copies of edge ``a`` are labelled ``a.0 .. a.(k-1)``; ``k = 1`` returns
    ``g`` unchanged.
    """
    if k < 1:
        raise GraphError("k must be positive")
    if not g.is_simple():
        raise GraphError("k_multiply expects a simple graph")
    if k == 1:
        return g
    edges = tuple((f"{lab}.{j}", u, v) for lab, u, v in g.edges for j in range(k))
    return Multigraph(g.n, edges, f"{k}{g.name}" if g.name else "")


# -- components ------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    vertices: frozenset
    edges: frozenset


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _component_masks(g: Multigraph, edge_mask: int, vertices=None):
    """Components of the subgraph (vertices, edge_mask) as (vertex set, edge mask)."""
    if vertices is None:
        vertices = range(g.n)
    vertices = list(vertices)
    parent = {v: v for v in vertices}
    for i in bits(edge_mask):
        u, v = g.ends[i]
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[ru] = rv
    groups: dict = {}
    for v in vertices:
        groups.setdefault(_find(parent, v), set()).add(v)
    emask: dict = {}
    for i in bits(edge_mask):
        r = _find(parent, g.ends[i][0])
        emask[r] = emask.get(r, 0) | (1 << i)
    out = [(frozenset(vs), emask.get(r, 0)) for r, vs in groups.items()]
    out.sort(key=lambda c: min(c[0]))
    return out


def components(g: Multigraph) -> list[Component]:
    """Connected components, isolated vertices included, ordered by least vertex."""
    return [Component(vs, g.labels_of(m)) for vs, m in _component_masks(g, g.full_mask)]


def is_connected(g: Multigraph) -> bool:
    return len(_component_masks(g, g.full_mask)) == 1


def count_components(g: Multigraph, edge_mask: int) -> int:
    """c(F): number of components of G[F] (no isolated vertices)."""
    vs = g.vertices_of(edge_mask)
    return len(_component_masks(g, edge_mask, sorted(vs)))


# -- cycles and thetas ------------------------------------------------------

def cycle_masks(g: Multigraph) -> list[int]:
    """Edge bitmasks of all cycles, each reported once.

    A loop is a 1-cycle and two parallel links form a 2-cycle.  Every cycle
    of length >= 2 is found exactly once as its least-indexed edge ``uv``
    followed by a path from ``v`` back to ``u`` through higher-indexed links.
    """
    adj: list[list] = [[] for _ in range(g.n)]
    for j, (a, b) in enumerate(g.ends):
        if a != b:
            adj[a].append((j, b))
            adj[b].append((j, a))
    out = []
    for i, (u, v) in enumerate(g.ends):
        if u == v:
            out.append(1 << i)
            continue
        stack = [(v, 1 << v, 1 << i)]
        while stack:
            cur, seen, mask = stack.pop()
            for j, w in adj[cur]:
                if j <= i:
                    continue
                if w == u:
                    out.append(mask | (1 << j))
                elif not seen >> w & 1:
                    stack.append((w, seen | (1 << w), mask | (1 << j)))
    out.sort()
    return out


def all_cycles(g: Multigraph) -> list[frozenset]:
    return [g.labels_of(m) for m in cycle_masks(g)]


def _degrees(g: Multigraph, mask: int) -> dict:
    deg: dict = {}
    for i in bits(mask):
        u, v = g.ends[i]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def is_cycle_mask(g: Multigraph, mask: int) -> bool:
    """True when G[mask] is a connected 2-regular graph."""
    if not mask:
        return False
    deg = _degrees(g, mask)
    if any(d != 2 for d in deg.values()):
        return False
    return len(_component_masks(g, mask, sorted(deg))) == 1


@dataclass(frozen=True)
class Theta:
    """Three internally disjoint paths joining the branch vertices."""

    branch: tuple
    paths: tuple  # three frozensets of labels

    @property
    def edges(self) -> frozenset:
        return self.paths[0] | self.paths[1] | self.paths[2]

    @property
    def cycles(self) -> tuple:
        p, q, r = self.paths
        return (p | q, p | r, q | r)


def _theta_paths(g: Multigraph, mask: int, a: int, b: int):
    paths = []
    for i in bits(mask & g.incidence[a]):
        path = 1 << i
        prev_edge, cur = i, g.ends[i][1] if g.ends[i][0] == a else g.ends[i][0]
        while cur != b:
            nxt = [j for j in bits(mask & g.incidence[cur]) if j != prev_edge]
            (prev_edge,) = nxt
            path |= 1 << prev_edge
            u, v = g.ends[prev_edge]
            cur = v if u == cur else u
        paths.append(path)
    return paths


def theta_masks(g: Multigraph) -> list[tuple]:
    """All thetas as ``(edge mask, (a, b), (path masks))``, sorted by mask."""
    cycles = [c for c in cycle_masks(g) if popcount(c) >= 2]
    found: dict = {}
    for x, c1 in enumerate(cycles):
        for c2 in cycles[x + 1:]:
            if not c1 & c2:
                continue
            union = c1 | c2
            if union in found:
                continue
            deg = _degrees(g, union)
            branch = sorted(v for v, d in deg.items() if d == 3)
            if len(branch) != 2 or any(d not in (2, 3) for d in deg.values()):
                continue
            a, b = branch
            paths = tuple(sorted(_theta_paths(g, union, a, b)))
            found[union] = (union, (a, b), paths)
    return [found[k] for k in sorted(found)]


def all_thetas(g: Multigraph) -> list[Theta]:
    return [Theta(ab, tuple(g.labels_of(p) for p in paths)) for _, ab, paths in theta_masks(g)]


# -- vertex connectivity ----------------------------------------------------

def is_k_vertex_connected(g: Multigraph, k: int) -> bool:
    """Literal k-connectivity: every ``G - S`` (``S`` proper, ``|S| < k``) is connected."""
    if k < 1:
        raise GraphError("k must be at least 1")
    if g.n == 0:
        return False
    for size in range(0, min(k - 1, g.n - 1) + 1):
        for s in itertools.combinations(range(g.n), size):
            rest = [v for v in range(g.n) if v not in s]
            dead = 0
            for v in s:
                dead |= g.incidence[v]
            if len(_component_masks(g, g.full_mask & ~dead, rest)) != 1:
                return False
    return True


# -- isomorphism -------------------------------------------------------------

def _multiplicity(g: Multigraph):
    mult: dict = {}
    for u, v in g.ends:
        mult[(u, v)] = mult.get((u, v), 0) + 1
    return mult


def _vertex_invariant(g: Multigraph, mult, v):
    loops = mult.get((v, v), 0)
    nbrs = sorted(c for (a, b), c in mult.items() if a != b and v in (a, b))
    return (g.degree(v), loops, tuple(nbrs))


def _canonical_search(g: Multigraph):
    """Minimise the adjacency encoding over invariant-respecting permutations.

    Returns ``(form, position)`` where ``position[v]`` is v's canonical index.
    """
    mult = _multiplicity(g)
    inv = {v: _vertex_invariant(g, mult, v) for v in range(g.n)}
    cells: dict = {}
    for v in range(g.n):
        cells.setdefault(inv[v], []).append(v)
    keys = sorted(cells)
    header = tuple((k, len(cells[k])) for k in keys)
    best = None
    best_pos = None
    for choice in itertools.product(*(itertools.permutations(cells[k]) for k in keys)):
        order = [v for part in choice for v in part]
        pos = {v: i for i, v in enumerate(order)}
        enc = tuple(sorted((min(pos[u], pos[w]), max(pos[u], pos[w]), c) for (u, w), c in mult.items()))
        if best is None or enc < best:
            best, best_pos = enc, pos
    return (g.n, header, best), best_pos


def canonical_form(g: Multigraph) -> tuple:
    """Hashable form equal for two graphs iff they are isomorphic (labels ignored)."""
    return _canonical_search(g)[0]


def labeled_key(g: Multigraph) -> tuple:
    """Canonical key of a labelled graph up to renaming vertices.

    Isolated vertices are ignored.  Vertices are numbered by first appearance
    along the label-sorted edge list; when an edge introduces two new vertices
    both orders are tried and the smaller encoding kept.
    """
    edges = sorted(g.edges)

    def walk(i, mapping, nxt, acc):
        if i == len(edges):
            return tuple(acc)
        lab, u, v = edges[i]
        if u in mapping and v in mapping:
            a, b = mapping[u], mapping[v]
            return walk(i + 1, mapping, nxt, acc + [(lab, min(a, b), max(a, b))])
        if u == v or (u in mapping) != (v in mapping):
            m = dict(mapping)
            for w in (u, v):
                if w not in m:
                    m[w] = nxt
                    nxt += 1
            a, b = m[u], m[v]
            return walk(i + 1, m, nxt, acc + [(lab, min(a, b), max(a, b))])
        best = None
        for first, second in ((u, v), (v, u)):
            m = dict(mapping)
            m[first], m[second] = nxt, nxt + 1
            r = walk(i + 1, m, nxt + 2, acc + [(lab, nxt, nxt + 1)])
            if best is None or r < best:
                best = r
        return best

    return walk(0, {}, 0, [])


def graph_isomorphic(g1: Multigraph, g2: Multigraph, respect_labels: bool = False):
    """Return a vertex bijection ``{v1: v2}`` or None.

    With ``respect_labels`` each labelled edge must land on the same label's
    endpoints; otherwise only the multigraph shape has to agree.
    """
    if g1.n != g2.n or len(g1) != len(g2):
        return None
    if not respect_labels:
        f1, p1 = _canonical_search(g1)
        f2, p2 = _canonical_search(g2)
        if f1 != f2:
            return None
        inv2 = {i: v for v, i in p2.items()}
        return {v: inv2[p1[v]] for v in range(g1.n)}

    if set(g1.labels) != set(g2.labels):
        return None
    order = list(g1.labels)

    def extend(i, fwd, back):
        if i == len(order):
            free1 = [v for v in range(g1.n) if v not in fwd]
            free2 = [v for v in range(g2.n) if v not in back]
            out = dict(fwd)
            out.update(zip(free1, free2))
            return out
        a, b = g1.endpoints(order[i])
        c, d = g2.endpoints(order[i])
        if (a == b) != (c == d):
            return None
        for x, y in ((c, d), (d, c)):
            f, bk = dict(fwd), dict(back)
            ok = True
            for s, t in ((a, x), (b, y)):
                if f.get(s, t) != t or bk.get(t, s) != s:
                    ok = False
                    break
                f[s], bk[t] = t, s
            if ok:
                r = extend(i + 1, f, bk)
                if r is not None:
                    return r
            if a == b:
                break
        return None

    return extend(0, {}, {})


# -- Whitney flips -----------------------------------------------------------

def whitney_flip(g: Multigraph, cut, side) -> Multigraph:
    """Swap the attachments of the edge set ``side`` at ``u1`` and ``u2``.

    ``side`` and its complement may only share the vertices ``u1``, ``u2``.
    """
    u1, u2 = cut
    side = set(side)
    x1 = g.mask(side)
    v1 = g.vertices_of(x1)
    v2 = g.vertices_of(g.full_mask & ~x1)
    bad = sorted((v1 & v2) - {u1, u2})
    if bad:
        raise WhitneyFlipError(bad[0])
    swap = {u1: u2, u2: u1}
    edges = []
    for lab, u, v in g.edges:
        if lab in side:
            u, v = swap.get(u, u), swap.get(v, v)
        edges.append((lab, u, v))
    return Multigraph(g.n, tuple(edges), g.name)
