"""Structural predicates on frameworks, and property checks built on them.

``H'`` is ``H`` minus its loops when ``H`` is a lifted-graphic
representation of ``N`` and ``H`` itself otherwise.  A framework that is
both a frame and a lift representation follows the lift convention.

The ``check_*`` helpers return a list of violations (empty when the
property holds) so that test suites can report every counterexample.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import graph as gr
from .biased import (
    BalancingSet,
    BiasedGraph,
    _balanced_within,
    balancing_sets,
    blocking_vertices,
    is_balanced,
)
from .frameworks import Representation, classify_representation, verify_framework
from .graph import Multigraph, bits, popcount
from .matroid import Matroid, is_graphic


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class AnalyzedFramework:
    h: Multigraph
    n: Matroid
    derived: BiasedGraph
    representation: Representation
    h_prime: Multigraph
    derived_prime: BiasedGraph

    @property
    def lift_convention(self) -> bool:
        return self.representation.is_lift


def analyze(h: Multigraph, n: Matroid) -> AnalyzedFramework:
    report = verify_framework(h, n)
    if not report.valid:
        f = report.failure
        raise AnalysisError(f"not a framework: {f.axiom} fails ({f.detail})")
    bias = report.derived
    rep = classify_representation(h, n, bias)
    if rep.is_lift and h.loop_mask:
        keep = h.full_mask & ~h.loop_mask
        prime_bias = bias.restrict_mask(keep)
    else:
        prime_bias = bias
    return AnalyzedFramework(h, n, bias, rep, prime_bias.graph, prime_bias)


def star_star(a: AnalyzedFramework, v: int) -> frozenset:
    """``st*(v)``: the edges of ``H'`` meeting ``v``."""
    if not 0 <= v < a.h.n:
        raise AnalysisError(f"vertex {v} is not in the graph")
    return frozenset(a.h_prime.star(v))


def framework_blocking_vertices(a: AnalyzedFramework) -> frozenset:
    return blocking_vertices(a.derived_prime)


def blocking_pairs(a: AnalyzedFramework) -> list[tuple[int, int]]:
    """Pairs ``{u, v}`` where each is blocking in ``H'`` minus the other.

    Pairs touching a blocking vertex of ``H'`` are excluded.
    """
    b = a.derived_prime
    single = blocking_vertices(b)
    out = []
    for u, v in itertools.combinations(range(a.h.n), 2):
        if u in single or v in single:
            continue
        ok = True
        for x, y in ((u, v), (v, u)):
            rest = b.delete_vertices([y])
            # delete_vertices renumbers; x moves down by one when y < x
            xi = x - (1 if y < x else 0)
            if xi not in blocking_vertices(rest):
                ok = False
                break
        if ok:
            out.append((u, v))
    return out


def _require_fixed_scope(a: AnalyzedFramework):
    if not gr.is_connected(a.h):
        raise AnalysisError("fixed vertices are only defined for connected frameworks")
    if not a.n.is_k_connected(3):
        raise AnalysisError("fixed vertices are only defined for 3-connected matroids")


def is_fixed(a: AnalyzedFramework, v: int) -> bool:
    """``N`` minus ``st*(v)`` is 3-connected and not graphic."""
    _require_fixed_scope(a)
    rest = a.n.delete(star_star(a, v))
    return rest.is_k_connected(3) and not is_graphic(rest)


def fixed_vertices(a: AnalyzedFramework) -> frozenset:
    return frozenset(v for v in range(a.h.n) if is_fixed(a, v))


def minimal_balancing_sets_mixed(a: AnalyzedFramework, max_size: int | None = None) -> list[BalancingSet]:
    """Minimal balancing sets of ``H`` mixing vertices and edges."""
    g = a.h
    out = [s for s in balancing_sets(a.derived, allow_vertices=True, max_size=max_size) if s.minimal]
    for s in out:
        star = set()
        for v in s.vertices:
            star |= g.star(v)
        if s.edges & star:
            raise AnalysisError(f"minimal balancing set {sorted(s.edges)} meets the star of its vertices")
    return out


def minimal_balancing_edge_sets(b: BiasedGraph) -> list[int]:
    """Minimal edge sets (as masks) whose deletion leaves ``b`` balanced."""
    g = b.graph
    found: list[int] = []
    for size in range(len(g) + 1):
        for combo in itertools.combinations(range(len(g)), size):
            m = sum(1 << i for i in combo)
            if any(f & m == f for f in found):
                continue
            if _balanced_within(b, g.full_mask & ~m):
                found.append(m)
    return found


# -- property checks ---------------------------------------------------------------

def _is_flat(n: Matroid, mask: int) -> bool:
    return n._closure(mask) == mask


def _is_cocircuit(n: Matroid, mask: int) -> bool:
    rest = n.full & ~mask
    return mask != 0 and _is_flat(n, rest) and n._rank(rest) == n._rank(n.full) - 1


def _is_union_of_cocircuits(n: Matroid, mask: int) -> bool:
    return _is_flat(n, n.full & ~mask)


def _nmask(a: AnalyzedFramework, labels) -> int:
    return a.n.mask(labels)


def circuit_shape(a: AnalyzedFramework, circuit) -> str | None:
    """Which of the three allowed shapes ``H[C]`` has, or None."""
    g, b = a.h, a.derived
    cm = g.mask(circuit)
    nv = len(g.vertices_of(cm))
    ne = popcount(cm)
    if gr.is_cycle_mask(g, cm):
        return "balanced-cycle" if cm in b.balanced_masks else None
    inside = [c for c in b.cycle_masks if c & cm == c]
    if any(c in b.balanced_masks for c in inside):
        return None
    deg = {}
    for i in bits(cm):
        _, u, v = g.edges[i]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if ne == nv + 1 and gr.count_components(g, cm) == 1 and min(deg.values()) >= 2:
        return "contra-balanced"
    for c1, c2 in itertools.combinations(inside, 2):
        if c1 | c2 == cm and not c1 & c2:
            if len(g.vertices_of(c1) & g.vertices_of(c2)) <= 1:
                return "two-unbalanced-cycles"
    return None


def check_circuit_shapes(a: AnalyzedFramework) -> list:
    return [c for c in a.n.circuit_sets() if circuit_shape(a, c) is None]


def check_vertex_connectivity(a: AnalyzedFramework, k: int | None = None) -> list:
    """Connected frameworks of k-connected matroids are (k-1)-connected."""
    if not gr.is_connected(a.h):
        return []
    if k is None:
        k = a.n.connectivity(cap=a.h.n + 2)
    if k < 2:
        return []
    k = min(k, a.h.n + 1)
    return [] if gr.is_k_vertex_connected(a.h, k - 1) else [("vertex-connectivity", k - 1)]


def check_component_structure(a: AnalyzedFramework) -> list:
    """3-connected, at least four elements: connected, or a lift with a loop-component."""
    n, h = a.n, a.h
    if len(n) < 4 or not n.is_k_connected(3):
        return []
    h, _ = h.without_isolated()
    comps = gr.components(h)
    if len(comps) == 1:
        return []
    if len(comps) == 2 and a.representation.is_lift:
        for c in comps:
            if len(c.vertices) == 1 and c.edges <= set(h.labels_of(h.loop_mask)):
                return []
    return [("components", len(comps))]


def check_edge_in_circuit(a: AnalyzedFramework) -> list:
    """If ``H - e`` is connected and unbalanced then ``e`` is not a coloop."""
    out = []
    r = a.n.rank()
    for lab in a.h.labels:
        rest = a.derived.delete_edges([lab])
        if gr.is_connected(rest.graph) and not is_balanced(rest):
            if a.n.rank([x for x in a.n.ground if x != lab]) < r:
                out.append(lab)
    return out


def check_star_cocircuits(a: AnalyzedFramework, literal: bool = True) -> list:
    """Connected framework, 3-connected matroid: ``st*(v)`` is a union of
    cocircuits, and ``v`` is blocking exactly when ``st*(v)`` is not a cocircuit.

    The literal statement fails for lift representations carrying their
    unbalanced loop: the loop lies outside every ``st*(v)`` and raises the
    rank of the complement by one, so a blocking vertex can still have a
    cocircuit as its star.  With ``literal=False`` the blocking test is the
    rank form ``r(E(H' - v)) <= r(N) - 2``, which the argument really shows.
    """
    if not gr.is_connected(a.h) or not a.n.is_k_connected(3):
        return []
    out = []
    r = a.n.rank()
    blocking = framework_blocking_vertices(a)
    for v in range(a.h.n):
        m = _nmask(a, star_star(a, v))
        if not _is_union_of_cocircuits(a.n, m):
            out.append(("not-union", v))
        if literal:
            small = not _is_cocircuit(a.n, m)
        else:
            rest = [lab for lab, x, y in a.h_prime.edges if v not in (x, y)]
            small = a.n.rank(rest) <= r - 2
        if (v in blocking) != small:
            out.append(("blocking", v))
    return out


def check_minimal_balancing_cocircuits(a: AnalyzedFramework) -> list:
    """Connected unbalanced framework: minimal balancing edge sets are cocircuits."""
    if not gr.is_connected(a.h) or is_balanced(a.derived):
        return []
    out = []
    for m in minimal_balancing_edge_sets(a.derived):
        labels = a.h.labels_of(m)
        if not _is_cocircuit(a.n, _nmask(a, labels)):
            out.append(labels)
    return out


def check_balancing_rank(a: AnalyzedFramework, k: int | None = None) -> list:
    """Connected unbalanced framework of a k-connected matroid with ``|V| >= k``:
    edge balancing sets have rank at least ``k``."""
    if not gr.is_connected(a.h) or is_balanced(a.derived):
        return []
    if k is None:
        k = a.n.connectivity(cap=a.h.n + 1)
    k = min(k, a.h.n)
    out = []
    for m in minimal_balancing_edge_sets(a.derived):
        labels = a.h.labels_of(m)
        if a.n.rank(labels) < k:
            out.append(labels)
    return out


def _linking_paths(g: Multigraph, src: frozenset, dst: frozenset):
    """Edge masks of paths from ``src`` to ``dst`` with no interior vertex in either."""
    adj: dict = {v: [] for v in range(g.n)}
    for i, (_, u, v) in enumerate(g.edges):
        if u != v:
            adj[u].append((i, v))
            adj[v].append((i, u))
    blocked = src | dst
    for s in sorted(src):
        stack = [(s, 1 << s, 0)]
        while stack:
            cur, seen, mask = stack.pop()
            for i, w in adj[cur]:
                if seen >> w & 1:
                    continue
                if w in dst:
                    yield mask | (1 << i)
                elif w not in blocked:
                    stack.append((w, seen | (1 << w), mask | (1 << i)))


def check_disjoint_unbalanced_cycles(a: AnalyzedFramework) -> list:
    """Two unbalanced cycles meeting in at most one vertex: their union is a
    circuit (one shared vertex) or, when disjoint, the union with any minimal
    linking path or without it is a circuit."""
    g, b, n = a.h, a.derived, a.n
    unb = b.unbalanced_masks()
    out = []

    def circ(mask):
        return n.mask(g.labels_of(mask)) in n.circuits

    for c1, c2 in itertools.combinations(unb, 2):
        v1, v2 = g.vertices_of(c1), g.vertices_of(c2)
        shared = v1 & v2
        if len(shared) > 1 or c1 & c2:
            continue
        if len(shared) == 1:
            if not circ(c1 | c2):
                out.append((g.labels_of(c1), g.labels_of(c2)))
            continue
        if circ(c1 | c2):
            continue
        for p in _linking_paths(g, frozenset(v1), frozenset(v2)):
            if not circ(c1 | c2 | p):
                out.append((g.labels_of(c1), g.labels_of(c2), g.labels_of(p)))
    return out


def check_balancing_union(a: AnalyzedFramework, max_size: int = 3, samples: int | None = 200, seed: int = 0) -> list:
    """For balancing sets ``V1+E1`` and ``V2+E2`` with disjoint vertex parts and
    ``H - (X1 + X2)`` connected, ``E1 + E2 + E(H[V1 + V2])`` is balancing."""
    g, b = a.h, a.derived
    sets = balancing_sets(b, allow_vertices=True, max_size=max_size)
    pairs = list(itertools.combinations(sets, 2))
    if samples is not None and len(pairs) > samples:
        pairs = random.Random(seed).sample(pairs, samples)
    out = []
    for x1, x2 in pairs:
        if x1.vertices & x2.vertices:
            continue
        vs = x1.vertices | x2.vertices
        em = g.mask(x1.edges | x2.edges)
        dead = em
        for v in vs:
            dead |= g.incidence[v]
        rest = g.subgraph(g.labels_of(g.full_mask & ~dead))
        rest, _ = rest.delete_vertices(vs)
        if rest.n and not gr.is_connected(rest):
            continue
        inner = sum(1 << i for i, (_, u, v) in enumerate(g.edges) if u in vs and v in vs)
        if not _balanced_within(b, g.full_mask & ~(em | inner)):
            out.append((x1, x2))
    return out


def check_fixed_monotone(a: AnalyzedFramework) -> list:
    """A vertex fixed in ``H - f`` (for ``N - f``) is fixed in ``H``."""
    if not gr.is_connected(a.h) or not a.n.is_k_connected(3):
        return []
    out = []
    fixed_here = None
    for f in a.h.labels:
        sub = a.h.delete_edges([f])
        nf = a.n.delete([f])
        if not gr.is_connected(sub) or not nf.is_k_connected(3):
            continue
        af = analyze(sub, nf)
        smaller = fixed_vertices(af)
        if smaller:
            if fixed_here is None:
                fixed_here = fixed_vertices(a)
            for v in smaller - fixed_here:
                out.append((f, v))
    return out


ALL_CHECKS = {
    "circuit-shapes": check_circuit_shapes,
    "vertex-connectivity": check_vertex_connectivity,
    "components": check_component_structure,
    "edge-in-circuit": check_edge_in_circuit,
    "star-cocircuits": check_star_cocircuits,
    "balancing-cocircuits": check_minimal_balancing_cocircuits,
    "balancing-rank": check_balancing_rank,
    "disjoint-cycles": check_disjoint_unbalanced_cycles,
}


def run_checks(a: AnalyzedFramework, names=None) -> dict:
    names = ALL_CHECKS if names is None else names
    return {name: ALL_CHECKS[name](a) for name in names}
