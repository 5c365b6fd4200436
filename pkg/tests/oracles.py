"""Slow, obviously-correct reference computations used as test oracles.

Nothing here reuses the package's bitmask machinery: graphs are handled as
lists of (label, u, v) triples and matroids through plain independence
oracles over frozensets.
"""

import itertools


def subsets(items, sizes=None):
    items = list(items)
    sizes = range(len(items) + 1) if sizes is None else sizes
    for k in sizes:
        for c in itertools.combinations(items, k):
            yield frozenset(c)


def edge_list(g):
    return [(lab, u, v) for lab, u, v in g.edges]


def vertices_of(edges):
    vs = set()
    for _, u, v in edges:
        vs.update((u, v))
    return vs


def components(vertices, edges):
    """Components by repeated transitive closure of adjacency."""
    reach = {v: {v} for v in vertices}
    changed = True
    while changed:
        changed = False
        for _, u, v in edges:
            merged = reach[u] | reach[v]
            for w in merged:
                if reach[w] != merged:
                    reach[w] = set(merged)
                    changed = True
    return {frozenset(s) for s in reach.values()}


def is_cycle(edges):
    """Connected, non-empty and every vertex of degree exactly two."""
    if not edges:
        return False
    deg = {}
    for _, u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return len(components(set(deg), edges)) == 1


def cycles(g):
    es = edge_list(g)
    out = set()
    for s in subsets(range(len(es))):
        sub = [es[i] for i in s]
        if is_cycle(sub):
            out.add(frozenset(e[0] for e in sub))
    return out


def thetas(g):
    """Edge sets that are thetas: two degree-3 vertices, the rest degree 2,
    connected, |E| = |V| + 1 and no bridge (a bridge would make it a handcuff)."""
    es = edge_list(g)
    out = set()
    for s in subsets(range(len(es))):
        sub = [es[i] for i in s]
        if not sub or any(u == v for _, u, v in sub):
            continue
        deg = {}
        for _, u, v in sub:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        if sorted(d for d in deg.values() if d != 2) != [3, 3]:
            continue
        if len(sub) != len(deg) + 1:
            continue
        if len(components(set(deg), sub)) != 1:
            continue
        if any(len(components(set(deg), [e for e in sub if e is not f])) != 1 for f in sub):
            continue
        out.add(frozenset(e[0] for e in sub))
    return out


def forest_independent(g):
    """Independence oracle of the cycle matroid: no cycle inside the set."""
    ends = {lab: (u, v) for lab, u, v in g.edges}

    def indep(s):
        sub = [(lab,) + ends[lab] for lab in s]
        vs = vertices_of(sub)
        return len(sub) == len(vs) - len(components(vs, sub)) if sub else True

    return indep


def matroid_independent(m):
    """Independence read straight off the circuit list."""
    circs = m.circuit_sets()
    return lambda s: not any(c <= s for c in circs)


def rank(indep, s):
    s = frozenset(s)
    for k in range(len(s), -1, -1):
        for t in itertools.combinations(sorted(s), k):
            if indep(frozenset(t)):
                return k
    return 0


def circuits_from(indep, ground):
    deps = [s for s in subsets(ground) if not indep(s)]
    return {s for s in deps if all(indep(s - {e}) for e in s)}


def bases(indep, ground):
    ind = [s for s in subsets(ground) if indep(s)]
    r = max(len(s) for s in ind)
    return {s for s in ind if len(s) == r}


def dual_circuits(indep, ground):
    """Circuits of the dual: minimal sets meeting every basis."""
    ground = frozenset(ground)
    bs = bases(indep, ground)
    co_bases = {ground - b for b in bs}
    co_indep = lambda s: any(s <= b for b in co_bases)
    return circuits_from(co_indep, ground)


def balanced_components(g, balanced, s):
    """Components of g[s] (on their own vertices) with no unbalanced cycle."""
    ends = {lab: (u, v) for lab, u, v in g.edges}
    sub = [(lab,) + ends[lab] for lab in s]
    comps = components(vertices_of(sub), sub)
    cyc = [c for c in cycles_of_set(g, s)]
    count = 0
    for comp in comps:
        inside = [c for c in cyc if all(ends[e][0] in comp for e in c)]
        if all(c in balanced for c in inside):
            count += 1
    return len(vertices_of(sub)), len(comps), count


def cycles_of_set(g, s):
    sub = [(lab, u, v) for lab, u, v in g.edges if lab in s]
    out = []
    for t in subsets(range(len(sub))):
        part = [sub[i] for i in t]
        if is_cycle(part):
            out.append(frozenset(e[0] for e in part))
    return out


def frame_rank(g, balanced, s):
    """Zaslavsky: |V(S)| minus the number of balanced components of S."""
    nv, _, b = balanced_components(g, balanced, s)
    return nv - b


def lift_rank(g, balanced, s):
    """Zaslavsky: |V(S)| - c(S), plus one when S is unbalanced."""
    nv, c, b = balanced_components(g, balanced, s)
    return nv - c + (0 if b == c else 1)


def is_framework(g, m):
    """QG1-QG4 evaluated literally with the slow oracles."""
    if sorted(g.labels) != sorted(m.ground):
        return False
    indep = matroid_independent(m)
    es = edge_list(g)
    vs = set(range(g.n))
    # QG2
    for comp in components(vs, es):
        labels = frozenset(lab for lab, u, v in es if u in comp)
        if rank(indep, labels) > len(comp):
            return False
    # QG3
    ground = frozenset(m.ground)
    for v in vs:
        rest = frozenset(lab for lab, a, b in es if v not in (a, b))
        loops = frozenset(lab for lab, a, b in es if a == b == v)
        r = rank(indep, rest)
        for e in ground - rest - loops:
            if rank(indep, rest | {e}) == r:
                return False
    # QG4
    for c in m.circuit_sets():
        sub = [e for e in es if e[0] in c]
        if len(components(vertices_of(sub), sub)) > 2:
            return False
    return True
