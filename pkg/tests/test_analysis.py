import itertools

import pytest

import oracles
from conftest import random_multigraph
from quasigraphic import graph as gr
from quasigraphic.analysis import (
    ALL_CHECKS,
    AnalysisError,
    analyze,
    blocking_pairs,
    check_balancing_union,
    check_disjoint_unbalanced_cycles,
    check_fixed_monotone,
    check_star_cocircuits,
    fixed_vertices,
    framework_blocking_vertices,
    is_fixed,
    minimal_balancing_edge_sets,
    minimal_balancing_sets_mixed,
    run_checks,
    star_star,
)
from quasigraphic.biased import blocking_vertices, frame_matroid, from_signature, lift_matroid
from quasigraphic.frameworks import enumerate_frameworks
from quasigraphic.matroid import cycle_matroid, uniform

LABELS6 = [f"e{i}" for i in range(6)]


def two_k3():
    return gr.k_multiply(gr.cycle_graph(3), 2).relabeled(LABELS6)


def signed_with_fixed_vertex():
    """Signed K4 with doubled edges on {1,2,3} and negative loops there: 12 elements."""
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = {f"p{i}": p for i, p in enumerate(pairs)}
    edges.update({f"n{i}": pairs[i] for i in (3, 4, 5)})
    edges.update({f"l{v}": (v, v) for v in (1, 2, 3)})
    g = gr.multigraph(4, edges)
    b = from_signature(g, [lab for lab in edges if lab[0] in "nl"])
    return g, frame_matroid(b)


def all_frameworks(n, **kw):
    return [analyze(g, n) for g in enumerate_frameworks(n, **kw).all_graphs()]


# -- definitions on small worked examples ------------------------------------------------

def test_two_k3_has_no_blocking_or_fixed_vertices():
    a = analyze(two_k3(), uniform(3, 6))
    assert framework_blocking_vertices(a) == frozenset()
    assert fixed_vertices(a) == frozenset()
    for v in range(3):
        assert star_star(a, v) == a.h.star(v)


def test_signed_k4_lift_blocking_pair_of_ends():
    g = gr.complete_graph(4)
    b = from_signature(g, ["e0"])
    a = analyze(g, lift_matroid(b))
    assert a.representation.is_lift
    assert framework_blocking_vertices(a) == frozenset(g.endpoints("e0"))


def test_balanced_framework_has_no_blocking_structure():
    g = gr.complete_graph(4)
    a = analyze(g, cycle_matroid(g))
    assert framework_blocking_vertices(a) == frozenset()
    assert blocking_pairs(a) == []
    assert fixed_vertices(a) == frozenset()


def test_star_star_drops_loops_of_lift_representations():
    # U_{2,4} as a lift: a loop plus a triple link
    n = uniform(2, 4)
    g = gr.multigraph(2, {"e0": (0, 0), "e1": (0, 1), "e2": (0, 1), "e3": (0, 1)})
    a = analyze(g, n)
    assert a.lift_convention
    assert star_star(a, 0) == {"e1", "e2", "e3"}
    assert "e0" in a.h.star(0)
    with pytest.raises(AnalysisError):
        star_star(a, 5)


def test_blocking_pairs_brute_force(rng):
    found = 0
    for _ in range(40):
        g = random_multigraph(rng, max_vertices=5, max_edges=7)
        b = from_signature(g, [lab for lab in g.labels if rng.random() < 0.5])
        a = analyze(g, frame_matroid(b))
        single = framework_blocking_vertices(a)
        unb = [c for c in oracles.cycles(a.h_prime) if a.h_prime.mask(c) not in a.derived_prime.balanced_masks]

        def blocks_without(x, y):
            # every unbalanced cycle avoiding y passes through x
            def touches(c, v):
                return any(v in a.h_prime.endpoints(e) for e in c)

            rest = [c for c in unb if not touches(c, y)]
            return bool(rest) and all(touches(c, x) for c in rest)

        expect = [
            (u, v)
            for u, v in itertools.combinations(range(g.n), 2)
            if u not in single and v not in single and blocks_without(u, v) and blocks_without(v, u)
        ]
        got = blocking_pairs(a)
        assert got == expect
        assert not (set(itertools.chain(*got)) & single)
        found += len(got)
    assert found


def test_pinch_gives_blocking_vertex():
    # pinching two vertices of K4 makes the identified vertex blocking
    from quasigraphic.constructions import pinch

    c = pinch(gr.complete_graph(4), 0, 1)
    assert 0 in blocking_vertices(c.biased)


# -- fixed vertices --------------------------------------------------------------------

def test_fixed_vertex_instance():
    g, n = signed_with_fixed_vertex()
    a = analyze(g, n)
    assert fixed_vertices(a) == {0}
    assert check_fixed_monotone(a) == []


def test_fixed_monotone_is_not_vacuous():
    g, n = signed_with_fixed_vertex()
    hits = 0
    for f in g.labels:
        sub, nf = g.delete_edges([f]), n.delete([f])
        if gr.is_connected(sub) and nf.is_k_connected(3):
            hits += len(fixed_vertices(analyze(sub, nf)))
    assert hits > 0


def test_fixed_scope_errors():
    a = analyze(gr.multigraph(2, {"a": (0, 0), "b": (1, 1)}), uniform(1, 2, ["a", "b"]))
    with pytest.raises(AnalysisError):
        is_fixed(a, 0)
    g = gr.path_graph(3)
    with pytest.raises(AnalysisError):
        fixed_vertices(analyze(g, cycle_matroid(g)))


def test_analyze_rejects_non_frameworks():
    with pytest.raises(AnalysisError):
        analyze(gr.complete_graph(4), uniform(3, 6))


# -- balancing sets --------------------------------------------------------------------

def test_mixed_balancing_sets(rng):
    for _ in range(20):
        g = random_multigraph(rng, max_vertices=4, max_edges=6)
        b = from_signature(g, [lab for lab in g.labels if rng.random() < 0.5])
        a = analyze(g, frame_matroid(b))
        sets = minimal_balancing_sets_mixed(a)
        for s in sets:
            star = set().union(*(g.star(v) for v in s.vertices)) if s.vertices else set()
            assert not (s.edges & star)
        for v in blocking_vertices(b):
            assert any(s.vertices == {v} and not s.edges for s in sets)


def test_minimal_balancing_edge_sets_brute(rng):
    for _ in range(20):
        g = random_multigraph(rng, max_vertices=4, max_edges=6)
        b = from_signature(g, [lab for lab in g.labels if rng.random() < 0.5])
        cyc = oracles.cycles(g)

        def balancing(s):
            return all(g.mask(c) in b.balanced_masks for c in cyc if not c & s)

        bal = [s for s in oracles.subsets(g.labels) if balancing(s)]
        minimal = {s for s in bal if not any(t < s for t in bal)}
        assert {g.labels_of(m) for m in minimal_balancing_edge_sets(b)} == minimal


# -- structural checks over enumerated frameworks ---------------------------------------

SUITES = {
    "U24": uniform(2, 4),
    "U25": uniform(2, 5),
    "U35": uniform(3, 5),
    "U36": uniform(3, 6),
    "U46": uniform(4, 6),
    "MK4": cycle_matroid(gr.complete_graph(4)),
}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_checks_hold_on_enumerated_frameworks(name):
    n = SUITES[name]
    names = [k for k in ALL_CHECKS if k != "star-cocircuits"]
    for a in all_frameworks(n, three_connected_shortcut=False if len(n) <= 5 else True):
        bad = {k: v for k, v in run_checks(a, names).items() if v}
        assert not bad, (a.h, bad)
        assert check_star_cocircuits(a, literal=False) == []


@pytest.mark.parametrize("name", ["U36", "U46", "U35"])
def test_literal_star_cocircuit_statement_without_loops(name):
    for a in all_frameworks(SUITES[name]):
        assert check_star_cocircuits(a, literal=True) == []


@pytest.mark.parametrize("name, count", [("U24", 4), ("U25", 5), ("MK4", 18)])  # [DERIVED] frozen counts
def test_literal_star_cocircuit_failures_need_a_lift_loop(name, count):
    # every literal failure comes from a lift representation with an unbalanced loop
    n = SUITES[name]
    failures = 0
    for a in all_frameworks(n):
        bad = check_star_cocircuits(a, literal=True)
        if bad:
            failures += 1
            assert a.lift_convention and a.h.loop_mask
            assert all(kind == "blocking" for kind, _ in bad)
    assert failures == count


def test_literal_star_counterexample_by_hand():
    # M(W4) represented as a lift: the hub carries the loop and all rim edges
    w4 = cycle_matroid(gr.wheel_graph(4))
    h = gr.multigraph(4, {"e0": (0, 0), "e1": (0, 1), "e2": (0, 2), "e3": (0, 3),
                          "e4": (0, 1), "e5": (1, 2), "e6": (2, 3), "e7": (0, 3)})
    a = analyze(h, w4)
    assert a.lift_convention
    assert 0 in framework_blocking_vertices(a)
    st = star_star(a, 0)
    assert st == {"e1", "e2", "e3", "e4", "e7"}
    # the complement of st*(0) is a hyperplane, so st*(0) is a cocircuit
    ind = oracles.matroid_independent(w4)
    rest = frozenset(w4.ground) - st
    r = oracles.rank(ind, w4.ground)
    assert oracles.rank(ind, rest) == r - 1
    assert all(oracles.rank(ind, rest | {e}) == r for e in st)


def test_disjoint_cycles_on_signed_lifts(rng):
    checked = 0
    for _ in range(30):
        g = random_multigraph(rng, max_vertices=5, max_edges=7)
        b = from_signature(g, [lab for lab in g.labels if rng.random() < 0.5])
        a = analyze(g, lift_matroid(b))
        assert check_disjoint_unbalanced_cycles(a) == []
        checked += len(b.unbalanced_masks()) >= 2
    assert checked


def test_balancing_union_sampled(rng):
    for _ in range(15):
        g = random_multigraph(rng, max_vertices=4, max_edges=6)
        b = from_signature(g, [lab for lab in g.labels if rng.random() < 0.5])
        a = analyze(g, frame_matroid(b))
        assert check_balancing_union(a, max_size=3, samples=100, seed=1) == []
