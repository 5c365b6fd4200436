import itertools

import pytest

import oracles
from conftest import random_multigraph
from quasigraphic import graph as gr
from quasigraphic.biased import frame_matroid, from_signature, lift_matroid
from quasigraphic.frameworks import (
    classify_representation,
    decide_quasi_graphic,
    enumerate_frameworks,
    failure_recurs,
    is_excluded_minor,
    verify_framework,
)
from quasigraphic.matroid import Matroid, UnsupportedSize, cycle_matroid, uniform

LABELS6 = [f"e{i}" for i in range(6)]


def two_k3():
    return gr.k_multiply(gr.cycle_graph(3), 2).relabeled(LABELS6)


def graph_k():
    return gr.graph_k().relabeled(LABELS6)


def brute_frameworks(n, vmax):
    """Every framework without isolated vertices on at most vmax vertices."""
    labels = list(n.ground)
    keys = set()
    for k in range(1, vmax + 1):
        pairs = [(u, v) for u in range(k) for v in range(u, k)]
        for choice in itertools.product(pairs, repeat=len(labels)):
            used = {x for p in choice for x in p}
            if len(used) != k:
                continue
            g = gr.Multigraph(k, tuple((lab, u, v) for lab, (u, v) in zip(labels, choice)))
            if oracles.is_framework(g, n):
                keys.add(gr.labeled_key(g))
    return keys


# -- verification ------------------------------------------------------------------

def test_spec_examples():
    assert verify_framework(two_k3(), uniform(3, 6)).valid
    assert verify_framework(gr.complete_graph(4), uniform(4, 6)).valid
    assert verify_framework(graph_k(), uniform(4, 6)).valid
    bad = verify_framework(gr.complete_graph(4), uniform(3, 6))
    assert not bad.valid
    # the triangle/4-cycle bias is consistent; the failure is a spanned star edge
    assert bad.failure.axiom == "QG3"
    assert failure_recurs(gr.complete_graph(4), uniform(3, 6), bad.failure)


def test_each_axiom_can_fail():
    k4 = gr.complete_graph(4)
    r = verify_framework(k4, uniform(3, 7))
    assert r.failure.axiom == "QG1"
    r = verify_framework(gr.cycle_graph(3), uniform(1, 3))
    assert r.failure.axiom == "BIAS"
    # three parallel edges: rank 3 on two vertices
    abc = ["a", "b", "c"]
    par = gr.multigraph(2, {"a": (0, 1), "b": (0, 1), "c": (0, 1)})
    r = verify_framework(par, uniform(3, 3, abc))
    assert r.failure.axiom == "QG2"
    # a circuit spread over three loop components
    spread = gr.multigraph(3, {"a": (0, 0), "b": (1, 1), "c": (2, 2)})
    r = verify_framework(spread, uniform(2, 3, abc))
    assert r.failure.axiom == "QG4"
    for g, n in ((k4, uniform(3, 7)), (gr.cycle_graph(3), uniform(1, 3)), (par, uniform(3, 3, abc)), (spread, uniform(2, 3, abc))):
        rep = verify_framework(g, n)
        assert failure_recurs(g, n, rep.failure)


def random_matroid_on(rng, labels):
    kind = rng.randrange(3)
    m = len(labels)
    if kind == 0:
        return uniform(rng.randint(0, m), m, labels=labels)
    g = random_multigraph(rng, max_vertices=4, max_edges=m)
    while len(g) != m:
        g = random_multigraph(rng, max_vertices=4, max_edges=m)
    g = g.relabeled(labels)
    if kind == 1:
        return cycle_matroid(g)
    sigma = [lab for lab in labels if rng.random() < 0.5]
    b = from_signature(g, sigma)
    return frame_matroid(b) if rng.random() < 0.5 else lift_matroid(b)


def test_verify_against_literal_oracle(rng):
    agree = {True: 0, False: 0}
    for _ in range(150):
        g = random_multigraph(rng, max_vertices=4, max_edges=6)
        n = random_matroid_on(rng, list(g.labels))
        rep = verify_framework(g, n)
        assert rep.valid == oracles.is_framework(g, n), (g, n)
        if not rep.valid:
            assert failure_recurs(g, n, rep.failure)
        agree[rep.valid] += 1
    assert agree[True] > 10 and agree[False] > 10


def test_signed_graphs_frame_their_frame_matroid(rng):
    for _ in range(30):
        g = random_multigraph(rng, max_vertices=5, max_edges=7)
        b = from_signature(g, [lab for lab in g.labels if rng.random() < 0.4])
        fm = frame_matroid(b)
        rep = verify_framework(g, fm)
        assert rep.valid
        assert rep.derived.balanced_masks == b.balanced_masks
        assert classify_representation(g, fm).is_frame


# -- classification ----------------------------------------------------------------

def test_classification_examples():
    c = classify_representation(two_k3(), uniform(3, 6))
    assert c.is_frame and c.is_lift
    k4 = gr.complete_graph(4)
    c = classify_representation(k4, cycle_matroid(k4))
    assert c.is_frame and c.is_lift
    c = classify_representation(gr.complete_graph(4), uniform(4, 6))
    assert c.is_frame


def test_unbalanced_loop_frameworks_are_frame_or_lift():
    n = uniform(2, 4)
    for g in enumerate_frameworks(n, three_connected_shortcut=False).all_graphs():
        bias = verify_framework(g, n).derived
        if any(not bias.is_balanced_cycle([lab]) for lab in g.loops()):
            c = classify_representation(g, n)
            assert c.is_frame or c.is_lift


# -- enumeration -------------------------------------------------------------------

def test_u36_unique_framework():
    res = enumerate_frameworks(uniform(3, 6))
    types = res.unlabeled_classes()
    assert len(types) == 1
    assert gr.graph_isomorphic(types[0][0], two_k3()) is not None
    assert all(oracles.is_framework(g, uniform(3, 6)) for g in res.all_graphs())


def test_u46_frameworks_are_k4_and_k():
    res = enumerate_frameworks(uniform(4, 6))
    shapes = {gr.canonical_form(g) for g in res.all_graphs()}
    assert shapes == {gr.canonical_form(gr.complete_graph(4)), gr.canonical_form(gr.graph_k())}


def test_u26_includes_six_parallel_edges():
    res = enumerate_frameworks(uniform(2, 6))
    six_k2 = gr.k_multiply(gr.path_graph(2), 6)
    assert any(gr.graph_isomorphic(g, six_k2) is not None for g in res.all_graphs())


@pytest.mark.parametrize(
    "n",
    [uniform(1, 3), uniform(2, 3), uniform(0, 3), uniform(3, 3), Matroid(["a", "b", "c"], [{"a"}, {"b", "c"}])],
    ids=["U13", "U23", "U03", "U33", "loop+pair"],
)
def test_enumeration_matches_brute_force(n):
    got = {gr.labeled_key(g) for g in enumerate_frameworks(n, three_connected_shortcut=False).all_graphs()}
    assert got == brute_frameworks(n, 2 * len(n))


@pytest.mark.parametrize("n", [uniform(2, 4), uniform(3, 4), cycle_matroid(gr.cycle_graph(4))], ids=["U24", "U34", "C4"])
def test_bounded_enumeration_matches_brute_force(n):
    res = enumerate_frameworks(n, max_vertices=3, three_connected_shortcut=False)
    assert res.bounded
    got = {gr.labeled_key(g) for g in res.all_graphs()}
    assert got == brute_frameworks(n, 3)


def test_representatives_pairwise_inequivalent():
    for n in (uniform(2, 4), uniform(2, 5), uniform(4, 6)):
        res = enumerate_frameworks(n)
        reps = [fw.graph for fw in res.frameworks]
        for a, b in itertools.combinations(reps, 2):
            assert gr.graph_isomorphic(a, b, respect_labels=True) is None
        for fw in res.frameworks:
            assert verify_framework(fw.graph, n).valid


def test_loop_relocation_classes():
    # in a lift representation the unbalanced loop may sit anywhere
    res = enumerate_frameworks(uniform(2, 4), three_connected_shortcut=False)
    for fw, members in zip(res.frameworks, res.classes):
        for g in members:
            assert verify_framework(g, res.matroid).valid
        if len(members) > 1:
            loops = {frozenset(g.loops()) for g in members}
            assert len(loops) == 1


def test_worker_count_does_not_change_output():
    for n in (uniform(4, 6), uniform(2, 5)):
        one = enumerate_frameworks(n, jobs=1).records(members=True)
        two = enumerate_frameworks(n, jobs=2).records(members=True)
        assert one == two


def test_pruned_equals_naive_small():
    for n in (uniform(2, 4), uniform(1, 4), uniform(3, 4)):
        a = enumerate_frameworks(n).records()
        b = enumerate_frameworks(n, prune=False, three_connected_shortcut=False).records()
        assert a == b


def test_size_limit_and_bounded_flag():
    with pytest.raises(UnsupportedSize):
        enumerate_frameworks(uniform(3, 11))
    with pytest.raises(UnsupportedSize):
        decide_quasi_graphic(uniform(3, 11))
    res = enumerate_frameworks(uniform(1, 4), max_vertices=2)
    assert res.bounded
    assert not enumerate_frameworks(uniform(1, 4)).bounded


def test_stats_report_pruning():
    res = enumerate_frameworks(uniform(3, 6))
    assert res.stats["nodes"] > 0 and res.stats["verified"] >= len(res.all_graphs())
    assert sum(res.stats["pruned"].values()) > 0


# -- decisions ---------------------------------------------------------------------

def test_decide_examples():
    d = decide_quasi_graphic(uniform(3, 6))
    assert d.quasi_graphic is True
    assert gr.graph_isomorphic(d.witness, two_k3()) is not None
    assert verify_framework(d.witness, uniform(3, 6)).valid
    for r in (3, 4):
        d = decide_quasi_graphic(uniform(r, 7))
        assert d.quasi_graphic is False and not d.bounded
    k4 = cycle_matroid(gr.complete_graph(4))
    d = decide_quasi_graphic(k4)
    assert verify_framework(d.witness, k4).derived.balanced_masks == frozenset(gr.cycle_masks(d.witness))


def test_decide_bounded():
    d = decide_quasi_graphic(Matroid(["a", "b", "c"], [{"a"}, {"b", "c"}]), max_vertices=1)
    assert d.quasi_graphic is True
    d = decide_quasi_graphic(uniform(3, 3), max_vertices=1)
    assert d.quasi_graphic is None and d.bounded


def test_excluded_minors():
    rep = is_excluded_minor(uniform(3, 7))
    assert rep.excluded
    assert len(rep.minors) == 14
    assert all(d.quasi_graphic for d in rep.minors.values())
    assert is_excluded_minor(uniform(4, 7)).excluded
    rep = is_excluded_minor(uniform(3, 6))
    assert not rep.excluded and rep.quasi_graphic
