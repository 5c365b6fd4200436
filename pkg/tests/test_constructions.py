import itertools

import pytest

import oracles
from quasigraphic import graph as gr
from quasigraphic.biased import check_theta_property, frame_matroid, is_contra_balanced, lift_matroid
from quasigraphic.constructions import (
    ConstructionError,
    Part,
    consecutive_twisting,
    fat_theta,
    four_twisting,
    pinch,
    simple_curling,
)
from quasigraphic.matroid import cycle_matroid, has_minor, matroid_isomorphic, uniform

BASES = {
    "K4": gr.complete_graph(4),
    "K5": gr.complete_graph(5),
    "W4": gr.wheel_graph(4),
    "prism": gr.prism_graph(),
}


def same_matroid_by_scan(m1, m2):
    # independent subset scan, not relying on circuit bookkeeping
    ind1, ind2 = oracles.matroid_independent(m1), oracles.matroid_independent(m2)
    return all(ind1(s) == ind2(s) for s in oracles.subsets(m1.ground))


@pytest.mark.parametrize("name", sorted(BASES))
def test_pinch_represents_base(name):
    g = BASES[name]
    for v1, v2 in itertools.combinations(range(g.n), 2):
        c = pinch(g, v1, v2)
        assert c.graph.n == g.n - 1
        assert check_theta_property(c.biased)
        assert frame_matroid(c.biased) == cycle_matroid(g)


@pytest.mark.parametrize("name", sorted(BASES))
def test_curling_represents_base(name):
    g = BASES[name]
    for v in range(g.n):
        c = simple_curling(g, v)
        assert c.graph.n == g.n - 1
        assert len(c.graph.loops()) == g.degree(v)
        assert frame_matroid(c.biased) == cycle_matroid(g)


def test_small_examples():
    c4 = gr.cycle_graph(4)
    c = pinch(c4, 0, 2)
    assert matroid_isomorphic(frame_matroid(c.biased), uniform(3, 4)) is not None
    k4 = pinch(gr.complete_graph(4), 0, 1)
    assert len(k4.graph.loops()) == 1
    loop = next(iter(k4.graph.loops()))
    assert not k4.biased.is_balanced_cycle([loop])
    k3 = simple_curling(gr.cycle_graph(3), 0)
    assert k3.graph.n == 2 and len(k3.graph.loops()) == 2
    assert same_matroid_by_scan(frame_matroid(k3.biased), cycle_matroid(gr.cycle_graph(3)))
    star = gr.multigraph(4, {"a": (0, 1), "b": (0, 2), "c": (0, 3)})
    curled = simple_curling(star, 0)
    assert frame_matroid(curled.biased) == uniform(3, 3).__class__(["a", "b", "c"], [])


def test_pinch_of_forest():
    g = gr.path_graph(4)
    c = pinch(g, 0, 3)
    assert frame_matroid(c.biased) == cycle_matroid(g)


def test_curling_rejects_loop_at_vertex():
    g = gr.multigraph(2, {"a": (0, 0), "b": (0, 1)})
    with pytest.raises(ConstructionError):
        simple_curling(g, 0)
    with pytest.raises(ConstructionError):
        pinch(g, 1, 1)


def triangle(p):
    return gr.multigraph(3, {f"{p}a": (0, 1), f"{p}b": (1, 2), f"{p}c": (0, 2)})


def kite(p):
    return gr.multigraph(4, {f"{p}a": (0, 1), f"{p}b": (1, 2), f"{p}c": (0, 2), f"{p}d": (0, 3), f"{p}e": (3, 1)})


def test_four_twisting_triangles():
    parts = [Part(triangle(p), (0, 1, 2)) for p in "ABCD"]
    c = four_twisting(parts)
    assert c.graph.n == 4 * 3 - 12 + 3
    assert check_theta_property(c.biased)
    assert frame_matroid(c.biased) == cycle_matroid(c.base)


def test_four_twisting_mixed_parts():
    parts = [Part(kite("A"), (0, 1, 2)), Part(triangle("B"), (2, 0, 1)), Part(kite("C"), (3, 2, 0)), Part(triangle("D"), (1, 2, 0))]
    c = four_twisting(parts)
    assert c.graph.n == 4 + 3 + 4 + 3 - 12 + 3
    assert frame_matroid(c.biased) == cycle_matroid(c.base)


def test_four_twisting_with_edgeless_part_is_consecutive_three_twisting():
    # [DERIVED] searched over all 6^3 mark orders; exactly this one matches
    ks = [kite(p) for p in "ABC"]
    four = four_twisting([Part(k, (0, 1, 2)) for k in ks] + [Part(gr.Multigraph(3, ()), (0, 1, 2))])
    cons = consecutive_twisting([Part(ks[0], (2, 1, 0)), Part(ks[1], (0, 2, 1)), Part(ks[2], (1, 0, 2))])
    h1, _ = four.graph.without_isolated()
    h2, _ = cons.graph.without_isolated()
    assert gr.graph_isomorphic(h1, h2, respect_labels=True) is not None
    assert four.biased.balanced == cons.biased.balanced
    b1, _ = four.base.without_isolated()
    b2, _ = cons.base.without_isolated()
    assert gr.graph_isomorphic(b1, b2, respect_labels=True) is not None
    assert frame_matroid(four.biased) == cycle_matroid(four.base)


@pytest.mark.parametrize("k", [3, 5])
def test_consecutive_odd_twisting(k):
    # triangles only at k = 5 to stay under the subset-scan limit
    parts = [Part(kite(chr(65 + i)) if i == 1 and k == 3 else triangle(chr(65 + i)), (0, 1, 2)) for i in range(k)]
    c = consecutive_twisting(parts)
    assert c.graph.n == sum(p.graph.n for p in parts) - 3 * k + k
    assert check_theta_property(c.biased)
    assert frame_matroid(c.biased) == cycle_matroid(c.base)


def test_twisting_errors():
    with pytest.raises(ConstructionError):
        four_twisting([Part(triangle(p), (0, 1, 2)) for p in "ABC"])
    with pytest.raises(ConstructionError):
        four_twisting([Part(triangle(p), (0, 0, 2)) for p in "ABCD"])
    with pytest.raises(ConstructionError):
        consecutive_twisting([Part(triangle(p), (0, 1, 2)) for p in "AB"])
    with pytest.raises(ConstructionError):
        consecutive_twisting([Part(triangle("A"), (0, 1, 2))] * 3)  # shared labels
    with pytest.raises(ConstructionError):
        four_twisting([Part(triangle(p), (0, 1, 5)) for p in "ABCD"])


def test_fat_theta_single_edges():
    parts = [Part(gr.multigraph(2, {p: (0, 1)}), (0, 1)) for p in "abc"]
    c = fat_theta(parts)
    assert is_contra_balanced(c.biased)
    lm = lift_matroid(c.biased)
    assert matroid_isomorphic(lm, uniform(2, 3)) is not None
    assert same_matroid_by_scan(lm, cycle_matroid(c.base))


def test_fat_theta_paths_and_larger_parts():
    paths = [Part(gr.multigraph(3, {f"{p}1": (0, 1), f"{p}2": (1, 2)}), (0, 2)) for p in "abc"]
    c = fat_theta(paths)
    assert lift_matroid(c.biased) == cycle_matroid(c.base)
    mixed = [Part(kite("A"), (0, 3)), Part(triangle("B"), (0, 1)), Part(gr.multigraph(2, {"z": (0, 1)}), (1, 0))]
    c = fat_theta(mixed)
    assert check_theta_property(c.biased)
    lm = lift_matroid(c.biased)
    assert lm == cycle_matroid(c.base)
    assert not has_minor(lm, uniform(2, 4))


def test_fat_theta_balance_rule():
    c = fat_theta([Part(triangle(p), (0, 1)) for p in "ABC"])
    for cyc in c.biased.balanced:
        assert len({lab[0] for lab in cyc}) == 1
    with pytest.raises(ConstructionError):
        fat_theta([Part(gr.Multigraph(2, ()), (0, 1))] + [Part(triangle(p), (0, 1)) for p in "BC"])
