"""Framework verification and exhaustive framework enumeration.

A graph ``H`` is a framework for a matroid ``N`` when

* QG1: the edge labels of ``H`` are exactly the elements of ``N``;
* QG2: ``r(E(H')) <= |V(H')|`` for every component ``H'``;
* QG3: ``cl(E(H - v))`` stays inside ``E(H - v)`` plus the loops at ``v``;
* QG4: every circuit of ``N`` induces at most two components of ``H``.

:func:`enumerate_frameworks` assigns elements to endpoint pairs in ground
order over vertices introduced in order of first use, so two assignments
that differ by a vertex renaming are rarely both generated and any
remaining duplicates are merged by :func:`~quasigraphic.graph.labeled_key`.
Candidate graphs never have isolated vertices: an isolated vertex meets no
edge, adds nothing to QG1-QG4, and only inflates the search.

Sound pruning rules applied at every partial assignment:

``bias``
    a closed cycle must be a circuit or an independent set;
``shape``
    a circuit whose edges are all placed must induce a cycle, a connected
    subgraph of minimum degree two with one more edge than vertices, or two
    vertex-disjoint cycles;
``rank``
    every component of the partial graph has rank at most its vertex count;
``closure``
    a placed link at ``v`` must not be spanned by the placed edges avoiding
    ``v`` (closure only grows as edges are added);
``vertices`` / ``connected``
    the remaining edges must still be able to reach the target vertex count
    and join the components.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import graph as gr
from .biased import BiasedGraph, InconsistentBias, derive_bias, frame_matroid, lift_matroid
from .graph import Multigraph, bits, popcount
from .matroid import Matroid, UnsupportedSize, is_graphic

#: default element bound for exhaustive enumeration
MAX_ELEMENTS = 10


@dataclass(frozen=True)
class Failure:
    axiom: str  # QG1 | QG2 | QG3 | QG4 | BIAS
    witness: object
    detail: str = ""


@dataclass(frozen=True)
class FrameworkReport:
    valid: bool
    derived: BiasedGraph | None = None
    failure: Failure | None = None

    def __bool__(self):
        return self.valid


def _to_matroid_mask(h: Multigraph, n: Matroid, mask: int) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << n.index[h.labels[i]]
    return out


def verify_framework(h: Multigraph, n: Matroid) -> FrameworkReport:
    """Check QG1, bias consistency, QG2, QG3 and QG4 in that order."""
    hl, ng = set(h.labels), set(n.ground)
    if hl != ng:
        diff = frozenset(hl ^ ng)
        return FrameworkReport(False, None, Failure("QG1", diff, "edge labels differ from the ground set"))
    try:
        bias = derive_bias(h, n)
    except InconsistentBias as exc:
        return FrameworkReport(False, None, Failure("BIAS", exc.cycle, "cycle is neither a circuit nor independent"))

    for comp in gr.components(h):
        r = n.rank(comp.edges)
        if r > len(comp.vertices):
            return FrameworkReport(
                False, bias, Failure("QG2", comp, f"component of rank {r} on {len(comp.vertices)} vertices")
            )

    full = h.full_mask
    for v in range(h.n):
        rest = full & ~h.incidence[v]
        allowed = rest | (h.loop_mask & h.incidence[v])
        rest_n = _to_matroid_mask(h, n, rest)
        closure = n._closure(rest_n)
        allowed_n = _to_matroid_mask(h, n, allowed)
        extra = closure & ~allowed_n
        if extra:
            e = n.ground[(extra & -extra).bit_length() - 1]
            return FrameworkReport(False, bias, Failure("QG3", (v, e), f"{e} is spanned by E(H-{v})"))

    for c in sorted(n.circuits):
        labels = n.labels(c)
        k = gr.count_components(h, h.mask(labels))
        if k > 2:
            return FrameworkReport(False, bias, Failure("QG4", labels, f"circuit induces {k} components"))
    return FrameworkReport(True, bias, None)


def failure_recurs(h: Multigraph, n: Matroid, failure: Failure) -> bool:
    """Re-check a reported failure directly from its witness."""
    if failure.axiom == "QG1":
        return bool(failure.witness) and set(h.labels) != set(n.ground)
    if failure.axiom == "BIAS":
        c = failure.witness
        return gr.is_cycle_mask(h, h.mask(c)) and not n.is_circuit(c) and not n.is_independent(c)
    if failure.axiom == "QG2":
        comp = failure.witness
        return n.rank(comp.edges) > len(comp.vertices)
    if failure.axiom == "QG3":
        v, e = failure.witness
        rest = [lab for lab, a, b in h.edges if v not in (a, b)]
        return e in n.closure(rest) and e not in rest and e not in h.loops(v)
    if failure.axiom == "QG4":
        return gr.count_components(h, h.mask(failure.witness)) > 2
    return False


# -- representation classification ----------------------------------------------

@dataclass(frozen=True)
class Representation:
    is_frame: bool
    is_lift: bool


def classify_representation(h: Multigraph, n: Matroid, bias: BiasedGraph | None = None) -> Representation:
    """Whether the derived biased graph's frame / lift matroid is ``n`` itself."""
    if bias is None:
        bias = derive_bias(h, n)
    target = set(n.circuit_sets())
    frame = set(frame_matroid(bias).circuit_sets()) == target
    lift = set(lift_matroid(bias).circuit_sets()) == target
    return Representation(frame, lift)


# -- search -------------------------------------------------------------------------

@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    verified: int = 0
    pruned: dict = field(default_factory=dict)

    def bump(self, reason):
        self.pruned[reason] = self.pruned.get(reason, 0) + 1

    def merge(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.verified += other.verified
        for k, v in other.pruned.items():
            self.pruned[k] = self.pruned.get(k, 0) + v

    def as_dict(self):
        return {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "verified": self.verified,
            "pruned": dict(sorted(self.pruned.items())),
        }


class _Search:
    """Depth-first endpoint assignment over ground order."""

    def __init__(self, n: Matroid, vmin: int, vmax: int, connected: bool, prune: bool, stop_first: bool = False):
        self.n = n
        self.m = len(n)
        self.vmin, self.vmax = vmin, vmax
        self.connected = connected
        self.prune = prune
        self.stop_first = stop_first
        self.R = n.rank_table()
        self.circs = n.circuits
        last: list[list[int]] = [[] for _ in range(self.m)]
        for c in n.circuits:
            last[c.bit_length() - 1].append(c)
        self.complete_at = last
        self.ends: list = []
        self.inc = [0] * (vmax + 2)
        self.links = [0] * (vmax + 2)
        self.adj: list[list] = [[] for _ in range(vmax + 2)]
        self.k = 0
        self.stats = SearchStats()
        self.found: list[Multigraph] = []
        self.done = False

    # -- state --------------------------------------------------------------

    def options(self):
        k, cap = self.k, self.vmax
        for b in range(k):
            for a in range(b + 1):
                yield a, b
        if k + 1 <= cap:
            for a in range(k):
                yield a, k
            yield k, k
        if k + 2 <= cap:
            yield k, k + 1

    def apply(self, a, b):
        i = len(self.ends)
        self.ends.append((a, b))
        bit = 1 << i
        self.inc[a] |= bit
        self.inc[b] |= bit
        if a != b:
            self.links[a] |= bit
            self.links[b] |= bit
            self.adj[a].append((i, b))
            self.adj[b].append((i, a))
        self.k_stack.append(self.k)
        self.k = max(self.k, b + 1)

    def undo(self):
        i = len(self.ends) - 1
        a, b = self.ends.pop()
        bit = ~(1 << i)
        self.inc[a] &= bit
        self.inc[b] &= bit
        if a != b:
            self.links[a] &= bit
            self.links[b] &= bit
            self.adj[a].pop()
            self.adj[b].pop()
        self.k = self.k_stack.pop()

    # -- pruning ------------------------------------------------------------

    def _new_cycles(self, i, a, b):
        if a == b:
            yield 1 << i
            return
        stack = [(b, 1 << b, 1 << i)]
        while stack:
            cur, seen, mask = stack.pop()
            for j, w in self.adj[cur]:
                if j >= i:
                    continue
                if w == a:
                    yield mask | (1 << j)
                elif not seen >> w & 1:
                    stack.append((w, seen | (1 << w), mask | (1 << j)))

    def _shape_ok(self, c):
        deg: dict = {}
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j in bits(c):
            u, v = self.ends[j]
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        if min(deg.values()) < 2:
            return False
        comps = len({find(x) for x in parent})
        e, nv = popcount(c), len(deg)
        if e == nv:
            return comps <= 2 and all(d == 2 for d in deg.values())
        if e == nv + 1:
            return comps == 1
        return False

    def _component(self, start):
        seen = 1 << start
        stack = [start]
        emask = 0
        while stack:
            v = stack.pop()
            emask |= self.inc[v]
            for _, w in self.adj[v]:
                if not seen >> w & 1:
                    seen |= 1 << w
                    stack.append(w)
        return emask, popcount(seen)

    def _count_components(self):
        seen = 0
        comps = 0
        for s in range(self.k):
            if seen >> s & 1:
                continue
            comps += 1
            seen |= 1 << s
            stack = [s]
            while stack:
                v = stack.pop()
                for _, w in self.adj[v]:
                    if not seen >> w & 1:
                        seen |= 1 << w
                        stack.append(w)
        return comps

    def check(self, i, a, b):
        """Return the name of the first violated rule, or None."""
        R = self.R
        remaining = self.m - i - 1
        if self.k + 2 * remaining < self.vmin:
            return "vertices"
        if not self.prune:
            return None
        for c in self._new_cycles(i, a, b):
            if c not in self.circs and R[c] != popcount(c):
                return "bias"
        for c in self.complete_at[i]:
            if not self._shape_ok(c):
                return "shape"
        emask, nv = self._component(a)
        if R[emask] > nv:
            return "rank"
        placed = (1 << (i + 1)) - 1
        for w in range(self.k):
            links = self.links[w]
            if not links:
                continue
            rest = placed & ~self.inc[w]
            base = R[rest]
            if w == a or w == b:
                if a != b and R[rest | (1 << i)] == base:
                    return "closure"
                continue
            for f in bits(links):
                if R[rest | (1 << f)] == base:
                    return "closure"
        if self.connected and self._count_components() - remaining > 1:
            return "connected"
        return None

    # -- driver -------------------------------------------------------------

    def reset(self):
        while self.ends:
            self.undo()

    def replay(self, prefix) -> bool:
        self.k_stack = []
        for a, b in prefix:
            i = len(self.ends)
            self.apply(a, b)
            if self.check(i, a, b) is not None:
                return False
        return True

    def leaf(self):
        self.stats.leaves += 1
        if self.k < self.vmin:
            return
        edges = tuple((self.n.ground[i], a, b) for i, (a, b) in enumerate(self.ends))
        h = Multigraph(self.k, edges)
        if self.connected and not gr.is_connected(h):
            return
        self.stats.verified += 1
        if verify_framework(h, self.n).valid:
            self.found.append(h)
            if self.stop_first:
                self.done = True

    def descend(self, depth_limit=None, collect=None):
        i = len(self.ends)
        if i == self.m:
            if collect is not None:
                collect.append(list(self.ends))
            else:
                self.leaf()
            return
        if depth_limit is not None and i >= depth_limit:
            collect.append(list(self.ends))
            return
        for a, b in list(self.options()):
            if self.done:
                return
            self.stats.nodes += 1
            self.apply(a, b)
            reason = self.check(i, a, b)
            if reason is None:
                self.descend(depth_limit, collect)
            else:
                self.stats.bump(reason)
            self.undo()

    def run(self, prefix=()):
        self.k_stack = []
        if self.replay(prefix):
            self.descend()
        self.reset()
        return self.found, self.stats


def _run_prefix(args):
    n, vmin, vmax, connected, prune, prefix = args
    s = _Search(n, vmin, vmax, connected, prune)
    s.k_stack = []
    found, stats = s.run(prefix)
    return found, stats


def _search(n, vmin, vmax, connected, prune, jobs=1, stop_first=False):
    if jobs <= 1 or stop_first or len(n) < 4:
        s = _Search(n, vmin, vmax, connected, prune, stop_first)
        return s.run()
    # split the tree after a few levels; merged results are re-sorted later
    s = _Search(n, vmin, vmax, connected, prune)
    s.k_stack = []
    prefixes: list = []
    s.descend(depth_limit=min(4, len(n) - 1), collect=prefixes)
    stats = s.stats
    found: list = []
    n.rank_table()
    tasks = [(n, vmin, vmax, connected, prune, p) for p in prefixes]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for f, st in pool.map(_run_prefix, tasks, chunksize=max(1, len(tasks) // (4 * jobs))):
            found.extend(f)
            # the prefix node itself was already counted while collecting
            stats.merge(st)
    return found, stats


# -- enumeration ----------------------------------------------------------------------

@dataclass(frozen=True)
class Framework:
    graph: Multigraph
    biased: BiasedGraph
    class_id: int
    is_frame: bool
    is_lift: bool


@dataclass
class EnumerationResult:
    matroid: Matroid
    frameworks: list  # one representative Framework per equivalence class
    classes: list  # members (graphs) of each class, aligned with ``frameworks``
    stats: dict
    bounded: bool
    mode: str

    def all_graphs(self):
        return [g for members in self.classes for g in members]

    def unlabeled_classes(self):
        """Group every framework graph by its unlabeled isomorphism type."""
        groups: dict = {}
        for g in self.all_graphs():
            groups.setdefault(gr.canonical_form(g), []).append(g)
        return [groups[k] for k in sorted(groups)]

    def records(self, members: bool = False) -> list[str]:
        """Line-oriented machine output: a header, then one record per class.

        With ``members`` every framework of every class gets a record.  The
        search mode and statistics are left out so that different search
        strategies can be compared byte for byte.
        """
        lines = [
            f"enumeration matroid={self.matroid.name or '-'} elements={len(self.matroid)} "
            f"rank={self.matroid.rank()} bounded={int(self.bounded)} classes={len(self.frameworks)}"
        ]
        for fw, group in zip(self.frameworks, self.classes):
            for g in group if members else [fw.graph]:
                lines.append(framework_record(g, fw.biased if g is fw.graph else None, self.matroid, fw))
        return lines


def _edges_field(g: Multigraph) -> str:
    return ",".join(f"{lab}:{u}-{v}" for lab, u, v in sorted(g.edges))


def framework_record(g: Multigraph, bias, n: Matroid, fw: Framework) -> str:
    if bias is None:
        bias = derive_bias(g, n)
    balanced = ";".join(sorted(",".join(sorted(c)) for c in bias.balanced)) or "-"
    return (
        f"framework class={fw.class_id} vertices={g.n} edges={_edges_field(g)} "
        f"balanced={balanced} frame={int(fw.is_frame)} lift={int(fw.is_lift)}"
    )


def _class_key(h: Multigraph, bias: BiasedGraph, n: Matroid):
    """Equivalence key: vertex renaming, plus free unbalanced loops of lift representations."""
    loops = [i for i in bits(h.loop_mask) if (1 << i) not in bias.balanced_masks]
    if loops:
        rep = classify_representation(h, n, bias)
        if rep.is_lift:
            labels = frozenset(h.labels[i] for i in loops)
            rest, _ = h.delete_edges(labels).without_isolated()
            return ("free-loops", tuple(sorted(labels)), gr.labeled_key(rest)), rep
        return ("plain", gr.labeled_key(h)), rep
    return ("plain", gr.labeled_key(h)), None


def _dedup(found, n):
    unique: dict = {}
    for h in found:
        key = gr.labeled_key(h)
        if key not in unique:
            unique[key] = h.sorted_edges()
    classes: dict = {}
    info: dict = {}
    for key in sorted(unique):
        h = unique[key]
        bias = derive_bias(h, n)
        ck, rep = _class_key(h, bias, n)
        classes.setdefault(ck, []).append((key, h, bias))
        if rep is not None:
            info[key] = rep
    # a connected member represents its class when there is one, so that
    # searches restricted to connected graphs agree with exhaustive ones
    for members in classes.values():
        members.sort(key=lambda m: (not gr.is_connected(m[1]), m[0]))
    ordered = sorted(classes.values(), key=lambda members: members[0][0])
    frameworks, members_out = [], []
    for cid, members in enumerate(ordered):
        key, h, bias = members[0]
        rep = info.get(key) or classify_representation(h, n, bias)
        frameworks.append(Framework(h, bias, cid, rep.is_frame, rep.is_lift))
        members_out.append([m[1] for m in members])
    return frameworks, members_out


def _plan(n: Matroid, max_vertices, connected_only, three_connected_shortcut):
    """Return the list of (vmin, vmax, connected) searches and a bounded flag."""
    m = len(n)
    if m == 0:
        return [(0, 0, False)], False, "empty"
    if three_connected_shortcut and m >= 4 and n.is_k_connected(3):
        r = n.rank()
        runs = [(r, r, True)]
        mode = "3-connected"
        try:
            graphic = is_graphic(n)
        except UnsupportedSize:
            graphic = True
        if graphic:
            runs.append((r + 1, r + 1, True))
        if max_vertices is not None:
            bounded = any(x[0] > max_vertices for x in runs)
            return [x for x in runs if x[0] <= max_vertices], bounded, mode
        return runs, False, mode
    cap = 2 * m
    bounded = max_vertices is not None and max_vertices < cap
    vmax = min(cap, max_vertices) if max_vertices is not None else cap
    return [(1, vmax, connected_only)], bounded, "generic"


def enumerate_frameworks(
    n: Matroid,
    max_vertices: int | None = None,
    connected_only: bool = False,
    three_connected_shortcut: bool = True,
    prune: bool = True,
    max_elements: int = MAX_ELEMENTS,
    jobs: int = 1,
) -> EnumerationResult:
    """All frameworks of ``n`` up to equivalence.

    With the shortcut on and ``n`` 3-connected (at least four elements) only
    connected graphs are searched: unbalanced ones on exactly ``r(n)``
    vertices and, when ``n`` is graphic, balanced ones on ``r(n) + 1``.
    Otherwise every graph without isolated vertices on at most
    ``min(2|E|, max_vertices)`` vertices is considered.
    """
    if len(n) > max_elements:
        raise UnsupportedSize(f"enumeration supports at most {max_elements} elements, got {len(n)}")
    runs, bounded, mode = _plan(n, max_vertices, connected_only, three_connected_shortcut)
    found: list = []
    stats = SearchStats()
    for vmin, vmax, conn in runs:
        f, st = _search(n, vmin, vmax, conn or connected_only, prune, jobs)
        found.extend(f)
        stats.merge(st)
    frameworks, classes = _dedup(found, n)
    return EnumerationResult(n, frameworks, classes, stats.as_dict(), bounded, mode)


@dataclass(frozen=True)
class Decision:
    quasi_graphic: bool | None  # None when the vertex bound cut the search short
    witness: Multigraph | None
    bounded: bool
    justification: str


def decide_quasi_graphic(
    n: Matroid,
    max_vertices: int | None = None,
    three_connected_shortcut: bool = True,
    max_elements: int = MAX_ELEMENTS,
) -> Decision:
    """Search for one framework; a negative answer is definitive unless ``bounded``."""
    if len(n) > max_elements:
        raise UnsupportedSize(f"decision supports at most {max_elements} elements, got {len(n)}")
    runs, bounded, mode = _plan(n, max_vertices, False, three_connected_shortcut)
    if mode == "3-connected":
        # a graphic matroid gets its balanced framework as the witness
        runs = runs[::-1]
    for vmin, vmax, conn in runs:
        found, _ = _search(n, vmin, vmax, conn, True, stop_first=True)
        if found:
            return Decision(True, found[0], False, f"framework found ({mode} search)")
    if mode == "3-connected":
        why = "3-connected: connected frameworks have r or r+1 vertices; none exist"
    elif mode == "empty":
        why = "empty matroid"
    else:
        why = f"no framework on at most {runs[0][1]} vertices (no isolated vertices => |V| <= 2|E|)"
    if bounded:
        return Decision(None, None, True, why + "; vertex bound below 2|E|, result not definitive")
    return Decision(False, None, False, why)


@dataclass(frozen=True)
class ExclusionReport:
    excluded: bool
    quasi_graphic: bool | None
    minors: dict  # description -> Decision


def is_excluded_minor(n: Matroid, max_vertices: int | None = None) -> ExclusionReport:
    """Not quasi-graphic while every single-element deletion and contraction is."""
    top = decide_quasi_graphic(n, max_vertices)
    minors: dict = {}
    if top.quasi_graphic is not False:
        return ExclusionReport(False, top.quasi_graphic, minors)
    excluded = True
    for e in n.ground:
        for kind, minor in (("delete", n.delete([e])), ("contract", n.contract([e]))):
            d = decide_quasi_graphic(minor, max_vertices)
            minors[f"{kind} {e}"] = d
            if d.quasi_graphic is not True:
                excluded = False
    return ExclusionReport(excluded, False, minors)

