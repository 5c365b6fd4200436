"""Plain-text file formats.

Graph file::

    graph <name> <vertex_count>
    edge <label> <u> <v>          # a loop when u == v
    signature <label> ...         # optional: the negative edges
    balanced {<label>,...}        # optional, repeatable: balanced cycles

Matroid file: ``matroid <name>`` followed by exactly one of
``uniform <r> <n>``, ``graphic <graph-file>``, ``dual <matroid-file>``,
``named <F7|F7*|MK5*|MK33*|U24>``, or ``ground <e> ...`` plus any number of
``circuit <e> ...`` lines.

Construction file: ``construct <kind> ...`` where kind is ``pinch <graph> <v1> <v2>``,
``curling <graph> <v>``, or one of ``four-twisting``, ``consecutive-twisting``,
``fat-theta`` followed by ``part <graph> <mark> ...`` lines.

Everything after ``#`` is a comment.  Relative paths are resolved against
the directory of the file that names them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .biased import BiasError, BiasedGraph, from_signature
from .constructions import (
    Construction,
    ConstructionError,
    Part,
    consecutive_twisting,
    fat_theta,
    four_twisting,
    pinch,
    simple_curling,
)
from .graph import GraphError, Multigraph, is_cycle_mask
from .matroid import Matroid, MatroidError, cycle_matroid, named_matroid, uniform


class ParseError(ValueError):
    def __init__(self, message, line=None, source="<string>"):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok, no, source, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", no, source) from None


@dataclass(frozen=True)
class GraphFile:
    graph: Multigraph
    signature: frozenset | None = None
    balanced: tuple | None = None  # tuple of frozensets

    def biased(self) -> BiasedGraph | None:
        if self.signature is not None:
            return from_signature(self.graph, self.signature)
        if self.balanced is not None:
            return BiasedGraph(self.graph, self.balanced)
        return None


def parse_graph(text: str, source: str = "<string>") -> GraphFile:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty graph file", None, source)
    no, head = rows[0]
    if head[0] != "graph" or len(head) != 3:
        raise ParseError("first line must be 'graph <name> <vertex_count>'", no, source)
    name, n = head[1], _int(head[2], no, source, "vertex count")
    if n < 0:
        raise ParseError("vertex count must be non-negative", no, source)
    edges, seen = [], set()
    signature = None
    balanced: list = []
    balanced_lines: list = []
    for no, tok in rows[1:]:
        kind = tok[0]
        if kind == "edge":
            if len(tok) != 4:
                raise ParseError("expected 'edge <label> <u> <v>'", no, source)
            lab = tok[1]
            u = _int(tok[2], no, source, "vertex")
            v = _int(tok[3], no, source, "vertex")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex out of range 0..{n - 1}", no, source)
            if lab in seen:
                raise ParseError(f"duplicate edge label {lab!r}", no, source)
            if any(c in lab for c in ",{}"):
                raise ParseError(f"edge label {lab!r} may not contain , {{ or }}", no, source)
            seen.add(lab)
            edges.append((lab, u, v))
        elif kind == "signature":
            if signature is not None:
                raise ParseError("more than one signature line", no, source)
            signature = (frozenset(tok[1:]), no)
        elif kind == "balanced":
            body = " ".join(tok[1:]).strip()
            if body.startswith("{") and body.endswith("}"):
                body = body[1:-1]
            labels = frozenset(x for x in body.replace(",", " ").split() if x)
            if not labels:
                raise ParseError("empty balanced cycle", no, source)
            balanced.append(labels)
            balanced_lines.append(no)
        else:
            raise ParseError(f"unknown directive {kind!r}", no, source)
    if signature is not None and balanced:
        raise ParseError("give either a signature or balanced cycles, not both", signature[1], source)
    try:
        g = Multigraph(n, tuple(edges), name)
    except GraphError as exc:
        raise ParseError(str(exc), None, source) from None
    if signature is not None:
        labels, no = signature
        unknown = labels - seen
        if unknown:
            raise ParseError(f"signature names unknown edges {sorted(unknown)}", no, source)
        return GraphFile(g, labels, None)
    if balanced:
        for labels, no in zip(balanced, balanced_lines):
            unknown = labels - seen
            if unknown:
                raise ParseError(f"balanced cycle names unknown edges {sorted(unknown)}", no, source)
            if not is_cycle_mask(g, g.mask(labels)):
                raise ParseError(f"{sorted(labels)} is not a cycle", no, source)
        try:
            BiasedGraph(g, balanced)
        except BiasError as exc:
            raise ParseError(f"balanced cycles violate the theta property: {exc}", None, source) from None
        return GraphFile(g, None, tuple(balanced))
    return GraphFile(g)


def read_graph(path: str) -> GraphFile:
    with open(path) as fh:
        return parse_graph(fh.read(), path)


def format_graph(g: Multigraph, signature=None, balanced=None, name: str | None = None) -> str:
    out = [f"graph {name or g.name or 'g'} {g.n}"]
    for lab, u, v in g.edges:
        out.append(f"edge {lab} {u} {v}")
    if signature is not None:
        out.append(" ".join(["signature"] + sorted(signature)))
    elif balanced is not None:
        for cyc in sorted(sorted(c) for c in balanced):
            out.append("balanced {" + ",".join(cyc) + "}")
    return "\n".join(out) + "\n"


def format_biased(b: BiasedGraph, name: str | None = None) -> str:
    """Prefer a signature line when the bias has one, else list balanced cycles."""
    from .biased import find_signature

    sigma = find_signature(b)
    if sigma is not None:
        return format_graph(b.graph, signature=sigma, name=name)
    return format_graph(b.graph, balanced=b.balanced, name=name)


def _resolve(base_dir, path):
    return path if os.path.isabs(path) else os.path.join(base_dir, path)


def parse_matroid(text: str, source: str = "<string>", base_dir: str = ".") -> Matroid:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty matroid file", None, source)
    no, head = rows[0]
    if head[0] != "matroid" or len(head) != 2:
        raise ParseError("first line must be 'matroid <name>'", no, source)
    name = head[1]
    if len(rows) < 2:
        raise ParseError("missing matroid body", no, source)
    no, body = rows[1]
    kind = body[0]
    try:
        if kind in ("uniform", "graphic", "dual", "named"):
            if len(rows) > 2:
                raise ParseError(f"unexpected line after '{kind}'", rows[2][0], source)
            if kind == "uniform":
                if len(body) != 3:
                    raise ParseError("expected 'uniform <r> <n>'", no, source)
                r, n = _int(body[1], no, source, "rank"), _int(body[2], no, source, "size")
                if not 0 <= r <= n:
                    raise ParseError("need 0 <= r <= n", no, source)
                m = uniform(r, n)
            elif kind == "graphic":
                if len(body) != 2:
                    raise ParseError("expected 'graphic <graph-file>'", no, source)
                m = cycle_matroid(read_graph(_resolve(base_dir, body[1])).graph)
            elif kind == "dual":
                if len(body) != 2:
                    raise ParseError("expected 'dual <matroid-file>'", no, source)
                m = read_matroid(_resolve(base_dir, body[1])).dual()
            else:
                if len(body) != 2:
                    raise ParseError("expected 'named <F7|F7*|MK5*|MK33*|U24>'", no, source)
                m = named_matroid(body[1])
            return _renamed(m, name)
        if kind != "ground":
            raise ParseError(f"unknown matroid body {kind!r}", no, source)
        ground = body[1:]
        if len(set(ground)) != len(ground):
            raise ParseError("duplicate ground element", no, source)
        circuits = []
        known = set(ground)
        for no, tok in rows[2:]:
            if tok[0] != "circuit":
                raise ParseError(f"expected 'circuit ...', got {tok[0]!r}", no, source)
            c = frozenset(tok[1:])
            if not c:
                raise ParseError("empty circuit", no, source)
            if c - known:
                raise ParseError(f"circuit names unknown elements {sorted(c - known)}", no, source)
            circuits.append(c)
        return Matroid(ground, circuits, name=name)
    except (MatroidError, KeyError) as exc:
        raise ParseError(str(exc), no, source) from None
    except OSError as exc:
        raise ParseError(f"cannot read referenced file: {exc}", no, source) from None


def _renamed(m: Matroid, name: str) -> Matroid:
    return Matroid(m.ground, m.circuit_sets(), name=name, check=False)


def read_matroid(path: str) -> Matroid:
    with open(path) as fh:
        return parse_matroid(fh.read(), path, os.path.dirname(path) or ".")


def format_matroid(m: Matroid, name: str | None = None) -> str:
    out = [f"matroid {name or m.name or 'm'}", " ".join(["ground"] + list(m.ground))]
    order = {e: i for i, e in enumerate(m.ground)}
    for c in sorted((sorted(c, key=order.get) for c in m.circuit_sets()), key=lambda c: [order[e] for e in c]):
        out.append(" ".join(["circuit"] + c))
    return "\n".join(out) + "\n"


# -- construction specs -----------------------------------------------------------------

MULTIPART = {"four-twisting": (four_twisting, 3), "consecutive-twisting": (consecutive_twisting, 3), "fat-theta": (fat_theta, 2)}


def parse_construct(text: str, source: str = "<string>", base_dir: str = ".") -> Construction:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty construction file", None, source)
    no, head = rows[0]
    if head[0] != "construct" or len(head) < 2:
        raise ParseError("first line must be 'construct <kind> ...'", no, source)
    kind = head[1]
    try:
        if kind == "pinch":
            if len(head) != 5 or len(rows) > 1:
                raise ParseError("expected 'construct pinch <graph> <v1> <v2>'", no, source)
            g = read_graph(_resolve(base_dir, head[2])).graph
            return pinch(g, _int(head[3], no, source, "vertex"), _int(head[4], no, source, "vertex"))
        if kind == "curling":
            if len(head) != 4 or len(rows) > 1:
                raise ParseError("expected 'construct curling <graph> <v>'", no, source)
            g = read_graph(_resolve(base_dir, head[2])).graph
            return simple_curling(g, _int(head[3], no, source, "vertex"))
        if kind in MULTIPART:
            fn, nmarks = MULTIPART[kind]
            if len(head) != 2:
                raise ParseError(f"expected 'construct {kind}' followed by part lines", no, source)
            parts = []
            for no, tok in rows[1:]:
                if tok[0] != "part" or len(tok) != 2 + nmarks:
                    raise ParseError(f"expected 'part <graph>' with {nmarks} marked vertices", no, source)
                g = read_graph(_resolve(base_dir, tok[1])).graph
                marks = tuple(_int(t, no, source, "vertex") for t in tok[2:])
                parts.append(Part(g, marks))
            return fn(parts)
    except (ConstructionError, GraphError) as exc:
        raise ParseError(str(exc), no, source) from None
    except OSError as exc:
        raise ParseError(f"cannot read referenced file: {exc}", no, source) from None
    raise ParseError(f"unknown construction {kind!r}", no, source)


def read_construct(path: str) -> Construction:
    with open(path) as fh:
        return parse_construct(fh.read(), path, os.path.dirname(path) or ".")
