"""Circuit-backed matroids on small ground sets.

A :class:`Matroid` stores its ground set as an ordered tuple of labels and its
circuits as integer bitmasks over that order.  Rank is computed greedily,
which is correct for any matroid; results are memoised per mask and a full
rank table can be materialised for the exhaustive searches.

Connectivity uses Tutte's convention: ``(X, E - X)`` is a j-separation when
``min(|X|, |E - X|) >= j`` and ``lambda(X) <= j - 1``; a matroid is
k-connected when it has no j-separation with ``j < k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import graph as gr
from .graph import bits, popcount

#: largest ground set accepted by the excluded-minor graphicness test
GRAPHIC_TEST_LIMIT = 12


class MatroidError(ValueError):
    pass


class UnsupportedSize(MatroidError):
    """Raised when an exhaustive routine is asked to exceed its documented bound."""


@dataclass(frozen=True)
class SeparationReport:
    X: frozenset
    order: int  # lambda(X) + 1
    sizes: tuple


class Matroid:
    """A matroid given by its ground set and circuit family."""

    def __init__(self, ground: Iterable, circuits: Iterable, name: str = "", check: bool = True):
        self.ground = tuple(str(e) for e in ground)
        if len(set(self.ground)) != len(self.ground):
            raise MatroidError("ground set elements must be distinct")
        self.index = {e: i for i, e in enumerate(self.ground)}
        masks = set()
        for c in circuits:
            masks.add(c if isinstance(c, int) else self.mask(c))
        self.circuits = frozenset(masks)
        self.name = name
        self._rank_cache: dict = {}
        self._rank_table = None
        self._by_element = None
        if check:
            self.validate()

    # -- conversions -------------------------------------------------------

    def __len__(self):
        return len(self.ground)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Matroid{tag} |E|={len(self)} r={self.rank()} circuits={len(self.circuits)}>"

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and set(self.ground) == set(other.ground)
            and set(self.circuit_sets()) == set(other.circuit_sets())
        )

    def __hash__(self):
        return hash((frozenset(self.ground), frozenset(self.circuit_sets())))

    def mask(self, s) -> int:
        if isinstance(s, int):
            return s
        m = 0
        for e in s:
            try:
                m |= 1 << self.index[str(e)]
            except KeyError:
                raise MatroidError(f"{e!r} is not in the ground set") from None
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in bits(mask))

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def circuit_sets(self) -> list[frozenset]:
        return sorted((self.labels(c) for c in self.circuits), key=lambda s: (len(s), sorted(s)))

    def validate(self):
        """Check the circuit axioms exhaustively; raise MatroidError on failure."""
        cs = sorted(self.circuits)
        if 0 in self.circuits:
            raise MatroidError("the empty set is not a circuit")
        for a, b in itertools.combinations(cs, 2):
            if a & b == a or a & b == b:
                raise MatroidError(f"circuit {sorted(self.labels(a))} contains another")
        for a, b in itertools.combinations(cs, 2):
            common = a & b
            if not common:
                continue
            union = a | b
            for e in bits(common):
                rest = union & ~(1 << e)
                if not any(c & rest == c for c in cs):
                    raise MatroidError(
                        f"elimination fails for {sorted(self.labels(a))}, {sorted(self.labels(b))}"
                    )

    # -- rank and friends ----------------------------------------------------

    def _circuits_by_element(self):
        if self._by_element is None:
            table = [[] for _ in self.ground]
            for c in self.circuits:
                for i in bits(c):
                    table[i].append(c)
            self._by_element = [tuple(t) for t in table]
        return self._by_element

    def _rank(self, mask: int) -> int:
        if self._rank_table is not None:
            return self._rank_table[mask]
        r = self._rank_cache.get(mask)
        if r is None:
            by = self._circuits_by_element()
            indep = 0
            for i in bits(mask):
                trial = indep | (1 << i)
                if not any(c & trial == c for c in by[i]):
                    indep = trial
            r = popcount(indep)
            self._rank_cache[mask] = r
        return r

    def rank_table(self) -> list:
        """Rank of every subset, indexed by mask (at most 2^20 entries)."""
        if self._rank_table is None:
            n = len(self.ground)
            if n > 20:
                raise UnsupportedSize(f"rank table for {n} elements")
            size = 1 << n
            dep = bytearray(size)
            for c in self.circuits:
                dep[c] = 1
            table = [0] * size
            for m in range(1, size):
                if dep[m]:
                    pass
                else:
                    low = m & -m
                    if dep[m ^ low]:
                        dep[m] = 1
                    else:
                        # m is dependent iff some circuit through the low bit lies inside m
                        for c in self._circuits_by_element()[low.bit_length() - 1]:
                            if c & m == c:
                                dep[m] = 1
                                break
                if dep[m]:
                    best = 0
                    for i in bits(m):
                        r = table[m ^ (1 << i)]
                        if r > best:
                            best = r
                    table[m] = best
                else:
                    table[m] = popcount(m)
            self._rank_table = table
        return self._rank_table

    def rank(self, s=None) -> int:
        return self._rank(self.full if s is None else self.mask(s))

    def is_independent(self, s) -> bool:
        m = self.mask(s)
        return not any(c & m == c for c in self.circuits)

    def is_circuit(self, s) -> bool:
        return self.mask(s) in self.circuits

    def _closure(self, mask: int) -> int:
        r = self._rank(mask)
        out = mask
        for i in range(len(self.ground)):
            if not mask >> i & 1 and self._rank(mask | (1 << i)) == r:
                out |= 1 << i
        return out

    def closure(self, s) -> frozenset:
        return self.labels(self._closure(self.mask(s)))

    # -- duality and minors ----------------------------------------------------

    def _cocircuit_masks(self) -> list[int]:
        n = len(self.ground)
        if n > 20:
            raise UnsupportedSize(f"cocircuits of a {n}-element matroid")
        full, r = self.full, self._rank(self.full)
        found: list[int] = []
        for size in range(1, n + 1):
            for combo in itertools.combinations(range(n), size):
                m = sum(1 << i for i in combo)
                if any(c & m == c for c in found):
                    continue
                if self._rank(full & ~m) < r:
                    found.append(m)
        return found

    def cocircuits(self) -> list[frozenset]:
        return sorted((self.labels(c) for c in self._cocircuit_masks()), key=lambda s: (len(s), sorted(s)))

    def dual(self) -> "Matroid":
        name = self.name[:-1] if self.name.endswith("*") else (self.name + "*" if self.name else "")
        return Matroid(self.ground, self._cocircuit_masks(), name, check=False)

    def delete(self, s) -> "Matroid":
        drop = self.mask(s)
        keep = [e for i, e in enumerate(self.ground) if not drop >> i & 1]
        circs = [self.labels(c) for c in self.circuits if not c & drop]
        return Matroid(keep, circs, check=False)

    def restrict(self, s) -> "Matroid":
        return self.delete(self.full & ~self.mask(s))

    def contract(self, s) -> "Matroid":
        drop = self.mask(s)
        keep = [e for i, e in enumerate(self.ground) if not drop >> i & 1]
        cands = sorted({c & ~drop for c in self.circuits} - {0}, key=popcount)
        minimal: list[int] = []
        for c in cands:
            if not any(m & c == m for m in minimal):
                minimal.append(c)
        return Matroid(keep, [self.labels(c) for c in minimal], check=False)

    # -- connectivity --------------------------------------------------------------

    def local_connectivity(self, X, Y) -> int:
        x, y = self.mask(X), self.mask(Y)
        return self._rank(x) + self._rank(y) - self._rank(x | y)

    def lam(self, X) -> int:
        x = self.mask(X)
        return self._rank(x) + self._rank(self.full & ~x) - self._rank(self.full)

    def find_separation(self, k: int):
        """A j-separation with j < k, or None when the matroid is k-connected."""
        n = len(self.ground)
        if n > 20:
            raise UnsupportedSize(f"connectivity scan of {n} elements")
        full, r = self.full, self._rank(self.full)
        for size in range(1, n // 2 + 1):
            for combo in itertools.combinations(range(n), size):
                x = sum(1 << i for i in combo)
                lam = self._rank(x) + self._rank(full & ~x) - r
                # smallest j with lam <= j-1 is lam+1; it must fit min side and stay below k
                if lam + 1 <= size and lam + 1 < k:
                    return SeparationReport(self.labels(x), lam + 1, (size, n - size))
        return None

    def is_k_connected(self, k: int) -> bool:
        return self.find_separation(k) is None

    def connectivity(self, cap: int | None = None) -> int:
        """Largest k (at most ``cap``, default |E| + 1) with the matroid k-connected."""
        cap = len(self.ground) + 1 if cap is None else cap
        k = 1
        while k < cap and self.is_k_connected(k + 1):
            k += 1
        return k


# -- constructors ------------------------------------------------------------

def uniform(r: int, n: int, labels=None) -> Matroid:
    """U_{r,n}; elements are ``e0 .. e{n-1}`` unless ``labels`` is given."""
    if not 0 <= r <= n:
        raise MatroidError("need 0 <= r <= n")
    ground = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
    circs = [] if r == n else [sum(1 << i for i in c) for c in itertools.combinations(range(n), r + 1)]
    return Matroid(ground, circs, f"U{r},{n}", check=False)


def cycle_matroid(g: gr.Multigraph) -> Matroid:
    """M(G): circuits are the edge sets of cycles of ``g``."""
    return Matroid(g.labels, gr.cycle_masks(g), f"M({g.name})" if g.name else "", check=False)


def _fano() -> Matroid:
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    line_masks = [sum(1 << i for i in ln) for ln in lines]
    full = (1 << 7) - 1
    circs = line_masks + [full & ~m for m in line_masks]
    return Matroid([f"e{i}" for i in range(7)], circs, "F7", check=False)


def named_matroid(name: str) -> Matroid:
    """One of ``F7``, ``F7*``, ``MK5*``, ``MK33*``, ``U24``."""
    key = name.replace("_", "").replace("{", "").replace("}", "").replace(",", "").upper()
    if key == "F7":
        return _fano()
    if key == "F7*":
        m = _fano().dual()
        m.name = "F7*"
        return m
    if key in ("MK5*", "M*K5"):
        m = cycle_matroid(gr.complete_graph(5)).dual()
        m.name = "M*(K5)"
        return m
    if key in ("MK33*", "M*K33"):
        m = cycle_matroid(gr.complete_bipartite(3, 3)).dual()
        m.name = "M*(K3,3)"
        return m
    if key == "U24":
        return uniform(2, 4)
    raise MatroidError(f"unknown named matroid {name!r}")


# -- isomorphism -----------------------------------------------------------------

def _element_profile(m: Matroid):
    prof = [dict() for _ in m.ground]
    for c in m.circuits:
        s = popcount(c)
        for i in bits(c):
            prof[i][s] = prof[i].get(s, 0) + 1
    return [tuple(sorted(p.items())) for p in prof]


def _size_profile(m: Matroid):
    count: dict = {}
    for c in m.circuits:
        s = popcount(c)
        count[s] = count.get(s, 0) + 1
    return tuple(sorted(count.items()))


def _iso_masks(n, circs1, circs2, prof1, prof2):
    """Backtracking bijection between two circuit families on ``range(n)``."""
    set2 = set(circs2)
    by1 = [[c for c in circs1 if c >> i & 1] for i in range(n)]
    by2 = [[c for c in circs2 if c >> i & 1] for i in range(n)]
    # rarest profile first keeps the branching small
    freq: dict = {}
    for p in prof1:
        freq[p] = freq.get(p, 0) + 1
    order = sorted(range(n), key=lambda i: (freq[prof1[i]], prof1[i], i))
    fwd = [-1] * n
    used = [False] * n

    def image(c):
        out = 0
        for i in bits(c):
            out |= 1 << fwd[i]
        return out

    def rec(pos, dom, cod):
        if pos == n:
            return True
        a = order[pos]
        dom2 = dom | (1 << a)
        for b in range(n):
            if used[b] or prof2[b] != prof1[a]:
                continue
            cod2 = cod | (1 << b)
            fwd[a] = b
            ok = all(image(c) in set2 for c in by1[a] if c & dom2 == c)
            if ok:
                cnt1 = sum(1 for c in by1[a] if c & dom2 == c)
                cnt2 = sum(1 for c in by2[b] if c & cod2 == c)
                ok = cnt1 == cnt2
            if ok:
                used[b] = True
                if rec(pos + 1, dom2, cod2):
                    return True
                used[b] = False
            fwd[a] = -1
        return False

    if rec(0, 0, 0):
        return list(fwd)
    return None


def matroid_isomorphic(m1: Matroid, m2: Matroid):
    """Return an element bijection ``{e1: e2}`` carrying circuits onto circuits, or None."""
    if len(m1) != len(m2) or len(m1.circuits) != len(m2.circuits):
        return None
    if _size_profile(m1) != _size_profile(m2):
        return None
    p1, p2 = _element_profile(m1), _element_profile(m2)
    if sorted(p1) != sorted(p2):
        return None
    fwd = _iso_masks(len(m1), sorted(m1.circuits), sorted(m2.circuits), p1, p2)
    if fwd is None:
        return None
    return {m1.ground[i]: m2.ground[j] for i, j in enumerate(fwd)}


# -- minors ------------------------------------------------------------------------

def _minimal(masks):
    out: list[int] = []
    for c in sorted(set(masks) - {0}, key=popcount):
        if not any(m & c == m for m in out):
            out.append(c)
    return out


def _compress(mask: int, keep: list) -> int:
    out = 0
    for j, i in enumerate(keep):
        if mask >> i & 1:
            out |= 1 << j
    return out


def has_minor(m: Matroid, target: Matroid) -> bool:
    """Brute-force minor test.

    Every minor is ``M / C \\ D`` with ``C`` independent of size
    ``r(M) - r(target)``, so only those contraction sets are tried; every
    choice of surviving elements is then compared against ``target``.
    """
    n, t = len(m), len(target)
    if t > n:
        return False
    k = m.rank() - target.rank()
    if k < 0 or k > n - t:
        return False
    t_rank = target.rank()
    t_sizes = _size_profile(target)
    t_count = len(target.circuits)
    t_prof = _element_profile(target)
    t_circs = sorted(target.circuits)
    sorted_tprof = sorted(t_prof)
    for combo in itertools.combinations(range(n), k):
        cmask = sum(1 << i for i in combo)
        if not m.is_independent(cmask):
            continue
        contracted = _minimal(c & ~cmask for c in m.circuits)
        rest = [i for i in range(n) if not cmask >> i & 1]
        for keep in itertools.combinations(rest, t):
            kmask = sum(1 << i for i in keep)
            circs = [c for c in contracted if c & kmask == c]
            if len(circs) != t_count:
                continue
            if m._rank(kmask | cmask) - k != t_rank:
                continue
            keep = list(keep)
            local = [_compress(c, keep) for c in circs]
            sizes: dict = {}
            for c in local:
                sizes[popcount(c)] = sizes.get(popcount(c), 0) + 1
            if tuple(sorted(sizes.items())) != t_sizes:
                continue
            prof = [dict() for _ in range(t)]
            for c in local:
                s = popcount(c)
                for i in bits(c):
                    prof[i][s] = prof[i].get(s, 0) + 1
            prof = [tuple(sorted(p.items())) for p in prof]
            if sorted(prof) != sorted_tprof:
                continue
            if _iso_masks(t, sorted(local), t_circs, prof, t_prof) is not None:
                return True
    return False


def is_binary(m: Matroid) -> bool:
    return not has_minor(m, uniform(2, 4))


_GRAPHIC_OBSTRUCTIONS = ("U24", "F7", "F7*", "MK5*", "MK33*")
_obstruction_cache: dict = {}


def _obstruction(name):
    if name not in _obstruction_cache:
        _obstruction_cache[name] = named_matroid(name)
    return _obstruction_cache[name]


def is_graphic(m: Matroid) -> bool:
    """Tutte's excluded-minor test: no U_{2,4}, F7, F7*, M*(K5) or M*(K3,3) minor."""
    if len(m) > GRAPHIC_TEST_LIMIT:
        raise UnsupportedSize(f"is_graphic supports at most {GRAPHIC_TEST_LIMIT} elements, got {len(m)}")
    return not any(has_minor(m, _obstruction(name)) for name in _GRAPHIC_OBSTRUCTIONS)
