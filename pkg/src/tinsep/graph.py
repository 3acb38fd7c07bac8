"""Simple undirected graphs on vertices 0..n-1 and the basic separator predicates.

Adjacency is stored as one int bitmask per vertex.  Public functions accept
and return ordinary vertex collections (``frozenset[int]``); the ``*_mask``
helpers are the bitmask-level versions used by the rest of the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from tinsep._bits import bits, iter_bits, lowest, popcount, to_mask, to_set

VertexSet = frozenset

FLOAT_DENOMINATOR_LIMIT = 10**6
NORMAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Graph:
    n: int
    masks: tuple[int, ...]
    _alpha_cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.masks) != self.n:
            raise ValueError(f"expected {self.n} adjacency masks, got {len(self.masks)}")
        full = (1 << self.n) - 1
        for v, m in enumerate(self.masks):
            if m & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if m >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(m):
                if not self.masks[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adjacency), tuple(to_mask(nb) for nb in adjacency))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(to_set(m) for m in self.masks)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.masks[u] >> (u + 1)):
                yield u, u + 1 + v

    def num_edges(self) -> int:
        return sum(popcount(m) for m in self.masks) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.masks[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.masks[v])

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.masks[v] | 1 << v)

    def nbr_mask(self, mask: int) -> int:
        """Open neighbourhood N(A) of a vertex set given as a mask."""
        out = 0
        for v in iter_bits(mask):
            out |= self.masks[v]
        return out & ~mask

    def closed_mask(self, mask: int) -> int:
        return self.nbr_mask(mask) | mask

    def neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        return to_set(self.nbr_mask(to_mask(vertices)))

    def is_clique_mask(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if (mask & ~(1 << v)) & ~self.masks[v]:
                return False
        return True

    def is_independent_mask(self, mask: int) -> bool:
        return all(not (self.masks[v] & mask) for v in iter_bits(mask))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        return self.is_clique_mask(to_mask(vertices))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        return self.is_independent_mask(to_mask(vertices))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1; ``labels[i]`` is the old id of new vertex i."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        masks = []
        for v in labels:
            masks.append(to_mask(index[u] for u in iter_bits(self.masks[v]) if u in index))
        return Graph(len(labels), tuple(masks)), labels

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~m & ~(1 << v) for v, m in enumerate(self.masks)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(FLOAT_DENOMINATOR_LIMIT)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s or "e" not in s.lower():
            return Fraction(s)
        return Fraction(float(s)).limit_denominator(FLOAT_DENOMINATOR_LIMIT)
    raise TypeError(f"cannot interpret {x!r} as a weight")


@dataclass(frozen=True)
class Weighting:
    """Non-negative rational vertex weights; floats are rounded to denominator 1e6."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        for i, x in enumerate(self.weights):
            if not isinstance(x, Fraction):
                raise TypeError("use Weighting.of() to build weightings from other numbers")
            if x < 0:
                raise ValueError(f"negative weight {x} at vertex {i}")

    @classmethod
    def of(cls, values: Iterable) -> "Weighting":
        return cls(tuple(_frac(x) for x in values))

    @classmethod
    def uniform(cls, n: int, support: Iterable[int] | None = None) -> "Weighting":
        support = range(n) if support is None else sorted(set(support))
        if not support:
            return cls(tuple(Fraction(0) for _ in range(n)))
        share = Fraction(1, len(support))
        vals = [Fraction(0)] * n
        for v in support:
            vals[v] = share
        return cls(tuple(vals))

    @classmethod
    def from_json(cls, text: str) -> "Weighting":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("weighting JSON must be an array")
        return cls.of(data)

    def to_json(self) -> str:
        return json.dumps([str(x) for x in self.weights])

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> Fraction:
        return self.weights[v]

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def of_mask(self, mask: int) -> Fraction:
        w = self.weights
        return sum((w[v] for v in iter_bits(mask)), Fraction(0))

    def weight(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vertices), Fraction(0))

    def is_normal(self) -> bool:
        return abs(float(self.total() - 1)) <= NORMAL_TOLERANCE

    def is_trivial(self) -> bool:
        return self.total() == 0

    def normalized(self) -> "Weighting":
        tot = self.total()
        if tot == 0:
            raise ValueError("cannot normalise a trivial weighting")
        return Weighting(tuple(x / tot for x in self.weights))

    def restricted(self, labels: Sequence[int]) -> "Weighting":
        """Weights carried over to an induced subgraph with the given labels."""
        return Weighting(tuple(self.weights[v] for v in labels))


# --- components -----------------------------------------------------------


def components_mask(G: Graph, allowed: int) -> list[int]:
    """Connected components of G[allowed], ordered by smallest vertex."""
    masks = G.masks
    out = []
    rest = allowed
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= masks[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def reach_mask(G: Graph, source: int, allowed: int) -> int:
    """Vertices reachable from ``source`` inside G[allowed] (source itself included)."""
    masks = G.masks
    comp = 1 << source
    frontier = comp
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def components(G: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    rm = to_mask(removed)
    if rm & ~G.full_mask:
        raise ValueError("removed set is not a subset of V(G)")
    return [to_set(c) for c in components_mask(G, G.full_mask & ~rm)]


def is_connected(G: Graph) -> bool:
    return G.n == 0 or reach_mask(G, 0, G.full_mask) == G.full_mask


# --- independence number ----------------------------------------------------


def _clique_cover_size(masks: Sequence[int], cand: int) -> int:
    k = 0
    while cand:
        v = lowest(cand)
        cand &= ~(1 << v)
        grow = cand & masks[v]
        while grow:
            u = lowest(grow)
            cand &= ~(1 << u)
            grow &= masks[u]
        k += 1
    return k


def _greedy_independent(masks: Sequence[int], cand: int) -> int:
    chosen = 0
    while cand:
        v = min(iter_bits(cand), key=lambda x: popcount(masks[x] & cand))
        chosen |= 1 << v
        cand &= ~(masks[v] | 1 << v)
    return chosen


def mis_mask(G: Graph, cand: int) -> int:
    """A maximum independent set of G[cand] (branch and bound)."""
    masks = G.masks
    best = _greedy_independent(masks, cand)
    best_size = popcount(best)

    def rec(cand: int, chosen: int, size: int) -> None:
        nonlocal best, best_size
        # degree <= 1 vertices can always be taken
        reduced = True
        while reduced and cand:
            reduced = False
            for v in iter_bits(cand):
                if popcount(masks[v] & cand) <= 1:
                    chosen |= 1 << v
                    size += 1
                    cand &= ~(masks[v] | 1 << v)
                    reduced = True
                    break
        if not cand:
            if size > best_size:
                best, best_size = chosen, size
            return
        if size + _clique_cover_size(masks, cand) <= best_size:
            return
        v = max(iter_bits(cand), key=lambda x: popcount(masks[x] & cand))
        rec(cand & ~(masks[v] | 1 << v), chosen | 1 << v, size + 1)
        rec(cand & ~(1 << v), chosen, size)

    rec(cand, 0, 0)
    return best


def alpha_mask(G: Graph, cand: int) -> int:
    cache = G._alpha_cache
    a = cache.get(cand)
    if a is None:
        a = popcount(mis_mask(G, cand))
        cache[cand] = a
    return a


def independence_number(G: Graph, restrict: Iterable[int] | None = None) -> int:
    cand = G.full_mask if restrict is None else to_mask(restrict)
    if cand & ~G.full_mask:
        raise ValueError("restrict is not a subset of V(G)")
    return alpha_mask(G, cand)


def maximum_independent_set(G: Graph, restrict: Iterable[int] | None = None) -> frozenset[int]:
    cand = G.full_mask if restrict is None else to_mask(restrict)
    return to_set(mis_mask(G, cand))


# --- separators -------------------------------------------------------------


def is_ab_separator(G: Graph, S: Iterable[int], a: int, b: int) -> bool:
    """True iff every (a,b)-path meets S."""
    sm = to_mask(S)
    if a == b:
        raise ValueError("a and b must be distinct")
    if sm >> a & 1 or sm >> b & 1:
        raise ValueError("a and b must lie outside the separator")
    return not reach_mask(G, a, G.full_mask & ~sm) >> b & 1


def _as_c(c) -> Fraction:
    c = _frac(c)
    if not (Fraction(1, 2) <= c < 1):
        raise ValueError(f"balance constant {c} outside [1/2, 1)")
    return c


def heavy_components_mask(G: Graph, S_mask: int, w: Weighting, c) -> list[int]:
    """Components of G - S whose weight exceeds c * w(G)."""
    limit = _as_c(c) * w.total()
    return [D for D in components_mask(G, G.full_mask & ~S_mask) if w.of_mask(D) > limit]


def is_balanced_separator(G: Graph, S: Iterable[int], w: Weighting, c) -> bool:
    if len(w) != G.n:
        raise ValueError("weighting does not match the graph")
    return not heavy_components_mask(G, to_mask(S), w, c)


def full_components_mask(G: Graph, S_mask: int) -> list[int]:
    return [C for C in components_mask(G, G.full_mask & ~S_mask) if G.nbr_mask(C) == S_mask]


def full_components(G: Graph, S: Iterable[int]) -> list[frozenset[int]]:
    return [to_set(C) for C in full_components_mask(G, to_mask(S))]


def is_minimal_separator(G: Graph, S: Iterable[int]) -> bool:
    return len(full_components_mask(G, to_mask(S))) >= 2


def minimal_separator_masks(G: Graph) -> list[int]:
    """All minimal separators by close-neighbourhood seeding and expansion."""
    full = G.full_mask
    masks = G.masks
    seen: set[int] = set()
    queue: list[int] = []

    def add(S: int) -> None:
        if S not in seen:
            seen.add(S)
            queue.append(S)

    for v in range(G.n):
        for C in components_mask(G, full & ~(masks[v] | 1 << v)):
            add(G.nbr_mask(C))
    while queue:
        S = queue.pop()
        for x in iter_bits(S):
            for C in components_mask(G, full & ~(S | masks[x])):
                add(G.nbr_mask(C))
    return sorted(seen, key=lambda m: bits(m))


def minimal_separators(G: Graph) -> list[frozenset[int]]:
    return [to_set(S) for S in minimal_separator_masks(G)]


# --- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class SeparatorCertificate:
    """A separator together with the claim it witnesses.

    ``kind == "ab"`` claims that ``separator`` separates ``a`` from ``b``;
    ``kind == "balanced"`` claims ``(w, c)``-balance for the weighting it was
    computed for.  ``center``/``core`` record the ``N[z0] ∪ Z`` shape when a
    separator was built that way, and ``route`` names the branch that produced it.
    """

    separator: frozenset[int]
    kind: str
    alpha: int
    a: int | None = None
    b: int | None = None
    c: Fraction | None = None
    bound: int | None = None
    center: int | None = None
    core: frozenset[int] | None = None
    route: str = ""
    verified: bool = False
    notes: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "separator": sorted(self.separator),
            "alpha": self.alpha,
            "verified": self.verified,
        }
        if self.kind == "ab":
            d["a"], d["b"] = self.a, self.b
        else:
            d["c"] = str(self.c)
        if self.bound is not None:
            d["bound"] = self.bound
        if self.center is not None:
            d["z0"] = self.center
        if self.core is not None:
            d["Z"] = sorted(self.core)
        if self.route:
            d["route"] = self.route
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_certificate(G: Graph, cert: SeparatorCertificate, w: Weighting | None = None) -> bool:
    """Re-check a certificate from scratch (flood fill, component weights, exact alpha)."""
    sm = to_mask(cert.separator)
    if sm & ~G.full_mask:
        return False
    if popcount(mis_mask(G, sm)) != cert.alpha:
        return False
    if cert.bound is not None and cert.alpha > cert.bound:
        return False
    if cert.kind == "ab":
        if sm >> cert.a & 1 or sm >> cert.b & 1:
            return False
        return not reach_mask(G, cert.a, G.full_mask & ~sm) >> cert.b & 1
    if cert.kind == "balanced":
        if w is None:
            raise ValueError("balanced certificates need the weighting to verify")
        if cert.center is not None:
            expected = G.masks[cert.center] | 1 << cert.center | to_mask(cert.core or ())
            if expected != sm:
                return False
        limit = cert.c * w.total()
        return all(w.of_mask(D) <= limit for D in components_mask(G, G.full_mask & ~sm))
    raise ValueError(f"unknown certificate kind {cert.kind!r}")
