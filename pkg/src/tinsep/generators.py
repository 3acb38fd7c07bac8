"""Graph constructions: named families, freeness-repaired random graphs, planted witnesses."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from tinsep._bits import bits
from tinsep.canonical import enumerate_graphs
from tinsep.graph import Graph, components_mask
from tinsep.patterns import PyramidPresentation, find_induced_path, find_k2t

# --- named families -----------------------------------------------------------


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    """Parts 0..s-1 and s..s+t-1."""
    return Graph.from_edges(s + t, ((i, s + j) for i in range(s) for j in range(t)))


def star(k: int) -> Graph:
    """K1,k with centre 0."""
    return complete_bipartite(1, k)


def t_pyramid(t: int) -> Graph:
    """Apex 0, legs 1..t, base clique t+1..2t with leg i matched to base t+i."""
    if t < 2:
        raise ValueError("t must be at least 2")
    edges = [(0, i) for i in range(1, t + 1)]
    edges += [(i, t + i) for i in range(1, t + 1)]
    edges += list(combinations(range(t + 1, 2 * t + 1), 2))
    return Graph.from_edges(2 * t + 1, edges)


def comb(k: int) -> Graph:
    """Spine 0..k-1 with a pendant tooth k+i at each spine vertex i (maximum degree 3)."""
    if k < 1:
        raise ValueError("comb needs a non-empty spine")
    edges = [(i, i + 1) for i in range(k - 1)] + [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


def one_subdivision(G: Graph) -> Graph:
    """Replace every edge by a path of length two; new vertices follow the originals."""
    edges = []
    for i, (u, v) in enumerate(G.edges()):
        m = G.n + i
        edges += [(u, m), (m, v)]
    return Graph.from_edges(G.n + G.num_edges(), edges)


def line_graph(G: Graph) -> Graph:
    """Vertices are the edges of G in sorted order."""
    E = list(G.edges())
    out = [(i, j) for i, j in combinations(range(len(E)), 2) if set(E[i]) & set(E[j])]
    return Graph.from_edges(len(E), out)


def subdivided_star(k: int, length: int = 2) -> Graph:
    """Centre 0 with k legs, each a path of ``length`` edges."""
    edges = []
    nxt = 1
    for _ in range(k):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def line_of_subdivided_star(k: int) -> Graph:
    """Clique 0..k-1 with a pendant k+i on each clique vertex i."""
    edges = list(combinations(range(k), 2)) + [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


NAMED = {
    "empty": empty,
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "star": star,
    "t_pyramid": t_pyramid,
    "comb": comb,
    "subdivided_star": subdivided_star,
    "line_of_subdivided_star": line_of_subdivided_star,
}


def named(kind: str, **params) -> Graph:
    if kind in NAMED:
        return NAMED[kind](**params)
    if kind in ("one_subdivision", "line_graph"):
        base = named(params.pop("of"), **params)
        return one_subdivision(base) if kind == "one_subdivision" else line_graph(base)
    raise ValueError(f"unknown construction {kind!r}")


# --- random graphs ------------------------------------------------------------


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def is_free(G: Graph, t: int) -> bool:
    """True iff G has no induced P6 and no induced K2,t."""
    return find_induced_path(G, 6) is None and find_k2t(G, t) is None


def free_predicate(t: int):
    return lambda G: is_free(G, t)


def _witness(G: Graph, t: int) -> list[int] | None:
    p = find_induced_path(G, 6)
    if p is not None:
        return p
    hit = find_k2t(G, t)
    if hit is not None:
        return [*hit[0], *sorted(hit[1])]
    return None


def repair(G: Graph, t: int, rng: random.Random, keep: Iterable[int] = ()) -> tuple[Graph, list[int]]:
    """Delete witness vertices (never those in ``keep``) until G is {P6, K2,t}-free.

    Returns the repaired graph and the original label of each remaining vertex.
    Raises ValueError if a witness lies entirely inside ``keep``.
    """
    protected = set(keep)
    labels = list(range(G.n))
    while True:
        wit = _witness(G, t)
        if wit is None:
            return G, labels
        choices = [v for v in wit if labels[v] not in protected]
        if not choices:
            raise ValueError("forbidden subgraph inside the protected vertex set")
        drop = rng.choice(choices)
        G, sub = G.induced([v for v in range(G.n) if v != drop])
        labels = [labels[v] for v in sub]


def sample_free(n: int, t: int, p: float, seed: int) -> Graph:
    """G(n, p) repaired into a {P6, K2,t}-free graph by seeded vertex deletion."""
    if n < 1 or t < 2 or not 0 <= p <= 1:
        raise ValueError("need n >= 1, t >= 2 and 0 <= p <= 1")
    rng = random.Random(seed)
    G, _ = repair(gnp(n, p, rng), t, rng)
    return G


def largest_component(G: Graph) -> Graph:
    comps = components_mask(G, G.full_mask)
    if not comps:
        return G
    best = max(comps, key=lambda m: (bin(m).count("1"), -m))
    return G.induced(bits(best))[0]


# --- planted witnesses ----------------------------------------------------------


@dataclass(frozen=True)
class PlantedPaths:
    """Host graph satisfying the hypotheses of the pyramid-from-paths construction."""

    graph: Graph
    a: int
    b: int
    legs: tuple[int, ...]
    base: tuple[int, ...]


def planted_apex_paths(t: int, extra: int = 0, p: float = 0.15, seed: int = 0) -> PlantedPaths:
    """Apex a with 3(t-1)+1 independent neighbours, each on an induced a-x-y-b path.

    Legs are spread over a base clique so that each base vertex sees at most
    t-1 of them, and b is complete to the base.  ``extra`` random vertices
    (never adjacent to a or b) are added and then repaired away where needed.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    m = 3 * (t - 1) + 1
    k = -(-m // (t - 1))
    a, b = 0, 1
    legs = list(range(2, 2 + m))
    base = list(range(2 + m, 2 + m + k))
    edges = [(a, x) for x in legs]
    edges += [(x, base[i // (t - 1)]) for i, x in enumerate(legs)]
    edges += list(combinations(base, 2))
    edges += [(b, y) for y in base]
    core = 2 + m + k
    rng = random.Random(seed)
    for e in range(core, core + extra):
        for v in range(2, e):
            if rng.random() < p:
                edges.append((v, e))
    G = Graph.from_edges(core + extra, edges)
    G, labels = repair(G, t, rng, keep=range(core))
    pos = {v: i for i, v in enumerate(labels)}
    return PlantedPaths(G, pos[a], pos[b], tuple(pos[x] for x in legs), tuple(pos[y] for y in base))


def planted_pyramid(
    t: int, extra: int = 0, p: float = 0.3, seed: int = 0, basic: int = 0
) -> tuple[Graph, PyramidPresentation]:
    """A 3-pyramid plus random vertices, repaired to be {P6, K2,t}-free.

    The first ``basic`` added vertices see exactly the base of the pyramid (and
    random earlier added vertices); they are protected from repair.  Then
    ``extra`` unconstrained random vertices follow.
    """
    rng = random.Random(seed)
    core = t_pyramid(3)
    edges = list(core.edges())
    n = core.n + basic + extra
    for e in range(core.n, n):
        lo = 0 if e >= core.n + basic else core.n
        edges += [(v, e) for v in range(lo, e) if rng.random() < p]
        if e < core.n + basic:
            edges += [(y, e) for y in (4, 5, 6)]
    G, labels = repair(Graph.from_edges(n, edges), t, rng, keep=range(core.n + basic))
    pos = {v: i for i, v in enumerate(labels)}
    return G, PyramidPresentation(pos[0], (pos[1], pos[2], pos[3]), (pos[4], pos[5], pos[6]))


@dataclass(frozen=True)
class PlantedSeparator:
    """A graph with a minimal separator S and two S-full components."""

    graph: Graph
    S: tuple[int, ...]
    C1: tuple[int, ...]
    C2: tuple[int, ...]
    expected: str


SHAPES = ("star", "subdivided", "line")

# (side 1 shape, side 2 shape) -> certificate produced when gluing them
COMBINATION_OUTCOMES = {
    ("star", "star"): "K2t",
    ("star", "subdivided"): "P6",
    ("subdivided", "subdivided"): "P9",
    ("line", "subdivided"): "P8",
    ("line", "line"): "P7",
    ("line", "star"): "pyramid",
}


def _attach(shape: str, leaves: list[int], start: int) -> tuple[list[int], list[tuple[int, int]]]:
    k = len(leaves)
    if shape == "star":
        c = start
        return [c], [(c, y) for y in leaves]
    if shape == "subdivided":
        c = start
        mids = list(range(start + 1, start + 1 + k))
        return [c, *mids], [(c, m) for m in mids] + list(zip(mids, leaves))
    if shape == "line":
        xs = list(range(start, start + k))
        return xs, list(combinations(xs, 2)) + list(zip(xs, leaves))
    raise ValueError(f"unknown shape {shape!r}")


def shape_combination(first: str, second: str, k: int = 3) -> PlantedSeparator:
    """Independent separator of k leaves with one attached shape on each side."""
    leaves = list(range(k))
    side1, e1 = _attach(first, leaves, k)
    side2, e2 = _attach(second, leaves, k + len(side1))
    G = Graph.from_edges(k + len(side1) + len(side2), e1 + e2)
    key = (first, second) if (first, second) in COMBINATION_OUTCOMES else (second, first)
    return PlantedSeparator(G, tuple(leaves), tuple(side1), tuple(side2), COMBINATION_OUTCOMES[key])


def planted_separator_pyramid(t: int) -> PlantedSeparator:
    """Star on one side of an independent separator, clique with pendants on the other."""
    return shape_combination("star", "line", t)


# --- generator specs ------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """A reproducible description of a graph stream.

    kinds: ``named`` (params: construction, plus its parameters), ``gnp``
    (n, p, seed, count), ``free`` (n, t, p, seed, count), ``planted``
    (t, extra, seed) and ``enumerate`` (n, optional t restricting to the
    {P6, K2,t}-free class).
    """

    kind: str
    params: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, text: str) -> "GeneratorSpec":
        data = json.loads(text)
        return cls(data["kind"], dict(data.get("params", {})))

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "params": self.params}, sort_keys=True)

    def graphs(self) -> Iterator[Graph]:
        p = dict(self.params)
        if self.kind == "named":
            yield named(p.pop("construction"), **p)
        elif self.kind == "gnp":
            rng = random.Random(p.get("seed", 0))
            for _ in range(p.get("count", 1)):
                yield gnp(p["n"], p["p"], rng)
        elif self.kind == "free":
            seed = p.get("seed", 0)
            for i in range(p.get("count", 1)):
                yield sample_free(p["n"], p.get("t", 2), p["p"], seed + i)
        elif self.kind == "planted":
            yield planted_apex_paths(p.get("t", 2), p.get("extra", 0), p.get("p", 0.3), p.get("seed", 0)).graph
        elif self.kind == "enumerate":
            pred = free_predicate(p["t"]) if p.get("t") else None
            yield from enumerate_graphs(p["n"], pred)
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")
