"""Exact detectors for the induced structures the separator machinery cares about."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from tinsep._bits import bits, iter_bits, popcount, to_mask, to_set
from tinsep.errors import BudgetExhausted, PreconditionError
from tinsep.graph import Graph, components_mask, mis_mask

DEFAULT_BUDGET = 10**7


class _Budget:
    __slots__ = ("left", "cap", "what")

    def __init__(self, cap: int | None, what: str):
        self.cap = cap
        self.left = cap
        self.what = what

    def tick(self) -> None:
        if self.left is None:
            return
        self.left -= 1
        if self.left < 0:
            raise BudgetExhausted(self.what, self.cap)


# --- induced paths ----------------------------------------------------------


def is_induced_path(G: Graph, seq: Sequence[int]) -> bool:
    if len(set(seq)) != len(seq):
        return False
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if G.has_edge(u, seq[j]) != (j == i + 1):
                return False
    return True


def find_induced_path(G: Graph, r: int, allowed: Iterable[int] | None = None) -> list[int] | None:
    """An induced path on ``r`` vertices, or None.  Exhaustive DFS."""
    if r < 1:
        raise ValueError("r must be positive")
    allow = G.full_mask if allowed is None else to_mask(allowed)
    if r == 1:
        return [bits(allow)[0]] if allow else None
    masks = G.masks
    path: list[int] = []

    # blocked = closed neighbourhoods of every path vertex except the last
    def extend(last: int, blocked: int) -> bool:
        if len(path) == r:
            return True
        cand = masks[last] & allow & ~blocked
        if not cand:
            return False
        nxt_blocked = blocked | masks[last] | 1 << last
        for u in iter_bits(cand):
            path.append(u)
            if extend(u, nxt_blocked):
                return True
            path.pop()
        return False

    for s in iter_bits(allow):
        path.append(s)
        if extend(s, 0):
            return path
        path.pop()
    return None


def induced_ab_paths(
    G: Graph, a: int, b: int, max_vertices: int | None = None, allowed: int | None = None
) -> Iterator[list[int]]:
    """All induced (a,b)-paths, optionally only those with at most ``max_vertices`` vertices."""
    allow = (G.full_mask if allowed is None else allowed) | 1 << a | 1 << b
    masks = G.masks
    cap = max_vertices if max_vertices is not None else G.n
    path = [a]

    def rec(last: int, blocked: int) -> Iterator[list[int]]:
        if blocked >> b & 1:
            return
        cand = masks[last] & allow & ~blocked
        if cand >> b & 1:
            yield path + [b]
            return
        if len(path) + 1 >= cap:
            return
        nxt_blocked = blocked | masks[last] | 1 << last
        for u in iter_bits(cand):
            path.append(u)
            yield from rec(u, nxt_blocked)
            path.pop()

    if a == b:
        raise ValueError("a and b must be distinct")
    yield from rec(a, 0)


# --- K_{2,t} ----------------------------------------------------------------


def find_k2t(G: Graph, t: int) -> tuple[tuple[int, int], frozenset[int]] | None:
    """Non-adjacent u, v and an independent t-set complete to both, or None."""
    if t < 1:
        raise ValueError("t must be positive")
    masks = G.masks
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if masks[u] >> v & 1:
                continue
            common = masks[u] & masks[v]
            if popcount(common) < t:
                continue
            I = mis_mask(G, common)
            if popcount(I) >= t:
                return (u, v), frozenset(bits(I)[:t])
    return None


# --- pyramids ---------------------------------------------------------------


@dataclass(frozen=True)
class PyramidPresentation:
    apex: int
    legs: tuple[int, ...]
    base: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.legs)

    def vertices(self) -> frozenset[int]:
        return frozenset((self.apex, *self.legs, *self.base))

    @property
    def mask(self) -> int:
        return to_mask(self.vertices())

    @property
    def base_mask(self) -> int:
        return to_mask(self.base)

    def expected_edges(self) -> set[frozenset[int]]:
        e = {frozenset((self.apex, x)) for x in self.legs}
        e |= {frozenset(p) for p in zip(self.legs, self.base)}
        e |= {frozenset((y, z)) for i, y in enumerate(self.base) for z in self.base[i + 1:]}
        return e

    def shrink(self, t: int) -> "PyramidPresentation":
        """The sub-pyramid on the first ``t`` legs."""
        if not 2 <= t <= self.t:
            raise ValueError(f"cannot shrink a {self.t}-pyramid to {t} legs")
        return PyramidPresentation(self.apex, self.legs[:t], self.base[:t])

    def relabel(self, labels: Sequence[int]) -> "PyramidPresentation":
        return PyramidPresentation(
            labels[self.apex], tuple(labels[x] for x in self.legs), tuple(labels[y] for y in self.base)
        )

    def to_dict(self) -> dict:
        return {"apex": self.apex, "legs": list(self.legs), "base": list(self.base)}


def pyramid_problems(G: Graph, P: PyramidPresentation) -> list[str]:
    """Reasons why P is not a valid presentation in G (empty list when valid)."""
    problems = []
    if P.t < 2 or len(P.base) != P.t:
        problems.append("need t >= 2 legs and as many base vertices")
        return problems
    verts = (P.apex, *P.legs, *P.base)
    if len(set(verts)) != len(verts):
        problems.append("vertices not distinct")
        return problems
    if any(not 0 <= v < G.n for v in verts):
        problems.append("vertex out of range")
        return problems
    want = P.expected_edges()
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            has = G.has_edge(u, v)
            if has and frozenset((u, v)) not in want:
                problems.append(f"extra edge {u}-{v}")
            elif not has and frozenset((u, v)) in want:
                problems.append(f"missing edge {u}-{v}")
    return problems


def is_pyramid_presentation(G: Graph, P: PyramidPresentation) -> bool:
    return not pyramid_problems(G, P)


def find_t_pyramid(
    G: Graph,
    t: int,
    apex: Iterable[int] | None = None,
    legs: Iterable[int] | None = None,
    base: Iterable[int] | None = None,
    budget: int | None = None,
) -> PyramidPresentation | None:
    """Exact backtracking search for an induced t-pyramid.

    ``apex``, ``legs`` and ``base`` optionally restrict where each part may lie.
    Legs are returned in increasing order.
    """
    if t < 2:
        raise PreconditionError("t must be at least 2")
    full = G.full_mask
    apex_m = full if apex is None else to_mask(apex)
    leg_m = full if legs is None else to_mask(legs)
    base_m = full if base is None else to_mask(base)
    masks = G.masks
    tick = _Budget(budget, "find_t_pyramid").tick

    for a in iter_bits(apex_m):
        na = masks[a]
        away = ~(na | 1 << a)
        base_of = {}
        for x in iter_bits(na & leg_m):
            bm = masks[x] & away & base_m
            if bm:
                base_of[x] = bm
        pool = sorted(base_of)
        if len(pool) < t:
            continue
        xs: list[int] = []
        ys: list[int] = []

        def rec(start: int, xmask: int, ymask: int) -> bool:
            if len(xs) == t:
                return True
            for idx in range(start, len(pool) - (t - len(xs)) + 1):
                x = pool[idx]
                tick()
                if masks[x] & (xmask | ymask):
                    continue
                for y in iter_bits(base_of[x] & ~ymask):
                    if masks[y] & xmask or ymask & ~masks[y]:
                        continue
                    xs.append(x)
                    ys.append(y)
                    if rec(idx + 1, xmask | 1 << x, ymask | 1 << y):
                        return True
                    xs.pop()
                    ys.pop()
            return False

        if rec(0, 0, 0):
            return PyramidPresentation(a, tuple(xs), tuple(ys))
    return None


def is_simplicial_pyramid(G: Graph, P: PyramidPresentation) -> tuple[bool, list[int]]:
    """Whether every vertex outside P sees a non-empty clique of P; also the violators."""
    if not is_pyramid_presentation(G, P):
        raise PreconditionError(f"invalid pyramid presentation: {pyramid_problems(G, P)}")
    pm = P.mask
    bad = []
    for v in iter_bits(G.full_mask & ~pm):
        seen = G.masks[v] & pm
        if not seen or not G.is_clique_mask(seen):
            bad.append(v)
    return not bad, bad


def basic_vertices(G: Graph, P: PyramidPresentation) -> frozenset[int]:
    pm, bm = P.mask, P.base_mask
    return frozenset(v for v in iter_bits(G.full_mask & ~pm) if G.masks[v] & pm == bm)


# --- attached structures ----------------------------------------------------


class StructureKind(enum.Enum):
    STAR = "star"
    ONE_SUBDIVIDED_STAR = "one_subdivided_star"
    LINE_GRAPH_OF_ONE_SUBDIVIDED_STAR = "line_graph_of_one_subdivided_star"


@dataclass(frozen=True)
class AttachedStructure:
    """X ∪ Y' inducing one of the three shapes, with Y' its degree-1 vertices.

    ``pairs`` lists (leaf, attachment) with the attachment being the unique
    neighbour of the leaf in X: the centre for a star, the middle vertex of the
    leg for a 1-subdivided star, the clique vertex for the line graph.
    """

    kind: StructureKind
    center: int | None
    pairs: tuple[tuple[int, int], ...]

    @property
    def leaves(self) -> frozenset[int]:
        return frozenset(y for y, _ in self.pairs)

    @property
    def attach(self) -> frozenset[int]:
        return frozenset(x for _, x in self.pairs)

    @property
    def X(self) -> frozenset[int]:
        extra = () if self.center is None else (self.center,)
        return self.attach | frozenset(extra)

    def attachment(self, leaf: int) -> int:
        for y, x in self.pairs:
            if y == leaf:
                return x
        raise KeyError(leaf)

    def restrict(self, leaves: Iterable[int]) -> "AttachedStructure":
        """The same shape on a subset of the leaves."""
        keep = set(leaves)
        if not keep <= self.leaves:
            raise ValueError("can only restrict to existing leaves")
        return AttachedStructure(self.kind, self.center, tuple(p for p in self.pairs if p[0] in keep))


def structure_problems(G: Graph, s: AttachedStructure) -> list[str]:
    """Check that G[X ∪ Y'] is exactly the claimed shape."""
    leaves = [y for y, _ in s.pairs]
    att = [x for _, x in s.pairs]
    problems = []
    if len(set(leaves)) != len(leaves):
        problems.append("repeated leaf")
    if not G.is_independent(leaves):
        problems.append("leaves not independent")
    for y, x in s.pairs:
        if (G.masks[y] & to_mask(s.X)) != 1 << x:
            problems.append(f"leaf {y} does not see exactly {x} in X")
    if s.kind is StructureKind.STAR:
        if s.center is None or any(x != s.center for x in att):
            problems.append("star leaves must attach to the centre")
    elif s.kind is StructureKind.ONE_SUBDIVIDED_STAR:
        if s.center is None or len(set(att)) != len(att) or s.center in att:
            problems.append("bad subdivided star layout")
        else:
            if not G.is_independent(att):
                problems.append("middle vertices adjacent")
            if any(not G.has_edge(s.center, x) for x in att):
                problems.append("middle vertex not adjacent to centre")
    else:
        if s.center is not None or len(set(att)) != len(att):
            problems.append("bad line graph layout")
        elif not G.is_clique(att):
            problems.append("attachments do not form a clique")
    return problems


def _check_attach_input(G: Graph, Cm: int, Ym: int, k: int) -> None:
    if k < 3:
        raise PreconditionError("k must be at least 3")
    if Cm & Ym:
        raise PreconditionError("Y and C overlap")
    if not Cm or len(components_mask(G, Cm)) != 1:
        raise PreconditionError("C does not induce a connected subgraph")
    if not G.is_independent_mask(Ym):
        raise PreconditionError("Y is not independent")
    for y in iter_bits(Ym):
        if not G.masks[y] & Cm:
            raise PreconditionError(f"vertex {y} of Y has no neighbour in C")


def _matched_search(G: Graph, pool: list[int], cand_of: dict, k: int, clique: bool, tick) -> list[tuple[int, int]] | None:
    """Pick (x, y) pairs from ``pool`` with every y seeing exactly its own x.

    The x's are pairwise adjacent when ``clique`` and pairwise non-adjacent
    otherwise.  The first solution of size k is extended greedily to a maximal one.
    """
    masks = G.masks
    chosen: list[tuple[int, int]] = []

    def compatible(x: int, xmask: int, ymask: int) -> bool:
        if masks[x] & ymask:
            return False
        if clique:
            return xmask & ~masks[x] == 0
        return not masks[x] & xmask

    def rec(start: int, xmask: int, ymask: int) -> bool:
        if len(chosen) == k:
            return True
        for idx in range(start, len(pool) - (k - len(chosen)) + 1):
            x = pool[idx]
            tick()
            if not compatible(x, xmask, ymask):
                continue
            for y in iter_bits(cand_of[x] & ~ymask):
                if masks[y] & xmask:
                    continue
                chosen.append((x, y))
                if rec(idx + 1, xmask | 1 << x, ymask | 1 << y):
                    return True
                chosen.pop()
        return False

    if not rec(0, 0, 0):
        return None
    xmask = to_mask(x for x, _ in chosen)
    ymask = to_mask(y for _, y in chosen)
    for x in pool:
        if xmask >> x & 1 or not compatible(x, xmask, ymask):
            continue
        for y in iter_bits(cand_of[x] & ~ymask):
            if not masks[y] & xmask:
                chosen.append((x, y))
                xmask |= 1 << x
                ymask |= 1 << y
                break
    return chosen


def find_attached_structure(
    G: Graph,
    C: Iterable[int],
    Y: Iterable[int],
    k: int,
    budget: int | None = DEFAULT_BUDGET,
    shapes: Sequence[StructureKind] = tuple(StructureKind),
) -> AttachedStructure | None:
    """A star, 1-subdivided star or line graph of a 1-subdivided star in C
    whose degree-1 vertices are at least k vertices of Y.

    Tries a single high-degree centre first, then bounded backtracking for
    the two subdivided shapes.  Returns None when the search is exhausted;
    raises BudgetExhausted when the node cap is hit first.
    """
    Cm, Ym = to_mask(C), to_mask(Y)
    _check_attach_input(G, Cm, Ym, k)
    masks = G.masks
    tick = _Budget(budget, "find_attached_structure").tick

    for kind in shapes:
        if kind is StructureKind.STAR:
            best, best_deg = None, -1
            for c in iter_bits(Cm):
                d = popcount(masks[c] & Ym)
                if d > best_deg:
                    best, best_deg = c, d
            if best_deg >= k:
                pairs = tuple((y, best) for y in iter_bits(masks[best] & Ym))
                return AttachedStructure(kind, best, pairs)
        elif kind is StructureKind.ONE_SUBDIVIDED_STAR:
            for c in iter_bits(Cm):
                tick()
                leaf_m = Ym & ~masks[c]
                cand_of = {}
                for m in iter_bits(masks[c] & Cm):
                    lm = masks[m] & leaf_m
                    if lm:
                        cand_of[m] = lm
                if len(cand_of) < k:
                    continue
                found = _matched_search(G, sorted(cand_of), cand_of, k, False, tick)
                if found:
                    pairs = tuple(sorted((y, x) for x, y in found))
                    return AttachedStructure(kind, c, pairs)
        else:
            cand_of = {}
            for x in iter_bits(Cm):
                ym = masks[x] & Ym
                if ym:
                    cand_of[x] = ym
            if len(cand_of) >= k:
                found = _matched_search(G, sorted(cand_of), cand_of, k, True, tick)
                if found:
                    pairs = tuple(sorted((y, x) for x, y in found))
                    return AttachedStructure(kind, None, pairs)
    return None
