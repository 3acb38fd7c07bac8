"""Pyramid constructions in {P6, K2,t}-free graphs.

Each operation follows a constructive argument step by step and, in
assert-mode, re-checks every conclusion that argument promises.  When a
conclusion fails the input cannot have been {P6, K2,t}-free, and a
:class:`~tinsep.errors.Counterexample` carrying an induced P6 or K2,t is
raised instead of a result.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from tinsep._bits import bits, iter_bits, lowest, popcount, to_mask, to_set
from tinsep.errors import (
    BudgetExhausted,
    Counterexample,
    CounterexampleReport,
    PreconditionError,
    k2t_report,
    p6_report,
)
from tinsep.graph import (
    Graph,
    SeparatorCertificate,
    alpha_mask,
    components_mask,
    mis_mask,
    reach_mask,
)
from tinsep.patterns import (
    DEFAULT_BUDGET,
    AttachedStructure,
    PyramidPresentation,
    StructureKind,
    find_attached_structure,
    find_induced_path,
    find_k2t,
    find_t_pyramid,
    induced_ab_paths,
    is_induced_path,
    is_pyramid_presentation,
    pyramid_problems,
)

log = logging.getLogger(__name__)


def refute(G: Graph, t: int, lemma: str, detail: str = "") -> Counterexample:
    """Search G for an induced P6 or K2,t to explain a failed conclusion."""
    path = find_induced_path(G, 6)
    if path is not None:
        return p6_report(path, lemma, detail)
    hit = find_k2t(G, t)
    if hit is not None:
        return k2t_report(hit[0], sorted(hit[1]), lemma, detail)
    return Counterexample(CounterexampleReport("assertion", (), lemma, detail or "conclusion failed"))


# --- simplicial context -----------------------------------------------------


@dataclass(frozen=True)
class SimplicialContext:
    """Z, the component G' of G - Z holding the pyramid, and G' = A ⊔ B ⊔ V(Π)."""

    Z: frozenset[int]
    component: frozenset[int]
    A: frozenset[int]
    B: frozenset[int]
    pyramid: PyramidPresentation
    alpha_Z: int

    def to_dict(self) -> dict:
        return {
            "Z": sorted(self.Z),
            "component": sorted(self.component),
            "A": sorted(self.A),
            "B": sorted(self.B),
            "pyramid": self.pyramid.to_dict(),
            "alpha_Z": self.alpha_Z,
        }


def non_clique_attachments(G: Graph, P: PyramidPresentation) -> int:
    """Mask of outside vertices whose neighbourhood in P is non-empty and not a clique."""
    pm = P.mask
    Z = 0
    for z in iter_bits(G.nbr_mask(pm)):
        if not G.is_clique_mask(G.masks[z] & pm):
            Z |= 1 << z
    return Z


def simplicialize_pyramid(G: Graph, P: PyramidPresentation, t: int, assert_mode: bool = True) -> SimplicialContext:
    if P.t != 3 or not is_pyramid_presentation(G, P):
        raise PreconditionError(f"not a valid 3-pyramid presentation: {pyramid_problems(G, P) or 'wrong t'}")
    if t < 2:
        raise PreconditionError("t must be at least 2")
    pm = P.mask
    Z = non_clique_attachments(G, P)
    comp = reach_mask(G, P.apex, G.full_mask & ~Z)
    outside = comp & ~pm
    A = G.masks[P.apex] & outside
    bm = P.base_mask
    B = 0
    for v in iter_bits(outside):
        if G.masks[v] & pm == bm:
            B |= 1 << v
    aZ = alpha_mask(G, Z)
    if assert_mode:
        if comp & ~(A | B | pm):
            raise refute(G, t, "4.1", "component of G - Z is not A ∪ B ∪ V(Π)")
        if aZ > 12 * (t - 1):
            raise refute(G, t, "4.1", f"alpha(Z) = {aZ} > {12 * (t - 1)}")
        for v in iter_bits(outside):
            seen = G.masks[v] & pm
            if not seen or not G.is_clique_mask(seen):
                raise refute(G, t, "4.1", f"pyramid not simplicial at {v}")
    return SimplicialContext(to_set(Z), to_set(comp), to_set(A), to_set(B), P, aZ)


# --- apex/base separator ----------------------------------------------------


def apex_base_mask(G: Graph, ctx: SimplicialContext, b: int) -> int:
    D = to_mask(ctx.component)
    A, B = to_mask(ctx.A), to_mask(ctx.B)
    nb = G.masks[b] & D
    a = ctx.pyramid.apex
    far_A = A & ~nb
    touch = 0
    for u in iter_bits(far_A):
        touch |= G.masks[u]
    return (ctx.pyramid.mask & ~(1 << a)) | (nb & A) | (nb & B & touch)


def apex_base_separator(
    G: Graph, ctx: SimplicialContext, b: int, t: int, assert_mode: bool = True
) -> SeparatorCertificate:
    """Separator of the apex from a basic vertex b inside G[ctx.component].

    The returned certificate is stated for the subgraph induced by the
    component; ``notes["domain"]`` records that vertex set.
    """
    if t < 2:
        raise PreconditionError("t must be at least 2")
    if b not in ctx.B:
        raise PreconditionError(f"vertex {b} is not a basic vertex of the simplicial context")
    S = apex_base_mask(G, ctx, b)
    D = to_mask(ctx.component)
    a = ctx.pyramid.apex
    bound = 2 * (t - 1) + 3
    separated = not reach_mask(G, a, D & ~S) >> b & 1
    alpha = alpha_mask(G, S)
    if assert_mode and (not separated or alpha > bound):
        sub, labels = G.induced(ctx.component)
        err = refute(sub, t, "4.2", "separation failed" if not separated else f"alpha(S) = {alpha} > {bound}")
        raise _lift(err, labels)
    return SeparatorCertificate(
        to_set(S), "ab", alpha, a=a, b=b, bound=bound, route="apex-base",
        verified=separated and alpha <= bound, notes={"domain": sorted(ctx.component)},
    )


def _lift(err: Counterexample, labels: list[int]) -> Counterexample:
    r = err.report
    return Counterexample(CounterexampleReport(r.kind, tuple(labels[v] for v in r.vertices), r.lemma, r.detail))


# --- pyramid from induced paths ---------------------------------------------


def on_induced_path_mask(G: Graph, a: int, b: int) -> int:
    """Neighbours x of a lying on some induced (a,b)-path.

    x qualifies iff b is reachable from x avoiding N[a] - {x}; a shortest such
    route prefixed with a is then induced.
    """
    na = G.masks[a]
    out = 0
    for x in iter_bits(na):
        allowed = G.full_mask & ~(na | 1 << a) | 1 << x
        if reach_mask(G, x, allowed) >> b & 1:
            out |= 1 << x
    return out


def _long_path_witness(G: Graph, path: list[int], t: int) -> Counterexample:
    """An induced (a,b)-path a u v w b with deg(a) > 3(t-1) yields P6 or K2,t."""
    a, u, v, w, b = path
    na = G.masks[a]
    for x in iter_bits(na & ~(1 << u)):
        if not G.masks[x] & (1 << v | 1 << w | 1 << b):
            return p6_report([x, a, u, v, w, b], "4.3", "induced (a,b)-path of length 4")
    for h in (v, w, b):
        common = G.masks[h] & na
        if popcount(common) >= t:
            return k2t_report((a, h), bits(common)[:t], "4.3", "induced (a,b)-path of length 4")
    return refute(G, t, "4.3", "induced (a,b)-path of length 4")


def pyramid_from_paths(G: Graph, a: int, b: int, t: int, assert_mode: bool = True) -> PyramidPresentation:
    """A pyramid with apex a for which b is basic."""
    if t < 2:
        raise PreconditionError("t must be at least 2")
    if a == b or G.has_edge(a, b):
        raise PreconditionError("a and b must be distinct and non-adjacent")
    na = G.masks[a]
    if not G.is_independent_mask(na):
        raise PreconditionError("N(a) not independent")
    if popcount(na) < 3 * (t - 1) + 1:
        raise PreconditionError(f"degree too small: |N(a)| = {popcount(na)} < {3 * (t - 1) + 1}")
    stray = na & ~on_induced_path_mask(G, a, b)
    if stray:
        raise PreconditionError(f"neighbour {lowest(stray)} of a lies on no induced (a,b)-path")

    paths = list(induced_ab_paths(G, a, b, max_vertices=6 if assert_mode else 4))
    for p in paths:
        if len(p) == 6:
            raise p6_report(p, "4.3", "induced (a,b)-path with 6 vertices")
    for p in paths:
        if len(p) == 5:
            raise _long_path_witness(G, p, t)

    X = 0
    Y = 0
    for p in paths:
        if len(p) == 4:
            X |= 1 << p[1]
            Y |= 1 << p[2]
    if popcount(X) < 2 * (t - 1) + 1:
        common = na & G.masks[b]
        raise k2t_report((a, b), bits(common)[:t], "4.3", "too many neighbours of a adjacent to b")

    # inclusion-minimal Y' covering X, by deletion in ascending order
    Yp = Y
    for y in iter_bits(Y):
        rest = Yp & ~(1 << y)
        if all(G.masks[x] & rest for x in iter_bits(X)):
            Yp = rest
    for y in iter_bits(Yp):
        seen = G.masks[y] & X
        if popcount(seen) >= t:
            raise k2t_report((a, y), bits(seen)[:t], "4.3", "base candidate sees t legs")
    if popcount(Yp) < 3:
        raise refute(G, t, "4.3", "fewer than three base candidates")

    ys = bits(Yp)[:3]
    xs = []
    for y in ys:
        others = 0
        for z in iter_bits(Yp & ~(1 << y)):
            others |= G.masks[z]
        private = G.masks[y] & X & ~others
        if not private:
            raise refute(G, t, "4.3", f"no private leg for {y}")
        xs.append(lowest(private))
    for i in range(3):
        for j in range(i + 1, 3):
            if not G.has_edge(ys[i], ys[j]):
                k = 3 - i - j
                raise p6_report([ys[i], b, ys[j], xs[j], a, xs[k]], "4.3", "base is not a clique")
    P = PyramidPresentation(a, tuple(xs), tuple(ys))
    if assert_mode:
        probs = pyramid_problems(G, P)
        if probs or G.masks[b] & P.mask != P.base_mask:
            raise refute(G, t, "4.3", f"bad pyramid {probs}")
    return P


# --- combining two attached structures --------------------------------------


@dataclass(frozen=True)
class Combination:
    """Outcome of gluing two attached structures along shared leaves.

    ``kind`` is ``"pyramid"``, ``"K2t"`` or ``"P6"``/``"P7"``/``"P8"``/``"P9"``;
    ``vertices`` lists the certificate (a path in order, or the K2,t hubs first).
    """

    kind: str
    vertices: tuple[int, ...]
    pyramid: PyramidPresentation | None = None

    def counterexample(self, lemma: str = "4.4") -> Counterexample:
        if self.kind == "K2t":
            return k2t_report(self.vertices[:2], self.vertices[2:], lemma, "two stars")
        return p6_report(self.vertices, lemma, f"{self.kind} from combined structures")


_S = StructureKind.STAR
_D = StructureKind.ONE_SUBDIVIDED_STAR
_L = StructureKind.LINE_GRAPH_OF_ONE_SUBDIVIDED_STAR


def combine_structures(G: Graph, h1: AttachedStructure, h2: AttachedStructure) -> Combination:
    """Glue a structure on one side of a separator to one on the other side.

    ``h2.leaves`` must be a subset of ``h1.leaves`` with at least three
    elements; h1 is trimmed to those leaves first.
    """
    h1 = h1.restrict(h2.leaves)
    leaves = sorted(h2.leaves)
    if len(leaves) < 3:
        raise PreconditionError("need at least three shared leaves")
    y1, y2, y3 = leaves[:3]
    kinds = {h1.kind, h2.kind}
    if h1.kind is _S and h2.kind is _S:
        return Combination("K2t", (h1.center, h2.center, *leaves))
    if kinds == {_S, _L}:
        star, line = (h1, h2) if h1.kind is _S else (h2, h1)
        base = tuple(line.attachment(y) for y in leaves)
        P = PyramidPresentation(star.center, tuple(leaves), base)
        return Combination("pyramid", (P.apex, *P.legs, *P.base), P)
    if kinds == {_S, _D}:
        star, sub = (h1, h2) if h1.kind is _S else (h2, h1)
        m = sub.attachment
        return Combination("P6", (y3, star.center, y1, m(y1), sub.center, m(y2)))
    if h1.kind is _D and h2.kind is _D:
        m, n = h1.attachment, h2.attachment
        return Combination("P9", (y1, m(y1), h1.center, m(y2), y2, n(y2), h2.center, n(y3), y3))
    if kinds == {_L, _D}:
        line, sub = (h1, h2) if h1.kind is _L else (h2, h1)
        x, m = line.attachment, sub.attachment
        return Combination("P8", (y1, x(y1), x(y2), y2, m(y2), sub.center, m(y3), y3))
    x, z = h1.attachment, h2.attachment
    return Combination("P7", (y1, x(y1), x(y2), y2, z(y2), z(y3), y3))


# --- pyramid through a minimal separator ------------------------------------


def _check_full(G: Graph, Sm: int, C1: int, C2: int) -> None:
    comps = components_mask(G, G.full_mask & ~Sm)
    if C1 == C2 or C1 not in comps or C2 not in comps:
        raise PreconditionError("C1 and C2 must be distinct components of G - S")
    if G.nbr_mask(C1) != Sm or G.nbr_mask(C2) != Sm:
        raise PreconditionError("S is not a minimal separator with full components C1, C2")


def pyramid_through_separator(
    G: Graph,
    S: Iterable[int],
    C1: Iterable[int],
    C2: Iterable[int],
    t: int,
    budget: int | None = DEFAULT_BUDGET,
    assert_mode: bool = True,
) -> PyramidPresentation | None:
    """A t-pyramid with legs in S, apex in one full component and base in the other.

    First the structured method (attached structures on both sides of a
    maximum independent subset of S, glued together), then a direct
    constrained pyramid search.  None means neither found one.
    """
    if t < 3:
        raise PreconditionError("t must be at least 3")
    Sm, C1m, C2m = to_mask(S), to_mask(C1), to_mask(C2)
    _check_full(G, Sm, C1m, C2m)
    exhausted = False

    Y = mis_mask(G, Sm)
    if popcount(Y) >= t:
        for first, second in ((C1m, C2m), (C2m, C1m)):
            for k1 in StructureKind:
                try:
                    h1 = find_attached_structure(G, bits(first), bits(Y), t, budget, shapes=(k1,))
                except BudgetExhausted:
                    exhausted = True
                    continue
                if h1 is None:
                    continue
                for k2 in StructureKind:
                    try:
                        h2 = find_attached_structure(G, bits(second), sorted(h1.leaves), t, budget, shapes=(k2,))
                    except BudgetExhausted:
                        exhausted = True
                        continue
                    if h2 is None:
                        continue
                    combo = combine_structures(G, h1, h2)
                    if combo.kind == "pyramid":
                        return combo.pyramid.shrink(t)
                    if assert_mode:
                        raise combo.counterexample("4.4")
                    log.debug("structured method hit %s; trying other shapes", combo.kind)

    for apex_side, base_side in ((C1m, C2m), (C2m, C1m)):
        try:
            P = find_t_pyramid(G, t, apex=bits(apex_side), legs=bits(Sm), base=bits(base_side), budget=budget)
        except BudgetExhausted:
            exhausted = True
            continue
        if P is not None:
            return P
    if exhausted:
        raise BudgetExhausted("pyramid_through_separator", budget)
    return None
