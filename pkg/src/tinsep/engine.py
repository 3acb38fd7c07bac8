"""Separators with small independence number in {P6, K2,t}-free graphs.

* :func:`small_alpha_ab_separator` separates two non-adjacent vertices.
* :func:`neighborhood_balanced_separator` finds a balanced separator of the
  form ``N[z0] ∪ Z`` by iterative improvement over pyramids.
* :func:`combined_balanced_separator` turns the two kinds of guarantee into a
  single balanced separator.
* :func:`tree_alpha_bound` is the resulting bound on tree-independence number.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from tinsep._bits import bits, iter_bits, lowest, popcount, to_mask, to_set
from tinsep.decomposition import elimination_bags, greedy_ordering, optimal_ordering
from tinsep.errors import BudgetExhausted, Counterexample, CounterexampleReport, PreconditionError
from tinsep.graph import (
    Graph,
    SeparatorCertificate,
    Weighting,
    alpha_mask,
    components_mask,
    heavy_components_mask,
    is_connected,
    minimal_separator_masks,
    full_components_mask,
    mis_mask,
    reach_mask,
)
from tinsep.patterns import DEFAULT_BUDGET, PyramidPresentation, find_t_pyramid
from tinsep.pyramids import (
    apex_base_separator,
    on_induced_path_mask,
    pyramid_from_paths,
    pyramid_through_separator,
    refute,
    simplicialize_pyramid,
)

log = logging.getLogger(__name__)

SEVEN_EIGHTHS = Fraction(7, 8)


@dataclass(frozen=True)
class BoundConfig:
    """Parameters shared by the separator procedures.

    ``q`` is the independence number above which a minimal separator is
    mined for pyramids; ``g_impl`` is the bound claimed for the core ``Z`` of
    a neighbourhood separator.  ``direct_cap`` lets tests force the pyramid
    branch of the (a,b)-separator by lowering its shortcut threshold.
    """

    t: int = 2
    g_impl: int | None = None
    c: Fraction = SEVEN_EIGHTHS
    q: int | None = None
    direct_cap: int | None = None
    budget: int | None = DEFAULT_BUDGET
    assert_mode: bool = True
    exact_cap: int = 12

    def __post_init__(self):
        if self.t < 2:
            raise PreconditionError("t must be at least 2")
        c = Fraction(self.c)
        object.__setattr__(self, "c", c)
        if not Fraction(1, 2) <= c < 1:
            raise PreconditionError("c must lie in [1/2, 1)")
        if self.g_impl is not None and self.g_impl < 1:
            raise PreconditionError("g_impl must be at least 1")

    @property
    def pyramid_t(self) -> int:
        # a K2,2-free graph is K2,3-free, so pyramid arguments run with t >= 3
        return max(self.t, 3)

    @property
    def threshold(self) -> int:
        return self.q if self.q is not None else 12 * (self.pyramid_t - 1) + 1

    @property
    def g(self) -> int:
        return self.g_impl if self.g_impl is not None else 2 * self.threshold - 2

    @property
    def ab_bound(self) -> int:
        return 14 * (self.t - 1) + 3

    @property
    def combined_bound(self) -> int:
        return self.ab_bound + 2 * self.g + 4


def tree_alpha_bound(t: int, g: int) -> int:
    """Tree-independence bound obtained from the combined separator with c = 7/8."""
    if t < 2:
        raise PreconditionError("t must be at least 2")
    return 238 * (t - 1) + 34 * g + 119


def separator_to_width_factor(c: Fraction) -> Fraction:
    """(3 - c) / (1 - c): balanced separators of alpha <= d give alpha-width <= this * d."""
    c = Fraction(c)
    return (3 - c) / (1 - c)


# --- (a,b)-separator ------------------------------------------------------


def small_alpha_ab_separator(G: Graph, a: int, b: int, cfg: BoundConfig | None = None) -> SeparatorCertificate:
    cfg = cfg or BoundConfig()
    t = cfg.t
    if a == b or G.has_edge(a, b):
        raise PreconditionError("a and b must be distinct and non-adjacent")
    X = on_induced_path_mask(G, a, b)
    cap = cfg.direct_cap if cfg.direct_cap is not None else cfg.ab_bound
    alpha_X = alpha_mask(G, X)
    need = 3 * (t - 1) + 1
    notes: dict = {"alpha_X": alpha_X}
    if alpha_X <= cap or alpha_X < need:
        S = X
        route = "neighbours"
    else:
        I = bits(mis_mask(G, X))[:need]
        Cb = reach_mask(G, b, G.full_mask & ~X)
        H, labels = G.induced(sorted({a, *I, *bits(Cb)}))
        local = {v: i for i, v in enumerate(labels)}
        P = pyramid_from_paths(H, local[a], local[b], t, cfg.assert_mode)
        P = P.relabel(labels)
        ctx = simplicialize_pyramid(G, P, t, cfg.assert_mode)
        if b not in ctx.B:
            raise refute(G, t, "3.1", "b is not basic for the constructed pyramid")
        inner = apex_base_separator(G, ctx, b, t, cfg.assert_mode)
        S = to_mask(inner.separator) | to_mask(ctx.Z)
        route = "pyramid"
        notes.update(pyramid=P.to_dict(), alpha_Z=ctx.alpha_Z, alpha_inner=inner.alpha)
    alpha = alpha_mask(G, S)
    separated = not S >> a & 1 and not S >> b & 1 and not reach_mask(G, a, G.full_mask & ~S) >> b & 1
    ok = separated and alpha <= cfg.ab_bound
    if cfg.assert_mode and not ok:
        raise refute(G, t, "3.1", "separation failed" if not separated else f"alpha(S) = {alpha} > {cfg.ab_bound}")
    return SeparatorCertificate(
        to_set(S), "ab", alpha, a=a, b=b, bound=cfg.ab_bound, route=route, verified=ok, notes=notes
    )


# --- balanced separators from tree decompositions --------------------------


def balanced_bag(G: Graph, w: Weighting, c: Fraction = Fraction(1, 2), exact_cap: int = 12) -> int:
    """A (w, c)-balanced bag of least independence number among a few decompositions.

    Every tree decomposition has a (w, 1/2)-balanced bag; candidates come from
    the exact alpha-optimal ordering when G is small enough, plus min-degree and
    min-fill orderings.
    """
    orders = []
    if G.n <= exact_cap:
        orders.append(optimal_ordering(G, "alpha", exact_cap))
    orders.append(greedy_ordering(G, "min-degree"))
    orders.append(greedy_ordering(G, "min-fill"))
    best = G.full_mask
    best_alpha = alpha_mask(G, best)
    for order in orders:
        for bag in elimination_bags(G, order):
            if not heavy_components_mask(G, bag, w, c):
                al = alpha_mask(G, bag)
                if al < best_alpha or (al == best_alpha and bag < best):
                    best, best_alpha = bag, al
    return best


# --- neighbourhood balanced separator --------------------------------------


def _check_weighting(G: Graph, w: Weighting) -> None:
    if len(w) != G.n:
        raise PreconditionError(f"weighting has {len(w)} entries for {G.n} vertices")
    if not w.is_normal():
        raise PreconditionError("weighting is not normal")


def _apex_alpha(G: Graph, P: PyramidPresentation) -> int:
    return alpha_mask(G, G.masks[P.apex])


def _discover_pyramid(G: Graph, seps: list[int], cfg: BoundConfig) -> PyramidPresentation | None:
    best = None
    best_key = None
    for S in seps:
        full = full_components_mask(G, S)
        try:
            P = pyramid_through_separator(G, bits(S), bits(full[0]), bits(full[1]), 3, cfg.budget, cfg.assert_mode)
        except BudgetExhausted:
            log.info("pyramid search through a separator ran out of budget")
            continue
        if P is None:
            continue
        key = _apex_alpha(G, P)
        if best_key is None or key > best_key:
            best, best_key = P, key
    if best is None:
        best = find_t_pyramid(G, 3, budget=cfg.budget)
    return best


def _improve_pyramid(G: Graph, z0: int, Z1: int, C2: int, cfg: BoundConfig) -> PyramidPresentation | None:
    """A pyramid with apex z0 inside G[{z0} ∪ Z1 ∪ C2], where Z1 is a minimal separator."""
    H, labels = G.induced(bits(1 << z0 | Z1 | C2))
    local = {v: i for i, v in enumerate(labels)}
    S = [local[v] for v in iter_bits(Z1)]
    C = [local[v] for v in iter_bits(C2)]
    P = None
    try:
        P = pyramid_through_separator(H, S, [local[z0]], C, 3, cfg.budget, cfg.assert_mode)
    except BudgetExhausted:
        log.info("structured search for an improved pyramid ran out of budget")
    if P is None:
        P = find_t_pyramid(H, 3, apex=[local[z0]], budget=cfg.budget)
    return None if P is None else P.relabel(labels)


def _certificate(G: Graph, w: Weighting, z0: int, Z: int, route: str, cfg: BoundConfig, **notes) -> SeparatorCertificate:
    S = G.masks[z0] | 1 << z0 | Z
    balanced = not heavy_components_mask(G, S, w, SEVEN_EIGHTHS)
    alpha_Z = alpha_mask(G, Z)
    ok = balanced and alpha_Z <= cfg.g
    notes["alpha_Z"] = alpha_Z
    if cfg.assert_mode and not ok:
        raise refute(G, cfg.pyramid_t, "3.2", "not balanced" if not balanced else f"alpha(Z) = {alpha_Z} > {cfg.g}")
    return SeparatorCertificate(
        to_set(S), "balanced", alpha_mask(G, S), c=SEVEN_EIGHTHS, center=z0, core=to_set(Z),
        route=route, verified=ok, notes=notes,
    )


def _fallback(G: Graph, w: Weighting, cfg: BoundConfig, route: str) -> SeparatorCertificate:
    Z = balanced_bag(G, w, Fraction(1, 2), cfg.exact_cap)
    z0 = lowest(Z) if Z else 0
    return _certificate(G, w, z0, Z, route, cfg)


def neighborhood_balanced_separator(G: Graph, w: Weighting, cfg: BoundConfig | None = None) -> SeparatorCertificate:
    """(w, 7/8)-balanced separator ``N[z0] ∪ Z`` with alpha(Z) <= cfg.g."""
    cfg = cfg or BoundConfig()
    if G.n == 0 or not is_connected(G):
        raise PreconditionError("graph must be connected and non-empty")
    _check_weighting(G, w)
    t = cfg.pyramid_t
    eighth = Fraction(1, 8)

    # a heavy closed neighbourhood is a separator on its own
    heavy_v = max(range(G.n), key=lambda v: (w.of_mask(G.masks[v] | 1 << v), -v))
    if w.of_mask(G.masks[heavy_v] | 1 << heavy_v) > eighth:
        return _certificate(G, w, heavy_v, 0, "heavy-neighbourhood", cfg)

    q = cfg.threshold
    high = [S for S in minimal_separator_masks(G) if alpha_mask(G, S) >= q]
    if not high:
        return _fallback(G, w, cfg, "small-minimal-separators")
    high.sort(key=lambda S: (-alpha_mask(G, S), S))
    P = _discover_pyramid(G, high, cfg)
    if P is None:
        return _fallback(G, w, cfg, "no-pyramid-found")

    def give_up(detail: str) -> SeparatorCertificate:
        if cfg.assert_mode:
            raise refute(G, t, "3.2", detail)
        log.info("falling back to a decomposition bag: %s", detail)
        return _fallback(G, w, cfg, f"fallback: {detail}")

    for rounds in range(G.n + 1):
        ctx = simplicialize_pyramid(G, P, t, cfg.assert_mode)
        Z = to_mask(ctx.Z)
        heavy = heavy_components_mask(G, Z, w, SEVEN_EIGHTHS)
        if not heavy:
            return _certificate(G, w, P.apex, Z, "pyramid-core", cfg, rounds=rounds)
        C = heavy[0]
        if C == to_mask(ctx.component):
            return give_up("heavy component contains the pyramid")
        z0 = lowest(Z & G.nbr_mask(C))
        S = G.masks[z0] | 1 << z0 | Z
        heavy2 = heavy_components_mask(G, S, w, SEVEN_EIGHTHS)
        if not heavy2:
            return _certificate(G, w, z0, Z, "pyramid-neighbourhood", cfg, rounds=rounds)
        C2 = heavy2[0]
        Z1 = G.masks[z0] & C & G.nbr_mask(C2)
        if alpha_mask(G, Z1) <= alpha_mask(G, Z):
            z1 = lowest(Z1)
            S1 = G.masks[z1] | 1 << z1 | Z | Z1
            if heavy_components_mask(G, S1, w, SEVEN_EIGHTHS):
                return give_up("second-step separator is not balanced")
            return _certificate(G, w, z1, Z | Z1, "pyramid-second-step", cfg, rounds=rounds)
        P2 = _improve_pyramid(G, z0, Z1, C2, cfg)
        if P2 is None:
            return _fallback(G, w, cfg, "improvement-not-found")
        if _apex_alpha(G, P2) <= _apex_alpha(G, P):
            return give_up("improved pyramid does not increase alpha(N(apex))")
        P = P2
    return give_up("improvement loop did not terminate")


# --- combining the two guarantees ------------------------------------------

OracleA = Callable[[Graph, int, int], Iterable[int]]
OracleB = Callable[[Graph, Weighting], "tuple[int, Iterable[int]]"]


def default_oracle_a(cfg: BoundConfig) -> OracleA:
    return lambda H, u, v: small_alpha_ab_separator(H, u, v, cfg).separator


def default_oracle_b(cfg: BoundConfig) -> OracleB:
    def run(H: Graph, w: Weighting):
        cert = neighborhood_balanced_separator(H, w, cfg)
        return cert.center, cert.core
    return run


def combined_balanced_separator(
    G: Graph,
    w: Weighting,
    cfg: BoundConfig | None = None,
    oracle_a: OracleA | None = None,
    oracle_b: OracleB | None = None,
    shortcut: bool = True,
) -> SeparatorCertificate:
    """(w, c)-balanced separator with alpha <= a + 2b + 4.

    ``oracle_a(G, u, v)`` returns a (u,v)-separator of alpha <= a for
    non-adjacent u, v; ``oracle_b(H, w')`` returns ``(v, B)`` with
    ``N[v] ∪ B`` a (w', c)-balanced separator of H and alpha(B) <= b.  With
    ``shortcut`` the procedure stops early as soon as some ``N[v] ∪ B_v`` is
    already within the bound.
    """
    cfg = cfg or BoundConfig()
    _check_weighting(G, w)
    oracle_a = oracle_a or default_oracle_a(cfg)
    oracle_b = oracle_b or default_oracle_b(cfg)
    c = cfg.c
    bound = cfg.combined_bound

    def finish(S: int, route: str, **notes) -> SeparatorCertificate:
        alpha = alpha_mask(G, S)
        balanced = not heavy_components_mask(G, S, w, c)
        ok = balanced and alpha <= bound
        if cfg.assert_mode and not ok:
            raise refute(G, cfg.pyramid_t, "3.3", "not balanced" if not balanced else f"alpha(S) = {alpha} > {bound}")
        return SeparatorCertificate(to_set(S), "balanced", alpha, c=c, bound=bound, route=route, verified=ok, notes=notes)

    T: dict[int, int] = {}
    last = None
    for _ in range(G.n + 2):
        Tm = to_mask(T)
        pair = next(((u, v) for u in T for v in T if u < v and not G.has_edge(u, v)), None)
        if pair:
            v1, v2 = pair
            A = to_mask(oracle_a(G, v1, v2))
            if reach_mask(G, v1, G.full_mask & ~A) >> v2 & 1 or A >> v1 & 1 or A >> v2 & 1:
                raise PreconditionError(f"oracle_a did not separate {v1} from {v2}")
            S = A | 1 << v1 | 1 << v2 | T[v1] | T[v2]
            return finish(S, "non-adjacent-pair", pair=[v1, v2], T=sorted(T))
        if not heavy_components_mask(G, Tm, w, c):
            return finish(Tm, "clique" if T else "empty", T=sorted(T))
        if shortcut and last is not None:
            closed = G.masks[last] | 1 << last | T[last]
            if alpha_mask(G, closed) <= bound:
                return finish(closed, "closed-neighbourhood", T=sorted(T), center=last)
        comps = components_mask(G, G.full_mask & ~Tm)
        Gp = max(comps, key=lambda D: (w.of_mask(D), -D))
        wGp = w.of_mask(Gp)
        H, labels = G.induced(bits(Gp))
        wp = Weighting(tuple(w[v] / wGp for v in labels))
        if any(w[v] > wp[i] for i, v in enumerate(labels)):
            raise Counterexample(CounterexampleReport("assertion", (), "3.3", "renormalised weight decreased"))
        v_local, B_local = oracle_b(H, wp)
        v = labels[v_local]
        B = to_mask(labels[i] for i in B_local) | Tm
        if v in T:
            raise PreconditionError(f"oracle_b returned vertex {v} already in T")
        closed = G.masks[v] | 1 << v | B
        if heavy_components_mask(G, closed, w, c):
            raise PreconditionError(f"oracle_b output around {v} is not (w, c)-balanced in G")
        T[v] = B
        last = v
    raise Counterexample(CounterexampleReport("assertion", (), "3.3", "T grew beyond n vertices"))


# --- oracle adapters for the decomposition builder --------------------------


def neighborhood_oracle(cfg: BoundConfig | None = None):
    cfg = cfg or BoundConfig()
    return lambda H, w: neighborhood_balanced_separator(H, w, cfg).separator


def combined_oracle(cfg: BoundConfig | None = None):
    cfg = cfg or BoundConfig()
    return lambda H, w: combined_balanced_separator(H, w, cfg).separator
