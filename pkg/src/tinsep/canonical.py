"""Canonical labelling by colour refinement plus backtracking, and small-graph enumeration."""

from __future__ import annotations

from typing import Callable, Iterator

from tinsep._bits import iter_bits, lowest, popcount
from tinsep.graph import Graph

MAX_ENUMERATION_N = 9


def _refine(masks: tuple[int, ...], cells: list[int]) -> list[int]:
    """Equitable refinement; split cells are ordered by their neighbour-count signature."""
    while True:
        out = []
        split = False
        for cell in cells:
            if not cell & (cell - 1):
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in iter_bits(cell):
                key = tuple(popcount(masks[v] & c) for c in cells)
                groups[key] = groups.get(key, 0) | 1 << v
            if len(groups) > 1:
                split = True
                out.extend(groups[k] for k in sorted(groups))
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


def _code(masks: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for i, u in enumerate(order):
        mu = masks[u]
        for v in order[i + 1:]:
            code = code << 1 | (mu >> v & 1)
    return code


def canonical_labeling(G: Graph) -> tuple[int, list[int]]:
    """(code, order): ``order[i]`` is the vertex placed at canonical position i.

    Two graphs are isomorphic iff they have the same n and the same code.
    """
    masks = G.masks
    if G.n == 0:
        return 0, []
    best: list = [None, None]

    def search(cells: list[int]) -> None:
        cells = _refine(masks, cells)
        for idx, cell in enumerate(cells):
            if cell & (cell - 1):
                break
        else:
            order = [lowest(c) for c in cells]
            code = _code(masks, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        tried: list[int] = []
        for v in iter_bits(cell):
            # swapping twins is an automorphism, so their branches coincide
            if any(masks[u] & ~(1 << v) == masks[v] & ~(1 << u) for u in tried):
                continue
            tried.append(v)
            search(cells[:idx] + [1 << v, cell & ~(1 << v)] + cells[idx + 1:])

    search([G.full_mask])
    return best[0], best[1]


def canonical_code(G: Graph) -> tuple[int, int]:
    return G.n, canonical_labeling(G)[0]


def canonical_form(G: Graph) -> Graph:
    _, order = canonical_labeling(G)
    pos = {v: i for i, v in enumerate(order)}
    return Graph.from_edges(G.n, ((pos[u], pos[v]) for u, v in G.edges()))


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.num_edges() == H.num_edges() and canonical_code(G) == canonical_code(H)


def _extend(H: Graph, nbrs: int) -> Graph:
    k = H.n
    masks = [m | (nbrs >> i & 1) << k for i, m in enumerate(H.masks)]
    masks.append(nbrs)
    return Graph(k + 1, tuple(masks))


def enumerate_by_size(
    n_max: int, predicate: Callable[[Graph], bool] | None = None
) -> Iterator[tuple[int, list[Graph]]]:
    """Yield ``(n, graphs)`` for n = 1..n_max, one canonical graph per isomorphism class.

    Classes on n vertices are grown from those on n - 1 by adding a vertex
    attached to every possible subset.  ``predicate`` must be hereditary
    (closed under deleting vertices); it filters during generation.
    """
    if n_max > MAX_ENUMERATION_N:
        raise ValueError(f"enumeration limited to n <= {MAX_ENUMERATION_N}")
    level = [Graph(0, ())]
    for n in range(1, n_max + 1):
        seen: dict[int, Graph] = {}
        for H in level:
            for nbrs in range(1 << (n - 1)):
                G = _extend(H, nbrs)
                if predicate is not None and not predicate(G):
                    continue
                code, order = canonical_labeling(G)
                if code not in seen:
                    pos = {v: i for i, v in enumerate(order)}
                    seen[code] = Graph.from_edges(n, ((pos[u], pos[v]) for u, v in G.edges()))
        level = [seen[c] for c in sorted(seen)]
        yield n, level


def enumerate_graphs(n: int, predicate: Callable[[Graph], bool] | None = None) -> Iterator[Graph]:
    """All graphs on n vertices up to isomorphism (optionally within a hereditary class)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        yield Graph(0, ())
        return
    for size, graphs in enumerate_by_size(n, predicate):
        if size == n:
            yield from graphs
