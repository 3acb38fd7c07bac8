"""Tree decompositions: data model, validation, exact oracles and a builder."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from tinsep._bits import bits, iter_bits, lowest, popcount, to_mask, to_set
from tinsep.graph import Graph, Weighting, alpha_mask, components_mask, reach_mask

DEFAULT_EXACT_CAP = 12

SeparatorOracle = Callable[[Graph, Weighting], Iterable[int]]


@dataclass(frozen=True)
class TreeDecomposition:
    host: Graph
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    bags: dict[int, frozenset[int]] = field(compare=False)

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [list(e) for e in self.edges],
            "bags": {str(k): sorted(self.bags[k]) for k in self.nodes},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, host: Graph, data: dict) -> "TreeDecomposition":
        bags = {int(k): frozenset(v) for k, v in data["bags"].items()}
        return cls(host, tuple(data["nodes"]), tuple(tuple(e) for e in data["edges"]), bags)

    @classmethod
    def from_json(cls, host: Graph, text: str) -> "TreeDecomposition":
        return cls.from_dict(host, json.loads(text))

    def dump(self) -> str:
        lines = [f"tree decomposition: {len(self.nodes)} nodes, host n={self.host.n}"]
        for k in self.nodes:
            lines.append(f"  bag {k}: {' '.join(map(str, sorted(self.bags[k])))}")
        for u, v in self.edges:
            lines.append(f"  edge {u} -- {v}")
        return "\n".join(lines) + "\n"


def _tree_problem(D: TreeDecomposition) -> str | None:
    nodes = list(D.nodes)
    index = set(nodes)
    if not nodes:
        return "tree has no nodes"
    if len(index) != len(nodes):
        return "duplicate node ids"
    if set(D.bags) != index:
        return "bags do not match the node list"
    if len(D.edges) != len(nodes) - 1:
        return "not a tree: wrong number of edges"
    adj: dict[int, list[int]] = {k: [] for k in nodes}
    for u, v in D.edges:
        if u not in index or v not in index or u == v:
            return f"bad tree edge ({u}, {v})"
        adj[u].append(v)
        adj[v].append(u)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(nodes):
        return "not a tree: disconnected"
    return None


def validate(D: TreeDecomposition) -> tuple[bool, str | None]:
    """(True, None) if D is a tree decomposition of its host, else (False, reason)."""
    prob = _tree_problem(D)
    if prob:
        return False, prob
    G = D.host
    bagm = {k: to_mask(D.bags[k]) for k in D.nodes}
    for k, m in bagm.items():
        if m & ~G.full_mask:
            return False, f"bag {k} contains a vertex outside the host"
    covered = 0
    for m in bagm.values():
        covered |= m
    if covered != G.full_mask:
        return False, f"vertex coverage: vertex {lowest(G.full_mask & ~covered)} appears in no bag"
    for u, v in G.edges():
        pair = 1 << u | 1 << v
        if not any(m & pair == pair for m in bagm.values()):
            return False, f"edge coverage: edge ({u}, {v}) lies in no bag"
    adj: dict[int, list[int]] = {k: [] for k in D.nodes}
    for a, b in D.edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in range(G.n):
        holders = [k for k in D.nodes if bagm[k] >> v & 1]
        inside = set(holders)
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            for y in adj[stack.pop()]:
                if y in inside and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(holders):
            return False, f"connectivity: bags containing vertex {v} are not a subtree"
    return True, None


def alpha_width(D: TreeDecomposition) -> int:
    ok, why = validate(D)
    if not ok:
        raise ValueError(f"invalid tree decomposition: {why}")
    return max(alpha_mask(D.host, to_mask(b)) for b in D.bags.values())


def width(D: TreeDecomposition) -> int:
    return max(len(b) for b in D.bags.values()) - 1


def compact(D: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose one end's bag is contained in the other's.

    Contraction keeps every vertex and edge covered and every vertex's bags
    connected, so a valid decomposition stays valid and no bag grows.
    """
    bags = {k: D.bags[k] for k in D.nodes}
    adj: dict[int, set[int]] = {k: set() for k in D.nodes}
    for u, v in D.edges:
        adj[u].add(v)
        adj[v].add(u)
    changed = True
    while changed:
        changed = False
        for u in sorted(bags):
            keep = next((v for v in sorted(adj[u]) if bags[u] <= bags[v]), None)
            if keep is None:
                continue
            for x in adj.pop(u):
                adj[x].discard(u)
                if x != keep:
                    adj[x].add(keep)
                    adj[keep].add(x)
            del bags[u]
            changed = True
    nodes = tuple(sorted(bags))
    edges = tuple(sorted((u, v) for u in nodes for v in adj[u] if u < v))
    return TreeDecomposition(D.host, nodes, edges, bags)


# --- elimination orderings ----------------------------------------------------


def elimination_bags(G: Graph, order: Sequence[int]) -> list[int]:
    """Bag masks {v} ∪ (later neighbours of v in the fill graph), in elimination order."""
    if sorted(order) != list(range(G.n)):
        raise ValueError("order must be a permutation of the vertices")
    adj = list(G.masks)
    left = G.full_mask
    out = []
    for v in order:
        left &= ~(1 << v)
        nb = adj[v] & left
        out.append(nb | 1 << v)
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
    return out


def decomposition_from_ordering(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    """The (compacted) clique tree of the fill-in triangulation for ``order``.

    Node i holds the bag of the i-th eliminated vertex; its parent is the node
    of the earliest-eliminated later neighbour.  Roots of different
    components are chained so the result is a single tree.
    """
    if G.n == 0:
        return TreeDecomposition(G, (0,), (), {0: frozenset()})
    bags = elimination_bags(G, order)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    roots = []
    for i, (v, bag) in enumerate(zip(order, bags)):
        later = bag & ~(1 << v)
        if later:
            edges.append((i, min(pos[u] for u in iter_bits(later))))
        else:
            roots.append(i)
    edges += [(roots[j], roots[j + 1]) for j in range(len(roots) - 1)]
    D = TreeDecomposition(G, tuple(range(G.n)), tuple(edges), {i: to_set(b) for i, b in enumerate(bags)})
    return compact(D)


def _sweep(G: Graph, cost: Callable[[int], int], empty: int, cap: int) -> tuple[int, list[int]]:
    """Minimise the max bag cost over all elimination orderings (subset DP).

    best[S] is the optimum when exactly the vertices of S are eliminated
    first.  Eliminating v after S creates the bag {v} ∪ Q(S, v), where Q(S, v)
    is the set of vertices outside S ∪ {v} reachable from v through S.
    """
    n = G.n
    if n > cap:
        raise ValueError(f"exact oracle limited to n <= {cap}, got n = {n}")
    if n == 0:
        return empty, []
    size = 1 << n
    best = [0] * size
    pick = [0] * size
    best[0] = empty
    inf = n + 2
    for S in range(1, size):
        val = inf
        arg = -1
        for v in iter_bits(S):
            prev = S & ~(1 << v)
            f = best[prev]
            if f >= val:
                continue
            comp = reach_mask(G, v, prev | 1 << v)
            bag = (G.nbr_mask(comp) & ~prev) | 1 << v
            c = cost(bag)
            if c < f:
                c = f
            if c < val:
                val, arg = c, v
        best[S] = val
        pick[S] = arg
    order = []
    S = size - 1
    while S:
        v = pick[S]
        order.append(v)
        S &= ~(1 << v)
    order.reverse()
    return best[size - 1], order


def exact_tree_independence(G: Graph, cap: int = DEFAULT_EXACT_CAP) -> int:
    return _sweep(G, lambda m: alpha_mask(G, m), 0, cap)[0]


def exact_treewidth(G: Graph, cap: int = DEFAULT_EXACT_CAP) -> int:
    return _sweep(G, lambda m: popcount(m) - 1, -1, cap)[0]


def optimal_ordering(G: Graph, measure: str = "alpha", cap: int = DEFAULT_EXACT_CAP) -> list[int]:
    if measure == "alpha":
        return _sweep(G, lambda m: alpha_mask(G, m), 0, cap)[1]
    if measure == "width":
        return _sweep(G, lambda m: popcount(m) - 1, -1, cap)[1]
    raise ValueError(f"unknown measure {measure!r}")


def optimal_decomposition(G: Graph, measure: str = "alpha", cap: int = DEFAULT_EXACT_CAP) -> TreeDecomposition:
    return decomposition_from_ordering(G, optimal_ordering(G, measure, cap))


def greedy_ordering(G: Graph, rule: str = "min-degree") -> list[int]:
    """Min-degree or min-fill elimination ordering; ties go to the smaller vertex."""
    adj = list(G.masks)
    left = G.full_mask
    order = []
    while left:
        best_key = None
        best_v = -1
        for v in iter_bits(left):
            nb = adj[v] & left
            if rule == "min-degree":
                key = popcount(nb)
            elif rule == "min-fill":
                key = sum(popcount(nb & ~adj[u] & ~(1 << u)) for u in iter_bits(nb)) // 2
            else:
                raise ValueError(f"unknown rule {rule!r}")
            if best_key is None or key < best_key:
                best_key, best_v = key, v
        v = best_v
        nb = adj[v] & left
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        left &= ~(1 << v)
        order.append(v)
    return order


def is_chordal(G: Graph) -> bool:
    """Maximum cardinality search followed by a perfect-elimination check."""
    n = G.n
    weight = [0] * n
    numbered = 0
    visit = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered >> u & 1), key=lambda u: (weight[u], -u))
        visit.append(v)
        numbered |= 1 << v
        for u in iter_bits(G.masks[v] & ~numbered):
            weight[u] += 1
    # reverse MCS order is a perfect elimination order iff G is chordal
    order = visit[::-1]
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in iter_bits(G.masks[v]) if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        rest = to_mask(later) & ~(1 << parent)
        if rest & ~G.masks[parent]:
            return False
    return True


# --- balanced-separator builder -----------------------------------------------


def build_from_balanced_separators(
    G: Graph,
    sep_oracle: SeparatorOracle,
    c: Fraction = Fraction(7, 8),
    max_depth: int | None = None,
) -> TreeDecomposition:
    """Recursive decomposition driven by a balanced-separator oracle.

    ``decompose(V', W)`` asks the oracle for a separator X of G[V' ∪ W] under a
    weighting uniform on W (uniform on V' when W is empty), makes the bag
    W ∪ X, and recurses into each component D of G[V'] - X with boundary
    N(D) ∩ (W ∪ X).  X is forced to meet V' so every call makes progress;
    validity of the output therefore never depends on the oracle's quality.
    ``c`` is informational: the oracle is trusted to aim for it.
    """
    del c
    depth_cap = G.n + 1 if max_depth is None else max_depth
    nodes: list[int] = []
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []

    def node(bag: int, parent: int | None) -> int:
        k = len(nodes)
        nodes.append(k)
        bags[k] = to_set(bag)
        if parent is not None:
            edges.append((parent, k))
        return k

    def decompose(Vp: int, W: int, parent: int | None, depth: int) -> int:
        if depth > depth_cap:
            raise RecursionError(f"builder exceeded depth cap {depth_cap}")
        H, labels = G.induced(bits(Vp | W))
        local = {v: i for i, v in enumerate(labels)}
        support = [local[v] for v in iter_bits(W or Vp)]
        X_local = sep_oracle(H, Weighting.uniform(H.n, support))
        X = to_mask(labels[i] for i in X_local)
        if not X & Vp:
            X |= 1 << lowest(Vp)
        k = node(W | X, parent)
        for D in components_mask(G, Vp & ~X):
            decompose(D, G.nbr_mask(D) & (W | X), k, depth + 1)
        return k

    if G.n == 0:
        return TreeDecomposition(G, (0,), (), {0: frozenset()})
    prev_root = None
    for comp in components_mask(G, G.full_mask):
        root = decompose(comp, 0, None, 0)
        if prev_root is not None:
            edges.append((prev_root, root))
        prev_root = root
    return compact(TreeDecomposition(G, tuple(nodes), tuple(edges), bags))
