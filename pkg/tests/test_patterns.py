from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from test_graph import graphs
from tinsep.errors import BudgetExhausted, PreconditionError
from tinsep.generators import (
    complete,
    complete_bipartite,
    cycle,
    line_of_subdivided_star,
    path,
    star,
    subdivided_star,
    t_pyramid,
)
from tinsep.graph import Graph
from tinsep.patterns import (
    AttachedStructure,
    PyramidPresentation,
    StructureKind,
    basic_vertices,
    find_attached_structure,
    find_induced_path,
    find_k2t,
    find_t_pyramid,
    induced_ab_paths,
    is_induced_path,
    is_pyramid_presentation,
    is_simplicial_pyramid,
    pyramid_problems,
    structure_problems,
)

PYR = PyramidPresentation(0, (1, 2, 3), (4, 5, 6))


def extend(G: Graph, nbrs) -> Graph:
    """G plus one new vertex adjacent to ``nbrs``."""
    return Graph.from_edges(G.n + 1, [*G.edges(), *((v, G.n) for v in nbrs)])


def test_induced_path_examples():
    assert find_induced_path(path(6), 6) in ([0, 1, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0])
    assert find_induced_path(cycle(6), 6) is None
    assert find_induced_path(complete_bipartite(2, 3), 4) is None
    assert find_induced_path(cycle(7), 6) is not None
    assert find_induced_path(Graph(0, ()), 1) is None


@settings(max_examples=150, deadline=None)
@given(graphs(8), st.integers(1, 6))
def test_induced_path_matches_brute_force(G, r):
    found = find_induced_path(G, r)
    adj = oracles.adj_sets(G)
    assert (found is not None) == oracles.has_induced_path(adj, r)
    if found is not None:
        assert len(found) == r and oracles.is_induced_path(adj, found)


def test_k2t_examples():
    hit = find_k2t(complete_bipartite(2, 3), 3)
    assert hit is not None and hit[0] == (0, 1) and hit[1] == {2, 3, 4}
    assert find_k2t(cycle(4), 2) is not None
    assert find_k2t(star(5), 2) is None
    assert find_k2t(subdivided_star(4), 2) is None


@settings(max_examples=150, deadline=None)
@given(graphs(10), st.integers(2, 4))
def test_k2t_matches_brute_force(G, t):
    hit = find_k2t(G, t)
    assert (hit is not None) == oracles.has_k2t(oracles.adj_sets(G), t)
    if hit is not None:
        (u, v), I = hit
        assert len(I) == t and not G.has_edge(u, v) and G.is_independent(I)
        assert all(G.has_edge(u, x) and G.has_edge(v, x) for x in I)


def test_induced_ab_paths_are_exactly_the_induced_paths():
    G = cycle(6)
    got = sorted(induced_ab_paths(G, 0, 3))
    assert got == [[0, 1, 2, 3], [0, 5, 4, 3]]
    P = t_pyramid(3)
    for p in induced_ab_paths(P, 1, 6):
        assert is_induced_path(P, p) and p[0] == 1 and p[-1] == 6
    assert all(len(p) <= 3 for p in induced_ab_paths(P, 1, 6, max_vertices=3))


def test_pyramid_search_examples():
    P = t_pyramid(3)
    found = find_t_pyramid(P, 3)
    assert found is not None and is_pyramid_presentation(P, found)
    assert find_t_pyramid(complete(7), 3) is None
    G = extend(P, [4, 5, 6])
    assert find_t_pyramid(G, 3, apex=[0]) == PYR
    assert find_t_pyramid(t_pyramid(4), 4) is not None
    assert find_t_pyramid(t_pyramid(3), 4) is None


@settings(max_examples=100, deadline=None)
@given(graphs(10))
def test_found_pyramids_are_valid(G):
    for t in (2, 3):
        P = find_t_pyramid(G, t)
        if P is not None:
            assert not pyramid_problems(G, P)


def test_pyramid_presentation_checker():
    P = t_pyramid(3)
    assert is_pyramid_presentation(P, PYR)
    assert not is_pyramid_presentation(P, PyramidPresentation(0, (1, 2, 3), (4, 6, 5)))
    assert not is_pyramid_presentation(extend(P, []), PyramidPresentation(0, (1, 2, 3), (4, 5, 7)))
    assert PYR.shrink(2) == PyramidPresentation(0, (1, 2), (4, 5))
    assert PYR.relabel([10, 11, 12, 13, 14, 15, 16]).apex == 10


def test_simplicial_and_basic_examples():
    P = t_pyramid(3)
    assert is_simplicial_pyramid(P, PYR) == (True, [])
    assert basic_vertices(P, PYR) == set()
    with_b = extend(P, [4, 5, 6])
    assert is_simplicial_pyramid(with_b, PYR) == (True, [])
    assert basic_vertices(with_b, PYR) == {7}
    with_z = extend(P, [0, 4])
    assert is_simplicial_pyramid(with_z, PYR) == (False, [7])
    assert basic_vertices(extend(P, [0, 4, 5, 6]), PYR) == set()
    with pytest.raises(PreconditionError):
        is_simplicial_pyramid(P, PyramidPresentation(0, (1, 2, 3), (4, 6, 5)))


def test_attached_star():
    G = star(4)
    s = find_attached_structure(G, [0], [1, 2, 3, 4], 4)
    assert s.kind is StructureKind.STAR and s.center == 0 and s.leaves == {1, 2, 3, 4}
    assert not structure_problems(G, s)


def test_attached_line_graph_of_subdivided_star():
    G = line_of_subdivided_star(4)
    s = find_attached_structure(G, [0, 1, 2, 3], [4, 5, 6, 7], 3)
    assert s.kind is StructureKind.LINE_GRAPH_OF_ONE_SUBDIVIDED_STAR
    assert s.leaves == {4, 5, 6, 7} and s.attachment(5) == 1
    assert not structure_problems(G, s)


def test_attached_subdivided_star():
    G = subdivided_star(3)  # centre 0, legs 0-1-2, 0-3-4, 0-5-6
    s = find_attached_structure(G, [0, 1, 3, 5], [2, 4, 6], 3)
    assert s.kind is StructureKind.ONE_SUBDIVIDED_STAR and s.center == 0
    assert {s.attachment(y) for y in (2, 4, 6)} == {1, 3, 5}
    assert not structure_problems(G, s)
    # legs have length exactly two in a P6-free host
    assert all(G.has_edge(s.center, s.attachment(y)) for y in s.leaves)
    restricted = s.restrict([2, 4, 6])
    assert restricted == s
    with pytest.raises(ValueError):
        s.restrict([0])


def test_attached_structure_preconditions_and_budget():
    G = subdivided_star(3)
    with pytest.raises(PreconditionError, match="at least 3"):
        find_attached_structure(G, [0, 1, 3, 5], [2, 4, 6], 2)
    with pytest.raises(PreconditionError, match="connected"):
        find_attached_structure(G, [1, 3, 5], [2, 4, 6], 3)
    with pytest.raises(PreconditionError, match="overlap"):
        find_attached_structure(G, [0, 1, 2], [2, 4, 6], 3)
    with pytest.raises(PreconditionError, match="independent"):
        find_attached_structure(G, [0], [1, 2, 3], 3)
    with pytest.raises(BudgetExhausted):
        find_attached_structure(G, [0, 1, 3, 5], [2, 4, 6], 3, budget=1,
                                shapes=[StructureKind.ONE_SUBDIVIDED_STAR])
    assert find_attached_structure(G, [0, 1, 3, 5], [2, 4, 6], 3, shapes=[StructureKind.STAR]) is None


def test_structure_checker_rejects_wrong_shapes():
    G = line_of_subdivided_star(3)
    bogus = AttachedStructure(StructureKind.STAR, 0, ((3, 0), (4, 0), (5, 0)))
    assert structure_problems(G, bogus)
    fine = AttachedStructure(StructureKind.LINE_GRAPH_OF_ONE_SUBDIVIDED_STAR, None, ((3, 0), (4, 1), (5, 2)))
    assert not structure_problems(G, fine)
