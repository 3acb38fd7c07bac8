import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from test_graph import graphs
from tinsep.canonical import (
    canonical_code,
    canonical_form,
    enumerate_by_size,
    enumerate_graphs,
    is_isomorphic,
)
from tinsep.generators import (
    GeneratorSpec,
    comb,
    complete,
    cycle,
    is_free,
    largest_component,
    line_graph,
    line_of_subdivided_star,
    named,
    one_subdivision,
    path,
    planted_apex_paths,
    planted_pyramid,
    planted_separator_pyramid,
    sample_free,
    star,
    subdivided_star,
    t_pyramid,
)
from tinsep.graph import Graph
from tinsep.patterns import is_pyramid_presentation
from tinsep.pyramids import pyramid_through_separator


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def test_named_constructions():
    P = t_pyramid(3)
    assert (P.n, P.num_edges()) == (7, 9)
    assert (t_pyramid(4).n, t_pyramid(4).num_edges()) == (9, 14)
    assert one_subdivision(star(3)).n == 7
    assert is_isomorphic(one_subdivision(star(3)), subdivided_star(3))
    assert is_isomorphic(line_graph(one_subdivision(star(3))), line_of_subdivided_star(3))
    assert is_isomorphic(line_graph(cycle(5)), cycle(5))
    assert max(len(comb(6).neighbors(v)) for v in range(12)) == 3
    assert named("one_subdivision", of="star", k=3) == one_subdivision(star(3))
    assert named("cycle", n=5) == cycle(5)
    with pytest.raises(ValueError):
        named("nonsense")
    with pytest.raises(ValueError):
        cycle(2)


@pytest.mark.parametrize("t", [2, 3, 4])
@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.9, 1.0])
def test_sample_free_outputs_are_free(t, p):
    for seed in range(5):
        G = sample_free(20, t, p, seed)
        assert is_free(G, t)
    assert sample_free(1, t, p, 0).n == 1


def test_sample_free_is_deterministic_and_validates():
    assert sample_free(25, 2, 0.5, 7) == sample_free(25, 2, 0.5, 7)
    for bad in ((0, 2, 0.5), (5, 1, 0.5), (5, 2, 1.5)):
        with pytest.raises(ValueError):
            sample_free(*bad, 0)


def test_freeness_oracle_examples():
    assert not is_free(path(6), 2) and is_free(path(5), 2)
    assert not is_free(cycle(4), 2) and is_free(cycle(4), 3)
    assert not is_free(cycle(8), 5)
    assert is_free(t_pyramid(3), 2)


def test_enumeration_counts_match_atlas():
    # networkx's atlas lists every graph on at most 7 vertices up to isomorphism
    atlas = {}
    for H in nx.graph_atlas_g():
        atlas[H.number_of_nodes()] = atlas.get(H.number_of_nodes(), 0) + 1
    for n, found in enumerate_by_size(7):
        assert len(found) == atlas[n]


def test_enumeration_is_canonical_and_distinct():
    graphs5 = list(enumerate_graphs(5))
    codes = {canonical_code(G) for G in graphs5}
    assert len(codes) == len(graphs5) == 34
    for G in graphs5:
        assert canonical_form(G) == G
    assert list(enumerate_graphs(0)) == [Graph(0, ())]


def test_free_class_counts():
    # each class is cross-checked against filtering the full atlas
    free_atlas = {}
    for H in nx.graph_atlas_g():
        if H.number_of_nodes() == 0:
            continue
        G = Graph.from_edges(H.number_of_nodes(), H.edges())
        if is_free(G, 2):
            free_atlas[G.n] = free_atlas.get(G.n, 0) + 1
    counts = {n: len(gs) for n, gs in enumerate_by_size(7, lambda G: is_free(G, 2))}
    assert counts == free_atlas
    assert [counts[n] for n in range(1, 8)] == [1, 2, 4, 10, 28, 99, 419]


@settings(max_examples=100, deadline=None)
@given(graphs(9), st.randoms(use_true_random=False))
def test_canonical_form_is_relabelling_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = Graph.from_edges(G.n, ((perm[u], perm[v]) for u, v in G.edges()))
    assert canonical_form(G) == canonical_form(H)
    assert is_isomorphic(G, H)


@settings(max_examples=100, deadline=None)
@given(graphs(7), graphs(7))
def test_isomorphism_agrees_with_networkx(G, H):
    assert is_isomorphic(G, H) == nx.is_isomorphic(to_nx(G), to_nx(H))


@pytest.mark.parametrize("t", [2, 3])
def test_planted_generators(t):
    for seed in range(5):
        pp = planted_apex_paths(t, extra=10, seed=seed)
        assert is_free(pp.graph, t)
        assert len(pp.legs) == 3 * (t - 1) + 1 and not pp.graph.has_edge(pp.a, pp.b)
        G, P = planted_pyramid(t, extra=10, seed=seed)
        assert is_free(G, t) and is_pyramid_presentation(G, P)


def test_planted_separator_yields_pyramid():
    ps = planted_separator_pyramid(3)
    P = pyramid_through_separator(ps.graph, ps.S, ps.C1, ps.C2, 3)
    assert P is not None and is_pyramid_presentation(ps.graph, P)


def test_largest_component():
    G = Graph.from_edges(6, [(0, 1), (2, 3), (3, 4)])
    assert largest_component(G).n == 3


def test_generator_specs():
    spec = GeneratorSpec.from_json(json.dumps({"kind": "free", "params": {"n": 12, "t": 2, "p": 0.5, "count": 3}}))
    out = list(spec.graphs())
    assert len(out) == 3 and all(is_free(G, 2) for G in out)
    assert GeneratorSpec.from_json(spec.to_json()) == spec
    assert list(GeneratorSpec("named", {"construction": "complete", "n": 4}).graphs()) == [complete(4)]
    assert len(list(GeneratorSpec("enumerate", {"n": 4, "t": 2}).graphs())) == 10
    assert len(list(GeneratorSpec("gnp", {"n": 5, "p": 0.5, "count": 2}).graphs())) == 2
    assert is_free(next(GeneratorSpec("planted", {"t": 2, "extra": 4}).graphs()), 2)
    with pytest.raises(ValueError):
        list(GeneratorSpec("bogus").graphs())
