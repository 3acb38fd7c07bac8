import networkx as nx
import pytest
from hypothesis import given, settings

from test_graph import graphs
from tinsep.formats import FormatError, from_edgelist, from_graph6, read_graph6_lines, to_edgelist, to_graph6
from tinsep.generators import complete, cycle, path
from tinsep.graph import Graph


def test_known_graph6_strings():
    # reference strings taken from networkx.to_graph6_bytes
    assert to_graph6(Graph(0, ())) == "?"
    assert to_graph6(complete(4)) == "C~"
    assert to_graph6(path(4)) == "Ch"
    assert to_graph6(cycle(5)) == "Dhc"
    assert to_graph6(complete(2), header=True) == ">>graph6<<A_"


@settings(max_examples=200, deadline=None)
@given(graphs(14))
def test_graph6_round_trip_and_networkx_agreement(G):
    s = to_graph6(G)
    assert from_graph6(s) == G
    H = nx.from_graph6_bytes(s.encode())
    assert sorted(tuple(sorted(e)) for e in H.edges()) == sorted(G.edges())
    assert nx.to_graph6_bytes(H, header=False).decode().strip() == s


def test_large_size_field():
    G = path(70)
    s = to_graph6(G)
    assert s[0] == "~"
    assert from_graph6(s) == G
    assert nx.to_graph6_bytes(nx.path_graph(70), header=False).decode().strip() == s


def test_graph6_errors():
    with pytest.raises(FormatError):
        from_graph6("")
    with pytest.raises(FormatError):
        from_graph6("C")
    with pytest.raises(FormatError):
        from_graph6("A`")  # padding bits set
    with pytest.raises(FormatError) as e:
        list(read_graph6_lines(["C~", "# comment", "", "D"]))
    assert e.value.line == 4


def test_edgelist_round_trip_and_errors():
    G = cycle(5)
    assert from_edgelist(to_edgelist(G)) == G
    assert from_edgelist("# header\n0 1\n\n1 2 # trailing\n", n=4).n == 4
    with pytest.raises(FormatError) as e:
        from_edgelist("0 1\n1 x\n")
    assert e.value.line == 2
    with pytest.raises(FormatError):
        from_edgelist("0 0\n")
    with pytest.raises(FormatError):
        from_edgelist("0 5\n", n=3)
