import networkx as nx
import pytest

from holewidth.core.graph import (
    Graph,
    RelationKind,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    induced_subgraph,
    iter_bits,
    relation_between,
    to_mask,
)
from holewidth.errors import InvalidVertexError


def test_from_edges_builds_symmetric_rows():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.adjacent(1, 0) and g.adjacent(0, 1)
    assert not g.adjacent(0, 2)
    assert g.degree(1) == 2
    assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]
    assert g.edge_count() == 3


def test_from_edges_rejects_loops_and_out_of_range():
    with pytest.raises(InvalidVertexError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(InvalidVertexError):
        Graph.from_edges(3, [(0, 3)])


def test_asymmetric_rows_are_rejected():
    with pytest.raises(InvalidVertexError):
        Graph(2, (0b10, 0b00), (0, 1))


def test_bit_helpers():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert to_mask([0, 3, 5]) == 0b101001


def test_induced_subgraph_keeps_names():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], names=["a", "b", "c", "d"])
    h = induced_subgraph(g, [3, 1, 2])
    assert h.n == 3
    assert h.names == ("b", "c", "d")
    assert list(h.edges()) == [(0, 1), (1, 2)]


def test_induced_subgraph_out_of_range():
    with pytest.raises(InvalidVertexError):
        induced_subgraph(cycle_graph(4), [0, 9])


def test_complement_of_c5_is_c5():
    assert nx.is_isomorphic(complement(cycle_graph(5)).to_networkx(), nx.cycle_graph(5))


def test_complement_of_complete_is_empty():
    assert complement(complete_graph(4)).edge_count() == 0
    assert complement(empty_graph(4)).edge_count() == 6


def test_disjoint_union_shifts_second_graph():
    g = disjoint_union(complete_graph(2), complete_graph(3))
    assert g.n == 5
    assert g.edge_count() == 4
    assert not g.adjacent(1, 2)
    assert g.vertex_name(2) == ("h", 0)


def test_networkx_round_trip():
    g = cycle_graph(6)
    back = Graph.from_networkx(g.to_networkx())
    assert sorted(back.edges()) == sorted(g.edges())


def test_index_of_and_missing_name():
    g = Graph.from_edges(2, [(0, 1)], names=["x", "y"])
    assert g.index_of("y") == 1
    with pytest.raises(InvalidVertexError):
        g.index_of("z")


def test_is_clique():
    g = complete_graph(4)
    assert g.is_clique([0, 1, 3])
    assert not cycle_graph(4).is_clique([0, 2])


def test_relation_join_and_cojoin():
    g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    report = relation_between(g, [0, 1], [2, 3])
    assert report.forward.kind is RelationKind.JOIN
    assert report.is_homogeneous
    assert relation_between(empty_graph(4), [0, 1], [2, 3]).forward.kind is RelationKind.COJOIN


def test_relation_matching_is_sparse_one():
    g = Graph.from_edges(6, [(0, 3), (1, 4)])
    report = relation_between(g, [0, 1, 2], [3, 4, 5])
    assert report.forward.kind is RelationKind.SPARSE
    assert report.forward.k == 1
    assert report.backward.kind is RelationKind.SPARSE


def test_relation_co_matching_is_dense_one():
    g = Graph.from_edges(6, [(u, v) for u in range(3) for v in range(3, 6) if v != u + 3])
    report = relation_between(g, [0, 1, 2], [3, 4, 5])
    assert report.forward.kind is RelationKind.DENSE
    assert report.forward.k == 1


def test_relation_mixed_when_both_extremes_occur():
    # 0 sees all of {2, 3}, 1 sees none of them.
    g = Graph.from_edges(4, [(0, 2), (0, 3)])
    report = relation_between(g, [0, 1], [2, 3])
    assert report.forward.kind is RelationKind.MIXED
    assert not report.is_homogeneous


def test_relation_rejects_overlap():
    with pytest.raises(InvalidVertexError):
        relation_between(cycle_graph(4), [0, 1], [1, 2])
