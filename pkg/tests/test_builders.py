import itertools

import numpy as np
import pytest

from holewidth.core.graph import Graph, complete_graph, cycle_graph
from holewidth.errors import ExpressionError, PreconditionError
from holewidth.expressions.builders import (
    COJOIN,
    DENSE,
    JOIN,
    SPARSE,
    attach_extra_vertices,
    clique_expression,
    infer_rows_spec,
    interleaved_order,
    label_clique_partition,
    label_interleaved,
    label_via_nonpairs,
    label_via_pairs,
    label_via_partner_walk,
    label_via_rows,
    run_partner_walk,
)
from holewidth.expressions.cwd import Create, Union, Label, evaluate, is_linear, width


def _cliques(sizes):
    out, start = [], 0
    for size in sizes:
        out.append(tuple(range(start, start + size)))
        start += size
    return out, start


def _clique_edges(cliques):
    return [e for c in cliques for e in itertools.combinations(c, 2)]


def _matching(rng, a, b):
    left = [a[i] for i in rng.permutation(len(a))]
    right = [b[i] for i in rng.permutation(len(b))]
    size = int(rng.integers(0, min(len(a), len(b)) + 1))
    return set(zip(left[:size], right[:size]))


def _two_cliques(rng, dense: bool):
    cliques, n = _cliques([int(rng.integers(1, 6)), int(rng.integers(1, 6))])
    pairs = _matching(rng, *cliques)
    cross = [(u, v) for u in cliques[0] for v in cliques[1] if ((u, v) in pairs) != dense]
    return cliques, Graph.from_edges(n, _clique_edges(cliques) + cross)


def _rows_instance(rng, t):
    cliques, n = _cliques([int(rng.integers(1, 5)) for _ in range(t)])
    edges = _clique_edges(cliques)
    modes = []
    for i in range(t):
        a, b = cliques[i], cliques[(i + 1) % t]
        mode = SPARSE if rng.random() < 0.5 else DENSE
        modes.append(mode)
        pairs = _matching(rng, a, b)
        edges += [(u, v) for u in a for v in b if ((u, v) in pairs) == (mode == SPARSE)]
    relations = {}
    for i, k in itertools.combinations(range(t), 2):
        if k == i + 1 or (i == 0 and k == t - 1):
            continue
        relations[(i, k)] = JOIN if rng.random() < 0.5 else COJOIN
        if relations[(i, k)] == JOIN:
            edges += [(u, v) for u in cliques[i] for v in cliques[k]]
    return cliques, modes, relations, Graph.from_edges(n, edges)


def _partition_instance(rng, k):
    cliques, n = _cliques([int(rng.integers(1, 5)) for _ in range(k)])
    edges = _clique_edges(cliques)
    unused = [list(c) for c in cliques]
    for _ in range(int(rng.integers(0, 2 * k + 1))):
        chosen = [i for i in range(k) if unused[i] and rng.random() < 0.6]
        picked = [unused[i].pop(int(rng.integers(len(unused[i])))) for i in chosen]
        edges += list(itertools.combinations(picked, 2))
    return cliques, Graph.from_edges(n, edges)


def _sweep_two(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        cliques, g = _two_cliques(rng, dense=False)
        e = label_via_pairs(cliques[0], cliques[1], g)
        assert evaluate(e).realizes(g)
        assert width(e) <= 4
        cliques, g = _two_cliques(rng, dense=True)
        e = label_via_nonpairs(cliques[0], cliques[1], g)
        assert evaluate(e).realizes(g)
        assert width(e) <= 4


def _sweep_rows(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        for t in range(3, 7):
            cliques, modes, relations, g = _rows_instance(rng, t)
            e = label_via_rows(cliques, g, modes, relations)
            assert evaluate(e).realizes(g)
            assert width(e) <= 2 * t + 1


def _sweep_partition(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        for k in range(2, 7):
            cliques, g = _partition_instance(rng, k)
            e = label_clique_partition(cliques, g)
            assert evaluate(e).realizes(g)
            assert width(e) <= 2 * k


def test_pairs_and_nonpairs_width_four():
    _sweep_two(200, 1)


def test_rows_width_bound():
    _sweep_rows(60, 2)


def test_clique_partition_width_bound():
    _sweep_partition(60, 3)


@pytest.mark.slow
def test_builder_bounds_full():
    _sweep_two(1000, 101)
    _sweep_rows(1000, 102)
    _sweep_partition(1000, 103)


def test_clique_expression_uses_two_labels():
    e = clique_expression("k", (0, 1, 2, 3), complete_graph(4))
    assert evaluate(e).realizes(complete_graph(4))
    assert width(e) == 2
    assert is_linear(e)


def test_partner_walk_on_any_clique_partition():
    g = cycle_graph(5)
    e = label_via_partner_walk([(0, 1), (2, 3), (4,)], g, ["a", "b", "c"])
    assert evaluate(e).realizes(g)
    assert is_linear(e)


def test_walk_rejects_overlap_and_non_clique():
    g = cycle_graph(5)
    with pytest.raises(PreconditionError):
        run_partner_walk(g, [("a", (0, 1)), ("b", (1, 2))])
    with pytest.raises(PreconditionError):
        run_partner_walk(g, [("a", (0, 2))])


def test_pairs_precondition():
    g = complete_graph(4)
    with pytest.raises(PreconditionError) as info:
        label_via_pairs((0, 1), (2, 3), g)
    assert info.value.builder == "label_via_pairs"


def test_rows_needs_three_cliques():
    with pytest.raises(PreconditionError):
        label_via_rows([(0,), (1,)], complete_graph(2))


def test_infer_rows_spec_reads_modes():
    # Three singletons in a triangle: every consecutive pair is an edge.
    modes, relations = infer_rows_spec([(0,), (1,), (2,)], complete_graph(3))
    assert modes == [SPARSE, SPARSE, SPARSE]
    assert relations == {}


def test_clique_partition_rejects_two_neighbours():
    g = Graph.from_edges(3, [(1, 2), (0, 1), (0, 2)])
    with pytest.raises(PreconditionError):
        label_clique_partition([(0,), (1, 2)], g)


def _interleaved_graph():
    t_set, y_set, y_next = (0, 1), (2, 3, 4), (5, 6)
    edges = _clique_edges([t_set, y_set, y_next])
    edges += [(t, y) for t in t_set for y in y_next]
    missing_t = {(0, 2), (0, 3), (1, 4)}
    edges += [(t, y) for t in t_set for y in y_set if (t, y) not in missing_t]
    missing_y = {(2, 5), (3, 6)}
    edges += [(y, z) for y in y_set for z in y_next if (y, z) not in missing_y]
    return t_set, y_set, y_next, Graph.from_edges(7, edges)


def test_interleaved_order_follows_missing_vertices():
    t_set, y_set, y_next, g = _interleaved_graph()
    assert interleaved_order(t_set, y_set, y_next, g) == [0, 2, 5, 3, 6, 1, 4]


def test_interleaved_realizes_graph():
    t_set, y_set, y_next, g = _interleaved_graph()
    e = label_interleaved(t_set, y_set, y_next, g)
    assert evaluate(e).realizes(g)


def test_interleaved_needs_t_join_y_next():
    t_set, y_set, y_next, g = _interleaved_graph()
    with pytest.raises(PreconditionError):
        label_interleaved(t_set, y_next, y_set, g)


def test_attach_extra_vertices_to_linear_expression(c5):
    e = clique_expression("a", (0, 1), c5)
    full = attach_extra_vertices(e, c5, [2, 3, 4])
    assert evaluate(full).realizes(c5)
    assert width(full) <= width(e) + 3 + 1


def test_attach_to_empty_expression(c5):
    full = attach_extra_vertices(None, c5, [0, 1, 2, 3, 4])
    assert evaluate(full).realizes(c5)
    assert width(full) == 5


def test_attach_needs_linear_expression():
    one, two = Label.integer(1), Label.integer(2)
    bushy = Union(Union(Create(one, 0), Create(one, 1)), Union(Create(two, 2), Create(two, 3)))
    with pytest.raises(ExpressionError):
        attach_extra_vertices(bushy, complete_graph(5), [4])
