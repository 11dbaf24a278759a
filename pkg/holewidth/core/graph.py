"""Immutable simple graphs stored as integer bitset rows."""

import enum
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import InvalidVertexError

VertexSet = Tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the dense vertex indices 0..n-1.

    rows[v] is a bitset of the neighbours of v. names maps each index to an
    external label; induced subgraphs carry their parent's names through.
    """

    n: int
    rows: Tuple[int, ...]
    names: Tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.rows) != self.n or len(self.names) != self.n:
            raise InvalidVertexError("rows and names must have one entry per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full or row >> v & 1:
                raise InvalidVertexError(f"row {v} has out-of-range or loop bits", (v,))
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise InvalidVertexError(f"adjacency is not symmetric at {u},{v}", (u, v))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        names: Optional[Sequence[Hashable]] = None,
    ) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) out of range for n={n}", (u, v))
            if u == v:
                raise InvalidVertexError(f"loop at vertex {u}", (u,))
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(names) if names is not None else tuple(range(n)))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph; node order follows sorted node labels when sortable."""
        try:
            nodes = sorted(graph.nodes())
        except TypeError:
            nodes = list(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in graph.edges() if u != v]
        return cls.from_edges(len(nodes), edges, names=nodes)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, v: int) -> int:
        return self.rows[v]

    def neighbour_list(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def vertex_name(self, v: int) -> Hashable:
        return self.names[v]

    def index_of(self, name: Hashable) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidVertexError(f"no vertex named {name!r}") from None

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_clique(self, vertices: Iterable[int]) -> bool:
        members = list(vertices)
        mask = to_mask(members)
        return all((self.rows[v] | 1 << v) & mask == mask for v in members)


def vertex_set(g: Graph, vertices: Iterable[int]) -> VertexSet:
    """Normalise vertices to a sorted duplicate-free tuple valid for g."""
    members = tuple(sorted(set(vertices)))
    if members and (members[0] < 0 or members[-1] >= g.n):
        bad = [v for v in members if not 0 <= v < g.n]
        raise InvalidVertexError(f"vertices {bad} out of range for n={g.n}", bad)
    return members


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """The subgraph of g induced on s; names keep the parent's labels."""
    members = vertex_set(g, s)
    position = {v: i for i, v in enumerate(members)}
    rows = []
    for v in members:
        row = 0
        for u in iter_bits(g.rows[v] & to_mask(members)):
            row |= 1 << position[u]
        rows.append(row)
    return Graph(len(members), tuple(rows), tuple(g.names[v] for v in members))


def complement(g: Graph) -> Graph:
    full = g.full_mask()
    rows = tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows))
    return Graph(g.n, rows, g.names)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """g followed by h; h's vertices are shifted by g.n and names become (side, name)."""
    rows = list(g.rows) + [row << g.n for row in h.rows]
    names = tuple(("g", name) for name in g.names) + tuple(("h", name) for name in h.names)
    return Graph(g.n + h.n, tuple(rows), names)


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def empty_graph(k: int) -> Graph:
    return Graph.from_edges(k, [])


class RelationKind(enum.Enum):
    JOIN = "join"
    COJOIN = "cojoin"
    SPARSE = "at-most-k-neighbours"
    DENSE = "at-most-k-non-neighbours"
    MIXED = "mixed"


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    k: int = 0

    def __str__(self) -> str:
        if self.kind in (RelationKind.SPARSE, RelationKind.DENSE):
            return f"{self.kind.value}({self.k})"
        return self.kind.value


@dataclass(frozen=True)
class RelationReport:
    """How a relates to b (forward) and how b relates to a (backward)."""

    forward: Relation
    backward: Relation

    @property
    def is_homogeneous(self) -> bool:
        return self.forward.kind in (RelationKind.JOIN, RelationKind.COJOIN)


def _directed_relation(g: Graph, a: Sequence[int], b_mask: int) -> Relation:
    size = b_mask.bit_count()
    if not a or not size:
        return Relation(RelationKind.COJOIN)
    most_adjacent = max((g.rows[x] & b_mask).bit_count() for x in a)
    most_missing = max(size - (g.rows[x] & b_mask).bit_count() for x in a)
    if most_adjacent == 0:
        return Relation(RelationKind.COJOIN)
    if most_missing == 0:
        return Relation(RelationKind.JOIN)
    if size > 1 and most_adjacent == size and most_missing == size:
        return Relation(RelationKind.MIXED)
    if most_adjacent <= most_missing:
        return Relation(RelationKind.SPARSE, most_adjacent)
    return Relation(RelationKind.DENSE, most_missing)


def relation_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> RelationReport:
    """Classify the edges between two disjoint vertex sets in both directions."""
    a_set = vertex_set(g, a)
    b_set = vertex_set(g, b)
    overlap = set(a_set) & set(b_set)
    if overlap:
        raise InvalidVertexError(f"sets overlap on {sorted(overlap)}", sorted(overlap))
    return RelationReport(
        forward=_directed_relation(g, a_set, to_mask(b_set)),
        backward=_directed_relation(g, b_set, to_mask(a_set)),
    )
