"""Induced pattern search: forbidden subgraphs, holes and class membership."""

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from ..errors import NotAHoleError, NotInClassError
from .graph import Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)

Hole = Tuple[int, ...]


class PatternKind(enum.Enum):
    CLAW = "claw"
    FOUR_K1 = "4K1"
    BRIDGE = "bridge"
    C4_TWIN = "C4-twin"
    P5_TWIN = "P5-twin"
    C5_TWIN = "C5-twin"
    CO_R = "co-R"
    CO_A = "co-A"
    FIVE_WHEEL = "5-wheel"
    K5_MINUS_E = "K5-e"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Pattern:
    """A small template graph on vertices 0..order-1."""

    kind: PatternKind
    order: int
    edges: FrozenSet[Tuple[int, int]]
    rows: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = [0] * self.order
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def name(self) -> str:
        if self.kind is PatternKind.CYCLE:
            return f"C{self.order}"
        return self.kind.value

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.order, sorted(self.edges))


def _pattern(kind: PatternKind, order: int, edges) -> Pattern:
    return Pattern(kind, order, frozenset((min(u, v), max(u, v)) for u, v in edges))


def cycle(k: int) -> Pattern:
    if k < 3:
        raise ValueError("a cycle needs at least three vertices")
    return _pattern(PatternKind.CYCLE, k, [(i, (i + 1) % k) for i in range(k)])


CLAW = _pattern(PatternKind.CLAW, 4, [(0, 1), (0, 2), (0, 3)])
FOUR_K1 = _pattern(PatternKind.FOUR_K1, 4, [])
# Two hubs 0,1 complete to the disjoint edges 2-3 and 4-5.
BRIDGE = _pattern(
    PatternKind.BRIDGE,
    6,
    [(0, 1), (2, 3), (4, 5)] + [(hub, leaf) for hub in (0, 1) for leaf in (2, 3, 4, 5)],
)
# The 4-cycle 0-1-2-3 with 4 a true twin of 0.
C4_TWIN = _pattern(PatternKind.C4_TWIN, 5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 3)])
K5_MINUS_E = _pattern(
    PatternKind.K5_MINUS_E, 5, [(u, v) for u in range(5) for v in range(u + 1, 5) if (u, v) != (0, 1)]
)
FIVE_WHEEL = _pattern(PatternKind.FIVE_WHEEL, 6, [(i, (i + 1) % 5) for i in range(5)] + [(5, i) for i in range(5)])
C5_TWIN = _pattern(PatternKind.C5_TWIN, 6, [(i, (i + 1) % 5) for i in range(5)] + [(5, 0), (5, 1), (5, 4)])
P5_TWIN = _pattern(PatternKind.P5_TWIN, 6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 1), (5, 2), (5, 3)])
CO_R = _pattern(
    PatternKind.CO_R, 6, [(u, v) for u in range(4) for v in range(u + 1, 4)] + [(4, 0), (4, 1), (5, 2), (5, 3)]
)
_A_EDGES = {(0, 1), (0, 3), (1, 3), (1, 2), (3, 4), (2, 5)}
CO_A = _pattern(
    PatternKind.CO_A, 6, [(u, v) for u in range(6) for v in range(u + 1, 6) if (u, v) not in _A_EDGES]
)

CLASS_PATTERNS: Tuple[Pattern, ...] = (CLAW, FOUR_K1, BRIDGE, C4_TWIN)
LINE_GRAPH_PATTERNS: Tuple[Pattern, ...] = (
    CLAW, BRIDGE, C4_TWIN, P5_TWIN, C5_TWIN, CO_R, CO_A, FIVE_WHEEL, K5_MINUS_E,
)


@dataclass(frozen=True)
class Occurrence:
    """An induced embedding: vertices[i] plays template vertex i."""

    pattern: Pattern
    vertices: VertexSet

    def names(self, g: Graph) -> List:
        return [g.vertex_name(v) for v in self.vertices]

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        return {
            "pattern": self.pattern.name,
            "vertices": list(self.vertices),
            "names": [str(name) for name in self.names(g)] if g is not None else None,
        }


def find_induced(g: Graph, p: Pattern) -> Optional[Occurrence]:
    """Lexicographically smallest induced embedding of p in g, or None.

    Candidates for template vertex i are intersected from the bitset rows of
    the vertices already placed, after a degree prefilter in g and its complement.
    """
    if p.order > g.n:
        return None
    full = g.full_mask()
    viable = []
    for t in range(p.order):
        need_adjacent = p.degree(t)
        need_missing = p.order - 1 - need_adjacent
        mask = 0
        for v in range(g.n):
            degree = g.degree(v)
            if degree >= need_adjacent and g.n - 1 - degree >= need_missing:
                mask |= 1 << v
        viable.append(mask)

    # Template twins are interchangeable, so the smallest embedding lists them in increasing order.
    twins_before = [
        [j for j in range(t) if p.rows[t] & ~(1 << j) == p.rows[j] & ~(1 << t)] for t in range(p.order)
    ]
    chosen: List[int] = []

    def extend(position: int, used: int) -> bool:
        if position == p.order:
            return True
        candidates = viable[position] & ~used
        if twins_before[position]:
            floor = max(chosen[j] for j in twins_before[position])
            candidates &= ~((1 << (floor + 1)) - 1)
        for j, v in enumerate(chosen):
            if p.rows[position] >> j & 1:
                candidates &= g.rows[v]
            else:
                candidates &= full & ~g.rows[v]
            if not candidates:
                return False
        for v in iter_bits(candidates):
            chosen.append(v)
            if extend(position + 1, used | 1 << v):
                return True
            chosen.pop()
        return False

    if extend(0, 0):
        return Occurrence(p, tuple(chosen))
    return None


def _holes_from(g: Graph, v0: int, k: int) -> Iterator[Hole]:
    above = g.full_mask() & ~((1 << (v0 + 1)) - 1)
    path = [v0]

    def extend(blocked: int) -> Iterator[Hole]:
        j = len(path)
        last = path[-1]
        candidates = g.rows[last] & above & ~blocked
        if j == 1:
            pass
        elif j < k - 1:
            candidates &= ~g.rows[v0]
        else:
            candidates &= g.rows[v0] & ~((1 << (path[1] + 1)) - 1)
        for v in iter_bits(candidates):
            if j == k - 1:
                yield tuple(path) + (v,)
                continue
            path.append(v)
            # last becomes interior: nothing further may touch it
            yield from extend(blocked | g.rows[last] | 1 << last if j > 1 else blocked | 1 << last)
            path.pop()

    yield from extend(0)


def find_all_holes(g: Graph, k: int) -> Iterator[Hole]:
    """Every induced k-cycle once, as (v0, v1, ..., v_{k-1}) with v0 minimal and v1 < v_{k-1}."""
    if k < 4:
        raise ValueError("holes have at least four vertices")
    for v0 in range(g.n):
        yield from _holes_from(g, v0, k)


def find_hole(g: Graph, k: int) -> Optional[Hole]:
    """The lexicographically first induced k-cycle of g in canonical orientation."""
    for hole in find_all_holes(g, k):
        logger.debug("found C%d %s", k, hole)
        return hole
    return None


def check_hole(g: Graph, hole: Hole) -> None:
    """Raise NotAHoleError unless hole is an induced cycle of g in the given order."""
    k = len(hole)
    if k < 4:
        raise NotAHoleError(hole, "fewer than four vertices")
    if len(set(hole)) != k:
        raise NotAHoleError(hole, "repeated vertex")
    if any(not 0 <= v < g.n for v in hole):
        raise NotAHoleError(hole, "vertex out of range")
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.adjacent(hole[i], hole[j]) != consecutive:
                what = "missing edge" if consecutive else "chord"
                raise NotAHoleError(hole, f"{what} between positions {i} and {j}")


@dataclass(frozen=True)
class MembershipReport:
    occurrences: Tuple[Tuple[Pattern, Optional[Occurrence]], ...]

    @property
    def member(self) -> bool:
        return all(occurrence is None for _, occurrence in self.occurrences)

    def first_witness(self) -> Optional[Occurrence]:
        for _, occurrence in self.occurrences:
            if occurrence is not None:
                return occurrence
        return None

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        return {
            "member": self.member,
            "patterns": {
                pattern.name: occurrence.to_dict(g) if occurrence else None
                for pattern, occurrence in self.occurrences
            },
        }


def is_class_member(g: Graph) -> MembershipReport:
    """Check g for each of claw, 4K1, bridge and C4-twin."""
    return MembershipReport(tuple((p, find_induced(g, p)) for p in CLASS_PATTERNS))


@dataclass(frozen=True)
class PerfectnessReport:
    perfect: bool
    c5_witness: Optional[Hole]
    c7_witness: Optional[Hole]

    def to_dict(self) -> Dict:
        return {
            "perfect": self.perfect,
            "c5_witness": list(self.c5_witness) if self.c5_witness else None,
            "c7_witness": list(self.c7_witness) if self.c7_witness else None,
        }


def is_perfect_in_class(g: Graph) -> PerfectnessReport:
    """Decide perfection for a class member: it is perfect iff it has no C5 and no C7.

    Longer odd holes contain a 4K1 and odd antiholes on seven or more vertices
    contain a C4-twin, so neither can occur in a member.
    """
    witness = is_class_member(g).first_witness()
    if witness is not None:
        raise NotInClassError(witness)
    c5 = find_hole(g, 5)
    c7 = find_hole(g, 7)
    return PerfectnessReport(c5 is None and c7 is None, c5, c7)
