"""Partition the vertices off a 5-, 6- or 7-hole by their neighbourhood on it."""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from ..config import DEFAULT_THRESHOLD, HOLE_TEMPLATES, SUPPORTED_HOLES, UNINDEXED_C5
from ..core.graph import Graph, induced_subgraph, vertex_set
from ..core.patterns import (
    BRIDGE,
    C4_TWIN,
    CLAW,
    FOUR_K1,
    Hole,
    Occurrence,
    check_hole,
    find_induced,
)
from ..errors import NotAHoleError, UnclassifiableVertexError

logger = logging.getLogger(__name__)

FAMILY_ORDER = ("H", "T", "X", "Y", "Z", "R")


@dataclass(frozen=True)
class SetId:
    """A named set such as X_3; index is 0-based and None for unindexed sets."""

    family: str
    index: Optional[int] = None

    @property
    def name(self) -> str:
        return self.family if self.index is None else f"{self.family}{self.index + 1}"

    def sort_key(self) -> Tuple[int, int]:
        return (FAMILY_ORDER.index(self.family), -1 if self.index is None else self.index)

    def __str__(self) -> str:
        return self.name


HOLE_SET = SetId("H")


def trace_table(k: int) -> Dict[FrozenSet[int], SetId]:
    """Map each template trace on a k-hole to its set; the first index wins on repeats."""
    if k not in SUPPORTED_HOLES:
        raise ValueError(f"no templates for holes of length {k}")
    table: Dict[FrozenSet[int], SetId] = {}
    for family, offsets in HOLE_TEMPLATES[k].items():
        if k == 5 and family in UNINDEXED_C5:
            continue
        for i in range(k):
            table.setdefault(frozenset((i + o) % k for o in offsets), SetId(family, i))
    if k == 5:
        for family, positions in UNINDEXED_C5.items():
            table[frozenset(positions)] = SetId(family)
    return table


@dataclass
class Decomposition:
    """Classification of every vertex of g relative to a hole.

    assignment holds retained sets only; removed holds vertices of small sets
    with the set they came from; detached holds a big R of a 5-hole, which is
    anticomplete to everything else and is put back as its own clique.
    """

    hole: Hole
    assignment: Dict[int, SetId]
    removed: Dict[int, SetId]
    threshold: int
    detached: Tuple[int, ...] = ()
    raw_sizes: Dict[SetId, int] = field(default_factory=dict)

    @property
    def hole_length(self) -> int:
        return len(self.hole)

    def sets(self) -> Dict[SetId, Tuple[int, ...]]:
        grouped: Dict[SetId, List[int]] = {}
        for v in sorted(self.assignment):
            grouped.setdefault(self.assignment[v], []).append(v)
        return {set_id: tuple(grouped[set_id]) for set_id in sorted(grouped, key=SetId.sort_key)}

    def members(self, set_id: SetId) -> Tuple[int, ...]:
        return tuple(v for v in sorted(self.assignment) if self.assignment[v] == set_id)

    def set_names(self) -> List[str]:
        return [set_id.name for set_id in self.sets()]

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        def named(vertices):
            return [str(g.vertex_name(v)) if g is not None else v for v in vertices]

        removed: Dict[str, List[int]] = {}
        for v in sorted(self.removed):
            removed.setdefault(self.removed[v].name, []).append(v)
        return {
            "hole": named(self.hole),
            "hole_length": self.hole_length,
            "threshold": self.threshold,
            "sets": {set_id.name: named(members) for set_id, members in self.sets().items()},
            "removed": {name: named(members) for name, members in removed.items()},
            "detached": named(self.detached),
        }


def locate_witness(g: Graph, vertices) -> Optional[Occurrence]:
    """A 4K1, claw, bridge or C4-twin inside g[vertices], in g's indices."""
    members = vertex_set(g, vertices)
    sub = induced_subgraph(g, members)
    for pattern in (FOUR_K1, CLAW, BRIDGE, C4_TWIN):
        found = find_induced(sub, pattern)
        if found is not None:
            return Occurrence(pattern, tuple(members[i] for i in found.vertices))
    return None


def hole_trace(g: Graph, hole: Hole, v: int) -> FrozenSet[int]:
    return frozenset(i for i, h in enumerate(hole) if g.adjacent(v, h))


def classify(
    g: Graph,
    hole: Hole,
    threshold: int = DEFAULT_THRESHOLD,
    fixpoint: bool = False,
) -> Decomposition:
    """Assign every off-hole vertex to T_i, X_i, Y_i, Z_i, Z or R, then drop small sets.

    Args:
        g (Graph): A class member
        hole (Hole): Induced cycle of length 5, 6 or 7, in cyclic order
        threshold (int): Sets with fewer members are moved to the removed ledger
        fixpoint (bool): Repeat the reduction until no set is small

    Returns:
        Decomposition: The classification

    Raises:
        NotAHoleError: hole is not an induced 5-, 6- or 7-cycle
        UnclassifiableVertexError: A vertex matches no template; carries a witness
    """
    hole = tuple(hole)
    check_hole(g, hole)
    k = len(hole)
    if k not in SUPPORTED_HOLES:
        raise NotAHoleError(hole, f"length {k} is not 5, 6 or 7")
    table = trace_table(k)
    on_hole = set(hole)
    raw: Dict[int, SetId] = {}
    for v in range(g.n):
        if v in on_hole:
            continue
        trace = hole_trace(g, hole, v)
        set_id = table.get(trace)
        if set_id is None:
            witness = locate_witness(g, list(hole) + [v])
            raise UnclassifiableVertexError(v, tuple(sorted(trace)), witness)
        raw[v] = set_id
        logger.debug("vertex %s trace %s -> %s", v, sorted(trace), set_id.name)

    sizes = _sizes(raw)
    assignment = dict(raw)
    removed: Dict[int, SetId] = {}
    detached: Tuple[int, ...] = ()
    if k == 5:
        r_members = tuple(sorted(v for v, s in raw.items() if s.family == "R"))
        if len(r_members) >= threshold:
            detached = r_members
            for v in r_members:
                del assignment[v]
    while True:
        current = _sizes(assignment)
        small = {set_id for set_id, size in current.items() if size < threshold}
        if not small:
            break
        for v in [v for v, s in assignment.items() if s in small]:
            removed[v] = assignment.pop(v)
        if not fixpoint:
            break
    logger.info(
        "C%d decomposition: %d sets retained, %d vertices removed, %d detached",
        k, len(_sizes(assignment)), len(removed), len(detached),
    )
    return Decomposition(hole, assignment, removed, threshold, detached, sizes)


def _sizes(assignment: Mapping[int, SetId]) -> Dict[SetId, int]:
    sizes: Dict[SetId, int] = {}
    for set_id in assignment.values():
        sizes[set_id] = sizes.get(set_id, 0) + 1
    return sizes


@dataclass(frozen=True)
class ReductionReport:
    ledger_size: int
    ledger_bound: int
    within_bound: bool
    partition_ok: bool
    reassembles: bool

    @property
    def ok(self) -> bool:
        return self.within_bound and self.partition_ok and self.reassembles

    def to_dict(self) -> Dict:
        return {
            "ledger_size": self.ledger_size,
            "ledger_bound": self.ledger_bound,
            "within_bound": self.within_bound,
            "partition_ok": self.partition_ok,
            "reassembles": self.reassembles,
            "ok": self.ok,
        }


def reduction_consistency(g: Graph, d: Decomposition) -> ReductionReport:
    """Check the removed ledger against the size bound and the vertex partition.

    Each possible set can leave at most threshold - 1 vertices behind.
    """
    k = d.hole_length
    families = len({set_id.family for set_id in trace_table(k).values()})
    possible_sets = len(set(trace_table(k).values()))
    bound = possible_sets * (d.threshold - 1)
    pieces = [set(d.hole), set(d.assignment), set(d.removed), set(d.detached)]
    covered = set().union(*pieces)
    disjoint = sum(len(p) for p in pieces) == len(covered)
    partition_ok = disjoint and covered == set(range(g.n))
    # Reassembly: the retained graph plus the ledger and the hole is exactly g.
    kept = sorted(set(d.hole) | set(d.assignment) | set(d.detached))
    restored = sorted(kept + list(d.removed))
    reassembles = restored == list(range(g.n)) and induced_subgraph(g, restored) == g
    logger.debug("ledger %d of bound %d over %d families", len(d.removed), bound, families)
    return ReductionReport(len(d.removed), bound, len(d.removed) <= bound, partition_ok, reassembles)
