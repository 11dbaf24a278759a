"""Case tables that drive labelling around a 7-, 6- or 5-hole.

Families whose sets are entangled (some pair of sets is neither complete nor
anticomplete) are labelled together as one group. A group is matched against
the case table of its hole length after rotating or reflecting the hole
indexing, so each case is written once, for its first representative. A case
names the sets it expects, the relations it relies on, the builders it
prefers and the sets it may merge into one clique. Groups are then joined on
their old classes, and each join is matched against the join case for the
two families involved.

References inside a case are read at rotation 0 of the re-indexed sets:
"X0" is the anchor X set, "X3" the X set three steps on, "T*" any T set.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..config import HOLE_TEMPLATES
from ..core.graph import Graph
from ..decomposition.classify import Decomposition, SetId
from ..decomposition.properties import (
    Check,
    SetContext,
    Status,
    _all,
    _at_most,
    _cojoin,
    _family_relation,
    _join,
    _no_two_edges,
    _union_clique,
    wherever,
)
from .engine import homogeneous_kind
from .results import TraceEntry

logger = logging.getLogger(__name__)

SetPart = Tuple[SetId, Tuple[int, ...]]

BARE = "bare"
ATTACH = "attach"
PARTNER_WALK = "partner-walk"
OLD_CLASS_JOIN = "old-class-join"


@dataclass(frozen=True)
class Case:
    case_id: str
    families: FrozenSet[str]
    requires: Tuple[str, ...] = ()
    allowed: Tuple[str, ...] = ()
    any_of: Tuple[str, ...] = ()
    relies_on: Optional[Check] = None
    prefer: Tuple[str, ...] = ()
    merge: Tuple[Tuple[str, ...], ...] = ()
    statement: str = ""

    def relations_hold(self, ctx: SetContext) -> bool:
        return self.relies_on is None or self.relies_on(ctx, 0)[0] is not Status.FAIL

    def accepts(self, present: FrozenSet[SetId], ctx: SetContext) -> bool:
        """Do the re-indexed non-empty sets of a group fit this case?"""
        k = ctx.k
        if frozenset(s.family for s in present) != self.families:
            return False
        required = {ref_id(ref, k) for ref in self.requires}
        if not required <= present:
            return False
        if self.any_of and not any(ref_id(ref, k) in present for ref in self.any_of):
            return False
        open_families = {ref[0] for ref in self.allowed if ref.endswith("*")}
        named = required | {ref_id(ref, k) for ref in self.allowed if not ref.endswith("*")}
        if any(s not in named and s.family not in open_families for s in present):
            return False
        return self.relations_hold(ctx)


def _case(case_id: str, families: str, **fields) -> Case:
    return Case(case_id, frozenset(families), **fields)


def ref_id(ref: str, k: int) -> SetId:
    family, offset = ref[0], ref[1:]
    return SetId(family) if not offset else SetId(family, int(offset) % k)


def set_id_from_name(name: str) -> SetId:
    """'X3' -> SetId('X', 2); 'R' and 'Z' stay unindexed."""
    family, digits = name[0], name[1:]
    return SetId(family, int(digits) - 1) if digits else SetId(family)


C7_X_RELATIONS = wherever("X0", _all(_join("X0", "X1"), _at_most("X0", "X2", both=True), _cojoin("X0", "X3")))
C7_Y_RELATIONS = wherever(
    "Y0", _all(_at_most("Y0", "Y1", adjacent=False, both=True), _cojoin("Y0", "Y3"), _cojoin("Y0", "Y4"))
)
C7_XY_RELATIONS = wherever(
    "Y0",
    _all(_join("Y0", "X0"), _join("Y0", "X1"), _cojoin("Y0", "X3"), _cojoin("Y0", "X4"), _cojoin("Y0", "X5")),
)

C6_T_RELATIONS = wherever("T0", _all(_at_most("T0", "T2", both=True), _no_two_edges("T0", "T2", "T4")))
C6_X_RELATIONS = wherever(
    "X0",
    _all(_at_most("X0", "X1", adjacent=False, both=True), _at_most("X0", "X2", both=True), _cojoin("X0", "X3")),
)
C6_Y_RELATIONS = wherever(
    "Y0", _all(_at_most("Y0", "Y1", adjacent=False, both=True), _at_most("Y0", "Y3", both=True))
)
C6_XT_RELATIONS = wherever(
    "X0",
    _all(
        _join("X0", "T0"),
        _join("X0", "T1"),
        _at_most("X0", "T2", both=True),
        _at_most("X0", "T5", both=True),
        _cojoin("X0", "T3"),
        _cojoin("X0", "T4"),
        _cojoin("T0", "T2"),
        _cojoin("T1", "T5"),
    ),
)
C6_TY_RELATIONS = wherever(
    "Y0",
    _all(
        _join("Y0", "T0"),
        _join("Y0", "T2"),
        _cojoin("Y0", "T1"),
        _cojoin("Y0", "T3"),
        _cojoin("Y0", "T4"),
        _cojoin("Y0", "T5"),
    ),
)
C6_XY_RELATIONS = wherever(
    "Y0", _all(_join("Y0", "X0"), _join("Y0", "X1"), _cojoin("Y0", "X3"), _cojoin("Y0", "X4"))
)
C6_XT_ALL = _all(C6_X_RELATIONS, C6_T_RELATIONS, C6_XT_RELATIONS)

C5_T_RELATIONS = wherever(
    "T0", _all(_cojoin("T0", "T1"), _at_most("T0", "T2", both=True), _at_most("T0", "T2|T3"))
)
C5_X_RELATIONS = wherever(
    "X0", _all(_at_most("X0", "X1", adjacent=False, both=True), _at_most("X0", "X2", both=True))
)
C5_TX_RELATIONS = wherever(
    "T0",
    _all(
        _join("T0", "X0"),
        _join("T0", "X4"),
        _at_most("T0", "X1", both=True),
        _at_most("T0", "X3", both=True),
        _cojoin("T0", "X2"),
    ),
)
C5_TX_ALL = _all(C5_T_RELATIONS, C5_X_RELATIONS, C5_TX_RELATIONS)
C5_R_RELATIONS = _all(_family_relation("X", "R", joined=False), _cojoin("Z", "R"))

CASES: Dict[int, Tuple[Case, ...]] = {
    7: (
        _case(
            "c7.x-consecutive-rows", "X", requires=("X0", "X1"), allowed=("X3", "X4", "X5"), any_of=("X3", "X5"),
            relies_on=C7_X_RELATIONS, prefer=("rows", "pairs", "clique"),
            statement="X_i, X_{i+1} complete, with X_{i+3} or X_{i+5} labelled through rows",
        ),
        _case(
            "c7.x-consecutive", "X", requires=("X0", "X1"), allowed=("X4",),
            relies_on=C7_X_RELATIONS, prefer=("clique",),
            statement="X_i, X_{i+1} complete to each other",
        ),
        _case(
            "c7.x-gap2", "X", requires=("X0", "X2"), allowed=("X4",),
            relies_on=C7_X_RELATIONS, prefer=("pairs", "clique_partition"),
            statement="X_i, X_{i+2} with at most one neighbour each way",
        ),
        _case(
            "c7.x-gap3", "X", requires=("X0", "X3"),
            relies_on=C7_X_RELATIONS, prefer=("clique",),
            statement="X_i, X_{i+3} disjoint anticomplete cliques",
        ),
        _case("c7.x-single", "X", requires=("X0",), prefer=("clique",), statement="one X set"),
        _case(
            "c7.y-structure", "Y", requires=("Y0", "Y1", "Y4"),
            relies_on=C7_Y_RELATIONS, prefer=("nonpairs", "clique_partition", "rows"),
            statement="Y_i, Y_{i+1} and the non-consecutive Y_{i+4}",
        ),
        _case(
            "c7.y-consecutive", "Y", requires=("Y0", "Y1"),
            relies_on=C7_Y_RELATIONS, prefer=("nonpairs",),
            statement="Y_i, Y_{i+1} with at most one non-neighbour each way",
        ),
        _case(
            "c7.y-apart", "Y", requires=("Y0", "Y3"),
            relies_on=C7_Y_RELATIONS, prefer=("clique",),
            statement="Y_i, Y_{i+3} anticomplete",
        ),
        _case("c7.y-single", "Y", requires=("Y0",), prefer=("clique",), statement="one Y set"),
    ),
    6: (
        _case(
            "c6.t-triangle", "T", requires=("T0", "T2", "T4"),
            relies_on=C6_T_RELATIONS, prefer=("clique_partition", "rows"),
            statement="T_i, T_{i+2}, T_{i+4}, partner triangles across",
        ),
        _case(
            "c6.t-pair", "T", requires=("T0", "T2"),
            relies_on=C6_T_RELATIONS, prefer=("pairs",),
            statement="T_i, T_{i+2} with at most one neighbour each way",
        ),
        _case("c6.t-single", "T", requires=("T0",), prefer=("clique",), statement="one T set"),
        _case(
            "c6.x-consecutive", "X", requires=("X0", "X1"), allowed=("X3", "X4"),
            relies_on=C6_X_RELATIONS, prefer=("nonpairs", "rows"),
            statement="X_i, X_{i+1} with at most one non-neighbour each way",
        ),
        _case(
            "c6.x-gap2", "X", requires=("X0", "X2"), allowed=("X4",),
            relies_on=C6_X_RELATIONS, prefer=("pairs", "clique_partition"),
            statement="X_i, X_{i+2} with at most one neighbour each way",
        ),
        _case(
            "c6.x-opposite", "X", requires=("X0", "X3"),
            relies_on=C6_X_RELATIONS, prefer=("clique",),
            statement="X_i, X_{i+3} anticomplete",
        ),
        _case("c6.x-single", "X", requires=("X0",), prefer=("clique",), statement="one X set"),
        _case(
            "c6.y-consecutive", "Y", requires=("Y0", "Y1"),
            relies_on=C6_Y_RELATIONS, prefer=("nonpairs",),
            statement="Y_i, Y_{i+1} with at most one non-neighbour each way",
        ),
        _case(
            "c6.y-opposite", "Y", requires=("Y0", "Y3"),
            relies_on=C6_Y_RELATIONS, prefer=("pairs",),
            statement="Y_i, Y_{i+3} with at most one neighbour each way",
        ),
        _case("c6.y-single", "Y", requires=("Y0",), prefer=("clique",), statement="one Y set"),
        _case(
            "c6.xt-merged-rows", "XT", requires=("X0", "X1", "X3", "T1", "T3", "T5"),
            relies_on=_all(C6_XT_ALL, _join("X0", "X1")), prefer=("rows", "clique_partition"),
            merge=(("X3", "T3"),),
            statement="X_i, X_{i+1}, X_{i+3}, T_{i+1}, T_{i+3}, T_{i+5}; X_i complete to X_{i+1}, X_{i+3} merged with T_{i+3}",
        ),
        _case(
            "c6.xt-consecutive", "XT", requires=("X0", "X1"), allowed=("X3", "X4", "T*"),
            relies_on=C6_XT_ALL, prefer=("nonpairs", "rows", "clique_partition"),
            statement="X_i, X_{i+1} with T sets away from T_i and T_{i+2}",
        ),
        _case(
            "c6.xt-gap2", "XT", requires=("X0", "X2"), allowed=("X4", "T*"),
            relies_on=C6_XT_ALL, prefer=("pairs", "clique_partition", "rows"),
            statement="X_i, X_{i+2} with T sets",
        ),
        _case(
            "c6.xt-opposite", "XT", requires=("X0", "X3"), allowed=("T*",),
            relies_on=C6_XT_ALL, prefer=("pairs", "rows"),
            statement="X_i, X_{i+3} with T sets",
        ),
        _case(
            "c6.xt-single", "XT", requires=("X0",), allowed=("T*",),
            relies_on=C6_XT_ALL, prefer=("pairs", "clique_partition", "rows"), merge=(("X0", "T0"),),
            statement="one X set with T sets; X_i merged with T_i",
        ),
    ),
    5: (
        _case("c5.z", "Z", requires=("Z",), prefer=("clique",), statement="Z next to the hole and nothing else"),
        _case("c5.r", "R", requires=("R",), relies_on=C5_R_RELATIONS, prefer=("clique",),
              statement="R anticomplete to everything but T"),
        _case(
            "c5.t", "T", requires=("T0",), allowed=("T*",),
            relies_on=C5_T_RELATIONS, prefer=("pairs", "clique_partition", "rows"),
            statement="T sets, at most one neighbour in T_{i+2} and T_{i+3} together",
        ),
        _case(
            "c5.x", "X", requires=("X0",), allowed=("X*",),
            relies_on=C5_X_RELATIONS, prefer=("nonpairs", "pairs", "rows"),
            statement="X sets",
        ),
        _case(
            "c5.tx-merged", "TX", requires=("X0", "X1", "T1"), allowed=("T*", "X*"),
            relies_on=_all(C5_TX_ALL, _union_clique("X0", "X1", "T1")), prefer=("pairs", "rows"),
            merge=(("X0", "X1", "T1"),),
            statement="X_i, X_{i+1}, T_{i+1} form one clique",
        ),
        _case(
            "c5.tx", "TX", requires=("T0",), allowed=("T*", "X*"),
            relies_on=C5_TX_ALL, prefer=("pairs", "rows", "clique_partition"),
            statement="T and X sets",
        ),
    ),
}

JOIN_CASES: Dict[int, Dict[FrozenSet[str], Case]] = {
    7: {frozenset("XY"): _case("c7.xy-join", "XY", relies_on=C7_XY_RELATIONS,
                                statement="Y_i complete to X_i and X_{i+1}, anticomplete to the rest")},
    6: {
        frozenset("XT"): _case("c6.xt-join", "XT", relies_on=C6_XT_RELATIONS,
                               statement="X_i complete to T_i and T_{i+1}"),
        frozenset("TY"): _case("c6.ty-join", "TY", relies_on=C6_TY_RELATIONS,
                               statement="Y_i complete to T_i and T_{i+2}, anticomplete to the rest"),
        frozenset("XY"): _case("c6.xy-join", "XY", relies_on=C6_XY_RELATIONS,
                               statement="Y_i complete to X_i and X_{i+1}"),
    },
    5: {frozenset("TX"): _case("c5.tx-join", "TX", relies_on=C5_TX_RELATIONS,
                               statement="T_i complete to X_i and X_{i+4}")},
}


def generic_id(k: int, kind: str) -> str:
    return f"c{k}.{kind}"


def _span(k: int, family: str) -> int:
    return max(HOLE_TEMPLATES[k][family])


def transform(set_id: SetId, k: int, rotation: int, reflected: bool) -> SetId:
    if set_id.index is None or set_id.family not in HOLE_TEMPLATES[k]:
        return set_id
    index = set_id.index
    if reflected:
        index = (-index - _span(k, set_id.family)) % k
    return SetId(set_id.family, (index + rotation) % k)


def reindex(d: Decomposition, rotation: int, reflected: bool) -> Decomposition:
    """The same decomposition with the hole read from another start or direction."""
    k = d.hole_length
    hole = [0] * k
    for position, v in enumerate(d.hole):
        moved = (-position) % k if reflected else position
        hole[(moved + rotation) % k] = v
    return Decomposition(
        tuple(hole),
        {v: transform(s, k, rotation, reflected) for v, s in d.assignment.items()},
        {v: transform(s, k, rotation, reflected) for v, s in d.removed.items()},
        d.threshold,
        d.detached,
    )


def _views(g: Graph, d: Decomposition) -> List[Tuple[int, bool, SetContext]]:
    k = d.hole_length
    return [
        (rotation, reflected, SetContext(g, reindex(d, rotation, reflected)))
        for reflected in (False, True)
        for rotation in range(k)
    ]


def dispatch(g: Graph, d: Decomposition, present: Iterable[SetId]) -> Tuple[Optional[Case], int, bool]:
    """First case accepting the group, with the rotation and reflection that fit it.

    Cases are tried in table order and each against every re-indexing; None
    means no case accepts the group as it stands.
    """
    k = d.hole_length
    present = frozenset(present)
    families = frozenset(s.family for s in present)
    views = None
    for case in CASES[k]:
        if case.families != families:
            continue
        if views is None:
            views = _views(g, d)
        for rotation, reflected, ctx in views:
            moved = frozenset(transform(s, k, rotation, reflected) for s in present)
            if case.accepts(moved, ctx):
                logger.debug("%s accepted %s at rotation %d%s", case.case_id, sorted(s.name for s in present),
                             rotation, " reflected" if reflected else "")
                return case, rotation, reflected
    return None, 0, False


def join_case(g: Graph, d: Decomposition, families: FrozenSet[str]) -> Optional[Case]:
    case = JOIN_CASES[d.hole_length].get(families)
    if case is not None and case.relations_hold(SetContext(g, d)):
        return case
    return None


def family_groups(g: Graph, parts: Sequence[SetPart]) -> List[List[int]]:
    """Indices of parts grouped by family, families linked when two of their sets are entangled."""
    linked = nx.Graph()
    linked.add_nodes_from({set_id.family for set_id, _ in parts})
    for (a, left), (b, right) in itertools.combinations(parts, 2):
        if a.family != b.family and homogeneous_kind(g, left, right) is None:
            linked.add_edge(a.family, b.family)
    order = "HTXYZR"
    groups = sorted((sorted(component, key=order.index) for component in nx.connected_components(linked)),
                    key=lambda families: order.index(families[0]))
    return [[p for p, (set_id, _) in enumerate(parts) if set_id.family in families] for families in groups]


def merge_plan(
    g: Graph,
    d: Decomposition,
    case: Case,
    rotation: int,
    reflected: bool,
    group: Sequence[SetPart],
    outside: Sequence[SetPart],
) -> List[Tuple[SetId, ...]]:
    """Sets of the group that the case merges into one clique part.

    A merge is kept only when the union is a clique and every set outside
    the group is complete or anticomplete to it.
    """
    k = d.hole_length
    by_view = {transform(set_id, k, rotation, reflected): set_id for set_id, _ in group}
    members = dict(group)
    used = set()
    plan: List[Tuple[SetId, ...]] = []
    for refs in case.merge:
        ids = [by_view.get(ref_id(ref, k)) for ref in refs]
        if any(set_id is None or set_id in used for set_id in ids):
            continue
        union = tuple(sorted(v for set_id in ids for v in members[set_id]))
        if not g.is_clique(union):
            continue
        if any(homogeneous_kind(g, union, other) is None for _, other in outside):
            continue
        used.update(ids)
        plan.append(tuple(ids))
    return plan


def case_holds(g: Graph, d: Decomposition, entry: TraceEntry) -> bool:
    """Re-check the preconditions of the case a trace entry cites.

    Generic entries (partner walk, old-class join, attach) have none; the
    bare-hole entry needs every set empty.
    """
    k = d.hole_length
    if entry.case in (generic_id(k, PARTNER_WALK), generic_id(k, OLD_CLASS_JOIN), generic_id(k, ATTACH)):
        return True
    if entry.case == generic_id(k, BARE):
        return not d.sets() and not d.detached
    present = frozenset(set_id_from_name(name) for name in entry.sets)
    families = frozenset(s.family for s in present)
    for case in JOIN_CASES[k].values():
        if case.case_id == entry.case:
            return families == case.families and case.relations_hold(SetContext(g, d))
    for case in CASES[k]:
        if case.case_id == entry.case:
            rotation, reflected = entry.detail["rotation"], entry.detail["reflected"]
            moved = frozenset(transform(s, k, rotation, reflected) for s in present)
            return case.accepts(moved, SetContext(g, reindex(d, rotation, reflected)))
    return False
