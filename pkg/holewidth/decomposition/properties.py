"""Executable property tables for the sets around a 7-, 6- or 5-hole.

Each property is a predicate over the retained sets, written relative to a
rotation index i and evaluated for every rotation. A property fails when some
rotation fails, passes when some rotation has all its sets present and
holds, and is vacuous otherwise.

Set references are short strings: "X2" is X_{i+2}, "X2|X5" is the union
of X_{i+2} and X_{i+5}, "Z" is the unindexed Z of a 5-hole and "R" is the
detached set of a 5-hole.
"""

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from ..core.graph import Graph, iter_bits, to_mask
from .classify import Decomposition, SetId

logger = logging.getLogger(__name__)


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


Outcome = Tuple[Status, Tuple[int, ...]]
VACUOUS: Outcome = (Status.VACUOUS, ())
PASSED: Outcome = (Status.PASS, ())


class SetContext:
    def __init__(self, g: Graph, d: Decomposition):
        self.g = g
        self.k = d.hole_length
        self.sets = d.sets()
        self.detached = tuple(d.detached)

    def members(self, ref: str, i: int) -> Tuple[int, ...]:
        found: List[int] = []
        for part in ref.split("|"):
            family, offset = part[0], part[1:]
            if family == "R":
                found.extend(self.detached)
            elif not offset:
                found.extend(self.sets.get(SetId(family), ()))
            else:
                found.extend(self.sets.get(SetId(family, (i + int(offset)) % self.k), ()))
        return tuple(sorted(found))

    def mask(self, ref: str, i: int) -> int:
        return to_mask(self.members(ref, i))


Check = Callable[[SetContext, int], Outcome]


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _combine(outcomes: Sequence[Outcome]) -> Outcome:
    for outcome in outcomes:
        if outcome[0] is Status.FAIL:
            return outcome
    if any(outcome[0] is Status.PASS for outcome in outcomes):
        return PASSED
    return VACUOUS


def _all(*checks: Check) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        return _combine([c(ctx, i) for c in checks])

    return check


def _join(a: str, b: str) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        left, right = ctx.members(a, i), ctx.mask(b, i)
        if not left or not right:
            return VACUOUS
        for x in left:
            missing = right & ~ctx.g.rows[x]
            if missing:
                return Status.FAIL, (x, _low(missing))
        return PASSED

    return check


def _cojoin(a: str, b: str) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        left, right = ctx.members(a, i), ctx.mask(b, i)
        if not left or not right:
            return VACUOUS
        for x in left:
            hit = right & ctx.g.rows[x]
            if hit:
                return Status.FAIL, (x, _low(hit))
        return PASSED

    return check


def _at_most(a: str, b: str, bound: int = 1, adjacent: bool = True, both: bool = False) -> Check:
    """Each vertex of a has at most bound neighbours (or non-neighbours) in b."""

    def one_way(ctx: SetContext, i: int, source: str, target: str) -> Outcome:
        left, right = ctx.members(source, i), ctx.mask(target, i)
        if not left or not right:
            return VACUOUS
        for x in left:
            row = ctx.g.rows[x]
            counted = right & row if adjacent else right & ~row
            if counted.bit_count() > bound:
                return Status.FAIL, (x,) + tuple(itertools.islice(iter_bits(counted), bound + 1))
        return PASSED

    def check(ctx: SetContext, i: int) -> Outcome:
        forward = one_way(ctx, i, a, b)
        if not both:
            return forward
        return _combine([forward, one_way(ctx, i, b, a)])

    return check


def _one_empty(*refs: str, given: Sequence[str] = ()) -> Check:
    """When every set in given is non-empty, at least one of refs is empty."""

    def check(ctx: SetContext, i: int) -> Outcome:
        premise = [ctx.members(ref, i) for ref in given]
        if not all(premise):
            return VACUOUS
        sets = [ctx.members(ref, i) for ref in refs]
        if all(sets):
            return Status.FAIL, tuple(s[0] for s in premise + sets)
        if given or any(sets):
            return PASSED
        return VACUOUS

    return check


def _when(given: Sequence[str], inner: Check) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        if not all(ctx.members(ref, i) for ref in given):
            return VACUOUS
        return inner(ctx, i)

    return check


def wherever(anchor: str, inner: Check) -> Check:
    """inner at every rotation where anchor is non-empty; the rotation passed in is ignored."""

    def check(ctx: SetContext, i: int) -> Outcome:
        return _combine([inner(ctx, j) for j in range(ctx.k) if ctx.members(anchor, j)])

    return check


def _no_two_edges(a: str, b: str, c: str) -> Check:
    """No triple with one vertex from each set induces exactly two edges."""

    def check(ctx: SetContext, i: int) -> Outcome:
        sets = [ctx.members(ref, i) for ref in (a, b, c)]
        if not all(sets):
            return VACUOUS
        g = ctx.g
        for x, y, z in itertools.product(*sets):
            if g.adjacent(x, y) + g.adjacent(x, z) + g.adjacent(y, z) == 2:
                return Status.FAIL, (x, y, z)
        return PASSED

    return check


def _no_double(a: str, b: str, c: str) -> Check:
    """No vertex of a has neighbours in both b and c."""

    def check(ctx: SetContext, i: int) -> Outcome:
        left, first, second = ctx.members(a, i), ctx.mask(b, i), ctx.mask(c, i)
        if not left or not first or not second:
            return VACUOUS
        for x in left:
            row = ctx.g.rows[x]
            if row & first and row & second:
                return Status.FAIL, (x, _low(row & first), _low(row & second))
        return PASSED

    return check


def _split_non_neighbours(a: str, b: str) -> Check:
    """If x in a misses two vertices of b, one is complete and the other anticomplete to the rest of a."""

    def check(ctx: SetContext, i: int) -> Outcome:
        left, right = ctx.members(a, i), ctx.mask(b, i)
        if not left or not right:
            return VACUOUS
        g = ctx.g
        for x in left:
            others = to_mask(left) & ~(1 << x)
            missed = list(iter_bits(right & ~g.rows[x]))
            for u, w in itertools.combinations(missed, 2):
                u_all, u_none = g.rows[u] & others == others, not g.rows[u] & others
                w_all, w_none = g.rows[w] & others == others, not g.rows[w] & others
                if not ((u_all and w_none) or (u_none and w_all)):
                    return Status.FAIL, (x, u, w)
        return PASSED

    return check


def _neighbours_clique(a: str, b: str, c: str) -> Check:
    """A vertex of a with neighbours in both b and c sees a clique in b | c."""

    def check(ctx: SetContext, i: int) -> Outcome:
        left, first, second = ctx.members(a, i), ctx.mask(b, i), ctx.mask(c, i)
        if not left or not first or not second:
            return VACUOUS
        g = ctx.g
        for x in left:
            row = g.rows[x]
            if not (row & first and row & second):
                continue
            seen = list(iter_bits(row & (first | second)))
            for u, w in itertools.combinations(seen, 2):
                if not g.adjacent(u, w):
                    return Status.FAIL, (x, u, w)
        return PASSED

    return check


def _union_clique(*refs: str) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        sets = [ctx.members(ref, i) for ref in refs]
        if not all(sets):
            return VACUOUS
        union = sorted(set().union(*sets))
        for u, w in itertools.combinations(union, 2):
            if not ctx.g.adjacent(u, w):
                return Status.FAIL, (u, w)
        return PASSED

    return check


def _all_cliques(ctx: SetContext, i: int) -> Outcome:
    groups = list(ctx.sets.values()) + ([ctx.detached] if ctx.detached else [])
    if not groups:
        return VACUOUS
    for members in groups:
        for u, w in itertools.combinations(members, 2):
            if not ctx.g.adjacent(u, w):
                return Status.FAIL, (u, w)
    return PASSED


def _family_empty(family: str) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        for set_id, members in ctx.sets.items():
            if set_id.family == family:
                return Status.FAIL, members[:1]
        return PASSED

    return check


def _family_empty_if(given: str, family: str) -> Check:
    def check(ctx: SetContext, i: int) -> Outcome:
        premise = ctx.members(given, i)
        if not premise:
            return VACUOUS
        for set_id, members in ctx.sets.items():
            if set_id.family == family:
                return Status.FAIL, (premise[0], members[0])
        return PASSED

    return check


def _family_relation(family: str, other: str, joined: bool) -> Check:
    """Each set of family is complete (or anticomplete) to other."""

    def check(ctx: SetContext, i: int) -> Outcome:
        outcomes = []
        for set_id in ctx.sets:
            if set_id.family == family:
                ref = f"{family}{set_id.index}"
                outcomes.append((_join if joined else _cojoin)(ref, other)(ctx, 0))
        return _combine(outcomes)

    return check


@dataclass(frozen=True)
class Property:
    pid: str
    statement: str
    pattern: Optional[str]
    check: Check
    rotating: bool = True


def _p(pid: str, statement: str, pattern: Optional[str], check: Check) -> Property:
    return Property(pid, statement, pattern, check)


def _obs(pid: str, statement: str, pattern: Optional[str], check: Check) -> Property:
    return Property(pid, statement, pattern, check, rotating=False)


C7_PROPERTIES: Tuple[Property, ...] = (
    _obs("obs.cliques", "every retained set is a clique", "claw", _all_cliques),
    _obs("obs.z-empty", "every Z_i is empty", "bridge", _family_empty("Z")),
    _p("P1", "X_i complete to X_{i+1}", "4K1", _join("X0", "X1")),
    _p("P2", "X_i at most one neighbour in X_{i+2}, both ways", "bridge", _at_most("X0", "X2", both=True)),
    _p("P3", "X_i anticomplete to X_{i+3}", "claw", _cojoin("X0", "X3")),
    _p("P4", "X_i at most one neighbour in X_{i+2} | X_{i+5}", None, _at_most("X0", "X2|X5")),
    _p("P5", "no three consecutive non-empty X_i", "bridge", _one_empty("X0", "X1", "X2")),
    _p("P6", "Y_i at most one non-neighbour in Y_{i+1}, both ways", "bridge",
       _at_most("Y0", "Y1", adjacent=False, both=True)),
    _p("P7", "Y_i non-empty forces Y_{i+2} empty", None, _one_empty("Y2", given=("Y0",))),
    _p("P8", "Y_i anticomplete to Y_{i+3}", "claw", _cojoin("Y0", "Y3")),
    _p("P9", "Y_i complete to X_i and X_{i+1}", "4K1", _all(_join("Y0", "X0"), _join("Y0", "X1"))),
    _p("P10", "Y_i non-empty forces X_{i+2} and X_{i+6} empty", "bridge",
       _all(_one_empty("X2", given=("Y0",)), _one_empty("X6", given=("Y0",)))),
    _p("P11", "Y_i anticomplete to X_{i+3} and X_{i+5}", "claw", _all(_cojoin("Y0", "X3"), _cojoin("Y0", "X5"))),
    _p("P12", "Y_i anticomplete to X_{i+4}", "claw", _cojoin("Y0", "X4")),
)

C6_PROPERTIES: Tuple[Property, ...] = (
    _obs("obs.cliques", "every retained set is a clique", "claw", _all_cliques),
    _obs("obs.z-empty", "every Z_i is empty", "bridge", _family_empty("Z")),
    _p("P13", "T_i non-empty forces T_{i+1} empty", "C7", _one_empty("T1", given=("T0",))),
    _p("P14", "T_i at most one neighbour in T_{i+2}, both ways", "C4-twin", _at_most("T0", "T2", both=True)),
    _p("P15", "T_i non-empty forces T_{i+3} empty", "4K1", _one_empty("T3", given=("T0",))),
    _p("P16", "no triple from T_i, T_{i+2}, T_{i+4} spans exactly two edges", "claw",
       _no_two_edges("T0", "T2", "T4")),
    _p("P17", "X_i at most one non-neighbour in X_{i+1}, both ways", "bridge",
       _at_most("X0", "X1", adjacent=False, both=True)),
    _p("P18", "X_i at most one neighbour in X_{i+2}, both ways", "bridge", _at_most("X0", "X2", both=True)),
    _p("P19", "X_i anticomplete to X_{i+3}", "claw", _cojoin("X0", "X3")),
    _p("P20", "no three consecutive non-empty X_i", "bridge", _one_empty("X0", "X1", "X2")),
    _p("P21", "Y_i at most one non-neighbour in Y_{i+1}, both ways", "bridge",
       _at_most("Y0", "Y1", adjacent=False, both=True)),
    _p("P22", "Y_i non-empty forces Y_{i+2} empty", "bridge", _one_empty("Y2", given=("Y0",))),
    _p("P23", "Y_i at most one neighbour in Y_{i+3}, both ways", "bridge", _at_most("Y0", "Y3", both=True)),
    _p("P24", "X_i complete to T_i and T_{i+1}", "4K1", _all(_join("X0", "T0"), _join("X0", "T1"))),
    _p("P25", "X_i at most one neighbour in T_{i+2} and in T_{i+5}, both ways", "bridge",
       _all(_at_most("X0", "T2", both=True), _at_most("X0", "T5", both=True))),
    _p("P26", "X_i anticomplete to T_{i+3} and T_{i+4}", "claw", _all(_cojoin("X0", "T3"), _cojoin("X0", "T4"))),
    _p("P27", "X_i non-empty forces T_i, T_{i+2} and T_{i+1}, T_{i+5} anticomplete", "C4-twin",
       _when(("X0",), _all(_cojoin("T0", "T2"), _cojoin("T1", "T5")))),
    _p("P28", "X_i, X_{i+1} non-empty force T_i and T_{i+2} empty", "bridge",
       _all(_one_empty("T0", given=("X0", "X1")), _one_empty("T2", given=("X0", "X1")))),
    _p("P29", "T_i non-empty forces X_i anticomplete to T_{i+2}", "bridge", _when(("T0",), _cojoin("X0", "T2"))),
    _p("P30", "T_i non-empty forces X_{i+1} complete to X_{i+2}", "4K1", _when(("T0",), _join("X1", "X2"))),
    _p("P31", "no X_i vertex sees both T_{i+2} and X_{i+2}; no X_{i+2} vertex sees both T_{i+1} and X_i",
       "bridge", _all(_no_double("X0", "T2", "X2"), _no_double("X2", "T1", "X0"))),
    _p("P32", "no X_i vertex sees both X_{i+2} and T_{i+4}", "claw", _no_double("X0", "X2", "T4")),
    _p("P33", "no X_{i+2} vertex sees both T_{i+4} and X_i", "claw", _no_double("X2", "T4", "X0")),
    _p("P34", "X_i, T_{i+1}, T_{i+5} non-empty force T_{i+1} anticomplete to T_{i+5}", "C4-twin",
       _when(("X0", "T1", "T5"), _cojoin("T1", "T5"))),
    Property("obs.y-t-next", "Y_i anticomplete to T_{i+1}", "claw", _cojoin("Y0", "T1")),
    _p("P35", "Y_i complete to T_i and T_{i+2}", "claw", _all(_join("Y0", "T0"), _join("Y0", "T2"))),
    _p("P36", "Y_i at most two non-neighbours in T_{i+1}", "bridge", _at_most("Y0", "T1", bound=2, adjacent=False)),
    _p("P37", "two non-neighbours in T_{i+1} of a Y_i vertex split the rest of Y_i", "C4-twin",
       _split_non_neighbours("Y0", "T1")),
    _p("P38", "Y_i anticomplete to T_{i+3} and T_{i+5}", "claw", _all(_cojoin("Y0", "T3"), _cojoin("Y0", "T5"))),
    _p("P39", "Y_i anticomplete to T_{i+4}", "claw", _cojoin("Y0", "T4")),
    _p("P40", "Y_i non-empty forces one of T_i, T_{i+2} empty", "bridge", _one_empty("T0", "T2", given=("Y0",))),
    _p("P41", "Y_i, Y_{i+1} non-empty force T_i and T_{i+3} empty", "bridge",
       _all(_one_empty("T0", given=("Y0", "Y1")), _one_empty("T3", given=("Y0", "Y1")))),
    _p("P42", "Y_i with T_{i+3} or T_{i+5} non-empty is complete to T_{i+1}", "4K1",
       _all(_when(("T3",), _join("Y0", "T1")), _when(("T5",), _join("Y0", "T1")))),
    _p("P43", "Y_{i+1} non-empty gives Y_i at most one non-neighbour in T_{i+1}", "bridge",
       _when(("Y1",), _at_most("Y0", "T1", adjacent=False))),
    _p("P44", "Y_i non-empty forces T_{i+1} anticomplete to T_{i+5} and T_{i+3}", "C4-twin",
       _when(("Y0",), _all(_cojoin("T1", "T5"), _cojoin("T1", "T3")))),
    _p("P45", "Y_i complete to X_i and X_{i+1}", "claw", _all(_join("Y0", "X0"), _join("Y0", "X1"))),
    _p("P46", "Y_i non-empty forces X_{i+2} and X_{i+5} empty", "bridge",
       _all(_one_empty("X2", given=("Y0",)), _one_empty("X5", given=("Y0",)))),
    _p("P47", "Y_i anticomplete to X_{i+3} and X_{i+4}", "claw", _all(_cojoin("Y0", "X3"), _cojoin("Y0", "X4"))),
    _p("P48", "Y_i non-empty forces one of X_{i+2}, T_i and one of X_i, T_{i+2} empty", "bridge",
       _all(_one_empty("X2", "T0", given=("Y0",)), _one_empty("X0", "T2", given=("Y0",)))),
)

C5_PROPERTIES: Tuple[Property, ...] = (
    _obs("obs.cliques", "every retained set and R is a clique", "claw", _all_cliques),
    _obs("obs.y-empty", "every Y_i is empty", "C4-twin", _family_empty("Y")),
    _obs("obs.t-r-join", "each T_i complete to R", "4K1", _family_relation("T", "R", joined=True)),
    _obs("obs.r-t", "R non-empty forces every T_i empty", "bridge", _family_empty_if("R", "T")),
    _obs("obs.x-r", "each X_i anticomplete to R", "claw", _family_relation("X", "R", joined=False)),
    _obs("obs.z-r", "Z anticomplete to R", "claw", _cojoin("Z", "R")),
    _obs("obs.z-t", "Z non-empty forces every T_i empty", "bridge", _family_empty_if("Z", "T")),
    _obs("obs.z-x", "Z non-empty forces every X_i empty", "bridge", _family_empty_if("Z", "X")),
    _p("P49", "T_i anticomplete to T_{i+1}", "C6", _cojoin("T0", "T1")),
    _p("P50", "T_i at most one neighbour in T_{i+2}, both ways", "C4-twin", _at_most("T0", "T2", both=True)),
    _p("P51", "T_i at most one neighbour in T_{i+2} | T_{i+3}", "claw", _at_most("T0", "T2|T3")),
    _p("P52", "no three consecutive non-empty T_i", "4K1", _one_empty("T0", "T1", "T2")),
    _p("P53", "X_i at most one non-neighbour in X_{i+1}, both ways", "bridge",
       _at_most("X0", "X1", adjacent=False, both=True)),
    _p("P54", "X_i at most one neighbour in X_{i+2}, both ways", "C4-twin", _at_most("X0", "X2", both=True)),
    _p("P55", "no three consecutive non-empty X_i", "bridge", _one_empty("X0", "X1", "X2")),
    _p("P56", "X_i, X_{i+1} non-empty force X_{i+3} anticomplete to X_i | X_{i+1}", "C4-twin",
       _when(("X0", "X1"), _cojoin("X3", "X0|X1"))),
    _p("P57", "T_i complete to X_i and X_{i+4}", "claw", _all(_join("T0", "X0"), _join("T0", "X4"))),
    _p("P58", "T_i at most one neighbour in X_{i+1} and in X_{i+3}, both ways", "bridge",
       _all(_at_most("T0", "X1", both=True), _at_most("T0", "X3", both=True))),
    _p("P59", "T_i anticomplete to X_{i+2}", "claw", _cojoin("T0", "X2")),
    _p("P60", "one of T_i, X_i, X_{i+1} and one of T_{i+2}, X_i, X_{i+1} empty", "bridge",
       _all(_one_empty("T0", "X0", "X1"), _one_empty("T2", "X0", "X1"))),
    _p("P61", "one of T_i, X_i, T_{i+1} empty", "bridge", _one_empty("T0", "X0", "T1")),
    _p("P62", "T_{i+1} non-empty forces X_i complete to X_{i+1}", "C6", _when(("T1",), _join("X0", "X1"))),
    _p("P63", "T_{i+1} or T_{i+2} non-empty forces X_i anticomplete to X_{i+2}", "claw",
       _all(_when(("T1",), _cojoin("X0", "X2")), _when(("T2",), _cojoin("X0", "X2")))),
    _p("P64", "X_i non-empty forces T_i anticomplete to T_{i+2}", "C4-twin", _when(("X0",), _cojoin("T0", "T2"))),
    _p("P65", "an X_i vertex seeing X_{i+2} and T_{i+4} sees a clique there", "claw",
       _neighbours_clique("X0", "X2", "T4")),
    _p("P66", "X_i, X_{i+1}, T_{i+1} non-empty form a clique together", None, _union_clique("X0", "X1", "T1")),
)

PROPERTY_TABLES: Dict[int, Tuple[Property, ...]] = {7: C7_PROPERTIES, 6: C6_PROPERTIES, 5: C5_PROPERTIES}

# Properties whose failure leaves a non-empty pattern no case handles.
EMPTINESS_PROPERTIES = frozenset(
    {
        "obs.z-empty", "obs.y-empty", "obs.r-t", "obs.z-t", "obs.z-x",
        "P5", "P7", "P10",
        "P13", "P15", "P20", "P22", "P28", "P40", "P41", "P46", "P48",
        "P52", "P55", "P60", "P61",
    }
)


@dataclass(frozen=True)
class PropertyResult:
    pid: str
    statement: str
    status: Status
    witness: Tuple[int, ...] = ()
    pattern: Optional[str] = None
    rotation: Optional[int] = None

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        entry = {"id": self.pid, "status": self.status.value}
        if self.failed:
            entry["witness"] = [str(g.vertex_name(v)) if g is not None else v for v in self.witness]
            entry["predicted_pattern"] = self.pattern
            entry["rotation"] = self.rotation
        return entry


@dataclass
class PropertyReport:
    hole_length: int
    results: List[PropertyResult]

    @property
    def failures(self) -> List[PropertyResult]:
        return [r for r in self.results if r.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def get(self, pid: str) -> PropertyResult:
        for result in self.results:
            if result.pid == pid:
                return result
        raise KeyError(pid)

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        return {
            "hole_length": self.hole_length,
            "ok": self.ok,
            "properties": [r.to_dict(g) for r in self.results],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "Name": r.pid,
                    "Property": r.statement,
                    "Status": r.status.value,
                    "Witness": " ".join(str(v) for v in r.witness),
                    "Pattern": r.pattern or "",
                }
                for r in self.results
            ]
        )

    def table(self) -> str:
        return self.to_frame().to_string(index=False)


def evaluate_property(g: Graph, d: Decomposition, prop: Property) -> PropertyResult:
    ctx = SetContext(g, d)
    rotations = range(d.hole_length) if prop.rotating else range(1)
    passed = False
    for i in rotations:
        status, witness = prop.check(ctx, i)
        if status is Status.FAIL:
            return PropertyResult(prop.pid, prop.statement, status, witness, prop.pattern, i if prop.rotating else None)
        passed = passed or status is Status.PASS
    return PropertyResult(prop.pid, prop.statement, Status.PASS if passed else Status.VACUOUS, (), prop.pattern)


def verify_properties(g: Graph, d: Decomposition) -> PropertyReport:
    """Evaluate the property table for d's hole length over the retained sets.

    Args:
        g (Graph): The graph d was built from
        d (Decomposition): Output of classify

    Returns:
        PropertyReport: One result per property, in table order
    """
    results = [evaluate_property(g, d, prop) for prop in PROPERTY_TABLES[d.hole_length]]
    failed = [r.pid for r in results if r.failed]
    if failed:
        logger.warning("C%d properties failing: %s", d.hole_length, ", ".join(failed))
    else:
        logger.debug("all C%d properties hold", d.hole_length)
    return PropertyReport(d.hole_length, results)


def emptiness_conflicts(k: int, present: Iterable[SetId]) -> List[str]:
    """Emptiness properties broken by the mere presence of the given sets.

    These properties read only which sets are non-empty, so one stand-in
    vertex per set on an edgeless graph decides them.
    """
    chosen = sorted(set(present), key=SetId.sort_key)
    vertices = {set_id: k + n for n, set_id in enumerate(chosen)}
    stand_in = Decomposition(
        hole=tuple(range(k)),
        assignment={v: set_id for set_id, v in vertices.items() if set_id.family != "R"},
        removed={},
        threshold=1,
        detached=tuple(v for set_id, v in vertices.items() if set_id.family == "R"),
    )
    g = Graph.from_edges(k + len(chosen), [])
    return [
        prop.pid
        for prop in PROPERTY_TABLES[k]
        if prop.pid in EMPTINESS_PROPERTIES and evaluate_property(g, stand_in, prop).failed
    ]
