"""Case dispatch for the 7-, 6- and 5-hole decompositions."""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..config import CORE_LABEL_BUDGET, SPLIT_ALLOWANCE, SUPPORTED_HOLES
from ..core.graph import Graph, RelationKind
from ..core.patterns import find_hole
from ..decomposition.classify import Decomposition, SetId
from ..decomposition.properties import EMPTINESS_PROPERTIES, verify_properties
from ..errors import BoundExceededError, CaseNotCoveredError, PreconditionError
from ..expressions.builders import attach_extra_vertices, clique_expression
from ..expressions.cwd import CwdExpr, Join, graft, old, width
from .casebook import (
    ATTACH,
    BARE,
    OLD_CLASS_JOIN,
    PARTNER_WALK,
    SetPart,
    dispatch,
    family_groups,
    generic_id,
    join_case,
    merge_plan,
    transform,
)
from .engine import Part, assemble, homogeneous_kind
from .results import SynthesisResult, TraceEntry

logger = logging.getLogger(__name__)


def _names(set_ids) -> Tuple[str, ...]:
    return tuple(s.name for s in sorted(set(set_ids), key=SetId.sort_key))


def _require_hole(builder: str, d: Decomposition, k: int) -> None:
    if d.hole_length != k:
        raise PreconditionError(builder, f"needs a {k}-hole, got length {d.hole_length}", d.hole)


def _require_no_longer_hole(builder: str, g: Graph, k: int) -> None:
    for longer in SUPPORTED_HOLES:
        if longer <= k:
            continue
        hole = find_hole(g, longer)
        if hole is not None:
            raise PreconditionError(builder, f"graph contains an induced C{longer}", hole)


def _check_emptiness(g: Graph, d: Decomposition) -> List[str]:
    """Raise when the non-empty sets form a pattern no case handles; return other failed properties."""
    report = verify_properties(g, d)
    blocking = [r.pid for r in report.failures if r.pid in EMPTINESS_PROPERTIES]
    if blocking:
        raise CaseNotCoveredError(d.set_names() + (["R"] if d.detached else []), blocking)
    return [r.pid for r in report.failures]


def _set_parts(d: Decomposition) -> List[SetPart]:
    parts: List[SetPart] = list(d.sets().items())
    if d.detached:
        parts.append((SetId("R"), tuple(d.detached)))
    return parts


class _Labelling:
    """Expression under construction plus the original sets behind every label name."""

    def __init__(self, g: Graph, d: Decomposition):
        self.g = g
        self.d = d
        self.expr: Optional[CwdExpr] = None
        self.parts: List[Tuple[int, Part]] = []
        self.origin: Dict[str, Tuple[SetId, ...]] = {}
        self.trace: List[TraceEntry] = []
        self.splits_left = SPLIT_ALLOWANCE.get(d.hole_length, 0)

    def label_group(self, group: Sequence[SetPart], outside: Sequence[SetPart], number: int) -> None:
        g, d, k = self.g, self.d, self.d.hole_length
        case, rotation, reflected = dispatch(g, d, [set_id for set_id, _ in group])
        merged = merge_plan(g, d, case, rotation, reflected, group, outside) if case is not None else []
        members = dict(group)
        folded = {set_id for ids in merged for set_id in ids}
        named: List[Part] = []
        for ids in merged:
            name = f"{ids[0].name}*"
            named.append((name, tuple(sorted(v for set_id in ids for v in members[set_id]))))
            self.origin[name] = ids
        for set_id, vertices in group:
            if set_id not in folded:
                named.append((set_id.name, vertices))
                self.origin[set_id.name] = (set_id,)

        assembly = assemble(g, named, self.splits_left, case.prefer if case is not None else ())
        self.splits_left -= len(assembly.splits)
        for split in assembly.splits:
            self.origin[split.name] = self.origin[split.source]
        self.expr = graft(self.expr, assembly.expr)
        self.parts.extend((number, part) for part in assembly.parts)

        case_name = case.case_id if case is not None else generic_id(k, PARTNER_WALK)
        builders = ",".join(dict.fromkeys(build.builder for build in assembly.blocks))
        detail = {
            "rotation": rotation,
            "reflected": reflected,
            "canonical": list(_names(transform(set_id, k, rotation, reflected) for set_id, _ in group)),
            "blocks": [build.to_dict() for build in assembly.blocks],
        }
        if merged:
            detail["merged"] = [[set_id.name for set_id in ids] for ids in merged]
        if assembly.splits:
            detail["splits"] = [[s.source, s.against, len(s.far)] for s in assembly.splits]
        if assembly.cross_joins:
            detail["joins"] = [list(pair) for pair in assembly.cross_joins]
        self.trace.append(TraceEntry(case_name, _names(set_id for set_id, _ in group), builders, detail))
        logger.info("%s: %s labelled by %s", case_name, list(_names(members)), builders)

    def join_groups(self) -> None:
        """Join labels of different groups on their old classes, one trace entry per family pair."""
        k = self.d.hole_length
        pairs: Dict[frozenset, List[Tuple[str, str]]] = {}
        sets: Dict[frozenset, Set[SetId]] = {}
        for (ga, (a, left)), (gb, (b, right)) in itertools.combinations(self.parts, 2):
            if ga == gb or homogeneous_kind(self.g, left, right) is not RelationKind.JOIN:
                continue
            self.expr = Join(old(a), old(b), self.expr)
            for s, t in itertools.product(self.origin[a], self.origin[b]):
                if s.family == t.family:
                    continue
                key = frozenset((s.family, t.family))
                pairs.setdefault(key, [])
                if (a, b) not in pairs[key]:
                    pairs[key].append((a, b))
                sets.setdefault(key, set()).update((s, t))
        for key in sorted(pairs, key=sorted):
            case = join_case(self.g, self.d, key)
            case_name = case.case_id if case is not None else generic_id(k, OLD_CLASS_JOIN)
            self.trace.append(
                TraceEntry(case_name, _names(sets[key]), "old-class-join", {"pairs": [list(p) for p in pairs[key]]})
            )


def _finish(
    g: Graph, d: Decomposition, builder: str, expr: Optional[CwdExpr], trace: List[TraceEntry], failures: Sequence[str]
) -> SynthesisResult:
    """Attach the hole and the removed vertices, then hold the width to its declared bound.

    Raises:
        BoundExceededError: The expression needs more labels than declared
    """
    k = d.hole_length
    expr = attach_extra_vertices(expr, g, list(d.hole) + sorted(d.removed))
    detail = {"hole": k, "removed": len(d.removed)}
    if failures:
        detail["relation_failures"] = list(failures)
    trace.append(TraceEntry(generic_id(k, ATTACH), ("H",), "attach_extra_vertices", detail))

    breakdown = {
        "core": CORE_LABEL_BUDGET[k],
        "hole": k,
        "removed": len(d.removed),
        "detached": 2 if d.detached else 0,
        "attach": 1,
    }
    declared = sum(breakdown.values())
    achieved = width(expr)
    if achieved > declared:
        raise BoundExceededError(builder, achieved, declared, trace)
    logger.info("%s: width %d of declared %d", builder, achieved, declared)
    return SynthesisResult(expr, achieved, trace, declared, breakdown, tuple(d.hole), d)


def _synthesize_around(g: Graph, d: Decomposition, builder: str) -> SynthesisResult:
    failures = _check_emptiness(g, d)
    if failures:
        logger.warning("%s: relations %s fail; cases relying on them fall back", builder, failures)
    parts = _set_parts(d)
    labelling = _Labelling(g, d)
    if not parts:
        labelling.trace.append(TraceEntry(generic_id(d.hole_length, BARE), ("H",), "hole"))
    for number, indices in enumerate(family_groups(g, parts)):
        group = [parts[p] for p in indices]
        outside = [part for p, part in enumerate(parts) if p not in indices]
        labelling.label_group(group, outside, number)
    labelling.join_groups()
    return _finish(g, d, builder, labelling.expr, labelling.trace, failures)


def _synthesize_z(g: Graph, d: Decomposition, failures: Sequence[str]) -> SynthesisResult:
    """Z next to every hole vertex leaves one clique, plus R when it is non-empty."""
    z = d.sets()[SetId("Z")]
    expr = clique_expression("Z", z, g)
    trace = [TraceEntry("c5.z", ("Z",), "clique", {"rotation": 0, "reflected": False})]
    if d.detached:
        expr = graft(expr, clique_expression("R", d.detached, g))
        if homogeneous_kind(g, z, d.detached) is RelationKind.JOIN:
            expr = Join(old("Z"), old("R"), expr)
        trace.append(TraceEntry("c5.r", ("R",), "clique", {"rotation": 0, "reflected": False}))
    logger.info("synth_c5: Z of %d vertices", len(z))
    return _finish(g, d, "synth_c5", expr, trace, failures)


def synth_c7(g: Graph, d: Decomposition) -> SynthesisResult:
    """Expression for a class member around an induced C7.

    Raises:
        PreconditionError: d is not a 7-hole decomposition
        CaseNotCoveredError: The non-empty sets break an emptiness property
        BoundExceededError: The expression needs more labels than declared
    """
    _require_hole("synth_c7", d, 7)
    return _synthesize_around(g, d, "synth_c7")


def synth_c6(g: Graph, d: Decomposition, check_longer_holes: bool = True) -> SynthesisResult:
    """Expression for a C7-free class member around an induced C6."""
    _require_hole("synth_c6", d, 6)
    if check_longer_holes:
        _require_no_longer_hole("synth_c6", g, 6)
    return _synthesize_around(g, d, "synth_c6")


def synth_c5(g: Graph, d: Decomposition, check_longer_holes: bool = True) -> SynthesisResult:
    """Expression for a C6- and C7-free class member around an induced C5.

    A non-empty Z leaves only the hole and one clique; otherwise the T and X
    sets go through the case tables.
    """
    _require_hole("synth_c5", d, 5)
    if check_longer_holes:
        _require_no_longer_hole("synth_c5", g, 5)
    if SetId("Z") in d.sets():
        return _synthesize_z(g, d, _check_emptiness(g, d))
    return _synthesize_around(g, d, "synth_c5")


SYNTHESIZERS = {7: synth_c7, 6: synth_c6, 5: synth_c5}
