from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..config import REPORT_SCHEMA
from ..core.graph import Graph
from ..decomposition.classify import Decomposition
from ..expressions.cwd import CwdExpr, serialize


@dataclass(frozen=True)
class TraceEntry:
    """One case of a synthesis run: the sets it covered and the builders that labelled them."""

    case: str
    sets: Tuple[str, ...]
    builder: str
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        entry = {"case": self.case, "sets": list(self.sets), "builder": self.builder}
        if self.detail:
            entry["detail"] = dict(self.detail)
        return entry


@dataclass
class SynthesisResult:
    expr: Optional[CwdExpr]
    width_achieved: int
    case_trace: List[TraceEntry]
    declared_bound: int
    breakdown: Dict[str, int]
    hole: Tuple[int, ...] = ()
    decomposition: Optional[Decomposition] = field(default=None, repr=False)

    @property
    def within_bound(self) -> bool:
        return self.width_achieved <= self.declared_bound

    def expression_text(self) -> str:
        return serialize(self.expr) if self.expr is not None else ""

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        return {
            "schema": REPORT_SCHEMA,
            "kind": "bounded-cwd",
            "hole": [str(g.vertex_name(v)) if g is not None else v for v in self.hole],
            "hole_length": len(self.hole),
            "width": self.width_achieved,
            "declared_bound": self.declared_bound,
            "bound_breakdown": dict(self.breakdown),
            "case_trace": [entry.to_dict() for entry in self.case_trace],
            "expression": self.expression_text(),
        }


@dataclass(frozen=True)
class PerfectCertificate:
    """No induced C7, C6 or C5: a class member without them is perfect."""

    holes_checked: Tuple[int, ...] = (7, 6, 5)

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        return {
            "schema": REPORT_SCHEMA,
            "kind": "perfect",
            "holes_checked": list(self.holes_checked),
        }
