"""Clique-width expressions: labels, the four operations, evaluation and text form.

Expressions built by the labelling walks are long chains (one union per
vertex), so every traversal here is iterative.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union as TypingUnion

from ..core.graph import Graph
from ..errors import ExpressionError, ExpressionParseError

logger = logging.getLogger(__name__)

PHASES = ("new", "new2", "old")
_NAME_RE = re.compile(r"[A-Za-z0-9_*+\-]+")


@dataclass(frozen=True, order=True)
class Label:
    """Either a plain integer label or a (set name, phase) tag.

    Ordering puts integers before tags, then compares by value.
    """

    rank: int
    value: int = 0
    name: str = ""
    phase: str = ""

    @classmethod
    def integer(cls, value: int) -> "Label":
        if value < 0:
            raise ExpressionError(f"integer labels are non-negative, got {value}")
        return cls(0, value=value)

    @classmethod
    def tag(cls, name: str, phase: str) -> "Label":
        if phase not in PHASES:
            raise ExpressionError(f"phase must be one of {PHASES}, got {phase!r}")
        if not _NAME_RE.fullmatch(name):
            raise ExpressionError(f"invalid set name {name!r} in label")
        return cls(1, name=name, phase=phase)

    @property
    def is_int(self) -> bool:
        return self.rank == 0

    def text(self) -> str:
        if self.is_int:
            return f"int:{self.value}"
        return f"tag:{self.name}.{self.phase}"

    def __str__(self) -> str:
        return self.text()


def new(name: str) -> Label:
    return Label.tag(name, "new")


def old(name: str) -> Label:
    return Label.tag(name, "old")


@dataclass(frozen=True, eq=False)
class Create:
    label: Label
    vertex: int


@dataclass(frozen=True, eq=False)
class Union:
    left: "CwdExpr"
    right: "CwdExpr"


@dataclass(frozen=True, eq=False)
class Relabel:
    source: Label
    target: Label
    child: "CwdExpr"


@dataclass(frozen=True, eq=False)
class Join:
    a: Label
    b: Label
    child: "CwdExpr"

    def __post_init__(self):
        if self.a == self.b:
            raise ExpressionError(f"join needs two distinct labels, got {self.a} twice")


CwdExpr = TypingUnion[Create, Union, Relabel, Join]


def children(e: CwdExpr) -> Tuple[CwdExpr, ...]:
    if isinstance(e, Union):
        return (e.left, e.right)
    if isinstance(e, (Relabel, Join)):
        return (e.child,)
    return ()


def walk(e: CwdExpr) -> Iterator[CwdExpr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def expression_labels(e: CwdExpr) -> Set[Label]:
    labels: Set[Label] = set()
    for node in walk(e):
        if isinstance(node, Create):
            labels.add(node.label)
        elif isinstance(node, Relabel):
            labels.update((node.source, node.target))
        elif isinstance(node, Join):
            labels.update((node.a, node.b))
    return labels


def width(e: CwdExpr) -> int:
    """Number of distinct labels in e, an upper bound on the clique-width of its graph."""
    return len(expression_labels(e))


def vertices_of(e: CwdExpr) -> List[int]:
    return [node.vertex for node in walk(e) if isinstance(node, Create)]


@dataclass
class LabeledGraph:
    """Result of evaluation: vertex ids, edges and the final labelling."""

    labelling: Dict[int, Label]
    edge_set: Set[Tuple[int, int]]

    @property
    def vertices(self) -> List[int]:
        return sorted(self.labelling)

    @property
    def graph(self) -> Graph:
        """The graph on the sorted vertex ids; names are the ids themselves."""
        ids = self.vertices
        position = {v: i for i, v in enumerate(ids)}
        return Graph.from_edges(len(ids), [(position[u], position[v]) for u, v in self.edge_set], names=ids)

    def label_classes(self) -> Dict[Label, List[int]]:
        classes: Dict[Label, List[int]] = {}
        for v in self.vertices:
            classes.setdefault(self.labelling[v], []).append(v)
        return classes

    def realizes(self, g: Graph, vertex_ids: Optional[List[int]] = None) -> bool:
        """True when this has exactly g's edges with vertex i carrying vertex_ids[i]."""
        ids = list(range(g.n)) if vertex_ids is None else list(vertex_ids)
        if sorted(ids) != self.vertices:
            return False
        expected = {(min(ids[u], ids[v]), max(ids[u], ids[v])) for u, v in g.edges()}
        return expected == self.edge_set


class _Partial:
    __slots__ = ("classes", "edges")

    def __init__(self):
        self.classes: Dict[Label, Set[int]] = {}
        self.edges: Set[Tuple[int, int]] = set()

    def size(self) -> int:
        return sum(len(members) for members in self.classes.values())

    def absorb(self, other: "_Partial") -> None:
        for label, members in other.classes.items():
            self.classes.setdefault(label, set()).update(members)
        self.edges |= other.edges


def evaluate(e: CwdExpr) -> LabeledGraph:
    """Evaluate e bottom-up without recursion.

    Raises:
        ExpressionError: A vertex id is created twice
    """
    seen: Set[int] = set()
    results: List[_Partial] = []
    stack: List[Tuple[CwdExpr, bool]] = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Create):
            if node.vertex in seen:
                raise ExpressionError(f"vertex {node.vertex} is created twice")
            seen.add(node.vertex)
            partial = _Partial()
            partial.classes[node.label] = {node.vertex}
            results.append(partial)
            continue
        if not expanded:
            stack.append((node, True))
            for child in reversed(children(node)):
                stack.append((child, False))
            continue
        if isinstance(node, Union):
            right = results.pop()
            left = results.pop()
            if left.size() < right.size():
                left, right = right, left
            left.absorb(right)
            results.append(left)
        elif isinstance(node, Relabel):
            partial = results[-1]
            moved = partial.classes.pop(node.source, None)
            if moved:
                partial.classes.setdefault(node.target, set()).update(moved)
        elif isinstance(node, Join):
            partial = results[-1]
            side_a = partial.classes.get(node.a, ())
            side_b = partial.classes.get(node.b, ())
            for u in side_a:
                for v in side_b:
                    partial.edges.add((u, v) if u < v else (v, u))
    final = results.pop()
    labelling = {v: label for label, members in final.classes.items() for v in members}
    return LabeledGraph(labelling, final.edges)


def serialize(e: CwdExpr) -> str:
    """Compact text in the create/union/relabel/join grammar."""
    out: List[str] = []
    stack: List[TypingUnion[CwdExpr, str]] = [e]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, Create):
            out.append(f"create({item.label.text()},{item.vertex})")
        elif isinstance(item, Union):
            stack.extend([")", item.right, ",", item.left])
            out.append("union(")
        elif isinstance(item, Relabel):
            stack.extend([")", item.child])
            out.append(f"relabel({item.source.text()},{item.target.text()},")
        else:
            stack.extend([")", item.child])
            out.append(f"join({item.a.text()},{item.b.text()},")
    return "".join(out)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<label>int:\d+|tag:[A-Za-z0-9_*+\-]+\.[a-z0-9]+)"
    r"|(?P<word>create|union|relabel|join)"
    r"|(?P<number>-?\d+)"
    r"|(?P<punct>[(),]))"
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        while True:
            while position < len(text) and text[position].isspace():
                position += 1
            if position >= len(text):
                break
            match = _TOKEN_RE.match(text, position)
            if not match or match.end() == position:
                self.fail(f"unexpected character {text[position]!r}", position)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        self.index = 0

    def fail(self, message: str, position: int):
        line = self.text.count("\n", 0, position) + 1
        column = position - (self.text.rfind("\n", 0, position) + 1) + 1
        raise ExpressionParseError(message, position, line, column)

    def take(self, kind: str, value: Optional[str] = None) -> str:
        if self.index >= len(self.tokens):
            self.fail(f"expected {value or kind}, found end of input", len(self.text))
        token_kind, token_value, position = self.tokens[self.index]
        if token_kind != kind or (value is not None and token_value != value):
            self.fail(f"expected {value or kind}, found {token_value!r}", position)
        self.index += 1
        return token_value

    def label(self) -> Label:
        position = self.tokens[self.index][2] if self.index < len(self.tokens) else len(self.text)
        text = self.take("label")
        try:
            if text.startswith("int:"):
                return Label.integer(int(text[4:]))
            name, _, phase = text[4:].rpartition(".")
            return Label.tag(name, phase)
        except ExpressionError as exc:
            self.fail(str(exc), position)


def parse(text: str) -> CwdExpr:
    """Parse the textual grammar back into an expression.

    Raises:
        ExpressionParseError: With line and column of the first bad token
    """
    tokens = _Tokens(text)
    # Frames: [word, labels, finished children]
    frames: List[list] = []
    result: Optional[CwdExpr] = None
    while True:
        word = tokens.take("word")
        tokens.take("punct", "(")
        if word == "create":
            label = tokens.label()
            tokens.take("punct", ",")
            position = tokens.tokens[tokens.index][2] if tokens.index < len(tokens.tokens) else len(text)
            vertex = int(tokens.take("number"))
            if vertex < 0:
                tokens.fail("vertex ids are non-negative", position)
            tokens.take("punct", ")")
            node: CwdExpr = Create(label, vertex)
        else:
            labels = []
            if word in ("relabel", "join"):
                position = tokens.tokens[tokens.index][2] if tokens.index < len(tokens.tokens) else len(text)
                labels.append(tokens.label())
                tokens.take("punct", ",")
                labels.append(tokens.label())
                tokens.take("punct", ",")
                if word == "join" and labels[0] == labels[1]:
                    tokens.fail("join needs two distinct labels", position)
            frames.append([word, labels, []])
            continue
        # Fold finished nodes into their parents.
        while True:
            if not frames:
                result = node
                break
            frame = frames[-1]
            frame[2].append(node)
            if frame[0] == "union" and len(frame[2]) == 1:
                tokens.take("punct", ",")
                break
            tokens.take("punct", ")")
            frames.pop()
            word, labels, kids = frame
            if word == "union":
                node = Union(kids[0], kids[1])
            elif word == "relabel":
                node = Relabel(labels[0], labels[1], kids[0])
            else:
                node = Join(labels[0], labels[1], kids[0])
        if result is not None:
            break
    if tokens.index != len(tokens.tokens):
        tokens.fail("trailing input", tokens.tokens[tokens.index][2])
    return result


def is_linear(e: CwdExpr) -> bool:
    """True when every union has at least one create child."""
    return all(
        isinstance(node.left, Create) or isinstance(node.right, Create)
        for node in walk(e)
        if isinstance(node, Union)
    )


def graft(base: Optional[CwdExpr], e: Optional[CwdExpr]) -> Optional[CwdExpr]:
    """Disjoint union of base and e that keeps e's spine linear.

    The bottom create of e's spine becomes union(base, create). Valid when
    e never relabels or joins a label that base's vertices end with.
    """
    if base is None:
        return e
    if e is None:
        return base
    spine: List[CwdExpr] = []
    node = e
    while not isinstance(node, Create):
        spine.append(node)
        if isinstance(node, Union):
            node = node.left if not isinstance(node.left, Create) or isinstance(node.right, Create) else node.right
        else:
            node = node.child
    rebuilt: CwdExpr = Union(base, node)
    for parent in reversed(spine):
        rebuilt = _replace_spine_child(parent, rebuilt)
    return rebuilt


def _replace_spine_child(parent: CwdExpr, child: CwdExpr) -> CwdExpr:
    if isinstance(parent, Union):
        if not isinstance(parent.left, Create) or isinstance(parent.right, Create):
            return Union(child, parent.right)
        return Union(parent.left, child)
    if isinstance(parent, Relabel):
        return Relabel(parent.source, parent.target, child)
    return Join(parent.a, parent.b, child)


def spine_step(node: Union) -> Tuple[CwdExpr, Optional[Create]]:
    """Split a linear union into (rest of spine, create leaf hanging off it)."""
    if isinstance(node.right, Create) and not isinstance(node.left, Create):
        return node.left, node.right
    if isinstance(node.left, Create) and not isinstance(node.right, Create):
        return node.right, node.left
    if isinstance(node.left, Create):
        return node.left, node.right
    raise ExpressionError("expression is not linear: a union has no create child")


def relabel_all(e: CwdExpr, mapping: Dict[Label, Label]) -> CwdExpr:
    """Apply mapping to the final labels of e.

    Sources are first parked on tags of their own so that swaps and chains
    like 1 -> 2, 2 -> 3 do not merge classes.
    """
    moves = {source: target for source, target in mapping.items() if source != target}
    if not moves:
        return e
    parked: List[Tuple[Label, Label]] = []
    for n, source in enumerate(sorted(moves)):
        park = Label.tag(f"park{n}", "new")
        e = Relabel(source, park, e)
        parked.append((park, moves[source]))
    for park, target in parked:
        e = Relabel(park, target, e)
    return e


def same_expression(a: CwdExpr, b: CwdExpr) -> bool:
    """Structural equality through the canonical text form."""
    return serialize(a) == serialize(b)
