"""Graph files (edge list, DIMACS, JSON), expression files and DOT output.

Edge lists hold one ``u v`` pair per line; a line with a single token declares
an isolated vertex and ``#`` starts a comment. Vertices keep the order of
their first appearance. DIMACS uses ``c``/``p edge n m``/``e u v`` lines with
1-based vertices. JSON is ``{"n": .., "edges": [[u, v], ..], "names": [..]}``
with 0-based indices and is the canonical round-trip format.
"""

import json
import logging
import re
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from ..core.graph import Graph
from ..errors import GraphFormatError, InvalidVertexError
from ..expressions.cwd import CwdExpr, parse
from .helpers import read_text_file

logger = logging.getLogger(__name__)

FORMATS = ("edges", "dimacs", "json")
_SUFFIXES = {".json": "json", ".dimacs": "dimacs", ".col": "dimacs", ".clq": "dimacs", ".edges": "edges", ".txt": "edges"}
_INT = re.compile(r"^-?\d+$")

# Graphviz colour names cycled through for colour classes.
DOT_PALETTE = (
    "red", "blue", "green", "orange", "purple", "cyan", "gold", "brown",
    "magenta", "darkgreen", "navy", "salmon", "olive", "teal", "pink", "gray",
)


def _token_value(token: str) -> Hashable:
    return int(token) if _INT.match(token) else token


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with 1-based columns."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_edge_list(text: str) -> Graph:
    index: Dict[Hashable, int] = {}
    edges: List[Tuple[int, int]] = []

    def vertex(token: str) -> int:
        return index.setdefault(_token_value(token), len(index))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _tokens(line)
        if not tokens:
            continue
        if len(tokens) > 2:
            raise GraphFormatError("expected 'u v' or a single vertex", line_no, tokens[2][1])
        if len(tokens) == 1:
            vertex(tokens[0][0])
            continue
        (a, _), (b, column) = tokens
        if _token_value(a) == _token_value(b):
            raise GraphFormatError(f"loop at vertex {a}", line_no, column)
        edges.append((vertex(a), vertex(b)))
    names = list(index)
    return Graph.from_edges(len(names), edges, names=names)


def parse_dimacs(text: str) -> Graph:
    n: Optional[int] = None
    declared = 0
    edges: List[Tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens(raw)
        if not tokens or tokens[0][0] == "c":
            continue
        head = tokens[0][0]
        if head == "p":
            if n is not None:
                raise GraphFormatError("second problem line", line_no, 1)
            if len(tokens) != 4 or tokens[1][0] not in ("edge", "col"):
                raise GraphFormatError("expected 'p edge <n> <m>'", line_no, 1)
            for token, column in tokens[2:]:
                if not token.isdigit():
                    raise GraphFormatError(f"expected a count, found {token!r}", line_no, column)
            n, declared = int(tokens[2][0]), int(tokens[3][0])
        elif head == "e":
            if n is None:
                raise GraphFormatError("edge before the problem line", line_no, 1)
            if len(tokens) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", line_no, 1)
            pair = []
            for token, column in tokens[1:]:
                if not token.isdigit() or not 1 <= int(token) <= n:
                    raise GraphFormatError(f"vertex {token!r} outside 1..{n}", line_no, column)
                pair.append(int(token) - 1)
            if pair[0] == pair[1]:
                raise GraphFormatError(f"loop at vertex {pair[0] + 1}", line_no, tokens[2][1])
            edges.append((pair[0], pair[1]))
        else:
            raise GraphFormatError(f"unknown line type {head!r}", line_no, 1)
    if n is None:
        raise GraphFormatError("missing problem line", 0, 0)
    g = Graph.from_edges(n, edges)
    if g.edge_count() != declared:
        logger.warning("DIMACS header declares %d edges, found %d distinct", declared, g.edge_count())
    return g


def parse_json_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(data, dict) or "n" not in data:
        raise GraphFormatError("expected an object with 'n' and 'edges'", 1, 1)
    n = data["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError("'n' must be a non-negative integer", 1, 1)
    edges = data.get("edges", [])
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e) for e in edges
    ):
        raise GraphFormatError("'edges' must be a list of [u, v] integer pairs", 1, 1)
    names = data.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise GraphFormatError("'names' must list one name per vertex", 1, 1)
    try:
        return Graph.from_edges(n, [(u, v) for u, v in edges], names=names)
    except InvalidVertexError as exc:
        raise GraphFormatError(str(exc), 1, 1) from exc


PARSERS = {"edges": parse_edge_list, "dimacs": parse_dimacs, "json": parse_json_graph}


def detect_format(path: str, text: str) -> str:
    """Choose a format from the suffix, falling back to the first meaningful line."""
    suffix = Path(path).suffix.lower()
    if suffix in _SUFFIXES:
        return _SUFFIXES[suffix]
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("{"):
            return "json"
        if line.startswith(("c ", "p ")) or line == "c":
            return "dimacs"
        return "edges"
    return "edges"


def read_graph(path: str, fmt: str = "auto") -> Graph:
    """Load a graph file.

    Args:
        path (str): File to read
        fmt (str): One of auto, edges, dimacs, json

    Returns:
        Graph: The parsed graph

    Raises:
        GraphFormatError: Malformed content, with line and column
        OSError: The file cannot be read
    """
    text = read_text_file(path)
    chosen = detect_format(path, text) if fmt == "auto" else fmt
    if chosen not in PARSERS:
        raise GraphFormatError(f"unknown graph format {fmt!r}")
    logger.debug("reading %s as %s", path, chosen)
    return PARSERS[chosen](text)


def write_edge_list(g: Graph) -> str:
    lines = [f"# n={g.n} m={g.edge_count()}"]
    lines.extend(str(g.vertex_name(v)) for v in range(g.n))
    lines.extend(f"{g.vertex_name(u)} {g.vertex_name(v)}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count()}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_json_graph(g: Graph) -> str:
    data = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if tuple(g.names) != tuple(range(g.n)):
        data["names"] = [name if isinstance(name, (int, str)) else str(name) for name in g.names]
    return json.dumps(data, sort_keys=True) + "\n"


WRITERS = {"edges": write_edge_list, "dimacs": write_dimacs, "json": write_json_graph}


def format_graph(g: Graph, fmt: str = "json") -> str:
    if fmt not in WRITERS:
        raise GraphFormatError(f"unknown graph format {fmt!r}")
    return WRITERS[fmt](g)


def read_expression(path: str) -> CwdExpr:
    """Parse an expression file; blank lines and '#' comment lines are ignored."""
    text = read_text_file(path)
    kept = "\n".join("" if line.lstrip().startswith("#") else line for line in text.splitlines())
    return parse(kept)


def _dot_id(name: Hashable) -> str:
    return '"' + str(name).replace('"', '\\"') + '"'


def to_dot(
    g: Graph,
    colours: Optional[Sequence[int]] = None,
    highlight: Sequence[int] = (),
    name: str = "G",
) -> str:
    """Graphviz text for g; colour classes become node colours and highlight edges are bold."""
    marked = set(highlight)
    lines = [f"graph {name} {{", "  node [style=filled, fillcolor=white];"]
    for v in range(g.n):
        attrs = [f"label={_dot_id(g.vertex_name(v))}"]
        if colours is not None:
            attrs.append(f"fillcolor={DOT_PALETTE[colours[v] % len(DOT_PALETTE)]}")
        if v in marked:
            attrs.append("penwidth=2")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges():
        style = " [penwidth=2]" if u in marked and v in marked else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
