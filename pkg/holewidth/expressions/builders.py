"""Labelling constructions that turn a partition into cliques into a k-expression.

Every builder runs the same partner walk. Each clique S has a default relation
to every other clique (adjacent or not); two vertices in different cliques
are partners when their adjacency disagrees with that default. Vertices are
created one at a time. A new vertex gets a live label, is joined to the old
class of every clique it is adjacent to by default and to every live vertex
it is adjacent to, and a vertex is relabelled to (S, old) as soon as all of
its partners exist. Partners are therefore never both old, and every edge is
created exactly when its later endpoint appears.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..core.graph import Graph, iter_bits, to_mask, vertex_set
from ..errors import ExpressionError, PreconditionError
from .cwd import (
    Create,
    CwdExpr,
    Join,
    Label,
    Relabel,
    Union,
    expression_labels,
    new,
    old,
    spine_step,
)

logger = logging.getLogger(__name__)

Part = Tuple[str, Tuple[int, ...]]

SPARSE = "adjacent-at-most-one"
DENSE = "non-adjacent-at-most-one"
JOIN = "join"
COJOIN = "cojoin"


@dataclass(frozen=True)
class WalkResult:
    expr: Optional[CwdExpr]
    max_live: int
    spare_labels: int


def _spare(k: int) -> Label:
    return Label.tag("spare" if k == 0 else f"spare{k + 1}", "new2")


def _check_parts(builder: str, g: Graph, parts: Sequence[Part]) -> Dict[int, int]:
    part_of: Dict[int, int] = {}
    names = set()
    for index, (name, members) in enumerate(parts):
        if name in names:
            raise PreconditionError(builder, f"clique name {name!r} used twice")
        names.add(name)
        vertex_set(g, members)
        for v in members:
            if v in part_of:
                raise PreconditionError(builder, "cliques overlap", (v,))
            part_of[v] = index
        for u, v in itertools.combinations(sorted(members), 2):
            if not g.adjacent(u, v):
                raise PreconditionError(builder, f"{name} is not a clique", (u, v))
    return part_of


def majority_defaults(g: Graph, parts: Sequence[Part]) -> Dict[Tuple[int, int], bool]:
    """Adjacent by default when more than half of the cross pairs are edges."""
    masks = [to_mask(members) for _, members in parts]
    defaults = {}
    for p, q in itertools.combinations(range(len(parts)), 2):
        edges = sum((g.rows[v] & masks[q]).bit_count() for v in parts[p][1])
        dense = 2 * edges > len(parts[p][1]) * len(parts[q][1])
        defaults[(p, q)] = defaults[(q, p)] = dense
    return defaults


def partner_masks(
    g: Graph, parts: Sequence[Part], defaults: Mapping[Tuple[int, int], bool]
) -> Dict[int, int]:
    masks = [to_mask(members) for _, members in parts]
    partners: Dict[int, int] = {}
    for p, (_, members) in enumerate(parts):
        for v in members:
            mask = 0
            for q in range(len(parts)):
                if q == p:
                    continue
                if defaults[(p, q)]:
                    mask |= masks[q] & ~g.rows[v]
                else:
                    mask |= masks[q] & g.rows[v]
            partners[v] = mask
    return partners


def _dfs_order(partners: Mapping[int, int]) -> List[int]:
    order: List[int] = []
    seen = set()
    for root in sorted(partners):
        if root in seen:
            continue
        component = []
        frontier = [root]
        seen_component = {root}
        while frontier:
            v = frontier.pop()
            component.append(v)
            for u in iter_bits(partners[v]):
                if u not in seen_component:
                    seen_component.add(u)
                    frontier.append(u)
        start = min(component, key=lambda v: (partners[v].bit_count(), v))
        stack = [start]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            stack.extend(sorted((u for u in iter_bits(partners[v]) if u not in seen), reverse=True))
    return order


def run_partner_walk(
    g: Graph,
    parts: Sequence[Part],
    defaults: Optional[Mapping[Tuple[int, int], bool]] = None,
    order: Optional[Sequence[int]] = None,
    builder: str = "partner_walk",
) -> WalkResult:
    """Run the walk over named cliques and report the live-label usage."""
    parts = [(name, tuple(sorted(members))) for name, members in parts]
    part_of = _check_parts(builder, g, parts)
    if defaults is None:
        defaults = majority_defaults(g, parts)
    partners = partner_masks(g, parts, defaults)
    if order is None:
        order = _dfs_order(partners)
    elif sorted(order) != sorted(part_of):
        raise PreconditionError(builder, "explicit order is not a permutation of the clique vertices")

    e: Optional[CwdExpr] = None
    live: Dict[int, Label] = {}
    taken: set = set()
    has_old = [False] * len(parts)
    pending: Dict[int, int] = {}
    created = 0
    max_live = 0
    spares_used = 0

    for v in order:
        p = part_of[v]
        label = new(parts[p][0])
        k = 0
        while label in taken:
            label = _spare(k)
            k += 1
        spares_used = max(spares_used, k)
        taken.add(label)
        leaf = Create(label, v)
        e = leaf if e is None else Union(e, leaf)
        for q, (name, _) in enumerate(parts):
            if has_old[q] and (q == p or defaults[(p, q)]):
                e = Join(label, old(name), e)
        for u, u_label in live.items():
            if g.adjacent(u, v):
                e = Join(label, u_label, e)
        live[v] = label
        created |= 1 << v
        max_live = max(max_live, len(live))
        pending[v] = (partners[v] & ~created).bit_count()
        for u in iter_bits(partners[v] & created):
            pending[u] -= 1
        for u in sorted(iter_bits((partners[v] & created) | 1 << v)):
            if u in live and pending[u] == 0:
                u_label = live.pop(u)
                taken.discard(u_label)
                name = parts[part_of[u]][0]
                e = Relabel(u_label, old(name), e)
                has_old[part_of[u]] = True
    logger.debug("%s: %d cliques, max live %d, spare labels %d", builder, len(parts), max_live, spares_used)
    return WalkResult(e, max_live, spares_used)


def label_via_partner_walk(
    cliques: Sequence[Sequence[int]],
    g: Graph,
    names: Optional[Sequence[str]] = None,
    defaults: Optional[Mapping[Tuple[int, int], bool]] = None,
    order: Optional[Sequence[int]] = None,
) -> Optional[CwdExpr]:
    """Label any partition into cliques; width depends on how partners chain."""
    names = list(names) if names is not None else [f"s{i}" for i in range(len(cliques))]
    return run_partner_walk(g, list(zip(names, cliques)), defaults, order).expr


def clique_expression(name: str, members: Sequence[int], g: Graph) -> Optional[CwdExpr]:
    """A single clique: create, join to the old class, retire. Two labels."""
    return run_partner_walk(g, [(name, members)], {}, builder="clique").expr


def _check_at_most_one(builder: str, g: Graph, a: Sequence[int], b: Sequence[int], adjacent: bool) -> None:
    b_mask = to_mask(b)
    for x in a:
        hits = g.rows[x] & b_mask if adjacent else b_mask & ~g.rows[x]
        if hits.bit_count() > 1:
            two = list(iter_bits(hits))[:2]
            what = "neighbours" if adjacent else "non-neighbours"
            raise PreconditionError(builder, f"vertex {x} has two {what} across", (x, *two))


def label_via_pairs(
    s: Sequence[int], a: Sequence[int], g: Graph, names: Tuple[str, str] = ("s", "a")
) -> Optional[CwdExpr]:
    """Two cliques where each vertex has at most one neighbour on the other side. Width at most 4."""
    _check_at_most_one("label_via_pairs", g, s, a, adjacent=True)
    _check_at_most_one("label_via_pairs", g, a, s, adjacent=True)
    parts = [(names[0], tuple(s)), (names[1], tuple(a))]
    return run_partner_walk(g, parts, {(0, 1): False, (1, 0): False}, builder="label_via_pairs").expr


def label_via_nonpairs(
    s: Sequence[int], a: Sequence[int], g: Graph, names: Tuple[str, str] = ("s", "a")
) -> Optional[CwdExpr]:
    """Two cliques where each vertex misses at most one vertex on the other side. Width at most 4."""
    _check_at_most_one("label_via_nonpairs", g, s, a, adjacent=False)
    _check_at_most_one("label_via_nonpairs", g, a, s, adjacent=False)
    parts = [(names[0], tuple(s)), (names[1], tuple(a))]
    return run_partner_walk(g, parts, {(0, 1): True, (1, 0): True}, builder="label_via_nonpairs").expr


def infer_rows_spec(
    cliques: Sequence[Sequence[int]], g: Graph
) -> Tuple[List[str], Dict[Tuple[int, int], str]]:
    """Read the consecutive modes and non-consecutive relations off g, or raise."""
    t = len(cliques)
    modes: List[str] = []
    for i in range(t):
        a, b = cliques[i], cliques[(i + 1) % t]
        try:
            _check_at_most_one("label_via_rows", g, a, b, adjacent=True)
            _check_at_most_one("label_via_rows", g, b, a, adjacent=True)
            modes.append(SPARSE)
        except PreconditionError:
            _check_at_most_one("label_via_rows", g, a, b, adjacent=False)
            _check_at_most_one("label_via_rows", g, b, a, adjacent=False)
            modes.append(DENSE)
    relations: Dict[Tuple[int, int], str] = {}
    for i, k in itertools.combinations(range(t), 2):
        if k == i + 1 or (i == 0 and k == t - 1):
            continue
        edges = sum((g.rows[v] & to_mask(cliques[k])).bit_count() for v in cliques[i])
        relations[(i, k)] = JOIN if edges else COJOIN
    return modes, relations


def label_via_rows(
    cliques: Sequence[Sequence[int]],
    g: Graph,
    modes: Optional[Sequence[str]] = None,
    relations: Optional[Mapping[Tuple[int, int], str]] = None,
    names: Optional[Sequence[str]] = None,
) -> Optional[CwdExpr]:
    """Cliques S_0..S_{t-1} in a cyclic row; width at most 2t+1.

    Args:
        cliques (Sequence[Sequence[int]]): At least three disjoint cliques
        g (Graph): Graph containing them
        modes (Optional[Sequence[str]]): Per consecutive pair (i, i+1 mod t), SPARSE or DENSE
        relations (Optional[Mapping]): Per non-consecutive pair (i, k), i < k, JOIN or COJOIN
        names (Optional[Sequence[str]]): Label names for the cliques

    Returns:
        Optional[CwdExpr]: Expression for g restricted to the union of the cliques
    """
    t = len(cliques)
    if t < 3:
        raise PreconditionError("label_via_rows", f"needs at least three cliques, got {t}")
    if modes is None or relations is None:
        inferred_modes, inferred_relations = infer_rows_spec(cliques, g)
        modes = inferred_modes if modes is None else modes
        relations = inferred_relations if relations is None else relations
    defaults: Dict[Tuple[int, int], bool] = {}
    for i in range(t):
        j = (i + 1) % t
        mode = modes[i]
        if mode not in (SPARSE, DENSE):
            raise PreconditionError("label_via_rows", f"unknown mode {mode!r} for pair {i},{j}")
        adjacent = mode == SPARSE
        _check_at_most_one("label_via_rows", g, cliques[i], cliques[j], adjacent)
        _check_at_most_one("label_via_rows", g, cliques[j], cliques[i], adjacent)
        defaults[(i, j)] = defaults[(j, i)] = not adjacent
    for i, k in itertools.combinations(range(t), 2):
        if (i, k) in defaults:
            continue
        kind = relations.get((i, k))
        if kind not in (JOIN, COJOIN):
            raise PreconditionError("label_via_rows", f"pair {i},{k} needs a join or cojoin relation")
        k_mask = to_mask(cliques[k])
        for v in cliques[i]:
            hits = g.rows[v] & k_mask
            if (kind == JOIN and hits != k_mask) or (kind == COJOIN and hits):
                bad = next(iter_bits(k_mask & ~hits if kind == JOIN else hits))
                raise PreconditionError("label_via_rows", f"pair {i},{k} is not a {kind}", (v, bad))
        defaults[(i, k)] = defaults[(k, i)] = kind == JOIN
    names = list(names) if names is not None else [f"s{i}" for i in range(t)]
    return run_partner_walk(g, list(zip(names, cliques)), defaults, builder="label_via_rows").expr


def label_clique_partition(
    cliques: Sequence[Sequence[int]], g: Graph, names: Optional[Sequence[str]] = None
) -> Optional[CwdExpr]:
    """Cliques where every vertex has at most one neighbour in each other clique and
    its neighbours outside its own clique form a clique. Width at most 2k."""
    masks = [to_mask(c) for c in cliques]
    for i, members in enumerate(cliques):
        foreign = 0
        for j, mask in enumerate(masks):
            if j != i:
                foreign |= mask
        for v in members:
            for j, mask in enumerate(masks):
                if j != i and (g.rows[v] & mask).bit_count() > 1:
                    raise PreconditionError(
                        "label_clique_partition", f"vertex {v} has two neighbours in clique {j}", (v,)
                    )
            outside = list(iter_bits(g.rows[v] & foreign))
            for x, y in itertools.combinations(outside, 2):
                if not g.adjacent(x, y):
                    raise PreconditionError(
                        "label_clique_partition", f"outside neighbours of {v} are not a clique", (v, x, y)
                    )
    k = len(cliques)
    defaults = {(i, j): False for i in range(k) for j in range(k) if i != j}
    names = list(names) if names is not None else [f"s{i}" for i in range(k)]
    return run_partner_walk(g, list(zip(names, cliques)), defaults, builder="label_clique_partition").expr


def interleaved_order(
    t_set: Sequence[int], y_set: Sequence[int], y_next: Sequence[int], g: Graph
) -> List[int]:
    """Each T vertex, then the Y vertices it misses, each followed by its missing Y' vertex."""
    order: List[int] = []
    placed = set()
    y_next_mask = to_mask(y_next)

    def place(v: int) -> None:
        if v not in placed:
            placed.add(v)
            order.append(v)

    for t in sorted(t_set):
        place(t)
        for y in sorted(y_set):
            if y in placed or g.adjacent(t, y):
                continue
            place(y)
            for z in iter_bits(y_next_mask & ~g.rows[y]):
                place(z)
    for v in sorted(itertools.chain(t_set, y_set, y_next)):
        place(v)
    return order


def label_interleaved(
    t_set: Sequence[int],
    y_set: Sequence[int],
    y_next: Sequence[int],
    g: Graph,
    names: Tuple[str, str, str] = ("t", "y", "y2"),
) -> Optional[CwdExpr]:
    """A T clique joined to Y' whose vertices may miss many Y vertices, while each Y
    vertex misses at most one T vertex and Y, Y' miss at most one vertex each way."""
    builder = "label_interleaved"
    _check_at_most_one(builder, g, y_set, t_set, adjacent=False)
    _check_at_most_one(builder, g, y_set, y_next, adjacent=False)
    _check_at_most_one(builder, g, y_next, y_set, adjacent=False)
    y_mask = to_mask(y_next)
    for t in t_set:
        if g.rows[t] & y_mask != y_mask:
            missing = next(iter_bits(y_mask & ~g.rows[t]))
            raise PreconditionError(builder, "T and Y' are not a join", (t, missing))
    parts = [(names[0], tuple(t_set)), (names[1], tuple(y_set)), (names[2], tuple(y_next))]
    defaults = {}
    for p, q in itertools.permutations(range(3), 2):
        defaults[(p, q)] = True
    order = interleaved_order(t_set, y_set, y_next, g)
    return run_partner_walk(g, parts, defaults, order, builder=builder).expr


def extras_expression(g: Graph, extras: Sequence[int], labels: Mapping[int, Label]) -> Optional[CwdExpr]:
    """G[extras] with one permanent label per vertex."""
    e: Optional[CwdExpr] = None
    placed: List[int] = []
    for x in extras:
        leaf = Create(labels[x], x)
        e = leaf if e is None else Union(e, leaf)
        for y in placed:
            if g.adjacent(x, y):
                e = Join(labels[x], labels[y], e)
        placed.append(x)
    return e


def attach_extra_vertices(
    e: Optional[CwdExpr], g: Graph, extras: Sequence[int]
) -> Optional[CwdExpr]:
    """Add extra vertices of g to a linear expression for g minus extras.

    Each extra vertex keeps its own integer label. Every create of e is
    rewritten to create with a temporary label, join that label to the
    adjacent extra vertices, then relabel to the original label, so the width
    grows by at most len(extras) + 1.

    Raises:
        ExpressionError: e is not linear
    """
    extras = list(extras)
    if not extras:
        return e
    vertex_set(g, extras)
    used = expression_labels(e) if e is not None else set()
    first = max((label.value for label in used if label.is_int), default=0) + 1
    labels = {x: Label.integer(first + i) for i, x in enumerate(extras)}
    base = extras_expression(g, extras, labels)
    if e is None:
        return base
    k = 0
    temp = Label.tag("attach", "new")
    while temp in used:
        k += 1
        temp = Label.tag(f"attach{k + 1}", "new")

    def hook(expr: CwdExpr, leaf: Create) -> CwdExpr:
        for x in extras:
            if g.adjacent(x, leaf.vertex):
                expr = Join(temp, labels[x], expr)
        return Relabel(temp, leaf.label, expr)

    spine: List[Tuple[str, object]] = []
    node = e
    while not isinstance(node, Create):
        if isinstance(node, Union):
            rest, leaf = spine_step(node)
            spine.append(("union", leaf))
            node = rest
        elif isinstance(node, Relabel):
            spine.append(("relabel", node))
            node = node.child
        elif isinstance(node, Join):
            spine.append(("join", node))
            node = node.child
        else:
            raise ExpressionError(f"unknown node {node!r}")
    rebuilt = hook(Union(base, Create(temp, node.vertex)), node)
    for kind, item in reversed(spine):
        if kind == "union":
            rebuilt = hook(Union(rebuilt, Create(temp, item.vertex)), item)
        elif kind == "relabel":
            rebuilt = Relabel(item.source, item.target, rebuilt)
        else:
            rebuilt = Join(item.a, item.b, rebuilt)
    return rebuilt
