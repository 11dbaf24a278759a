"""Turn the retained sets of a decomposition into one linear k-expression.

Sets are refined, grouped into blocks (connected components of the
"neither join nor cojoin" relation), each block is labelled by the narrowest
builder whose preconditions hold, and the blocks are chained with graft. Sets
in different blocks are then joined on their old classes where needed.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..config import EMPTINESS_RULES, SPLIT_ALLOWANCE
from ..core.graph import Graph, RelationKind, relation_between
from ..errors import PreconditionError
from ..expressions.builders import (
    clique_expression,
    label_clique_partition,
    label_interleaved,
    label_via_nonpairs,
    label_via_pairs,
    label_via_partner_walk,
    label_via_rows,
)
from ..expressions.cwd import CwdExpr, Join, graft, old, width

logger = logging.getLogger(__name__)

Part = Tuple[str, Tuple[int, ...]]

MAX_ROWS_PARTS = 6


def family_maximum(k: int, family: str) -> int:
    """Largest number of sets of one family that the emptiness rules allow at once."""
    rules = EMPTINESS_RULES.get(k, {}).get(family)
    if rules is None:
        return 1 if (k, family) == (5, "Z") else 0
    for size in range(k, 0, -1):
        for chosen in itertools.combinations(range(k), size):
            present = set(chosen)
            if all(
                not all((i + o) % k in present for o in offsets) for offsets in rules for i in range(k)
            ):
                return size
    return 0


def max_simultaneous_sets(k: int) -> int:
    families = set(EMPTINESS_RULES.get(k, {})) | ({"Z"} if k == 5 else set())
    return sum(family_maximum(k, family) for family in sorted(families))


def core_budget(k: int) -> int:
    """Two labels per set that can be non-empty at once, plus two spare slots."""
    return 2 * (max_simultaneous_sets(k) + SPLIT_ALLOWANCE.get(k, 0)) + 2


def homogeneous_kind(g: Graph, a: Sequence[int], b: Sequence[int]) -> Optional[RelationKind]:
    report = relation_between(g, a, b)
    if report.forward.kind in (RelationKind.JOIN, RelationKind.COJOIN):
        return report.forward.kind
    return None


@dataclass(frozen=True)
class Split:
    source: str
    against: str
    far: Tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.source}-off-{self.against}"


def refine_parts(g: Graph, parts: Sequence[Part], max_splits: int) -> Tuple[List[Part], List[Split]]:
    """Split off the vertices of a set that see nothing of a set the rest is densely tied to.

    After the split each vertex of the dense side misses at most one vertex of
    the remaining part, so the walk keeps few vertices live.
    """
    refined = [(name, tuple(sorted(members))) for name, members in parts]
    splits: List[Split] = []
    if max_splits <= 0:
        return refined, splits
    index = 0
    while index < len(refined) and len(splits) < max_splits:
        name, members = refined[index]
        for other_name, other in list(refined):
            if other_name == name or len(splits) >= max_splits:
                continue
            if homogeneous_kind(g, members, other) is not None:
                continue
            other_mask = sum(1 << v for v in other)
            far = tuple(v for v in members if not g.rows[v] & other_mask)
            near = tuple(v for v in members if g.rows[v] & other_mask)
            if not far or not near:
                continue
            backward = relation_between(g, near, other).backward
            if backward.kind is RelationKind.JOIN or (backward.kind is RelationKind.DENSE and backward.k <= 1):
                split = Split(name, other_name, far)
                refined[index] = (name, near)
                refined.append((split.name, far))
                splits.append(split)
                members = near
                logger.debug("split %d vertices of %s off %s", len(far), name, other_name)
        index += 1
    return refined, splits


def plan_blocks(g: Graph, parts: Sequence[Part]) -> List[List[int]]:
    """Indices of parts grouped by the "neither join nor cojoin" relation."""
    entangled = nx.Graph()
    entangled.add_nodes_from(range(len(parts)))
    for p, q in itertools.combinations(range(len(parts)), 2):
        if homogeneous_kind(g, parts[p][1], parts[q][1]) is None:
            entangled.add_edge(p, q)
    return sorted(sorted(component) for component in nx.connected_components(entangled))


@dataclass
class BlockBuild:
    names: Tuple[str, ...]
    builder: str
    expr: Optional[CwdExpr]
    width: int

    def to_dict(self) -> Dict:
        return {"sets": list(self.names), "builder": self.builder, "width": self.width}


def _candidates(g: Graph, block: Sequence[Part]):
    names = [name for name, _ in block]
    cliques = [members for _, members in block]
    if len(block) == 1:
        yield "clique", lambda: clique_expression(names[0], cliques[0], g)
        return
    if len(block) == 2:
        yield "pairs", lambda: label_via_pairs(cliques[0], cliques[1], g, (names[0], names[1]))
        yield "nonpairs", lambda: label_via_nonpairs(cliques[0], cliques[1], g, (names[0], names[1]))
    else:
        yield "clique_partition", lambda: label_clique_partition(cliques, g, names)
    if len(block) == 3:
        for order in itertools.permutations(range(3)):
            picked = [block[i] for i in order]
            yield "interleaved", lambda picked=picked: label_interleaved(
                picked[0][1], picked[1][1], picked[2][1], g, tuple(name for name, _ in picked)
            )
    if 3 <= len(block) <= MAX_ROWS_PARTS:
        seen = set()
        for rest in itertools.permutations(range(1, len(block))):
            order = (0,) + rest
            if tuple(reversed(order[1:])) in seen:
                continue
            seen.add(order[1:])
            picked = [block[i] for i in order]
            yield "rows", lambda picked=picked: label_via_rows(
                [members for _, members in picked], g, names=[name for name, _ in picked]
            )
    yield "partner_walk", lambda: label_via_partner_walk(cliques, g, names)


def build_block(g: Graph, block: Sequence[Part], prefer: Sequence[str] = ()) -> BlockBuild:
    """Label one block with the builder giving the fewest labels.

    Ties go to the first builder named in prefer, then to the earlier candidate.
    """
    best: Optional[BlockBuild] = None
    best_rank = len(prefer)
    for builder, make in _candidates(g, block):
        try:
            expr = make()
        except PreconditionError as exc:
            logger.debug("%s rejected for %s: %s", builder, [name for name, _ in block], exc)
            continue
        labels = width(expr) if expr is not None else 0
        rank = prefer.index(builder) if builder in prefer else len(prefer)
        if best is None or (labels, rank) < (best.width, best_rank):
            best = BlockBuild(tuple(name for name, _ in block), builder, expr, labels)
            best_rank = rank
    if best is None:
        raise PreconditionError("build_block", "no builder accepts the block", tuple(v for _, m in block for v in m[:1]))
    logger.debug("block %s labelled by %s with %d labels", list(best.names), best.builder, best.width)
    return best


@dataclass
class Assembly:
    expr: Optional[CwdExpr]
    parts: List[Part]
    splits: List[Split] = field(default_factory=list)
    blocks: List[BlockBuild] = field(default_factory=list)
    cross_joins: List[Tuple[str, str]] = field(default_factory=list)


def assemble(g: Graph, parts: Sequence[Part], max_splits: int = 0, prefer: Sequence[str] = ()) -> Assembly:
    """Expression for g restricted to the union of parts, each of which must be a clique."""
    refined, splits = refine_parts(g, [p for p in parts if p[1]], max_splits)
    blocks = plan_blocks(g, refined)
    block_of = {p: b for b, block in enumerate(blocks) for p in block}
    acc: Optional[CwdExpr] = None
    builds: List[BlockBuild] = []
    for block in blocks:
        build = build_block(g, [refined[p] for p in block], prefer)
        builds.append(build)
        acc = graft(acc, build.expr)
    joins: List[Tuple[str, str]] = []
    for p, q in itertools.combinations(range(len(refined)), 2):
        if block_of[p] == block_of[q]:
            continue
        if homogeneous_kind(g, refined[p][1], refined[q][1]) is RelationKind.JOIN:
            acc = Join(old(refined[p][0]), old(refined[q][0]), acc)
            joins.append((refined[p][0], refined[q][0]))
    return Assembly(acc, refined, splits, builds, joins)
