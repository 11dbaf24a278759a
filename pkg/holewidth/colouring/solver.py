"""Maximum clique, exact colouring by DSATUR branch and bound, and the dichotomy pipeline."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..config import Settings
from ..core.graph import Graph, VertexSet
from ..errors import DichotomyError
from ..synthesis.pipeline import synthesize
from ..synthesis.results import PerfectCertificate, SynthesisResult

logger = logging.getLogger(__name__)

PERFECT = "perfect"
BOUNDED_CWD = "bounded-cwd"


def max_clique(g: Graph) -> Tuple[int, VertexSet]:
    """Clique number and a largest clique, smallest vertices first."""
    if g.n == 0:
        return 0, ()
    clique, size = nx.max_weight_clique(g.to_networkx(), weight=None)
    return int(size), tuple(sorted(clique))


def canonical_colours(assignment: Sequence[int]) -> List[int]:
    """Renumber colours by first occurrence in vertex order."""
    mapping: Dict[int, int] = {}
    return [mapping.setdefault(c, len(mapping)) for c in assignment]


def greedy_dsatur(g: Graph) -> List[int]:
    """DSATUR greedy colouring: most saturated vertex first, ties by degree then index."""
    colours = [-1] * g.n
    seen: List[set] = [set() for _ in range(g.n)]
    uncoloured = set(range(g.n))
    while uncoloured:
        v = max(uncoloured, key=lambda u: (len(seen[u]), g.degree(u), -u))
        c = 0
        while c in seen[v]:
            c += 1
        colours[v] = c
        uncoloured.remove(v)
        for u in g.neighbour_list(v):
            if u in uncoloured:
                seen[u].add(c)
    return colours


@dataclass
class ColouringResult:
    chi: Optional[int]
    assignment: List[int]
    omega: int
    lower: int
    upper: int
    exact: bool
    nodes: int = 0
    branch: Optional[str] = None
    certificate: Optional[Union[SynthesisResult, PerfectCertificate]] = field(default=None, repr=False)

    def colour_count(self) -> int:
        return len(set(self.assignment))

    def to_dict(self, g: Optional[Graph] = None) -> Dict:
        data = {
            "chi": self.chi,
            "exact": self.exact,
            "lower": self.lower,
            "upper": self.upper,
            "omega": self.omega,
            "assignment": {
                (str(g.vertex_name(v)) if g is not None else str(v)): c for v, c in enumerate(self.assignment)
            },
        }
        if self.branch is not None:
            data["branch"] = self.branch
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_dict(g)
        return data


def exact_chromatic(
    g: Graph,
    lower: Optional[int] = None,
    upper_hint: Optional[Sequence[int]] = None,
    node_budget: int = 2_000_000,
) -> ColouringResult:
    """Chromatic number by DSATUR-ordered branch and bound.

    A largest clique is coloured 0..omega-1 up front. The search stops as soon
    as it meets the lower bound; when the node budget runs out the result is
    an interval with a proper colouring that achieves the upper end.

    Args:
        g (Graph): Graph to colour
        lower (Optional[int]): Known lower bound; the clique number is used if larger
        upper_hint (Optional[Sequence[int]]): A proper colouring to start from
        node_budget (int): Maximum search nodes

    Returns:
        ColouringResult: chi, assignment, bounds and whether the answer is exact
    """
    omega, clique = max_clique(g)
    lower = max(lower or 0, omega)
    if g.n == 0:
        return ColouringResult(0, [], 0, 0, 0, True)
    best = list(upper_hint) if upper_hint is not None else greedy_dsatur(g)
    best_k = len(set(best))
    colours = [-1] * g.n
    saturation: List[Dict[int, int]] = [dict() for _ in range(g.n)]
    nodes = 0
    exhausted = False

    def paint(v: int, c: int) -> None:
        colours[v] = c
        for u in g.neighbour_list(v):
            saturation[u][c] = saturation[u].get(c, 0) + 1

    def unpaint(v: int, c: int) -> None:
        colours[v] = -1
        for u in g.neighbour_list(v):
            count = saturation[u][c] - 1
            if count:
                saturation[u][c] = count
            else:
                del saturation[u][c]

    for c, v in enumerate(clique):
        paint(v, c)

    def choose() -> int:
        candidates = [v for v in range(g.n) if colours[v] == -1]
        if not candidates:
            return -1
        return max(candidates, key=lambda u: (len(saturation[u]), g.degree(u), -u))

    def search(used: int) -> bool:
        nonlocal best, best_k, nodes, exhausted
        if nodes >= node_budget:
            exhausted = True
            return True
        nodes += 1
        v = choose()
        if v < 0:
            if used < best_k:
                best_k, best = used, colours[:]
                logger.debug("improved colouring to %d colours after %d nodes", used, nodes)
            return best_k <= lower
        for c in range(used + 1):
            if c in saturation[v]:
                continue
            if max(used, c + 1) >= best_k:
                break
            paint(v, c)
            done = search(max(used, c + 1))
            unpaint(v, c)
            if done:
                return True
        return False

    if best_k > lower:
        search(omega)
    if exhausted:
        logger.warning("node budget %d exhausted: chromatic number in [%d, %d]", node_budget, lower, best_k)
    assignment = canonical_colours(best)
    exact = not exhausted or best_k == lower
    return ColouringResult(best_k if exact else None, assignment, omega, lower if not exact else best_k, best_k, exact, nodes)


def colour_class_member(g: Graph, settings: Optional[Settings] = None) -> ColouringResult:
    """Colour a class member and attach the dichotomy certificate.

    Raises:
        NotInClassError: g contains a claw, 4K1, bridge or C4-twin
        DichotomyError: g has no C5, C6 or C7 but needs more colours than its clique number
    """
    settings = settings or Settings()
    certificate = synthesize(g, settings)
    result = exact_chromatic(g, node_budget=settings.node_budget)
    result.certificate = certificate
    if isinstance(certificate, PerfectCertificate):
        result.branch = PERFECT
        if result.exact and result.chi != result.omega:
            logger.error("perfect branch with chi %s != omega %d", result.chi, result.omega)
            raise DichotomyError(result.chi, result.omega)
    else:
        result.branch = BOUNDED_CWD
    logger.info("coloured with %d colours on the %s branch", result.upper, result.branch)
    return result
