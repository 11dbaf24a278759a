"""Planted class members around a hole, and rejection sampling.

A planted instance is a hole plus one clique per requested set, attached to
the hole by the set's trace. Cross-set edges are drawn from the relation the
property tables allow for the pair; retries drift towards plain joins and
cojoins, which satisfy every conditional property.
"""

import json
import logging
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import yaml

from ..config import DEFAULT_THRESHOLD, HOLE_TEMPLATES, MISS_LIMITS, SUPPORTED_HOLES, UNINDEXED_C5
from ..core.graph import Graph
from ..core.patterns import find_hole, is_class_member
from ..decomposition.classify import SetId, classify
from ..decomposition.properties import emptiness_conflicts, verify_properties
from ..errors import ConfigError, HolewidthError, InfeasibleSpecError

logger = logging.getLogger(__name__)

JOIN = "join"
COJOIN = "cojoin"
MATCHING = "matching"
COMATCHING = "comatching"
VOCABULARY = (JOIN, COJOIN, MATCHING, COMATCHING)

_SET_NAME = re.compile(r"^([TXYZR])(\d*)$")

# (family of A, family of B, index of B minus index of A) -> allowed relation.
RELATION_TABLE: Dict[int, Dict[Tuple[str, str, int], str]] = {
    7: {
        **{("X", "X", d): r for d, r in ((1, JOIN), (2, MATCHING), (3, COJOIN), (4, COJOIN), (5, MATCHING), (6, JOIN))},
        **{("Y", "Y", d): r for d, r in ((1, COMATCHING), (3, COJOIN), (4, COJOIN), (6, COMATCHING))},
        **{("Y", "X", d): r for d, r in ((0, JOIN), (1, JOIN), (3, COJOIN), (4, COJOIN), (5, COJOIN))},
    },
    6: {
        **{("T", "T", d): r for d, r in ((2, MATCHING), (4, MATCHING))},
        **{("X", "X", d): r for d, r in ((1, COMATCHING), (2, MATCHING), (3, COJOIN), (4, MATCHING), (5, COMATCHING))},
        **{("Y", "Y", d): r for d, r in ((1, COMATCHING), (3, MATCHING), (5, COMATCHING))},
        **{("X", "T", d): r for d, r in ((0, JOIN), (1, JOIN), (2, MATCHING), (3, COJOIN), (4, COJOIN), (5, MATCHING))},
        **{("Y", "T", d): r for d, r in ((0, JOIN), (1, COJOIN), (2, JOIN), (3, COJOIN), (4, COJOIN), (5, COJOIN))},
        **{("Y", "X", d): r for d, r in ((0, JOIN), (1, JOIN), (3, COJOIN), (4, COJOIN))},
    },
    5: {
        **{("T", "T", d): r for d, r in ((1, COJOIN), (2, MATCHING), (3, MATCHING), (4, COJOIN))},
        **{("X", "X", d): r for d, r in ((1, COMATCHING), (2, MATCHING), (3, MATCHING), (4, COMATCHING))},
        **{("T", "X", d): r for d, r in ((0, JOIN), (1, MATCHING), (2, COJOIN), (3, MATCHING), (4, JOIN))},
    },
}


def parse_set_name(name: str, k: int) -> SetId:
    """'X3' -> SetId('X', 2); 'Z' and 'R' are the unindexed sets of a 5-hole."""
    match = _SET_NAME.match(name)
    if not match:
        raise ConfigError(f"unknown set name {name!r}")
    family, digits = match.groups()
    if not digits:
        if k != 5 or family not in UNINDEXED_C5:
            raise ConfigError(f"set {name!r} needs an index for a {k}-hole")
        return SetId(family)
    index = int(digits) - 1
    if family not in HOLE_TEMPLATES[k] or (k == 5 and family in UNINDEXED_C5) or not 0 <= index < k:
        raise ConfigError(f"set {name!r} does not exist around a {k}-hole")
    if k == 6 and family == "Z" and index >= 3:
        raise ConfigError(f"set {name!r} has the same trace as Z{index - 2}")
    return SetId(family, index)


@dataclass
class PlantSpec:
    """What to plant: hole length, set sizes, optional relation overrides and the seed.

    relations maps "A~B" (for example "X1~X3") to one of join, cojoin,
    matching, comatching.
    """

    hole_length: int
    sizes: Dict[str, int] = field(default_factory=dict)
    relations: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    threshold: int = DEFAULT_THRESHOLD
    mix: float = 0.5

    def set_ids(self) -> Dict[SetId, int]:
        return {parse_set_name(name, self.hole_length): size for name, size in self.sizes.items() if size > 0}

    def validate(self) -> None:
        if self.hole_length not in SUPPORTED_HOLES:
            raise ConfigError(f"hole_length must be one of {SUPPORTED_HOLES}")
        if not 0.0 <= self.mix <= 1.0:
            raise ConfigError("mix must lie in [0, 1]")
        present = self.set_ids()
        for key, relation in self.relations.items():
            if relation not in VOCABULARY:
                raise ConfigError(f"relation {relation!r} for {key} is not one of {VOCABULARY}")
            if key.count("~") != 1:
                raise ConfigError(f"relation key {key!r} must look like 'X1~X3'")
            for name in key.split("~"):
                parse_set_name(name, self.hole_length)
        k = self.hole_length
        big = {set_id: size for set_id, size in present.items() if size >= self.threshold}
        broken = emptiness_conflicts(k, big)
        if broken:
            names = [set_id.name for set_id in sorted(big, key=SetId.sort_key)]
            raise InfeasibleSpecError(self, 0, f"non-empty sets {names} break {broken}")
        for family, other, offset, limit in MISS_LIMITS.get(k, ()):
            for set_id in big:
                if set_id.family != family:
                    continue
                missed = SetId(other, (set_id.index + offset) % k)
                if present.get(missed, 0) > limit:
                    raise InfeasibleSpecError(
                        self, 0, f"{set_id.name} sees none of {missed.name}, which may hold at most {limit} vertices"
                    )

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> "PlantSpec":
        known = {"hole_length", "sizes", "relations", "seed", "threshold", "mix"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown PlantSpec fields: {sorted(unknown)}")
        spec = cls(
            hole_length=int(data["hole_length"]),
            sizes={str(k): int(v) for k, v in (data.get("sizes") or {}).items()},
            relations={str(k): str(v) for k, v in (data.get("relations") or {}).items()},
            seed=int(data.get("seed", 0)),
            threshold=int(data.get("threshold", DEFAULT_THRESHOLD)),
            mix=float(data.get("mix", 0.5)),
        )
        spec.validate()
        return spec

    @classmethod
    def load(cls, path: str) -> "PlantSpec":
        """Read a spec from a .json, .yaml or .yml file."""
        spec_path = Path(path)
        try:
            text = spec_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read plant spec {spec_path}: {exc}") from exc
        try:
            data = json.loads(text) if spec_path.suffix == ".json" else yaml.safe_load(text)
        except (json.JSONDecodeError, yaml.YAMLError) as exc:
            raise ConfigError(f"invalid plant spec {spec_path}: {exc}") from exc
        if not isinstance(data, dict) or "hole_length" not in data:
            raise ConfigError(f"{spec_path} must be a mapping with hole_length")
        return cls.from_dict(data)


def allowed_relation(k: int, a: SetId, b: SetId) -> str:
    """The table relation between two sets; pairs the tables leave open get cojoin."""
    if a.index is None or b.index is None:
        return COJOIN
    d = (b.index - a.index) % k
    table = RELATION_TABLE[k]
    if (a.family, b.family, d) in table:
        return table[(a.family, b.family, d)]
    return table.get((b.family, a.family, (-d) % k), COJOIN)


def _trace(k: int, set_id: SetId) -> List[int]:
    if set_id.index is None:
        return list(UNINDEXED_C5[set_id.family])
    return [(set_id.index + o) % k for o in HOLE_TEMPLATES[k][set_id.family]]


def _override(spec: PlantSpec, a: SetId, b: SetId) -> Optional[str]:
    for key, relation in spec.relations.items():
        left, right = key.split("~")
        pair = (parse_set_name(left, spec.hole_length), parse_set_name(right, spec.hole_length))
        if pair in ((a, b), (b, a)):
            return relation
    return None


def _cross_edges(
    rng: np.random.Generator, relation: str, a: List[int], b: List[int], mix: float
) -> List[Tuple[int, int]]:
    if relation == JOIN:
        return [(u, v) for u in a for v in b]
    if relation == COJOIN:
        return []
    if relation in (MATCHING, COMATCHING):
        pairs: List[Tuple[int, int]] = []
        if rng.random() < mix:
            left = [a[i] for i in rng.permutation(len(a))]
            right = [b[i] for i in rng.permutation(len(b))]
            size = int(rng.integers(1, min(len(a), len(b)) + 1))
            pairs = list(zip(left[:size], right[:size]))
        if relation == MATCHING:
            return pairs
        missing = set(pairs)
        return [(u, v) for u in a for v in b if (u, v) not in missing]
    raise ConfigError(f"unknown relation {relation!r}")


def build_planted(spec: PlantSpec, rng: np.random.Generator, mix: float) -> Graph:
    """One random draw for spec, without validation."""
    k = spec.hole_length
    sets = sorted(spec.set_ids().items(), key=lambda item: item[0].sort_key())
    names: List[str] = [f"h{i + 1}" for i in range(k)]
    edges: List[Tuple[int, int]] = [(i, (i + 1) % k) for i in range(k)]
    members: Dict[SetId, List[int]] = {}
    for set_id, size in sets:
        start = len(names)
        members[set_id] = list(range(start, start + size))
        names.extend(f"{set_id.name}.{j}" for j in range(size))
        block = members[set_id]
        edges.extend((u, v) for n, u in enumerate(block) for v in block[n + 1:])
        edges.extend((u, h) for u in block for h in _trace(k, set_id))
    ordered = [set_id for set_id, _ in sets]
    for n, a in enumerate(ordered):
        for b in ordered[n + 1:]:
            relation = _override(spec, a, b) or allowed_relation(k, a, b)
            edges.extend(_cross_edges(rng, relation, members[a], members[b], mix))
    return Graph.from_edges(len(names), edges, names=names)


def check_planted(g: Graph, spec: PlantSpec) -> Optional[str]:
    """Reason the draw is unusable, or None."""
    witness = is_class_member(g).first_witness()
    if witness is not None:
        return f"contains a {witness.pattern.name} on {list(witness.vertices)}"
    k = spec.hole_length
    for longer in SUPPORTED_HOLES:
        if longer > k and find_hole(g, longer) is not None:
            return f"contains an induced C{longer}"
    try:
        d = classify(g, tuple(range(k)), spec.threshold)
    except HolewidthError as exc:
        return str(exc)
    failures = verify_properties(g, d).failures
    if failures:
        return "properties fail: " + ", ".join(r.pid for r in failures)
    return None


def plant(spec: PlantSpec, attempts: int = 50) -> Graph:
    """Draw a class member realising spec; retries reseed from (seed, attempt).

    Raises:
        InfeasibleSpecError: No draw passed validation within the attempt budget
    """
    spec.validate()
    reason = ""
    for attempt in range(attempts):
        rng = np.random.default_rng([spec.seed, attempt])
        mix = spec.mix * max(0.0, 1.0 - attempt / max(1, attempts - 1))
        g = build_planted(spec, rng, mix)
        reason = check_planted(g, spec) or ""
        if not reason:
            logger.info("planted C%d instance with %d vertices on attempt %d", spec.hole_length, g.n, attempt)
            return g
        logger.warning("plant attempt %d rejected: %s", attempt, reason)
    raise InfeasibleSpecError(spec, attempts, reason)


def reject_sample(n: int, edge_prob: float, seed: int, attempts: int = 200) -> Optional[Graph]:
    """Erdos-Renyi draws until one is a class member; None when the budget runs out."""
    rng = np.random.default_rng(seed)
    upper = np.triu_indices(n, k=1)
    for attempt in range(attempts):
        keep = rng.random(len(upper[0])) < edge_prob
        edges = [(int(u), int(v)) for u, v, kept in zip(upper[0], upper[1], keep) if kept]
        g = Graph.from_edges(n, edges)
        if is_class_member(g).member:
            logger.debug("accepted draw %d for n=%d p=%.2f", attempt, n, edge_prob)
            return g
    logger.debug("no member in %d draws for n=%d p=%.2f", attempts, n, edge_prob)
    return None
