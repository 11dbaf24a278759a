"""Runtime settings and the static tables the decomposition works from."""

import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 5
SUPPORTED_HOLES = (5, 6, 7)
HOLE_PREFERENCE = (7, 6, 5)
REPORT_SCHEMA = "holewidth.report/1"

# Neighbourhood traces on the hole, as offsets from the set index.
HOLE_TEMPLATES: Dict[int, Dict[str, Tuple[int, ...]]] = {
    7: {
        "X": (0, 1, 2),
        "Y": (0, 1, 2, 3),
        "Z": (0, 1, 3, 4),
    },
    6: {
        "T": (0, 1),
        "X": (0, 1, 2),
        "Y": (0, 1, 2, 3),
        "Z": (0, 1, 3, 4),
    },
    5: {
        "T": (0, 1),
        "X": (0, 1, 2),
        "Y": (0, 1, 2, 3),
    },
}

# Families with a single unindexed set on the 5-hole.
UNINDEXED_C5 = {"Z": (0, 1, 2, 3, 4), "R": ()}

# Labels the retained sets may need before the hole and ledger are attached:
# two per set that can be non-empty at once, plus two spare slots.
CORE_LABEL_BUDGET: Dict[int, int] = {7: 16, 6: 24, 5: 16}

# Anticomplete splits allowed per hole length when refining sets before labelling.
SPLIT_ALLOWANCE: Dict[int, int] = {7: 0, 6: 2, 5: 0}

# (family, other family, offset, limit): every vertex of a set in the first family
# misses the whole set at that offset, and may miss at most limit vertices there.
MISS_LIMITS: Dict[int, Tuple[Tuple[str, str, int, int], ...]] = {6: (("Y", "T", 1, 2),)}

# Offsets of same-family sets that are never all non-empty together.
EMPTINESS_RULES: Dict[int, Dict[str, Tuple[Tuple[int, ...], ...]]] = {
    7: {"X": ((0, 1, 2),), "Y": ((0, 2),)},
    6: {"T": ((0, 1), (0, 3)), "X": ((0, 1, 2),), "Y": ((0, 2),)},
    5: {"T": ((0, 1, 2),), "X": ((0, 1, 2),)},
}


@dataclass(frozen=True)
class Settings:
    """Tunable parameters for a run.

    Args:
        threshold (int): Minimum size of a retained set
        fixpoint_reduction (bool): Repeat the small-set reduction until stable
        node_budget (int): Branch-and-bound node cap for exact colouring
        plant_attempts (int): Retry budget for planted instances
        reject_attempts (int): Draw budget for rejection sampling
        record_dir (Optional[str]): Where YAML run records go, if anywhere
        log_level (str): Logging level name for the CLI
    """

    threshold: int = DEFAULT_THRESHOLD
    fixpoint_reduction: bool = False
    node_budget: int = 2_000_000
    plant_attempts: int = 50
    reject_attempts: int = 200
    record_dir: Optional[str] = None
    log_level: str = "WARNING"
    report_schema: str = REPORT_SCHEMA

    def merged(self, **overrides: Any) -> "Settings":
        """Return a copy with every non-None override applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown settings: {sorted(unknown)}")
        settings = replace(self, **changes)
        settings.validate()
        return settings

    def validate(self) -> None:
        if self.threshold < 1:
            raise ConfigError("threshold must be at least 1")
        if self.node_budget < 1:
            raise ConfigError("node_budget must be positive")
        if self.plant_attempts < 1 or self.reject_attempts < 1:
            raise ConfigError("attempt budgets must be positive")
        if logging.getLevelName(self.log_level.upper()) == f"Level {self.log_level.upper()}":
            raise ConfigError(f"unknown log level {self.log_level!r}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def load_settings(path: Optional[str] = None) -> Settings:
    """Load settings from a YAML file, falling back to defaults.

    Args:
        path (Optional[str]): YAML file with a top-level mapping

    Returns:
        Settings: Validated settings
    """
    if path is None:
        return Settings()
    config_path = Path(path)
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except OSError as exc:
        raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {config_path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path} must contain a mapping")
    logger.debug("loaded settings from %s: %s", config_path, sorted(data))
    return Settings().merged(**data)
