from dataclasses import dataclass, field
from typing import Dict, Optional

from holewidth.config import DEFAULT_THRESHOLD
from holewidth.errors import ConfigError, HolewidthError, InfeasibleSpecError
from holewidth.generation.planter import PlantSpec


@dataclass
class PlantProfile:
    name: str
    hole_length: int
    sizes: Dict[str, int]
    description: str
    relations: Dict[str, str] = field(default_factory=dict)
    notes: str = ""

    def to_spec(self, seed: int = 0, threshold: int = DEFAULT_THRESHOLD) -> PlantSpec:
        return PlantSpec(self.hole_length, dict(self.sizes), dict(self.relations), seed=seed, threshold=threshold)


# Named instance shapes, one or more per hole length
PLANT_PROFILES = {
    "C7 Single X": PlantProfile(
        name="C7 Single X",
        hole_length=7,
        sizes={"X1": 5},
        description="7-hole with one clique seeing three consecutive hole vertices",
        notes="Smallest non-trivial 7-hole instance.",
    ),
    "C7 Consecutive X": PlantProfile(
        name="C7 Consecutive X",
        hole_length=7,
        sizes={"X1": 5, "X2": 5},
        description="Two consecutive X sets, complete to each other",
    ),
    "C7 X and Y": PlantProfile(
        name="C7 X and Y",
        hole_length=7,
        sizes={"X1": 5, "Y1": 5},
        description="An X set with the Y set sharing its start",
    ),
    "C6 T Triangle": PlantProfile(
        name="C6 T Triangle",
        hole_length=6,
        sizes={"T1": 5, "T3": 5, "T5": 5},
        description="Alternating T sets joined by partial matchings",
        notes="Any two matched edges sharing a vertex must close a triangle.",
    ),
    "C6 Y and T": PlantProfile(
        name="C6 Y and T",
        hole_length=6,
        sizes={"Y1": 5, "T1": 5},
        description="Y set complete to the T set sharing its first two hole vertices",
        notes="T2 cannot join them: every Y1 vertex misses all of T2.",
    ),
    "C6 Opposite X": PlantProfile(
        name="C6 Opposite X",
        hole_length=6,
        sizes={"X1": 5, "X4": 5},
        description="Two X sets on opposite sides of the hole",
    ),
    "C5 Z": PlantProfile(
        name="C5 Z",
        hole_length=5,
        sizes={"Z": 6},
        description="A clique complete to the whole 5-hole",
        notes="No other set can be non-empty alongside Z.",
    ),
    "C5 T and X": PlantProfile(
        name="C5 T and X",
        hole_length=5,
        sizes={"T1": 5, "X1": 5},
        description="A T set inside the trace of an X set",
    ),
    "C5 Detached R": PlantProfile(
        name="C5 Detached R",
        hole_length=5,
        sizes={"R": 5},
        description="A clique anticomplete to the 5-hole",
    ),
}


def get_plant_profile(profile_name: str) -> PlantProfile:
    """Get plant profile by name."""
    if profile_name not in PLANT_PROFILES:
        raise ConfigError(f"unknown plant profile {profile_name!r}; choose from {sorted(PLANT_PROFILES)}")
    return PLANT_PROFILES[profile_name]


def preset_spec(profile_name: str, seed: int = 0) -> PlantSpec:
    return get_plant_profile(profile_name).to_spec(seed)


class PlantProfileValidator:
    # Instances past this size make the exact colouring search slow
    LARGE_INSTANCE = 80

    @staticmethod
    def validate_profile(profile: PlantProfile, threshold: int = DEFAULT_THRESHOLD) -> dict:
        """Check a profile before planting it."""
        warnings = []
        recommendations = []

        try:
            spec = profile.to_spec(threshold=threshold)
            spec.validate()
        except InfeasibleSpecError as exc:
            warnings.append(f"{profile.name}: {exc.last_reason}")
            spec = None
        except HolewidthError as exc:
            warnings.append(f"{profile.name}: {exc}")
            spec = None

        small = sorted(name for name, size in profile.sizes.items() if 0 < size < threshold)
        if small:
            warnings.append(
                f"Sets {small} are below the threshold ({threshold}) and will land in the removed ledger"
            )
            recommendations.append(f"Use sizes of at least {threshold} to have {small} checked against the tables")

        total = profile.hole_length + sum(profile.sizes.values())
        if total > PlantProfileValidator.LARGE_INSTANCE:
            recommendations.append(
                f"{profile.name} has {total} vertices; colouring may hit the node budget"
            )
        if spec is not None and not profile.sizes:
            recommendations.append("An empty profile plants the bare hole")

        return {
            "is_valid": len(warnings) == 0,
            "warnings": warnings,
            "recommendations": recommendations,
        }

    @staticmethod
    def validate_all(threshold: Optional[int] = None) -> Dict[str, dict]:
        return {
            name: PlantProfileValidator.validate_profile(profile, threshold or DEFAULT_THRESHOLD)
            for name, profile in PLANT_PROFILES.items()
        }
