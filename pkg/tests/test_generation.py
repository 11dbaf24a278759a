import json

import pytest
import yaml

from holewidth.core.patterns import find_hole, is_class_member
from holewidth.decomposition.classify import SetId
from holewidth.decomposition.properties import emptiness_conflicts
from holewidth.errors import ConfigError, InfeasibleSpecError
from holewidth.generation.planter import (
    COJOIN,
    JOIN,
    PlantSpec,
    allowed_relation,
    check_planted,
    parse_set_name,
    plant,
    reject_sample,
)
from utils.plant_profiles import (
    PLANT_PROFILES,
    PlantProfile,
    PlantProfileValidator,
    get_plant_profile,
    preset_spec,
)


@pytest.mark.parametrize("profile", sorted(PLANT_PROFILES))
def test_presets_plant_valid_members(profile):
    spec = preset_spec(profile)
    g = plant(spec)
    assert check_planted(g, spec) is None
    assert is_class_member(g).member
    assert find_hole(g, spec.hole_length) is not None
    assert g.n == spec.hole_length + sum(spec.sizes.values())


def test_plant_is_deterministic():
    assert plant(preset_spec("C6 T Triangle", seed=7)) == plant(preset_spec("C6 T Triangle", seed=7))


def test_planted_vertex_names():
    g = plant(preset_spec("C7 Single X"))
    assert g.names[:7] == tuple(f"h{i}" for i in range(1, 8))
    assert g.names[7:] == tuple(f"X1.{j}" for j in range(5))


def test_emptiness_rules_make_specs_infeasible():
    spec = PlantSpec(7, {"X1": 5, "X2": 5, "X3": 5})
    with pytest.raises(InfeasibleSpecError) as info:
        plant(spec)
    assert info.value.attempts == 0
    assert "X1" in info.value.last_reason


def test_y_set_with_the_next_t_set_is_infeasible():
    # A Y1 vertex adjacent to a T2 vertex centres a claw with h1 and h4, so it
    # misses all of T2, and a Y1 vertex may miss at most two vertices there.
    with pytest.raises(InfeasibleSpecError) as info:
        plant(PlantSpec(6, {"Y1": 5, "T2": 5}))
    assert info.value.attempts == 0
    assert "T2" in info.value.last_reason
    PlantSpec(6, {"Y1": 5, "T2": 2}).validate()


def test_cross_family_emptiness_is_checked_before_planting():
    with pytest.raises(InfeasibleSpecError) as info:
        plant(PlantSpec(7, {"Y1": 5, "X3": 5}))
    assert info.value.attempts == 0
    assert "P10" in info.value.last_reason
    assert emptiness_conflicts(5, [SetId("Z"), SetId("T", 0)]) == ["obs.z-t"]
    assert emptiness_conflicts(6, [SetId("Y", 0), SetId("T", 0)]) == []


def test_bad_override_exhausts_attempts():
    # Joining opposite X sets puts a claw on every X1 vertex.
    spec = PlantSpec(7, {"X1": 5, "X4": 5}, {"X1~X4": JOIN})
    with pytest.raises(InfeasibleSpecError) as info:
        plant(spec, attempts=3)
    assert info.value.attempts == 3
    assert info.value.last_reason


def test_reject_sample():
    assert reject_sample(5, 0.0, seed=1) is None
    k4 = reject_sample(4, 1.0, seed=1)
    assert k4.edge_count() == 6
    assert reject_sample(8, 0.7, seed=3) == reject_sample(8, 0.7, seed=3)


@pytest.mark.parametrize(
    "name, k, expected",
    [("X3", 7, SetId("X", 2)), ("T6", 6, SetId("T", 5)), ("Z", 5, SetId("Z")), ("R", 5, SetId("R"))],
)
def test_parse_set_name(name, k, expected):
    assert parse_set_name(name, k) == expected


@pytest.mark.parametrize("name, k", [("Z", 7), ("Z4", 6), ("T1", 7), ("X8", 7), ("Q1", 5), ("Z1", 5)])
def test_parse_set_name_rejects(name, k):
    with pytest.raises(ConfigError):
        parse_set_name(name, k)


def test_allowed_relation_is_symmetric():
    assert allowed_relation(7, SetId("X", 0), SetId("X", 1)) == JOIN
    assert allowed_relation(7, SetId("X", 1), SetId("X", 0)) == JOIN
    assert allowed_relation(6, SetId("T", 1), SetId("Y", 0)) == COJOIN
    assert allowed_relation(5, SetId("Z"), SetId("T", 0)) == COJOIN


def test_spec_validation():
    with pytest.raises(ConfigError):
        PlantSpec(4).validate()
    with pytest.raises(ConfigError):
        PlantSpec(7, {"X1": 5}, mix=1.5).validate()
    with pytest.raises(ConfigError):
        PlantSpec(7, {"X1": 5}, {"X1~X2": "sometimes"}).validate()
    with pytest.raises(ConfigError):
        PlantSpec(7, {"X1": 5}, {"X1-X2": JOIN}).validate()


def test_spec_load_yaml_and_json(tmp_path):
    data = {"hole_length": 6, "sizes": {"T1": 5, "T3": 5}, "seed": 4}
    yaml_path = tmp_path / "spec.yaml"
    yaml_path.write_text(yaml.dump(data))
    json_path = tmp_path / "spec.json"
    json_path.write_text(json.dumps(data))
    from_yaml, from_json = PlantSpec.load(str(yaml_path)), PlantSpec.load(str(json_path))
    assert from_yaml == from_json
    assert from_yaml.seed == 4
    assert from_yaml.threshold == 5
    assert PlantSpec.from_dict(from_yaml.to_dict()) == from_yaml


def test_spec_load_errors(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("hole_length: 7\ncolour: blue\n")
    with pytest.raises(ConfigError):
        PlantSpec.load(str(bad))
    with pytest.raises(ConfigError):
        PlantSpec.load(str(tmp_path / "missing.yaml"))
    listed = tmp_path / "list.yaml"
    listed.write_text("- 7\n")
    with pytest.raises(ConfigError):
        PlantSpec.load(str(listed))


def test_unknown_profile():
    with pytest.raises(ConfigError):
        get_plant_profile("C8 Nothing")


def test_profile_validator():
    results = PlantProfileValidator.validate_all()
    assert all(result["is_valid"] for result in results.values())

    small = PlantProfile("Small", 7, {"X1": 2}, "below threshold")
    result = PlantProfileValidator.validate_profile(small)
    assert result["is_valid"] is False
    assert result["recommendations"]

    crowded = PlantProfile("Crowded", 5, {"X1": 5, "X2": 5, "X3": 5}, "three consecutive X")
    assert PlantProfileValidator.validate_profile(crowded)["is_valid"] is False
