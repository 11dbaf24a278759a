import numpy as np
import pytest

from holewidth.core.graph import Graph
from holewidth.decomposition.classify import classify
from holewidth.decomposition.properties import (
    C5_PROPERTIES,
    C6_PROPERTIES,
    C7_PROPERTIES,
    PROPERTY_TABLES,
    Status,
    verify_properties,
)
from holewidth.generation.planter import PlantSpec, build_planted


def plain(hole_length, sizes):
    return build_planted(PlantSpec(hole_length, sizes), np.random.default_rng(0), 0.0)


def hole_with(k, traces, extra_edges=()):
    """A k-hole, one vertex per trace, plus explicit edges among those vertices."""
    edges = [(i, (i + 1) % k) for i in range(k)]
    for n, trace in enumerate(traces):
        edges += [(k + n, i) for i in trace]
    return Graph.from_edges(k + len(traces), edges + list(extra_edges))


def report_for(g, k, threshold=5):
    return verify_properties(g, classify(g, tuple(range(k)), threshold))


def test_tables_cover_every_property_once():
    ids = [p.pid for table in (C7_PROPERTIES, C6_PROPERTIES, C5_PROPERTIES) for p in table if p.pid.startswith("P")]
    assert ids == [f"P{n}" for n in range(1, 67)]
    assert set(PROPERTY_TABLES) == {5, 6, 7}


@pytest.mark.parametrize(
    "k, sizes",
    [
        (7, {"X1": 5, "X2": 5}),
        (7, {"X1": 5, "Y1": 5}),
        (6, {"T1": 5, "T3": 5, "T5": 5}),
        (5, {"T1": 5, "X1": 5}),
        (5, {"Z": 6}),
        (5, {"R": 5}),
    ],
)
def test_planted_graphs_satisfy_their_table(k, sizes):
    report = report_for(plain(k, sizes), k)
    assert report.ok, [r.pid for r in report.failures]
    assert report.hole_length == k


def test_missing_sets_make_properties_vacuous():
    report = report_for(plain(7, {"X1": 5}), 7)
    assert report.get("P1").status is Status.VACUOUS
    assert report.get("P5").status is Status.PASS
    assert report.get("obs.cliques").status is Status.PASS


def test_consecutive_x_sets_must_be_joined():
    g = hole_with(7, [(0, 1, 2), (1, 2, 3)])
    report = report_for(g, 7, threshold=1)
    failed = report.get("P1")
    assert failed.status is Status.FAIL
    assert failed.witness == (7, 8)
    assert failed.pattern == "4K1"
    assert failed.rotation == 0
    assert not report.ok


def test_three_consecutive_x_sets_fail_emptiness():
    g = hole_with(7, [(0, 1, 2), (1, 2, 3), (2, 3, 4)], [(7, 8), (8, 9)])
    report = report_for(g, 7, threshold=1)
    assert report.get("P1").status is Status.PASS
    assert report.get("P5").status is Status.FAIL
    assert report.get("P5").witness == (7, 8, 9)


def test_opposite_x_sets_must_be_anticomplete():
    g = hole_with(7, [(0, 1, 2), (3, 4, 5)], [(7, 8)])
    result = report_for(g, 7, threshold=1).get("P3")
    assert result.status is Status.FAIL
    assert result.pattern == "claw"


def test_failure_serialization_uses_vertex_names():
    g = hole_with(7, [(0, 1, 2), (1, 2, 3)])
    report = report_for(g, 7, threshold=1)
    entry = next(e for e in report.to_dict()["properties"] if e["id"] == "P1")
    assert entry == {"id": "P1", "status": "fail", "witness": [7, 8], "predicted_pattern": "4K1", "rotation": 0}
    passing = next(e for e in report.to_dict()["properties"] if e["id"] == "P3")
    assert passing == {"id": "P3", "status": "vacuous"}


def test_planted_names_reach_the_report():
    g = plain(7, {"X1": 5})
    d = classify(g, tuple(range(7)))
    assert d.to_dict(g)["hole"][0] == "h1"
    assert report_for(g, 7).to_dict(g)["ok"] is True


def test_frame_and_table():
    report = report_for(plain(6, {"T1": 5, "T3": 5}), 6)
    frame = report.to_frame()
    assert list(frame.columns) == ["Name", "Property", "Status", "Witness", "Pattern"]
    assert len(frame) == len(C6_PROPERTIES)
    assert "P13" in report.table()
    with pytest.raises(KeyError):
        report.get("P1")
