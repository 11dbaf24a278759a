import numpy as np
import pytest

from holewidth.config import CORE_LABEL_BUDGET, Settings
from holewidth.core.graph import Graph, complete_graph, cycle_graph, path_graph
from holewidth.decomposition.classify import Decomposition, SetId, classify
from holewidth.errors import (
    BoundExceededError,
    CaseNotCoveredError,
    InfeasibleSpecError,
    NotInClassError,
    PreconditionError,
)
from holewidth.expressions.cwd import evaluate, is_linear, width
from holewidth.generation.planter import PlantSpec, build_planted, plant
from holewidth.synthesis import PerfectCertificate, SynthesisResult, synthesize
from holewidth.synthesis import cases
from holewidth.synthesis.casebook import CASES, case_holds, dispatch, family_groups, merge_plan, reindex
from holewidth.synthesis.cases import synth_c5, synth_c6, synth_c7
from holewidth.synthesis.results import TraceEntry
from holewidth.synthesis.engine import (
    Split,
    core_budget,
    family_maximum,
    plan_blocks,
    refine_parts,
)
from holewidth.synthesis.pipeline import choose_hole
from utils.plant_profiles import preset_spec


def plain(hole_length, sizes):
    return build_planted(PlantSpec(hole_length, sizes), np.random.default_rng(0), 0.0)


def assert_sound(g, result):
    assert isinstance(result, SynthesisResult)
    assert evaluate(result.expr).realizes(g)
    assert result.width_achieved == width(result.expr)
    assert result.within_bound
    assert is_linear(result.expr)
    for entry in result.case_trace:
        assert case_holds(g, result.decomposition, entry), entry.case


@pytest.mark.parametrize("k", [5, 6, 7])
def test_core_budget_matches_emptiness_rules(k):
    assert core_budget(k) == CORE_LABEL_BUDGET[k]


def test_family_maximum():
    assert family_maximum(7, "X") == 4
    assert family_maximum(7, "Y") == 3
    assert family_maximum(6, "T") == 3
    assert family_maximum(5, "Z") == 1


@pytest.mark.parametrize("k", [5, 6, 7])
def test_bare_hole(k):
    g = cycle_graph(k)
    result = synthesize(g)
    assert_sound(g, result)
    assert result.hole == tuple(range(k))
    assert result.case_trace[0].case == f"c{k}.bare"
    assert result.declared_bound == CORE_LABEL_BUDGET[k] + k + 1
    assert result.breakdown["hole"] == k


def test_perfect_branch():
    assert isinstance(synthesize(complete_graph(4)), PerfectCertificate)
    certificate = synthesize(path_graph(4))
    assert certificate.to_dict()["kind"] == "perfect"
    assert certificate.to_dict()["holes_checked"] == [7, 6, 5]


def test_non_member_is_rejected():
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(NotInClassError) as info:
        synthesize(claw)
    assert info.value.occurrence.pattern.name == "claw"


@pytest.mark.parametrize(
    "profile",
    ["C7 Single X", "C7 Consecutive X", "C7 X and Y", "C6 T Triangle", "C6 Y and T", "C5 T and X", "C5 Z", "C5 Detached R"],
)
def test_planted_presets_are_realized(profile):
    g = plant(preset_spec(profile))
    assert_sound(g, synthesize(g))


def test_result_serialization():
    g = plant(preset_spec("C7 Consecutive X"))
    result = synthesize(g)
    report = result.to_dict(g)
    assert report["kind"] == "bounded-cwd"
    assert report["width"] == result.width_achieved
    assert sum(report["bound_breakdown"].values()) == report["declared_bound"]
    assert report["case_trace"][0]["case"].startswith("c7.x-")
    assert report["case_trace"][-1]["builder"] == "attach_extra_vertices"
    assert report["expression"] == result.expression_text()


def test_small_sets_raise_the_bound():
    g = plant(PlantSpec(7, {"X1": 5, "X4": 2}))
    d = classify(g, tuple(range(7)))
    result = synth_c7(g, d)
    assert_sound(g, result)
    assert result.breakdown["removed"] == 2


def test_detached_r_counts_two_labels():
    g = plant(preset_spec("C5 Detached R"))
    d = classify(g, tuple(range(5)))
    result = synth_c5(g, d)
    assert result.breakdown["detached"] == 2
    assert [entry.case for entry in result.case_trace] == ["c5.r", "c5.attach"]


def test_settings_threshold_reaches_decomposition():
    g = plant(preset_spec("C7 Single X"))
    result = synthesize(g, Settings(threshold=6))
    assert_sound(g, result)
    assert result.breakdown["removed"] == 5


def test_wrong_hole_length_is_a_precondition_error():
    g = cycle_graph(7)
    d = classify(g, tuple(range(7)))
    with pytest.raises(PreconditionError):
        synth_c6(g, d)


def test_c5_builder_refuses_longer_holes():
    # Vertex 7 sees 0 and 3 of a 7-hole, closing the 5-hole 7-0-1-2-3.
    g = Graph.from_edges(8, [(i, (i + 1) % 7) for i in range(7)] + [(7, 0), (7, 3)])
    assert choose_hole(g) == tuple(range(7))
    d = Decomposition((7, 0, 1, 2, 3), {}, {}, threshold=5)
    with pytest.raises(PreconditionError) as info:
        synth_c5(g, d)
    assert "induced C" in str(info.value)


def test_emptiness_failure_is_not_covered():
    edges = [(i, (i + 1) % 7) for i in range(7)]
    for n, trace in enumerate([(0, 1, 2), (1, 2, 3), (2, 3, 4)]):
        edges += [(7 + n, i) for i in trace]
    g = Graph.from_edges(10, edges + [(7, 8), (8, 9)])
    d = classify(g, tuple(range(7)), threshold=1)
    with pytest.raises(CaseNotCoveredError) as info:
        synth_c7(g, d)
    assert "P5" in info.value.failures
    assert info.value.sets == ("X1", "X2", "X3")


def _case_of(g, k, names):
    d = classify(g, tuple(range(k)))
    case, rotation, reflected = dispatch(g, d, [SetId(n[0], int(n[1:]) - 1 if n[1:] else None) for n in names])
    return case.case_id, rotation, reflected


@pytest.mark.parametrize(
    "k, sizes, expected",
    [
        (7, {"X1": 5, "X2": 5}, "c7.x-consecutive"),
        (7, {"X1": 5, "X3": 5}, "c7.x-gap2"),
        (7, {"X1": 5, "X4": 5}, "c7.x-gap3"),
        (7, {"X1": 5, "X2": 5, "X4": 5, "X5": 5}, "c7.x-consecutive-rows"),
        (6, {"T1": 5, "T3": 5}, "c6.t-pair"),
        (6, {"T1": 5, "T3": 5, "T5": 5}, "c6.t-triangle"),
        (5, {"Z": 6}, "c5.z"),
    ],
)
def test_dispatch_picks_case(k, sizes, expected):
    assert _case_of(plain(k, sizes), k, list(sizes))[0] == expected


def test_dispatch_rotates_to_the_anchor():
    assert _case_of(plain(7, {"X3": 5}), 7, ["X3"]) == ("c7.x-single", 5, False)


def test_reindex_reflects_the_hole():
    g = plain(7, {"X1": 5})
    d = classify(g, tuple(range(7)))
    view = reindex(d, 0, True)
    assert view.hole == (0, 6, 5, 4, 3, 2, 1)
    assert view.set_names() == ["X6"]
    assert classify(g, view.hole).sets() == view.sets()


def test_family_groups_split_on_homogeneous_families():
    g = plain(7, {"X1": 5, "X2": 5, "Y1": 5})
    d = classify(g, tuple(range(7)))
    parts = list(d.sets().items())
    assert [[parts[p][0].name for p in group] for group in family_groups(g, parts)] == [["X1", "X2"], ["Y1"]]


def test_merge_plan_needs_a_clique_homogeneous_to_the_rest():
    case = next(c for c in CASES[5] if c.merge)
    d = Decomposition(tuple(range(5)), {}, {}, threshold=1)
    group = [(SetId("X", 0), (5,)), (SetId("X", 1), (6,)), (SetId("T", 1), (7,))]
    triangle = Graph.from_edges(9, [(5, 6), (5, 7), (6, 7)])
    assert merge_plan(triangle, d, case, 0, False, group, []) == [(SetId("X", 0), SetId("X", 1), SetId("T", 1))]
    path = Graph.from_edges(9, [(5, 6), (6, 7)])
    assert merge_plan(path, d, case, 0, False, group, []) == []
    # 8 sees only part of the merged clique.
    lopsided = Graph.from_edges(9, [(5, 6), (5, 7), (6, 7), (8, 5)])
    assert merge_plan(lopsided, d, case, 0, False, group, [(SetId("R"), (8,))]) == []


@pytest.mark.parametrize(
    "k, sizes, bound, expected",
    [
        (
            7,
            {"X1": 5, "X2": 5, "X4": 5, "X5": 5, "Y1": 5},
            24,
            ["c7.x-consecutive-rows", "c7.y-single", "c7.xy-join", "c7.attach"],
        ),
        (5, {"X1": 5, "X2": 5, "T2": 5}, 22, ["c5.t", "c5.x", "c5.tx-join", "c5.attach"]),
        (6, {"T1": 5, "T3": 5, "T5": 5}, 31, ["c6.t-triangle", "c6.attach"]),
    ],
)
def test_scenarios_stay_within_bound(k, sizes, bound, expected):
    g = plant(PlantSpec(k, sizes))
    result = cases.SYNTHESIZERS[k](g, classify(g, tuple(range(k))))
    assert_sound(g, result)
    assert result.declared_bound == bound
    assert [entry.case for entry in result.case_trace] == expected


def test_c5_z_takes_its_own_path():
    g = plant(preset_spec("C5 Z"))
    result = synth_c5(g, classify(g, tuple(range(5))))
    assert_sound(g, result)
    assert [entry.case for entry in result.case_trace] == ["c5.z", "c5.attach"]
    assert result.case_trace[0].builder == "clique"


def test_trace_entries_are_rechecked_against_the_decomposition():
    g = plant(PlantSpec(7, {"X1": 5, "X2": 5, "X4": 5, "X5": 5, "Y1": 5}))
    result = synth_c7(g, classify(g, tuple(range(7))))
    entry = result.case_trace[0]
    assert case_holds(g, result.decomposition, entry)
    moved = {**entry.detail, "rotation": entry.detail["rotation"] + 1}
    shifted = TraceEntry(entry.case, entry.sets, entry.builder, moved)
    assert not case_holds(g, result.decomposition, shifted)
    assert not case_holds(g, result.decomposition, TraceEntry("c7.y-single", entry.sets, entry.builder, entry.detail))


def test_width_over_the_declared_bound_raises(monkeypatch):
    g = plant(preset_spec("C7 Consecutive X"))
    monkeypatch.setattr(cases, "width", lambda e: 99)
    with pytest.raises(BoundExceededError) as info:
        synth_c7(g, classify(g, tuple(range(7))))
    assert info.value.achieved == 99
    assert info.value.declared == CORE_LABEL_BUDGET[7] + 7 + 1
    assert info.value.trace[-1].case == "c7.attach"



def _split_graph():
    # A = {0, 1, 2}, B = {3, 4}; 0 and 1 see all of B, 2 sees none of it.
    edges = [(0, 1), (0, 2), (1, 2), (3, 4)] + [(a, b) for a in (0, 1) for b in (3, 4)]
    return Graph.from_edges(5, edges), [("A", (0, 1, 2)), ("B", (3, 4))]


def test_refine_parts_splits_far_vertices():
    g, parts = _split_graph()
    refined, splits = refine_parts(g, parts, max_splits=2)
    assert refined == [("A", (0, 1)), ("B", (3, 4)), ("A-off-B", (2,))]
    assert splits == [Split("A", "B", (2,))]
    assert refine_parts(g, parts, max_splits=0) == (parts, [])


def test_plan_blocks_groups_entangled_parts():
    g, parts = _split_graph()
    assert plan_blocks(g, parts) == [[0, 1]]
    refined, _ = refine_parts(g, parts, max_splits=2)
    assert plan_blocks(g, refined) == [[0], [1], [2]]


def _sweep(k, profiles, count):
    for seed in range(count):
        for profile in profiles:
            spec = preset_spec(profile, seed)
            g = plant(spec)
            result = synthesize(g)
            assert_sound(g, result)
            assert len(result.hole) == k


def test_planted_sweep_small():
    _sweep(7, ["C7 Consecutive X", "C7 X and Y"], 3)
    _sweep(6, ["C6 T Triangle", "C6 Opposite X"], 3)
    _sweep(5, ["C5 T and X"], 3)


@pytest.mark.slow
@pytest.mark.parametrize(
    "k, profiles",
    [
        (7, ["C7 Single X", "C7 Consecutive X", "C7 X and Y"]),
        (6, ["C6 T Triangle", "C6 Y and T", "C6 Opposite X"]),
        (5, ["C5 Z", "C5 T and X", "C5 Detached R"]),
    ],
)
def test_planted_sweep_full(k, profiles):
    _sweep(k, profiles, 100)


SET_NAMES = {
    7: [f"{family}{i}" for family in "XY" for i in range(1, 8)],
    6: [f"{family}{i}" for family in "TXY" for i in range(1, 7)],
    5: [f"{family}{i}" for family in "TX" for i in range(1, 6)] + ["Z", "R"],
}


def _random_specs(k, count, seed):
    rng = np.random.default_rng([k, seed])
    for n in range(count):
        chosen = rng.choice(SET_NAMES[k], size=int(rng.integers(1, 5)), replace=False)
        yield PlantSpec(k, {str(name): 5 for name in chosen}, seed=n)


def _random_sweep(k, count, seed=0):
    planted = 0
    for spec in _random_specs(k, count, seed):
        try:
            g = plant(spec, attempts=20)
        except InfeasibleSpecError:
            continue
        planted += 1
        result = cases.SYNTHESIZERS[k](g, classify(g, tuple(range(k))))
        assert_sound(g, result)
        assert result.width_achieved <= result.declared_bound
    return planted


@pytest.mark.parametrize("k", [7, 6, 5])
def test_random_specs_small(k):
    _random_sweep(k, 6)


@pytest.mark.slow
@pytest.mark.parametrize("k", [7, 6, 5])
def test_random_specs_full(k):
    assert _random_sweep(k, 300) > 0
