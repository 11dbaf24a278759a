import json
import shutil

import pytest
import yaml

from holewidth.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_member(capsys, data_dir):
    code, out = run(capsys, "check", str(data_dir / "c7.edges"))
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["kind"] == "membership"
    assert report["member"] is True
    assert report["perfectness"]["perfect"] is False
    assert report["perfectness"]["c7_witness"] == [0, 1, 2, 3, 4, 5, 6]


def test_check_claw(capsys, data_dir):
    code, out = run(capsys, "check", str(data_dir / "claw.dimacs"))
    report = json.loads(out)
    assert code == EXIT_NEGATIVE
    assert report["patterns"]["claw"]["vertices"] == [0, 1, 2, 3]
    assert "perfectness" not in report


def test_input_errors_exit_two(capsys, data_dir, tmp_path):
    assert run(capsys, "check", str(tmp_path / "missing.edges"))[0] == EXIT_INPUT
    assert run(capsys, "check", str(data_dir / "broken.edges"))[0] == EXIT_INPUT
    assert run(capsys, "check")[0] == EXIT_INPUT
    assert run(capsys, "--config", str(tmp_path / "none.yaml"), "check", str(data_dir / "c7.edges"))[0] == EXIT_INPUT


def test_config_file_sets_threshold(capsys, tmp_path):
    config = tmp_path / "settings.yaml"
    config.write_text("threshold: 2\n")
    graph = tmp_path / "g.json"
    graph.write_text(run(capsys, "generate", "--preset", "C7 Single X")[1])
    code, out = run(capsys, "--config", str(config), "decompose", str(graph))
    assert code == EXIT_OK
    assert json.loads(out)["decomposition"]["threshold"] == 2


def test_colour_c7(capsys, data_dir):
    code, out = run(capsys, "colour", str(data_dir / "c7.edges"))
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["chi"] == 3
    assert report["branch"] == "bounded-cwd"
    assert report["certificate"]["hole"] == list("abcdefg")


def test_eval_prints_the_graph(capsys, data_dir):
    code, out = run(capsys, "eval", str(data_dir / "p3.cwd"))
    assert code == EXIT_OK
    assert out == "# n=3 m=2\n1\n2\n3\n1 2\n2 3\n"


def test_synthesize_then_eval_against(capsys, data_dir, tmp_path):
    expr_path = tmp_path / "c7.cwd"
    code, out = run(capsys, "synthesize", str(data_dir / "c7.edges"), "--expr-out", str(expr_path))
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["width"] <= report["declared_bound"]
    assert expr_path.read_text().strip() == report["expression"]

    code, out = run(capsys, "eval", str(expr_path), "--against", str(data_dir / "c7.edges"))
    assert code == EXIT_OK
    assert json.loads(out)["equal"] is True
    code, out = run(capsys, "eval", str(expr_path), "--against", str(data_dir / "c5.json"))
    assert code == EXIT_NEGATIVE


def test_synthesize_non_member(capsys, data_dir):
    code, out = run(capsys, "synthesize", str(data_dir / "claw.dimacs"))
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["witness"]["pattern"] == "claw"


def test_generate_is_reproducible(capsys):
    first = run(capsys, "generate", "--preset", "C6 T Triangle", "--seed", "3")
    second = run(capsys, "generate", "--preset", "C6 T Triangle", "--seed", "3")
    assert first == second
    assert first[0] == EXIT_OK
    assert json.loads(first[1])["n"] == 21


def test_decompose_planted_c6(capsys, tmp_path):
    graph = tmp_path / "c6.json"
    graph.write_text(run(capsys, "generate", "--preset", "C6 T Triangle")[1])
    code, out = run(capsys, "decompose", str(graph))
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["decomposition"]["hole_length"] == 6
    assert report["properties"]["ok"] is True
    assert report["reduction"]["ok"] is True

    code, out = run(capsys, "decompose", str(graph), "--table")
    assert code == EXIT_OK
    assert "P13" in out
    code, out = run(capsys, "decompose", str(graph), "--hole", "7")
    assert code == EXIT_NEGATIVE


def test_generate_from_spec_file(capsys, tmp_path):
    spec = tmp_path / "spec.yaml"
    spec.write_text(yaml.dump({"hole_length": 7, "sizes": {"X1": 5, "X2": 5, "X3": 5}}))
    code, out = run(capsys, "generate", str(spec))
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["kind"] == "infeasible"


def test_generate_sample(capsys):
    code, out = run(capsys, "generate", "--sample", "4", "1.0", "--seed", "1", "--to", "dimacs")
    assert code == EXIT_OK
    assert out.startswith("p edge 4 6\n")
    code, out = run(capsys, "generate", "--sample", "6", "0.0")
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["accepted"] is False


def test_render_highlights_hole(capsys, data_dir):
    code, out = run(capsys, "render", str(data_dir / "c7.edges"), "--hole", "--colour")
    assert code == EXIT_OK
    assert out.startswith("graph G {")
    assert "0 -- 1 [penwidth=2];" in out
    assert "fillcolor=red" in out


def test_glob_writes_json_lines(capsys, data_dir, tmp_path):
    for name in ("c7.edges", "claw.dimacs"):
        shutil.copy(data_dir / name, tmp_path / name)
    code, out = run(capsys, "check", "--glob", str(tmp_path / "*"))
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_NEGATIVE
    assert [line["exit_code"] for line in lines] == [EXIT_OK, EXIT_NEGATIVE]
    assert lines[0]["path"].endswith("c7.edges")
    assert lines[1]["result"]["member"] is False


def test_record_dir_writes_yaml(capsys, data_dir, tmp_path):
    code, _ = run(capsys, "--record-dir", str(tmp_path), "check", str(data_dir / "c7.edges"))
    records = sorted((tmp_path / "runs").glob("check_*.yaml"))
    assert code == EXIT_OK
    assert len(records) == 1
    record = yaml.safe_load(records[0].read_text())
    assert record["verdict"] == "ok"
    assert record["summary"] == {"kind": "membership", "member": True}
    assert record["arguments"]["path"] == str(data_dir / "c7.edges")


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert "holewidth" in capsys.readouterr().out


def test_synthesize_is_reproducible(capsys, tmp_path):
    graph = tmp_path / "c7.json"
    graph.write_text(run(capsys, "generate", "--preset", "C7 X and Y", "--seed", "5")[1])
    first = run(capsys, "synthesize", str(graph))
    assert first == run(capsys, "synthesize", str(graph))
    assert json.loads(first[1])["hole_length"] == 7


def test_decompose_writes_pdf(capsys, data_dir, tmp_path):
    pdf = tmp_path / "reports" / "c7.pdf"
    pdf.parent.mkdir()
    code, _ = run(capsys, "decompose", str(data_dir / "c7.edges"), "--pdf", str(pdf))
    assert code == EXIT_OK
    assert pdf.read_bytes().startswith(b"%PDF")
