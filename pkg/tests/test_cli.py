import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from qwalk import cli
from qwalk.graphs import parse_instance

K4_TEXT = "# K4\n4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 3\n"
TWO_TRIANGLES_TEXT = "6 2\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n0 4\n"


def schema(name):
    text = resources.files("qwalk").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def k4(tmp_path):
    p = tmp_path / "k4.graph"
    p.write_text(K4_TEXT)
    return p


@pytest.fixture
def two_triangles(tmp_path):
    p = tmp_path / "two_triangles.graph"
    p.write_text(TWO_TRIANGLES_TEXT)
    return p


def test_decide_accepts_k4(k4):
    code, out, _ = run(["decide", "--input", str(k4)])
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("decide"))
    assert report["acceptance_probability"] >= 1 / 64
    assert report["verdict"] == "accept" and report["k"] == 200


def test_decide_rejects_disconnected(two_triangles):
    code, out, _ = run(["decide", "--input", str(two_triangles)])
    assert code == 1
    report = json.loads(out)
    jsonschema.validate(report, schema("decide"))
    assert report["acceptance_probability"] == 0.0
    assert report["verdict"] == "reject"


def test_decide_with_generated_graph_and_sampling():
    code, out, _ = run(["decide", "--kind", "random_regular", "--n", "10", "--d", "3", "--seed", "4",
                        "--k", "30", "--sample"])
    report = json.loads(out)
    jsonschema.validate(report, schema("decide"))
    assert code == 0 and report["sampled_outcome"] in ("accept", "reject") and report["seed"] == 4


def test_amplify_example():
    code, out, _ = run(["amplify", "--p", "0.25", "--f", "1"])
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("amplify"))
    assert report["amplified"] == pytest.approx(0.8125, abs=1e-15)
    assert report["simulated_total"] == pytest.approx(0.8125, abs=1e-12)


def test_amplify_plan():
    code, out, _ = run(["amplify", "--p", "0.015625", "--target", "0.5"])
    report = json.loads(out)
    jsonschema.validate(report, schema("amplify"))
    assert code == 0 and report["plan"]["f"] == 11 and report["f"] == 11
    assert len(report["rounds"]) == 12


def test_amplify_errors():
    assert run(["amplify", "--p", "0.5"])[0] == 2
    assert run(["amplify", "--p", "1.5", "--f", "1"])[0] == 2
    assert run(["amplify", "--p", "0", "--target", "0.5"])[0] == 2


def test_spectrum(two_triangles):
    code, out, _ = run(["spectrum", "--input", str(two_triangles)])
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("spectrum"))
    assert [c["n_u"] for c in report["components"]] == [3, 3]
    assert report["components"][0]["overlaps"] is not None
    assert all(c["gap_bound_holds"] for c in report["components"])


def test_converge_csv(k4):
    code, out, _ = run(["converge", "--kind", "cycle", "--n", "4", "--steps", "10"])
    assert code == 0
    assert "\r" not in out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["l", "distance", "bound", "classical_tv"]
    assert len(rows) == 12
    for row in rows[1:]:
        assert float(row[1]) <= float(row[2]) + 1e-9
        assert repr(float(row[1])) == repr(float(f"{float(row[1]):.17g}"))
        assert "," not in row[1] and " " not in row[1]


def test_converge_json(k4):
    code, out, _ = run(["converge", "--input", str(k4), "--steps", "5", "--format", "json"])
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("converge"))
    assert report["rows"][1]["distance"] == pytest.approx(0.0, abs=1e-15)


def test_validate(k4, tmp_path):
    code, out, _ = run(["validate", "--input", str(k4)])
    report = json.loads(out)
    jsonschema.validate(report, schema("validate"))
    assert code == 0 and report["valid"] and report["connected"]
    bad = tmp_path / "bad.graph"
    bad.write_text("3 2\n0 0\n1 2\n0 2\n0 1\n")
    code, out, _ = run(["validate", "--input", str(bad)])
    report = json.loads(out)
    jsonschema.validate(report, schema("validate"))
    assert code == 2 and report == {"valid": False, "error": "SelfLoop", "message": report["message"]}


def test_gen_roundtrip(tmp_path):
    target = tmp_path / "r.graph"
    code, out, _ = run(["gen", "--kind", "random_regular", "--n", "12", "--d", "3", "--seed", "9",
                        "--output", str(target)])
    assert code == 0 and out == ""
    inst = parse_instance(target.read_bytes())
    assert inst.graph.n == 12 and (inst.s, inst.t) == (0, 11)


def test_regularize(tmp_path):
    src = tmp_path / "star.edges"
    src.write_text("# star plus isolated vertex\n6 4\n0 1\n0 2\n0 3\n0 4\n1 5\n")
    code, out, _ = run(["regularize", "--input", str(src)])
    assert code == 0
    inst = parse_instance(out)
    assert inst.graph.d == 3
    code, out, _ = run(["decide", "--input", str(tmp_path / "missing")])
    assert code == 2
    out_file = tmp_path / "reg.graph"
    out_file.write_text(run(["regularize", "--input", str(src)])[1])
    code, out, _ = run(["decide", "--input", str(out_file)])
    assert code == 1 and json.loads(out)["oracle_connected"] is False


def test_usage_errors(k4):
    assert run([])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["decide"])[0] == 2
    assert run(["decide", "--input", str(k4), "--kind", "cycle", "--n", "4"])[0] == 2
    assert run(["decide", "--kind", "cycle"])[0] == 2
    assert run(["gen", "--kind", "cycle", "--n", "2"])[0] == 2
    assert run(["converge", "--input", str(k4), "--start", "9"])[0] == 2
    code, _, err = run(["decide", "--k", "notanumber", "--input", str(k4)])
    assert code == 2 and "usage error" in err


def test_malformed_input_exit_code(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n0 1\n")
    code, out, err = run(["decide", "--input", str(p)])
    assert code == 2 and out == "" and "NotRegular" in err


def test_numerical_failure_exit_code(k4, monkeypatch):
    def boom(*args, **kwargs):
        raise FloatingPointError("overflow")

    monkeypatch.setattr(cli, "decide", boom)
    code, out, err = run(["decide", "--input", str(k4)])
    assert code == 3 and "numerical failure" in err


def test_determinism(k4):
    for argv in (["decide", "--input", str(k4), "--sample", "--seed", "3"],
                 ["spectrum", "--kind", "random_regular", "--n", "16", "--d", "3", "--seed", "2"],
                 ["converge", "--kind", "random_regular", "--n", "16", "--d", "3", "--seed", "2"],
                 ["gen", "--kind", "random_regular", "--n", "20", "--d", "4", "--seed", "1"]):
        assert run(argv) == run(argv)


def test_module_entry_point(k4):
    proc = subprocess.run([sys.executable, "-m", "qwalk", "decide", "--input", str(k4)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "accept"
