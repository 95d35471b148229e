import json
import shutil
import subprocess
import sys

import pytest

from hopfstar.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from hopfstar.io import Workspace, shipped_dir

from cli_contract import run_contract


@pytest.fixture
def sw(tmp_path):
    d = tmp_path / "sw"
    shutil.copytree(shipped_dir() / "sweedler_1", d)
    return d


@pytest.fixture
def z2(tmp_path):
    d = tmp_path / "z2"
    shutil.copytree(shipped_dir() / "group_z2", d)
    return d


def test_end_to_end_contract(tmp_path):
    for label, expected, got, out, err in run_contract(tmp_path):
        assert got == expected, f"{label}: {err}"


def test_corrupted_antipode_names_axiom(tmp_path, capsys):
    d = tmp_path / "b"
    d.mkdir()
    doc = json.loads((shipped_dir() / "group_z2" / "group_z2.algebra.json").read_text())
    doc["antipode"][1][1] = "0"
    (d / "a.json").write_text(json.dumps(doc))
    assert main(["validate", str(d / "a.json"), "--format", "json"]) == EXIT_FAIL
    rep = json.loads(capsys.readouterr().out)
    failed = [c["name"] for c in rep["checks"] if c["status"] == "fail"]
    assert "antipode" in failed
    assert next(c for c in rep["checks"] if c["name"] == "antipode")["witness"] is not None


def test_validate_every_shipped_file(capsys):
    for d in sorted(shipped_dir().iterdir()):
        for f in sorted(d.glob("*.json")):
            assert main(["validate", str(f)]) == EXIT_OK, f


@pytest.mark.parametrize(
    "construction,inputs,extra",
    [
        ("conjugate", ["P+"], []),
        ("dual", ["P+"], []),
        ("dual", ["P+"], ["--side", "right"]),
        ("tensor", ["P+", "sign"], []),
        ("hom", ["P+", "P-"], []),
        ("tensor-algebra", ["P+"], ["--degree", "2"]),
        ("braiding", ["R", "P+", "P+"], []),
    ],
)
def test_constructions_validate(sw, construction, inputs, extra):
    out = sw / f"out-{construction}.json"
    assert main(["construct", construction, "--in", *inputs, "--out", str(out), "--workspace", str(sw), *extra]) == EXIT_OK
    assert main(["validate", str(out)]) == EXIT_OK
    Workspace.load(sw)


def test_comma_separated_inputs(sw):
    out = sw / "t.json"
    assert main(["construct", "tensor", "--in", "P+,sign", "--out", str(out), "--workspace", str(sw)]) == EXIT_OK


def test_adjoint_construction(z2):
    m = {"kind": "map", "name": "swap", "domain": "regular", "codomain": "regular", "matrix": [["0", "1"], ["1", "0"]]}
    (z2 / "swap.map.json").write_text(json.dumps(m))
    out = z2 / "adj.map.json"
    args = ["construct", "adjoint", "--in", "swap", "regular.gram", "regular.gram", "--out", str(out), "--workspace", str(z2)]
    assert main(args) == EXIT_OK
    assert json.loads(out.read_text())["matrix"] == [["0", "1"], ["1", "0"]]


def test_two_out_of_three_construction(z2):
    out = z2 / "sign.form.json"
    args = ["construct", "two-out-of-three", "--in", "sign.star", "sign.gram", "--out", str(out), "--workspace", str(z2)]
    assert main(args) == EXIT_OK
    assert main(["validate", str(out)]) == EXIT_OK
    (z2 / "sign.gram.json").unlink()
    out2 = z2 / "g.json"
    args = ["construct", "two-out-of-three", "--in", "sign.star", "sign.form", "--out", str(out2), "--workspace", str(z2)]
    assert main(args) == EXIT_OK
    assert json.loads(out2.read_text())["matrix"] == [["1"]]


def test_two_out_of_three_rejects_same_kind(z2):
    args = ["construct", "two-out-of-three", "--in", "sign.star", "trivial.star", "--out", str(z2 / "x.json"), "--workspace", str(z2)]
    assert main(args) == EXIT_INPUT


def test_failed_construction_writes_nothing(z2):
    bad = {"kind": "star", "name": "sign.bad", "module": "sign", "matrix": [["2"]]}
    (z2 / "bad.json").write_text(json.dumps(bad))
    out = z2 / "f.json"
    args = ["construct", "two-out-of-three", "--in", "sign.bad", "sign.gram", "--out", str(out), "--workspace", str(z2)]
    assert main(args) == EXIT_FAIL
    assert not out.exists()


def test_check_suite_json(capsys):
    assert main(["check", "hom-invariants", "--workspace", "sweedler(1)", "--format", "json"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and rep["checks"]


def test_report_roundtrip(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["report", "--workspace", "group_z2", "--suite", "modules", "--format", "json", "--out", str(out)]) == EXIT_OK
    assert main(["report", "--from", str(out), "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == json.loads(out.read_text())


def test_help_exits_zero():
    assert main(["--help"]) == EXIT_OK


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "hopfstar", "check", "modules", "--workspace", "trivial"], capture_output=True, text=True)
    assert p.returncode == 0 and "PASS" in p.stdout


def test_console_script():
    exe = shutil.which("hopfstar")
    if exe is None:
        pytest.skip("console script not on PATH")
    p = subprocess.run([exe, "check", "hopf-axioms", "--workspace", "group_z2"], capture_output=True, text=True)
    assert p.returncode == 0
