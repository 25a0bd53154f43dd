import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from qeuler.cli import main
from qeuler.perm import enumerate_permutations, compact_form


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_map_worked_pair(capsys):
    assert run(capsys, "map", "425736981") == (0, '"956382471"\n', "")


def test_invert_worked_pair(capsys):
    code, out, _ = run(capsys, "invert", "956382471")
    assert code == 0 and json.loads(out) == "425736981"


def test_stats_sample_vector(capsys):
    code, out, _ = run(capsys, "stats", "34251", "--stats", "maj2,des2t,inv2")
    assert code == 0 and out == '{"maj2":6,"des2t":3,"inv2":2}\n'


def test_stats_pretty(capsys):
    code, out, _ = run(capsys, "stats", "2,1", "--stats", "des", "--pretty")
    assert code == 0 and out.split() == ["des", "1"]


def test_verify_trivial(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--check", "bijection")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_failure_exit_and_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--n", "6", "--check", "bijection,eq3")
    doc = json.loads(out)
    assert code == 1 and doc["ok"] is False
    bad = doc["checks"][0]
    assert bad["name"] == "bijection" and bad["counterexample"] in {"634125", "634152"}
    assert doc["checks"][1]["ok"] is True


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "0"],
    ["verify", "--n", "11"],
    ["verify", "--check", "nope"],
    ["verify", "--jobs", "0"],
    ["map", "1123"],
    ["map"],
    ["stats", "12", "--stats", "foo"],
    ["render", "12", "--kind", "linear", "--format", "png", "--out", "-"],
    ["render", "12", "--kind", "linear", "--format", "svg"],
    ["distribution", "--n", "3", "--vector", "xyz"],
    ["distribution", "--vector", "lhs"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_map_trace(capsys):
    code, out, _ = run(capsys, "map", "425736981", "--trace")
    doc = json.loads(out)
    assert code == 0 and doc["c0"] == [1, 1, 2, 0] and doc["output"] == [9, 5, 6, 3, 8, 2, 4, 7, 1]


def test_invert_trace_and_failure(capsys):
    code, out, _ = run(capsys, "invert", "956382471", "--trace")
    assert code == 0 and json.loads(out)["output"] == [4, 2, 5, 7, 3, 6, 9, 8, 1]
    code, out, err = run(capsys, "invert", "132", "--strict")
    assert code == 1 and out == "" and json.loads(err)["input"] == "132"


def test_map_then_invert_is_identity(capsys):
    for p in enumerate_permutations(4):
        _, image, _ = run(capsys, "map", compact_form(p))
        _, back, _ = run(capsys, "invert", json.loads(image))
        assert json.loads(back) == compact_form(p)


def test_distribution_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "distribution", "--n", "3", "--vector", "lhs")
    assert code == 0 and json.loads(out)["terms"][0] == [0, 0, 0, 1]
    code, out, _ = run(capsys, "distribution", "--n", "4", "--vector", "HL",
                       "--out", str(tmp_path / "d.csv"))
    assert code == 0 and json.loads(out)["total"] == 24
    assert (tmp_path / "d.csv").read_text().startswith("a,b,c,coeff")
    code, out, _ = run(capsys, "distribution", "--n", "4", "--vector", "rhs",
                       "--out", str(tmp_path / "d.json"))
    assert json.loads((tmp_path / "d.json").read_text())["vector"] == "rhs"


def test_render_file_and_stdout(capsys, tmp_path):
    path = tmp_path / "a.svg"
    code, out, _ = run(capsys, "render", "34251", "--kind", "linear", "--format", "svg",
                       "--out", str(path))
    assert code == 0 and json.loads(out)["written"] == str(path)
    ET.parse(path)
    code, out, _ = run(capsys, "render", "32541", "--kind", "planar", "--format", "ascii",
                       "--out", "-")
    assert code == 0 and "(3)" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qeuler", "map", "21"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == '"21"\n'
