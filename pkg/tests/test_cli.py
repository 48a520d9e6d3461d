import io
import json
import subprocess
import sys

import pytest

from mwcycles.cli import emit_report, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_gw_json():
    code, out, _ = call("gw", "--q", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"group": {"free_rank": 1, "invariant_factors": [2]}}


def test_witt_and_neps():
    assert json.loads(call("witt", "--q", "7", "--format", "json")[1])["group"]["invariant_factors"] == [4]
    code, out, _ = call("neps", "--n", "3", "--q", "3", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == {"rank": 3, "disc": 1}


def test_chow_witt_ok_trivial():
    code, out, _ = call("chow-witt", "ok", "-d", "-1")
    assert code == 0 and "group: 0" in out


def test_chow_witt_unstable_exit_code():
    code, out, _ = call("chow-witt", "ok", "-d", "-5", "--max-stages", "1", "--format", "json")
    assert code == 3
    data = json.loads(out)
    assert data["stable"] is False and len(data["stages"]) == 1


def test_chow_witt_curve():
    code, out, _ = call("chow-witt", "curve", "--model", "p1", "--q", "3", "--mode", "milnor", "--format", "json")
    assert code == 0 and json.loads(out)["group"] == {"free_rank": 1, "invariant_factors": []}


def test_snf(tmp_path):
    m = tmp_path / "m.json"
    m.write_text("[[2,4],[0,6]]")
    code, out, _ = call("snf", "--matrix", str(m), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["D"] == [[2, 0], [0, 6]] and data["invariant_factors"] == [2, 6]


def test_residue_and_tdiv():
    code, out, _ = call("residue", "--field", "Q", "--place", "5", "--elem", "[50]", "--format", "json")
    assert code == 0 and json.loads(out)["value"]["rank"] == 2
    code, out, _ = call("tdiv", "-d", "-5", "--elem", "[2]", "--format", "json")
    assert code == 0 and json.loads(out)["tdiv"][0]["rank"] == 2


def test_hpreimage_inline_json():
    target = {"model": "a1:3", "mode": "MW", "twist": "none",
              "entries": [{"point": "t+1", "value": "-[2] + eta*[2,2]"}, {"point": "t^2+1", "value": "[t+1]"}]}
    code, out, _ = call("hpreimage", "--q", "3", "--target", json.dumps(target), "--format", "json")
    assert code == 0 and json.loads(out)["verified"] is True


def test_seed_required_in_json_mode():
    code, _, err = call("reciprocity", "--q", "3", "--trials", "3", "--format", "json")
    assert code == 2 and "--seed" in err
    code, _, _ = call("axioms", "--suite", "R1", "--trials", "2", "--format", "json")
    assert code == 2


def test_json_output_is_byte_identical():
    args = ("axioms", "--suite", "R2", "--trials", "5", "--seed", "4", "--format", "json")
    assert call(*args)[1] == call(*args)[1]
    args = ("reciprocity", "--q", "5", "--trials", "5", "--seed", "4", "--format", "json")
    first = call(*args)
    assert first[0] == 0 and first[1] == call(*args)[1]


@pytest.mark.parametrize("argv", [
    ("gw",), ("gw", "--q", "6"), ("nope",), ("residue", "--field", "Q", "--place", "4", "--elem", "[2]"),
    ("tdiv", "-d", "-5", "--elem", "[2,3]"), ("snf", "--matrix", "not json"),
    ("reciprocity", "--q", "3", "--trials", "-1"),
])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2


def test_emit_report_shapes():
    assert emit_report({"free_rank": 0, "invariant_factors": []}, "json") == '{"free_rank":0,"invariant_factors":[]}\n'
    assert emit_report({"a": 1, "b": ["x", "y"]}, "text") == "a: 1\nb:\n  x\n  y\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mwcycles", "gw", "--q", "4", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"group": {"free_rank": 1, "invariant_factors": []}}
