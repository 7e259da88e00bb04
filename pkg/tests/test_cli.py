import json
import subprocess
import sys

import pytest

from dp6.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_filter_lattice(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "dp6-lattice", "--json")
    data = json.loads(out)
    assert code == 0 and len(data) == 12
    assert all(list(r) == ["check_id", "status", "expected", "actual", "paper_ref"] for r in data)


def test_verify_nonexistent(capsys):
    code, out, err = run(capsys, "verify", "--filter", "nonexistent", "--json")
    assert code == 0 and out.strip() == "[]" and "warning" in err


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "anticanonical/degree22")
    assert code == 0 and "anticanonical/degree22" in out and "1/1 passed" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from dp6 import checks

    bad = checks.Check("zz/bad", "anchor", "1", lambda: 2)
    monkeypatch.setattr(checks, "REGISTRY", checks.REGISTRY + [bad])
    code, out, _ = run(capsys, "verify", "--filter", "zz/")
    assert code == 1 and "fail" in out


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--gb", "0", "--gt", "0", "--gc", "0", "--kx-c0", "0", "--json")
    d = json.loads(out)
    assert code == 0 and d["anticanonical_degree"] == 22
    assert d["double_projection"] == {"kq3": 40, "kq_dot_T": 9, "deg_alpha": -1}


def test_invariants_inadmissible(capsys):
    code, _, err = run(capsys, "invariants", "--gb", "0", "--gt", "0", "--gc", "1")
    assert code == 2 and "inadmissible" in err


def test_classify_counts_and_exact(capsys):
    code, out, _ = run(capsys, "classify", "--b-red", "1", "--t-red", "1", "--json")
    assert code == 0 and json.loads(out)["possible_types"] == ["(1,1)", "(n4)"]
    code, out, _ = run(capsys, "classify", "--q-singular", "--t-red", "1", "--vertex", "triple", "--json")
    d = json.loads(out)
    assert code == 0 and d["type"] == "(n4)" and d["normalization"]["surface"] == "F_4"
    code, _, err = run(capsys, "classify", "--q-singular", "--t-red", "3", "--vertex", "simple")
    assert code == 2 and "inadmissible" in err
    code, _, _ = run(capsys, "classify", "--q-singular", "--t-red", "2")
    assert code == 2


def test_example(capsys):
    code, out, _ = run(capsys, "example", "--type", "(1,2)", "--json")
    d = json.loads(out)
    assert code == 0 and d["classified"] == "(1,2)"
    assert run(capsys, "example", "--type", "(9,9)")[0] == 2


def test_chow(capsys, tmp_path):
    f = tmp_path / "conic.txt"
    f.write_text("base projective n=4\nslice 2*H\nblowup_curve g=0 H.T=2 K.T=-6\n")
    code, out, _ = run(capsys, "chow", "--build", str(f), "--expr", "(3*H - E)^3")
    assert code == 0 and out.strip() == "40"
    code, out, _ = run(capsys, "chow", "--build", str(f), "--expr", "3/2*(3*H - E)*H^2", "--json")
    assert json.loads(out)["degree"] == 9
    code, _, err = run(capsys, "chow", "--build", str(f), "--expr", "H^")
    assert code == 2 and "position 2" in err
    assert run(capsys, "chow", "--build", str(tmp_path / "missing"), "--expr", "H")[0] == 2


def test_lines(capsys):
    code, out, _ = run(capsys, "lines", "--all", "--json")
    assert code == 0 and [r["lines"] for r in json.loads(out)] == [6, 4, 2, 3, 2, 1]
    code, out, _ = run(capsys, "lines", "--config", "chains=3,colinear=true")
    assert code == 0 and "A1+A2" in out
    assert run(capsys, "lines", "--config", "chains=4,colinear=true")[0] == 2


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--poly", "x^2", "--json")
    assert code == 0 and json.loads(out)["preimage_ok"] is True
    assert run(capsys, "trace", "--split", "3")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["verify", "--bogus"],
        ["verify", "--filt", "x"],  # abbreviations are not accepted
        ["invariants", "--gb", "0"],
        ["lines"],
        ["lines", "--all", "--config", "chains=3,colinear=true"],
        ["trace", "--poly", "x", "--split", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "dp6", "verify", "--filter", "two-ray/m3", "--json"],
                       capture_output=True)
    assert p.returncode == 0
    assert json.loads(p.stdout.decode("utf-8"))[0]["actual"] == "[(1, -2)]"
