import json
import os
import subprocess
import sys
from pathlib import Path

from dp6 import checks, classify, geometry
from dp6.checks import CheckResult, emit_report, run_verify

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).resolve().parent / "golden"


def test_every_check_has_an_anchor_listed_in_the_check_map():
    doc = (ROOT / "docs" / "CHECKS.md").read_text(encoding="utf-8")
    for c in checks.REGISTRY:
        assert c.paper_ref, c.check_id
        assert c.paper_ref in doc, c.paper_ref
        assert f"`{c.check_id}`" in doc, c.check_id


def test_full_run_passes():
    results, code = run_verify()
    failed = [r for r in results if r.status != "pass"]
    assert code == 0, failed
    assert [r.check_id for r in results] == sorted(r.check_id for r in results)
    ids = {r.check_id: r for r in results}
    assert ids["anticanonical/degree22"].expected == "22"


def test_filter_counts():
    results, code = run_verify("dp6-lattice")
    assert code == 0 and len(results) == 12


def test_emit_report_json():
    r = CheckResult("a/b", "pass", "1", "1", "anchor")
    data = json.loads(emit_report([r], "json").decode("utf-8"))
    assert data == [{"check_id": "a/b", "status": "pass", "expected": "1", "actual": "1", "paper_ref": "anchor"}]
    assert emit_report([], "json") == b"[]"


def test_emit_report_text_aligned():
    rs = [CheckResult("a", "pass", "1", "1", "x"), CheckResult("long/id", "fail", "22", "20", "y")]
    header, row1, row2, summary = emit_report(rs, "text").decode("utf-8").splitlines()
    col = header.index("status")
    assert row1.index("pass") == row2.index("fail") == col
    assert row1.index("1") == row2.index("22") == header.index("expected")
    assert summary == "1/2 passed"


def test_errors_are_data():
    c = checks.Check("x/err", "anchor", "1", lambda: 1 / 0)
    r = checks._run(c)
    assert r.status == "error" and "ZeroDivisionError" in r.actual


def test_verify_json_matches_golden_and_is_deterministic():
    env = dict(os.environ)
    outs = [
        subprocess.run([sys.executable, "-m", "dp6", "verify", "--json"], capture_output=True, env=env).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1]
    assert outs[0] == (GOLDEN / "verify.json").read_bytes()


def test_examples_match_golden():
    golden = json.loads((GOLDEN / "examples.json").read_text(encoding="utf-8"))
    got = {t.value: geometry.build_example(t).to_dict() for t in classify.FiberType}
    assert got == golden


def test_lines_match_golden():
    p = subprocess.run([sys.executable, "-m", "dp6", "lines", "--all", "--json"], capture_output=True)
    assert p.stdout == (GOLDEN / "lines.json").read_bytes()
