import io
import json
import subprocess
import sys

import pytest

from idemring import __version__
from idemring.cli import run
from idemring.rings import build_ring


def invoke(*argv):
    buf = io.StringIO()
    report, code = run(list(argv) + ["--json"], stream=buf)
    text = buf.getvalue()
    assert json.loads(text) == report
    return report, code, text


def _strip(text, drop_jobs=False):
    d = json.loads(text)
    d.pop("elapsed_ms")
    if drop_jobs:
        d["command"].pop("jobs")
    return json.dumps(d, sort_keys=True)


def test_report_schema():
    report, code, _ = invoke("describe", "M(2,Z(2))")
    assert code == 0
    assert list(report) == ["command", "ring", "payload", "elapsed_ms", "version"]
    assert report["version"] == __version__
    assert set(report["ring"]) == {"expr", "cardinality", "units", "idempotents", "radical", "flags"}
    assert set(report["ring"]["flags"]) == {"abelian", "connected", "local", "commutative"}
    assert report["payload"]["units"][0] == "[[0,1],[1,0]]"


def test_decide_both():
    report, code, _ = invoke("decide", "M(2,Z(3))", "--property", "k", "--method", "both")
    p = report["payload"]
    assert code == 0 and p["holds"] is True and p["agree"] is True
    assert [v["method"] for v in p["verdicts"]] == ["brute", "units"]
    assert p["verdicts"][0]["witness"] == ["[[0,0],[0,1]]", "[[2,1],[1,2]]"]


def test_decide_all_reports_not_applicable():
    report, code, _ = invoke("decide", "Quot(M(2,Z(4)),{[[2,0],[0,0]]})", "--method", "all")
    assert code == 0
    assert [s["method"] for s in report["payload"]["not_applicable"]] == ["theorem"]
    assert len(report["payload"]["verdicts"]) == 2


def test_identities_exhaustive_counts():
    report, code, _ = invoke("identities", "M(2,Z(2))", "--exhaustive")
    assert code == 0
    sweeps = {s["name"]: s for s in report["payload"]["sweeps"]}
    for n in ("kato_squares", "kato_factorization", "kato_rs", "kr_commutator", "kr_anticommutator"):
        assert sweeps[n]["checked"] == 64 and sweeps[n]["violations"] == 0
    assert sweeps["jacobson_lemma"]["checked"] == 256
    assert report["payload"]["violations"] == 0


def test_recognize_with_witness():
    report, code, _ = invoke("recognize", "M(2,Z(3))", "--witness-kind", "F",
                             "--elems", "[[0,1],[0,0]]", "[[0,0],[1,0]]")
    assert code == 0
    assert report["payload"]["isomorphism"]["corner_cardinality"] == 3
    # comma separated literals in one argument work too
    report2, _, _ = invoke("recognize", "M(2,Z(3))", "--witness-kind", "F", "--elems",
                           "[[0,1],[0,0]],[[0,0],[1,0]]")
    assert report2["payload"] == report["payload"]


def test_recognize_emits_corner_table(tmp_path):
    path = tmp_path / "corner.tbl"
    report, code, _ = invoke("recognize", "M(2,Z(3))", "--emit-corner", str(path))
    assert code == 0 and path.exists()
    T = build_ring(f"Table({path})")
    assert T.card == 3 and int(T.unit_mask.sum()) == 2


def test_recognize_negative():
    report, code, _ = invoke("recognize", "M(3,Z(2))")
    assert code == 0 and report["payload"]["recognized"] is False
    assert report["payload"]["obstruction"]["cardinality"] == 512


def test_sum2units_and_henriksen():
    report, code, _ = invoke("sum2units", "Z(3)")
    assert code == 0 and report["payload"]["pair"] == ["2", "2"]
    assert report["payload"]["corner_cardinality"] == 3
    report, code, _ = invoke("henriksen", "Z(6)", "--m", "5")
    assert code == 0 and report["payload"]["det_U"] in (1, -1)


@pytest.mark.parametrize("argv, code", [
    (["describe", "M(2,Z("], 2),
    (["pair", "M(2,Z(2))", "--elems", "[[1,1],[1,1]]", "1"], 2),
    (["pair", "M(2,Z(2))", "--elems", "[[1,0],[0,0]]"], 2),
    (["recognize", "M(2,Z(2))", "--witness-kind", "F", "--elems", "1", "1"], 2),
    (["henriksen", "Z(2)", "--m", "1"], 2),
    (["describe", "M(3,Z(6))"], 3),
    (["decide", "M(2,Z(3))", "--max-card", "10"], 3),
])
def test_exit_codes(argv, code):
    report, got, _ = invoke(*argv)
    assert got == code
    assert report["error"]["message"]


def test_determinism_across_runs_and_jobs():
    a = invoke("decide", "M(2,Z(5))", "--method", "all")[2]
    b = invoke("decide", "M(2,Z(5))", "--method", "all")[2]
    c = invoke("decide", "M(2,Z(5))", "--method", "all", "--jobs", "2")[2]
    assert _strip(a) == _strip(b)
    assert _strip(a, drop_jobs=True) == _strip(c, drop_jobs=True)
    p1 = invoke("pair", "M(2,Z(3))", "--elems", "[[0,0],[0,1]]", "[[2,1],[1,2]]")[2]
    p2 = invoke("pair", "M(2,Z(3))", "--elems", "[[0,0],[0,1]]", "[[2,1],[1,2]]")[2]
    assert _strip(p1) == _strip(p2)


def test_recheck_roundtrip(tmp_path):
    reports = [
        invoke("decide", "M(2,Z(3))", "--method", "all")[0],
        invoke("pair", "M(2,Z(3))", "--elems", "[[0,0],[0,1]]", "[[2,1],[1,2]]")[0],
        invoke("recognize", "M(2,Z(3))")[0],
        invoke("sum2units", "Z(5)")[0],
        invoke("henriksen", "Z(6)", "--m", "4")[0],
        invoke("recognize", "M(3,Z(2))")[0],
    ]
    total = 0
    for i, rep in enumerate(reports):
        path = tmp_path / f"r{i}.json"
        path.write_text(json.dumps(rep))
        out, code, _ = invoke("fixtures", "--recheck", str(path))
        assert code == 0 and out["payload"]["failed"] == 0
        total += out["payload"]["rechecked"]
    assert total >= 15
    rep = reports[4]
    rep["payload"]["certificates"][0]["U"][0][0] = "1"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rep))
    out, code, _ = invoke("fixtures", "--recheck", str(path))
    assert code == 4 and out["payload"]["failed"] == 1


def test_recheck_missing_file(tmp_path):
    _, code, _ = invoke("fixtures", "--recheck", str(tmp_path / "nope.json"))
    assert code == 2


def test_text_output():
    buf = io.StringIO()
    _, code = run(["describe", "Z(6)", "--text"], stream=buf)
    assert code == 0 and "cardinality: 6" in buf.getvalue()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "idemring", "decide", "M(2,Z(2))", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["holds"] is False


def test_fixtures_json():
    report, code, _ = invoke("fixtures")
    assert code == 0 and report["payload"]["failed"] == 0
    assert len(report["payload"]["fixtures"]) == 17
