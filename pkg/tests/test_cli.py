import json

from qawverify.cli import main, suites
from qawverify.cli.suites import FAIL, Case
from qawverify.exact import parse_poly, poly_from_obj, var

q = var("q")


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_compute_opbar(capsys):
    code, out = _run(capsys, "compute", "opbar", "--n", "2", "--m", "0")
    assert code == 0
    assert poly_from_obj(json.loads(out.out)) == 1 - q


def test_compute_h(capsys):
    code, out = _run(capsys, "compute", "h", "--n", "2")
    assert code == 0
    assert poly_from_obj(json.loads(out.out)) == parse_poly("x^2 - (1+q)*x*y + q*y^2 - (1-q)")


def test_compute_synth_recurrence_asc(capsys):
    code, out = _run(capsys, "compute", "synth-recurrence", "--family", "asc")
    assert code == 0
    head = json.loads(out.out.splitlines()[0])
    assert head["A"] == "2" and head["depth"] == 4


def test_compute_synth_from_json(capsys):
    spec = '{"A": "2", "b": "0", "lambda": "1 - s"}'
    code, out = _run(capsys, "compute", "synth-recurrence", "--recurrence", spec)
    assert code == 0
    head = json.loads(out.out.splitlines()[0])
    assert head["depth"] == 3
    assert poly_from_obj(head["coeffs"][0]) == parse_poly("s*y")


def test_compute_synth_from_coefficient_list(capsys):
    spec = '{"A": "2", "b": ["0", "a"], "lambda": "1 - s"}'
    code, out = _run(capsys, "compute", "synth-recurrence", "--recurrence", spec)
    assert code == 0
    assert "P[n-1]" in out.out


def test_usage_errors(capsys):
    assert _run(capsys, "compute", "opbar")[0] == 2
    assert _run(capsys, "check", "nope")[0] == 2
    assert _run(capsys, "compute", "synth-recurrence", "--recurrence", "{bad")[0] == 2
    assert _run(capsys)[0] == 2


def test_norms_suite_json(capsys):
    code, out = _run(capsys, "check", "norms", "--nmax", "3", "--family", "big", "--emit", "json")
    assert code == 0
    rows = _json_lines(out.out)
    cases, summary = rows[:-1], rows[-1]
    assert len(cases) == 16
    assert all(c["schema"] == 1 and c["status"] == "PASS" for c in cases)
    assert summary["summary"] == {"pass": 16, "fail": 0, "reported": 0, "total": 16}
    assert [c["id"] for c in cases] == sorted(c["id"] for c in cases)


def test_aw_moments_probe(capsys):
    code, _ = _run(capsys, "check", "moments", "--family", "aw", "--mode", "probe",
                   "--seed", "42", "--trials", "20", "--nmax", "3")
    assert code == 0


def test_combin_suite_reports_normalization(capsys):
    code, out = _run(capsys, "check", "combin", "--nmax", "6", "--emit", "json")
    assert code == 0
    rows = _json_lines(out.out)[:-1]
    reported = [r for r in rows if r["status"] == "REPORTED"]
    assert reported and all("height1-closed" in r["id"] for r in reported)
    assert all("lhs" in r and "rhs" in r for r in reported)
    assert any(r["id"].startswith("combin/fbm-sum") for r in rows)
    assert any(r["id"].startswith("combin/motzkin") for r in rows)


def test_failure_sets_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(suites.SUITE_RUNNERS, "genfun", lambda opts: [Case("genfun/broken", FAIL, {})])
    code, out = _run(capsys, "check", "genfun")
    assert code == 1
    assert "FAIL" in out.out


def test_json_report_is_deterministic(capsys):
    _, first = _run(capsys, "check", "dbqh", "--nmax", "4", "--emit", "json")
    _, second = _run(capsys, "check", "dbqh", "--nmax", "4", "--emit", "json")
    assert first.out == second.out


def test_enumerate(capsys):
    code, out = _run(capsys, "enumerate", "fbm", "--n", "2")
    assert code == 0
    assert len(out.out.splitlines()) == 5
    code, out = _run(capsys, "enumerate", "motzkin", "--n", "2", "--height", "1")
    assert code == 0 and len(out.out.splitlines()) == 2
