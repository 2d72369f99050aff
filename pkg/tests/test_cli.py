import csv
import io
import json
import subprocess
import sys

import pytest

from multcalc.cli import main, run, scenario, validate
from multcalc.errors import DomainError, SpecError

E12 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
E23 = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
LINEAR = {"dim": 3, "coeffs": [E12, E23]}
CENTER = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]
AD_E12 = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]


def invoke(capsys, job=None, *args, monkeypatch=None):
    """Run ``main`` on a job dict via stdin; return (exit code, stdout, stderr)."""
    if job is not None:
        assert monkeypatch is not None
        monkeypatch.setattr(sys, "stdin", io.StringIO(job if isinstance(job, str) else json.dumps(job)))
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


# validation -------------------------------------------------------------------

@pytest.mark.parametrize(
    "job",
    [
        [],
        {"op": "nope"},
        {"op": "ftc", "path": LINEAR},
        {"op": "ftc", "path": LINEAR, "x": 1, "extra": 0},
        {"op": "ftc", "path": LINEAR, "x": "abc"},
        {"op": "trotter", "x": E12, "y": E23, "kmax": 30},
        {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "magic"}},
        {"op": "verify-tangent", "theorem": "dgpl0", "stencil": "central-9"},
    ],
)
def test_validate_rejects(job):
    with pytest.raises(SpecError):
        validate(job)


# single jobs ------------------------------------------------------------------

def test_integrate_closed_worked_example():
    report, tables = run({"op": "integrate", "path": LINEAR, "x": 1})
    assert report["status"] == "pass" and tables == []
    assert report["results"]["value"]["rows"] == [[1, 1, "1/6"], [0, 1, "1/2"], [0, 0, 1]]


def test_integrate_numeric_has_table():
    report, tables = run({"op": "integrate", "path": LINEAR, "x": 1, "mode": "numeric"})
    assert report["status"] == "pass"
    assert report["results"]["report"]["limit_error"] < 1e-6
    (name, rows), = tables
    assert name == "integral" and rows[-1]["n"] == 4096


def test_derive_numeric():
    report, _ = run({"op": "derive", "path": LINEAR, "x": "1/2", "mode": "numeric"})
    assert report["status"] == "pass"


def test_ftc_ibp_leibniz_pass():
    for job in (
        {"op": "ftc", "path": LINEAR, "x": 2},
        {"op": "ibp", "path": LINEAR, "path_b": LINEAR, "x": "3/2"},
        {"op": "leibniz", "path": LINEAR, "path_b": {"coeffs": [E23, E12]}, "x": -1},
    ):
        assert run(job)[0]["status"] == "pass"


def test_ibp_numeric_reports_three_series():
    report, tables = run({"op": "ibp", "path": {"coeffs": [E12]}, "path_b": {"coeffs": [E23]}, "x": 1,
                          "mode": "numeric"})
    assert report["status"] == "pass"
    assert [n for n, _ in tables] == ["lhs-a", "lhs-b", "rhs"]


def test_trotter_non_convergent_with_short_schedule():
    job = {"op": "trotter", "x": [[0, 1], [-1, 0]], "y": [[1, 0], [0, -1]], "schedule": {"kmin": 2, "kmax": 5}}
    assert run(job)[0]["status"] == "non-convergent"


def test_verify_rb_jobs():
    ok = [
        {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "factorization"}, "samples": 50},
        {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "weight1-inverse", "carrier": "s3"}},
        {"op": "verify-rb", "kind": "pair", "operator": {"rule": "shift-example"}, "samples": 50},
        {"op": "verify-rb", "kind": "pair", "operator": {"rule": "factorization"},
         "family": {"kind": "power", "lam": "3/2"}, "samples": 50},
        {"op": "verify-rb", "kind": "rboze", "operator": {"rule": "nilpotent-closed-form", "lie": CENTER},
         "samples": 50},
        {"op": "verify-rb", "kind": "limit", "operator": {"rule": "nilpotent-closed-form", "lie": CENTER},
         "samples": 3},
        {"op": "verify-rb", "kind": "lie", "operator": {"rule": "nilpotent-closed-form", "lie": CENTER},
         "weight": "limit", "samples": 10},
        {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "factorization", "decomposition": "gl2-gauss"},
         "samples": 20},
    ]
    for job in ok:
        assert run(job)[0]["status"] == "pass", job


def test_shift_example_weight1_reports_witness():
    report, _ = run({"op": "verify-rb", "kind": "weight1", "operator": {"rule": "shift-example"}, "samples": 5})
    assert report["status"] == "fail"
    assert report["results"]["witness"]["residual"] > 0


def test_closed_form_rejects_non_rb_operator():
    report, _ = run({"op": "verify-rb", "kind": "rboze",
                     "operator": {"rule": "nilpotent-closed-form", "lie": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}})
    assert report["status"] == "fail" and "error" in report["results"]


def test_verify_diff_jobs():
    for kind in ("closed", "limit", "lie"):
        job = {"op": "verify-diff", "kind": kind, "derivation": AD_E12, "samples": 3 if kind == "limit" else 30}
        assert run(job)[0]["status"] == "pass", kind
    bad = {"op": "verify-diff", "kind": "closed", "derivation": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    assert run(bad)[0]["status"] == "fail"


def test_verify_tangent_jobs():
    assert run({"op": "verify-tangent", "theorem": "tgop", "fixture": "gl2-gauss"})[0]["status"] == "pass"
    # the slope check cannot be met on exact polynomial log-curves
    assert run({"op": "verify-tangent", "theorem": "dgpl0"})[0]["status"] == "fail"
    with pytest.raises(DomainError):
        run({"op": "verify-tangent", "theorem": "dgpl0", "hmin_exp": 9})


def test_seed_changes_samples_and_is_reported():
    job = {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "factorization"}, "samples": 5, "seed": 3}
    assert run(job)[0]["seed"] == 3
    assert run(job, seed=4)[0]["seed"] == 4


def test_float_literal_switches_to_float_mode():
    report, _ = run({"op": "integrate", "path": {"coeffs": [[[0, 0.5, 0], [0, 0, 0], [0, 0, 0]]]}, "x": 1})
    assert report["results"]["value"]["rows"][0][1] == 0.5
    report, _ = run({"op": "integrate", "path": {"coeffs": [[[0, 0.5, 0], [0, 0, 0], [0, 0, 0]]]}, "x": 1},
                    rational=True)
    assert report["results"]["value"]["rows"][0][1] == "1/2"


# main ---------------------------------------------------------------------------

def test_main_exit_codes(capsys, monkeypatch):
    assert invoke(capsys, {"op": "ftc", "path": LINEAR, "x": 1}, monkeypatch=monkeypatch)[0] == 0
    fail = {"op": "verify-rb", "kind": "weight1", "operator": {"rule": "shift-example"}, "samples": 2}
    assert invoke(capsys, fail, monkeypatch=monkeypatch)[0] == 1
    nc = {"op": "trotter", "x": [[0, 1], [-1, 0]], "y": [[1, 0], [0, -1]], "kmax": 5}
    assert invoke(capsys, nc, monkeypatch=monkeypatch)[0] == 2
    code, out, err = invoke(capsys, "{not json", monkeypatch=monkeypatch)
    assert code == 3 and out == "" and err.startswith("error:")
    assert invoke(capsys, {"op": "ftc"}, monkeypatch=monkeypatch)[0] == 3


@pytest.mark.parametrize("args", [["--scenario", "nope"], ["--bogus"], ["--seed", "-1", "--scenario", "criterion-1"],
                                  ["--tol", "-1", "-"], ["job.json", "--scenario", "criterion-1"]])
def test_main_argument_errors(capsys, args):
    assert main(args) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_main_reads_job_file(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"op": "ftc", "path": LINEAR, "x": 1}))
    assert main([str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "pass" and "wall_time" not in report
    assert main([str(tmp_path / "missing.json")]) == 3


def test_main_timing_flag(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"op": "ftc", "path": LINEAR, "x": 1}))
    main([str(path), "--timing"])
    assert json.loads(capsys.readouterr().out)["wall_time"] >= 0


def test_csv_output_is_monotone_with_order_column(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"op": "trotter", "x": [[0, 1], [-1, 0]], "y": [[1, 0], [0, -1]]}))
    assert main([str(path), "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    ns = [int(r["n"]) for r in rows]
    assert ns == sorted(ns) and ns[-1] == 4096
    assert float(rows[-1]["order_est"]) == pytest.approx(1.0, abs=0.05)


def test_csv_summary_without_tables(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"op": "ftc", "path": LINEAR, "x": 1, "format": "csv"}))
    main([str(path)])
    lines = capsys.readouterr().out.splitlines()
    assert lines[:2] == ["field,value", "status,pass"]


def test_rational_env_var(tmp_path, capsys, monkeypatch):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"op": "integrate", "path": {"coeffs": [[[0, 0.5, 0], [0, 0, 0], [0, 0, 0]]]}, "x": 1}))
    monkeypatch.setenv("MULTCALC_RATIONAL", "1")
    main([str(path)])
    assert json.loads(capsys.readouterr().out)["results"]["value"]["rows"][0][1] == "1/2"


# scenarios ----------------------------------------------------------------------

def test_single_criterion_scenario():
    rep = scenario("criterion-1", 5)
    assert rep["status"] == "pass" and rep["results"][0]["name"] == "criterion-1"
    with pytest.raises(SpecError):
        scenario("criterion-12")


def test_scenario_output_is_deterministic(capsys):
    main(["--scenario", "criterion-7", "--seed", "9"])
    first = capsys.readouterr().out
    main(["--scenario", "criterion-7", "--seed", "9"])
    assert capsys.readouterr().out == first


def test_module_entry_point_subprocess():
    job = json.dumps({"op": "ftc", "path": LINEAR, "x": 1})
    proc = subprocess.run([sys.executable, "-m", "multcalc"], input=job, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
