import csv
import json
import math

import numpy as np
import pytest

from neumann_eigen.cli import main
from neumann_eigen.sweep import (
    CSV_COLUMNS,
    SweepConfig,
    build_setup,
    emit_outputs,
    run_sweep,
    solve_one,
)


@pytest.fixture(scope="module")
def plus_sweep():
    return run_sweep(SweepConfig(problem="example-plus"))


@pytest.fixture(scope="module")
def minus_sweep():
    return run_sweep(SweepConfig(problem="example-minus"))


def test_plus_defaults(plus_sweep):
    assert abs(plus_sweep.thresholds.rho0 - math.log(3) / 2) < 1e-6
    rows = plus_sweep.rows
    assert len(rows) == 15
    assert [r.rho for r in rows] == sorted(r.rho for r in rows)
    assert rows[-1].rho == pytest.approx(0.75)
    for r in rows:
        assert r.lambda_plus > 0 > r.lambda_minus
        if r.rho < plus_sweep.thresholds.rho0:
            assert r.bound is not None
            assert abs(r.lambda_plus) <= r.bound + 1e-3
            assert abs(r.lambda_minus) <= r.bound + 1e-3
        else:
            assert r.bound is None


def test_minus_defaults(minus_sweep):
    assert abs(minus_sweep.thresholds.rho0 - 0.2252) < 5e-4
    assert minus_sweep.rows[-1].rho == pytest.approx(0.25)
    assert len(minus_sweep.bound_rhos) == 1000
    assert np.all(minus_sweep.bound_rhos > 0)
    assert np.all(minus_sweep.bound_rhos < minus_sweep.thresholds.rho0)
    assert np.all(np.isfinite(minus_sweep.bound_values))


def test_single_row_is_direct_solve():
    res = run_sweep(SweepConfig(problem="example-minus", rho_min=0.12, rho_max=0.12, rho_count=1))
    assert len(res.rows) == 1
    setup = build_setup("example-minus")
    pair, report = solve_one(setup, 0.12, 1)
    row = res.rows[0]
    assert row.lambda_plus == pair.lam
    assert row.err_plus == pair.consistency_error
    assert row.bound == report.bound


@pytest.mark.parametrize("kw", [dict(rho_min=0), dict(rho_min=0.3, rho_max=0.1),
                                dict(rho_count=0), dict(fmt="xml"), dict(bound_curve_count=0)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        SweepConfig(**kw)


def test_unknown_problem():
    with pytest.raises(ValueError):
        run_sweep(SweepConfig(problem="nope"))


def test_csv_output(minus_sweep, tmp_path):
    paths = emit_outputs(minus_sweep, tmp_path)
    names = {p.name for p in paths}
    assert {"results.csv", "bound_curve.csv", "summary.json", "config.json"} <= names
    lines = (tmp_path / "results.csv").read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 16
    # rows beyond rho0 have an empty bound field
    last = next(csv.DictReader(lines[-1:], fieldnames=CSV_COLUMNS))
    assert last["bound"] == ""
    bound_lines = (tmp_path / "bound_curve.csv").read_text().splitlines()
    assert bound_lines[0] == "rho,bound,neg_bound"
    assert len(bound_lines) == 1001


def test_json_output(tmp_path):
    res = run_sweep(SweepConfig(problem="example-minus", fmt="json", rho_count=4,
                                bound_curve_count=10))
    emit_outputs(res, tmp_path)
    data = json.loads((tmp_path / "results.json").read_text())
    assert data["rows"][-1]["bound"] is None
    assert data["rows"][0]["converged_plus"] is True
    assert set(data["rows"][0]) == set(CSV_COLUMNS)
    assert len(json.loads((tmp_path / "bound_curve.json").read_text())) == 10


def test_floats_round_trip(minus_sweep, tmp_path):
    emit_outputs(minus_sweep, tmp_path)
    with open(tmp_path / "results.csv") as fh:
        rows = list(csv.DictReader(fh))
    for text, row in zip(rows, minus_sweep.rows):
        assert float(text["lambda_plus"]) == row.lambda_plus
        assert float(text["err_minus"]) == row.err_minus


def test_profiles(tmp_path):
    res = run_sweep(SweepConfig(problem="example-plus", rho_min=0.5, rho_max=0.5, rho_count=1,
                                profiles=True, bound_curve_count=5))
    emit_outputs(res, tmp_path)
    data = np.loadtxt(tmp_path / "profiles" / "profile_000.csv", delimiter=",", skiprows=1)
    assert data.shape == (1000, 3)
    assert abs(np.max(np.abs(data[:, 1])) - 0.5) < 1e-12
    assert abs(np.max(np.abs(data[:, 2])) - 0.5) < 1e-12


def test_unwritable_path(minus_sweep, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        emit_outputs(minus_sweep, blocker / "sub")


def test_cli_bounds(capsys, tmp_path):
    assert main(["bounds", "--problem", "example-plus", "--out", str(tmp_path),
                 "--bound-curve-count", "20"]) == 0
    out = capsys.readouterr().out
    assert "rho0 = 0.549306" in out
    lines = (tmp_path / "bound_curve.csv").read_text().splitlines()
    assert len(lines) == 21
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["rho1"] == pytest.approx(math.log(3) / 4, abs=1e-6)


@pytest.mark.parametrize("sign, fmt", [("+", "csv"), ("-", "json")])
def test_cli_solve(capsys, tmp_path, sign, fmt):
    assert main(["solve", "--problem", "example-minus", "--rho", "0.2", "--sign", sign,
                 "--format", fmt, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "converged = True" in out
    if fmt == "json":
        data = json.loads((tmp_path / "profile.json").read_text())
        assert data["lambda"] < 0 and data["iterations"] >= 1
        assert max(abs(x) for x in data["u"]) == pytest.approx(0.2, abs=1e-12)
    else:
        assert (tmp_path / "profile.csv").read_text().startswith("t,u\n")


def test_cli_sweep_and_errors(capsys, tmp_path):
    assert main(["sweep", "--problem", "example-minus", "--rho-count", "3",
                 "--bound-curve-count", "5", "--out", str(tmp_path / "o")]) == 0
    cfg = json.loads((tmp_path / "o" / "config.json").read_text())
    assert cfg["rho_count"] == 3 and cfg["problem"] == "example-minus"
    assert main(["sweep", "--rho-min", "0.3", "--rho-max", "0.1"]) != 0
    blocker = tmp_path / "f"
    blocker.write_text("")
    assert main(["sweep", "--rho-count", "2", "--out", str(blocker / "x")]) != 0
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--problem", "nope"])
    assert exc.value.code != 0


def test_cli_kernel_override(capsys):
    # a different omega disables the closed forms; the threshold comes from bisection
    assert main(["bounds", "--problem", "example-minus", "--omega", "2.0"]) == 0
    out = capsys.readouterr().out
    assert "rho1 = n/a" in out
    rho0 = float(out.split("rho0 = ")[1].split()[0])
    assert rho0 > 0
