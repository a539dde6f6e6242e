import csv
import io
import json
import math
import subprocess
import sys

import pytest

from relspin import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def usage_exit(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    capsys.readouterr()
    return exc.value.code


# ---------------------------------------------------------------- parsing


def test_defaults():
    c = cli.parse_config(["run"])
    assert (c.alpha, c.B, c.model, c.tolerance) == (1.0, 1.0, "dirac", 1e-8)


def test_superluminal_beta_is_usage_error(capsys):
    assert usage_exit(capsys, "run", "--beta", "1.2") == 2


def test_missing_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err.lower()


@pytest.mark.parametrize("argv", [
    ["run", "--bogus"],
    ["run", "--tolerance", "0"],
    ["sweep", "--betas", "0.5,abc"],
    ["sweep", "--betas", "0.2,1.0"],
    ["check-algebra", "--direction", "0,0,0"],
])
def test_bad_input_exits_2(capsys, argv):
    assert usage_exit(capsys, *argv) == 2


def test_config_file_and_flag_override(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"beta": 0.5, "alpha": 2.0, "model": "relativistic"}))
    c = cli.parse_config(["run", "--config", str(path), "--beta", "0.25"])
    assert c.beta == 0.25
    assert c.alpha == 2.0
    assert c.model == "relativistic"


@pytest.mark.parametrize("payload", [{"colour": 1}, [1, 2], {"beta": 3.0}])
def test_bad_config_file(tmp_path, capsys, payload):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(payload))
    assert usage_exit(capsys, "run", "--config", str(path)) == 2


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert usage_exit(capsys, "sweep", "--format", "csv", "-o", str(target)) == 2


def test_fmt():
    assert cli.fmt(-0.0) == "0"
    assert cli.fmt(1 / 3) == "0.333333333333"
    assert cli.fmt(True) == "true"


# ---------------------------------------------------------------- run


def test_run_relativistic(capsys):
    code, out = run_cli(capsys, "run", "--model", "relativistic", "--beta", "0.866", "--phi-deg", "45")
    assert code == 0
    d = json.loads(out)
    assert d["paradox"] is True
    assert d["angle_unit"] == "deg"
    assert set(d["branches"]) == {"u_theta", "u_xi"}


def test_run_dirac_report_keys(capsys):
    code, out = run_cli(capsys, "run", "--beta", str(math.sqrt(3) / 2), "--phi-deg", "45")
    d = json.loads(out)
    assert code == 0
    for key in ("gamma", "rest_fields", "theta", "xi_consistency", "hamiltonian_lab", "hamiltonian_rest",
                "initial_state", "detector", "sx_lab_expectation", "rest_expectations", "consistency_ok",
                "covariance_ok", "paradox", "notes"):
        assert key in d
    assert d["paradox"] is False and d["detector"] == "upper"
    assert d["rest_expectations"] == pytest.approx([-0.5, 1.5, 0.0], abs=1e-10)
    assert set(d["hamiltonian_rest"]) == {"re", "im"}


def test_run_csv_matches_json(capsys):
    argv = ["run", "--model", "relativistic", "--beta", "0.6", "--phi-deg", "30"]
    _, js = run_cli(capsys, *argv)
    _, cs = run_cli(capsys, *argv, "--format", "csv")
    row = next(csv.DictReader(io.StringIO(cs)))
    d = json.loads(js)
    for key in ("gamma", "theta", "xi_consistency", "sx_lab_expectation"):
        assert float(row[key]) == d[key]


# ---------------------------------------------------------------- check-algebra


def test_check_algebra_default(capsys):
    code, out = run_cli(capsys, "check-algebra")
    assert code == 0
    assert out.strip().endswith("PASS")


def test_check_algebra_rows(capsys):
    code, out = run_cli(capsys, "check-algebra", "--format", "csv")
    rows = {float(r["beta"]): r for r in csv.DictReader(io.StringIO(out))}
    assert code == 0
    assert all(float(r["dirac_residual"]) < 1e-12 for r in rows.values())
    assert float(rows[0.0]["dirac_residual"]) < 1e-14
    assert float(rows[0.0]["relativistic_residual"]) < 1e-14
    assert float(rows[0.6]["relativistic_residual"]) > 1e-3


def test_check_algebra_fails_with_huge_tolerance(capsys):
    code, _ = run_cli(capsys, "check-algebra", "--tolerance", "10")
    assert code == 1


# ---------------------------------------------------------------- sweep


def sweep(capsys, *extra):
    code, out = run_cli(capsys, "sweep", "--format", "csv", *extra)
    assert code == 0
    return out, list(csv.DictReader(io.StringIO(out)))


def test_sweep_header(capsys):
    out, _ = sweep(capsys)
    assert out.splitlines()[0] == "gamma,phi_deg,theta_deg,xi_deg,angular_gap,sx_expectation,paradox,model"


def test_sweep_default_grid_contrast(capsys):
    _, rows = sweep(capsys)
    assert len(rows) == 4 * 7 * 2
    for r in rows:
        gamma, phi = float(r["gamma"]), float(r["phi_deg"])
        if r["model"] == "dirac":
            assert r["paradox"] == "false"
        else:
            expected = gamma > 1 + 1e-9 and phi not in (0.0, 90.0)
            assert r["paradox"] == ("true" if expected else "false")


def test_sweep_order_phi_major(capsys):
    _, rows = sweep(capsys, "--model", "relativistic")
    phis = [float(r["phi_deg"]) for r in rows]
    assert phis == sorted(phis)
    assert [float(r["gamma"]) for r in rows[:4]] == pytest.approx([1, 1.25, 2, 5])


def test_sweep_gamma1_angles(capsys):
    _, rows = sweep(capsys, "--betas", "0")
    for r in rows:
        assert float(r["theta_deg"]) == pytest.approx(90.0)
        assert float(r["xi_deg"]) == pytest.approx(90.0)


def test_sweep_byte_deterministic_and_parallel(capsys):
    a, _ = sweep(capsys)
    b, _ = sweep(capsys)
    c, _ = sweep(capsys, "--jobs", "4")
    assert a == b == c


def test_sweep_json_and_csv_agree(capsys):
    _, rows = sweep(capsys)
    _, js = run_cli(capsys, "sweep")
    data = json.loads(js)
    assert len(data) == len(rows)
    for j, r in zip(data, rows):
        for key in cli.SWEEP_HEADER:
            if key == "model":
                assert j[key] == r[key]
            elif key == "paradox":
                assert ("true" if j[key] else "false") == r[key]
            else:
                assert j[key] == float(r[key])


def test_sweep_writes_file(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    code, out = run_cli(capsys, "sweep", "--format", "csv", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("gamma,phi_deg")


# ---------------------------------------------------------------- verify-paper


def test_verify_paper_json(capsys):
    code, out = run_cli(capsys, "verify-paper")
    d = json.loads(out)
    assert code == 0 and d["passed"] is True
    for c in d["checks"]:
        assert {"name", "passed", "value", "bound"} <= set(c)


def test_verify_paper_csv_one_row_per_check(capsys):
    _, js = run_cli(capsys, "verify-paper")
    code, out = run_cli(capsys, "verify-paper", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["name"] for r in rows] == [c["name"] for c in json.loads(js)["checks"]]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relspin", "check-algebra"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
