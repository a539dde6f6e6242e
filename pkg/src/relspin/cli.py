"""Command-line front end.

    relspin check-algebra [--betas 0,0.1,0.6] [--direction 1,0,0]
    relspin run --model relativistic --beta 0.866 --phi-deg 45
    relspin sweep --model both --format csv --output sweep.csv
    relspin verify-paper --format json

Exit status: 0 all checks pass, 1 a physics check failed, 2 usage error.
Angles are degrees at this boundary and radians everywhere else.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import classical_spin as cs
from . import dirac_core as dc
from . import experiment as ex
from .operators import spin_algebra_residual
from .verification import run_all

EXIT_OK, EXIT_PHYSICS, EXIT_USAGE = 0, 1, 2

SWEEP_HEADER = ["gamma", "phi_deg", "theta_deg", "xi_deg", "angular_gap", "sx_expectation", "paradox", "model"]
DEFAULT_SWEEP_BETAS = (0.0, 0.6, math.sqrt(3.0) / 2.0, math.sqrt(24.0) / 5.0)  # gamma = 1, 1.25, 2, 5
DEFAULT_SWEEP_PHIS = tuple(15.0 * k for k in range(7))
DEFAULT_ALGEBRA_BETAS = (0.0, 0.1, 0.3, 0.6, 0.9)


@dataclass
class CliConfig:
    subcommand: str = ""
    beta: float = 0.0
    phi_deg: float = 0.0
    B: float = 1.0
    alpha: float = 1.0
    model: str = "dirac"
    energy_sign: int = 1
    betas: list[float] | None = None
    phi_degs: list[float] = field(default_factory=lambda: list(DEFAULT_SWEEP_PHIS))
    direction: list[float] = field(default_factory=lambda: [1.0, 0.0, 0.0])
    output: str | None = None
    format: str = "json"
    tolerance: float = ex.DEFAULT_TOLERANCE
    jobs: int = 1


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """12 significant digits, shared by the JSON and CSV writers."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    return format(float(x) + 0.0, ".12g")  # + 0.0 folds -0.0 into 0.0


def num(x) -> float:
    return float(fmt(x))


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relspin", description="Relativistic vs Dirac spin in a covariant SG experiment")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat JSON file with CliConfig keys; flags override it")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--output", "-o", default=None, help="write to this path instead of stdout")
    common.add_argument("--tolerance", type=float, default=None)
    sub = p.add_subparsers(dest="subcommand", metavar="{check-algebra,run,sweep,verify-paper}")

    alg = sub.add_parser("check-algebra", parents=[common], help="spin commutator residuals for both operators")
    alg.add_argument("--betas", type=_float_list, default=None)
    alg.add_argument("--direction", type=_float_list, default=None)

    run = sub.add_parser("run", parents=[common], help="single experiment report")
    run.add_argument("--model", choices=["relativistic", "dirac"], default=None)
    run.add_argument("--beta", type=float, default=None)
    run.add_argument("--phi-deg", dest="phi_deg", type=float, default=None)
    run.add_argument("--B", dest="B", type=float, default=None)
    run.add_argument("--alpha", type=float, default=None)
    run.add_argument("--energy-sign", dest="energy_sign", type=int, choices=[1, -1], default=None)

    sw = sub.add_parser("sweep", parents=[common], help="paradox table over a (beta, phi) grid")
    sw.add_argument("--model", choices=["relativistic", "dirac", "both"], default=None)
    sw.add_argument("--betas", type=_float_list, default=None)
    sw.add_argument("--phi-degs", dest="phi_degs", type=_float_list, default=None)
    sw.add_argument("--B", dest="B", type=float, default=None)
    sw.add_argument("--alpha", type=float, default=None)
    sw.add_argument("--jobs", type=int, default=None)

    sub.add_parser("verify-paper", parents=[common], help="run every closed-form and two-route check")
    return p


def parse_config(argv: list[str] | None = None) -> CliConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.subcommand:
        parser.print_help(sys.stderr)
        raise SystemExit(EXIT_USAGE)

    cfg = CliConfig(subcommand=args.subcommand)
    if args.subcommand == "sweep":
        cfg.model = "both"
    known = {f.name for f in fields(CliConfig)} - {"subcommand"}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file: {exc}")
        if not isinstance(data, dict):
            parser.error("config file must hold a flat JSON object")
        unknown = set(data) - known
        if unknown:
            parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
        for k, v in data.items():
            setattr(cfg, k, v)
    for k, v in vars(args).items():
        if k in known and v is not None:
            setattr(cfg, k, v)

    try:
        _validate(cfg)
    except UsageError as exc:
        parser.error(str(exc))
    return cfg


def _validate(cfg: CliConfig) -> None:
    def speed_ok(b):
        if not 0.0 <= float(b) < 1.0:
            raise UsageError(f"superluminal or negative speed beta={b}; need 0 <= beta < 1")

    speed_ok(cfg.beta)
    for b in cfg.betas or []:
        speed_ok(b)
    if not cfg.tolerance > 0:
        raise UsageError("tolerance must be positive")
    if cfg.format not in ("json", "csv"):
        raise UsageError(f"unknown format {cfg.format!r}")
    allowed = ("relativistic", "dirac", "both") if cfg.subcommand == "sweep" else ("relativistic", "dirac")
    if cfg.model not in allowed:
        raise UsageError(f"model must be one of {allowed}")
    if cfg.energy_sign not in (1, -1):
        raise UsageError("energy_sign must be 1 or -1")
    if cfg.subcommand == "sweep" and (cfg.betas == [] or not cfg.phi_degs):
        raise UsageError("sweep grid is empty")
    if len(cfg.direction) != 3 or not np.linalg.norm(cfg.direction) > 0:
        raise UsageError("direction needs three components, not all zero")
    if cfg.jobs < 1:
        raise UsageError("jobs must be >= 1")


def _emit(text: str, cfg: CliConfig) -> None:
    if cfg.output:
        try:
            Path(cfg.output).write_text(text)
        except OSError as exc:
            print(f"relspin: cannot write {cfg.output}: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (int, float, np.floating, np.bool_)) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": _jsonable(obj.real.tolist()), "im": _jsonable(obj.imag.tolist())}
        return _jsonable(obj.tolist())
    if isinstance(obj, complex):
        return {"re": num(obj.real), "im": num(obj.imag)}
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return num(obj)
    return obj


# ---------------------------------------------------------------- check-algebra


def algebra_table(betas, direction) -> list[dict]:
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    rows = []
    for b in betas:
        beta = b * n
        rows.append({
            "beta": b,
            "dirac_residual": spin_algebra_residual(dc.dirac_spin_vector(beta)),
            "relativistic_residual": spin_algebra_residual(cs.relativistic_spin_vector(beta)),
        })
    return rows


def cmd_check_algebra(cfg: CliConfig) -> int:
    betas = cfg.betas if cfg.betas is not None else list(DEFAULT_ALGEBRA_BETAS)
    rows = algebra_table(betas, cfg.direction)
    ok = all(r["dirac_residual"] < cfg.tolerance for r in rows) and all(
        r["relativistic_residual"] > cfg.tolerance for r in rows if r["beta"] > 0
    )
    if cfg.output or cfg.format == "csv":
        text = _csv(list(rows[0]) if rows else ["beta"], [list(r.values()) for r in rows]) if cfg.format == "csv" \
            else _json({"passed": ok, "rows": rows})
        _emit(text, cfg)
    else:
        lines = [f"{'beta':>8}  {'dirac':>14}  {'relativistic':>14}"]
        lines += [f"{r['beta']:8.4g}  {r['dirac_residual']:14.3e}  {r['relativistic_residual']:14.3e}" for r in rows]
        lines.append("PASS" if ok else "FAIL")
        _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK if ok else EXIT_PHYSICS


# ---------------------------------------------------------------- run


def report_dict(report: ex.ExperimentReport, cfg: ex.ExperimentConfig) -> dict:
    E, B = report.rest_fields
    d = {
        "model": report.model,
        "angle_unit": "deg",
        "config": {
            "beta": cfg.beta_magnitude,
            "phi_deg": math.degrees(cfg.phi),
            "B": cfg.B_magnitude,
            "alpha": cfg.alpha,
            "energy_sign": cfg.energy_sign,
            "tolerance": cfg.tolerance,
        },
        "gamma": report.gamma,
        "rest_fields": {"E": E, "B": B},
        "theta": math.degrees(report.theta),
        "xi_consistency": math.degrees(report.xi_consistency),
        "angular_gap": math.degrees(report.angular_gap),
        "hamiltonian_lab": report.hamiltonian_lab,
        "hamiltonian_rest": report.hamiltonian_rest,
        "initial_state": report.initial_state,
        "detector": report.detector,
        "sx_lab_expectation": report.sx_lab_expectation,
        "rest_expectations": list(report.rest_expectations),
        "lab_energy": report.lab_energy,
        "rest_energy": report.rest_energy,
        "rest_eigen_residual": report.rest_eigen_residual,
        "consistency_ok": report.consistency_ok,
        "covariance_ok": report.covariance_ok,
        "paradox": report.paradox,
        "notes": report.notes,
    }
    if report.branches:
        d["branches"] = {
            name: {k: (math.degrees(v) if k == "axis" else v) for k, v in b.items()}
            for name, b in report.branches.items()
        }
    return d


def _experiment_config(cfg: CliConfig, beta: float, phi_deg: float, model: str) -> ex.ExperimentConfig:
    return ex.ExperimentConfig(
        beta_magnitude=beta,
        phi=math.radians(phi_deg),
        B_magnitude=cfg.B,
        alpha=cfg.alpha,
        model=model,
        energy_sign=cfg.energy_sign,
        tolerance=cfg.tolerance,
    )


def cmd_run(cfg: CliConfig) -> int:
    ecfg = _experiment_config(cfg, cfg.beta, cfg.phi_deg, cfg.model)
    d = report_dict(ex.run_experiment(ecfg), ecfg)
    if cfg.format == "csv":
        scalars = {k: v for k, v in d.items() if isinstance(v, (str, bool, int, float))}
        _emit(_csv(list(scalars), [list(scalars.values())]), cfg)
    else:
        _emit(_json(d), cfg)
    return EXIT_OK


# ---------------------------------------------------------------- sweep


def sweep_row(cfg: CliConfig, beta: float, phi_deg: float, model: str) -> list:
    ecfg = _experiment_config(cfg, beta, phi_deg, model)
    r = ex.run_experiment(ecfg)
    return [r.gamma, phi_deg, math.degrees(r.theta), math.degrees(r.xi_consistency),
            math.degrees(r.angular_gap), r.sx_lab_expectation, r.paradox, model]


def sweep_rows(cfg: CliConfig) -> list[list]:
    betas = cfg.betas if cfg.betas is not None else list(DEFAULT_SWEEP_BETAS)
    models = ["relativistic", "dirac"] if cfg.model == "both" else [cfg.model]
    points = [(b, p, m) for p in cfg.phi_degs for b in betas for m in models]
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(lambda t: sweep_row(cfg, *t), points))
    return [sweep_row(cfg, *t) for t in points]


def cmd_sweep(cfg: CliConfig) -> int:
    rows = sweep_rows(cfg)
    if cfg.format == "csv":
        _emit(_csv(SWEEP_HEADER, rows), cfg)
    else:
        _emit(_json([dict(zip(SWEEP_HEADER, r)) for r in rows]), cfg)
    return EXIT_OK


# ---------------------------------------------------------------- verify-paper


def cmd_verify_paper(cfg: CliConfig) -> int:
    checks = run_all()
    ok = all(c.passed for c in checks if not c.informational)
    if cfg.format == "csv":
        header = ["name", "passed", "value", "bound", "kind", "informational", "detail"]
        rows = [[c.name, c.passed, c.value, c.bound, c.kind, c.informational, c.detail] for c in checks]
        _emit(_csv(header, rows), cfg)
    else:
        _emit(_json({"passed": ok, "checks": [c.as_dict() for c in checks]}), cfg)
    return EXIT_OK if ok else EXIT_PHYSICS


COMMANDS = {
    "check-algebra": cmd_check_algebra,
    "run": cmd_run,
    "sweep": cmd_sweep,
    "verify-paper": cmd_verify_paper,
}


def main(argv: list[str] | None = None) -> int:
    cfg = parse_config(argv)
    return COMMANDS[cfg.subcommand](cfg)


if __name__ == "__main__":
    sys.exit(main())
