"""Covariant Stern-Gerlach experiment in the lab and particle rest frames.

Lab: uniform field ``B y_hat``, particle velocity ``v (cos phi, sin phi, 0)``.
The initial state is the one whose spin points along +y in the lab.  Two
conditions are checked for it:

* consistency: lab expectations of ``S^x`` and ``S^z`` vanish;
* covariance: it is an eigenvector of the rest-frame Hamiltonian too.

The relativistic (classical-dipole) spin cannot meet both for an oblique
boost; the Dirac spin can.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import classical_spin as cs
from . import dirac_core as dc
from .errors import SuperluminalError, WrongModelError
from .fields import FieldConfig, rest_frame_fields

Model = Literal["relativistic", "dirac"]

DEFAULT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ExperimentConfig:
    beta_magnitude: float = 0.0
    phi: float = 0.0
    B_magnitude: float = 1.0
    alpha: float = 1.0
    model: Model = "dirac"
    energy_sign: int = 1
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not 0.0 <= self.beta_magnitude < 1.0:
            raise SuperluminalError(f"beta must lie in [0, 1), got {self.beta_magnitude}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.model not in ("relativistic", "dirac"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.energy_sign not in (1, -1):
            raise ValueError("energy_sign must be +1 or -1")

    @classmethod
    def from_gamma(cls, gamma: float, phi: float, **kw) -> "ExperimentConfig":
        return cls(beta_magnitude=math.sqrt(1.0 - 1.0 / gamma**2), phi=phi, **kw)

    @property
    def fields(self) -> FieldConfig:
        return FieldConfig(self.B_magnitude, self.phi, self.beta_magnitude)

    @property
    def beta(self) -> np.ndarray:
        return self.fields.beta

    @property
    def gamma(self) -> float:
        return self.fields.gamma


@dataclass(frozen=True)
class ParadoxReport:
    theta: float
    xi_consistency: float
    angular_gap: float
    verdict: Literal["paradox", "none"]


@dataclass
class ExperimentReport:
    model: str
    gamma: float
    phi: float
    rest_fields: tuple[np.ndarray, np.ndarray]
    theta: float
    xi_consistency: float
    hamiltonian_lab: np.ndarray
    hamiltonian_rest: np.ndarray
    initial_state: np.ndarray
    detector: Literal["upper", "lower"]
    sx_lab_expectation: float
    rest_expectations: tuple[float, float, float]
    consistency_ok: bool
    covariance_ok: bool
    paradox: bool
    lab_energy: float = 0.0
    rest_energy: float = 0.0
    rest_eigen_residual: float = 0.0
    branches: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def angular_gap(self) -> float:
        return ray_gap(self.theta, self.xi_consistency)


def _require(cfg: ExperimentConfig, model: str) -> None:
    if cfg.model != model:
        raise WrongModelError(f"operation needs model={model!r}, got {cfg.model!r}")


def ray_gap(a: float, b: float) -> float:
    """Angle between two axes (directions modulo pi)."""
    g = abs(a - b) % math.pi
    return min(g, math.pi - g)


def eigen_residual(H: np.ndarray, v: np.ndarray) -> tuple[float, float]:
    """Rayleigh quotient ``lam`` and ``||H v - lam v|| / ||v||``."""
    v = np.asarray(v, dtype=complex)
    lam = np.vdot(v, H @ v) / np.vdot(v, v)
    res = np.linalg.norm(H @ v - lam * v) / np.linalg.norm(v)
    return float(lam.real), float(res)


def boosted_plus_y(cfg: ExperimentConfig) -> dc.DiracSpinor:
    """``|p, +y>``: the +y rest spinor boosted to the lab velocity."""
    rest = dc.rest_spinor([0.0, 1.0, 0.0], up=True, energy_sign=cfg.energy_sign)
    return dc.boost_spinor(rest, cfg.beta)


def quantum_sg_lab(cfg: ExperimentConfig) -> np.ndarray:
    _require(cfg, "dirac")
    S = dc.dirac_spin_vector(cfg.beta)
    return -(cfg.alpha / cfg.gamma) * cfg.B_magnitude * S.y


def quantum_sg_rest(cfg: ExperimentConfig) -> np.ndarray:
    """``-alpha S.B_rest + i alpha g5 S.E_rest``."""
    _require(cfg, "dirac")
    E, B = rest_frame_fields(cfg.fields)
    S = dc.rest_spin()
    g5 = dc.gamma_matrices().gamma5
    return -cfg.alpha * S.along(B) + 1j * cfg.alpha * g5 @ S.along(E)


def paradox_check(cfg: ExperimentConfig) -> ParadoxReport:
    _require(cfg, "relativistic")
    theta = cs.theta_angle(cfg.phi, cfg.gamma)
    xi = cs.xi_consistency_angle(cfg.phi, cfg.gamma)
    gap = ray_gap(theta, xi)
    return ParadoxReport(theta, xi, gap, "paradox" if gap > cfg.tolerance else "none")


def rest_frame_dirac_expectations(cfg: ExperimentConfig) -> tuple[float, float, float]:
    _require(cfg, "dirac")
    psi = boosted_plus_y(cfg)
    x, y, z = (dc.covariant_expectation(s, psi) for s in dc.rest_spin())
    return x, y, z


def rest_frame_dirac_expectations_closed_form(phi: float, gamma: float) -> tuple[float, float, float]:
    s, c = math.sin(phi), math.cos(phi)
    return (1.0 - gamma) * c * s, s * s + gamma * c * c, 0.0


def electric_dipole_expectation(cfg: ExperimentConfig) -> float:
    """Covariant expectation of ``i alpha g5 S^z E_rest^z`` in ``|p, +y>``."""
    _require(cfg, "dirac")
    E, _ = rest_frame_fields(cfg.fields)
    g5 = dc.gamma_matrices().gamma5
    op = 1j * cfg.alpha * g5 @ dc.rest_spin().z * E[2]
    return float(np.real(dc.covariant_expectation(op, boosted_plus_y(cfg))))


def printed_electric_dipole(cfg: ExperimentConfig) -> float:
    """The literature closed form ``(gamma^2 - 1) cos^2(phi) B`` (no alpha)."""
    return (cfg.gamma**2 - 1.0) * math.cos(cfg.phi) ** 2 * cfg.B_magnitude


def _scale(H: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(H))))


def _run_dirac(cfg: ExperimentConfig) -> ExperimentReport:
    tol = cfg.tolerance
    psi = boosted_plus_y(cfg)
    S = dc.dirac_spin_vector(cfg.beta)
    H_lab = quantum_sg_lab(cfg)
    H_rest = quantum_sg_rest(cfg)
    sx, sy, sz = (dc.covariant_expectation(s, psi) for s in S)
    lab_energy, _ = eigen_residual(H_lab, psi.components)
    rest_energy, rest_res = eigen_residual(H_rest, psi.components)
    consistency = abs(sx) < tol and abs(sz) < tol
    covariance = rest_res < tol * _scale(H_rest)
    rest_exp = rest_frame_dirac_expectations(cfg)
    E_rest, B_rest = rest_frame_fields(cfg.fields)
    return ExperimentReport(
        model="dirac",
        gamma=cfg.gamma,
        phi=cfg.phi,
        rest_fields=(E_rest, B_rest),
        theta=cs.theta_angle(cfg.phi, cfg.gamma),
        # rest-frame direction of the lab-consistent state
        xi_consistency=math.atan2(rest_exp[1], rest_exp[0]),
        hamiltonian_lab=H_lab,
        hamiltonian_rest=H_rest,
        initial_state=psi.components,
        detector="upper" if sy > 0 else "lower",
        sx_lab_expectation=sx,
        rest_expectations=rest_exp,
        consistency_ok=consistency,
        covariance_ok=covariance,
        paradox=not (consistency and covariance),
        lab_energy=lab_energy,
        rest_energy=rest_energy,
        rest_eigen_residual=rest_res,
        notes=[
            f"electric dipole expectation {electric_dipole_expectation(cfg):.12g}"
            f" vs printed (gamma^2-1)cos^2(phi)B = {printed_electric_dipole(cfg):.12g}"
        ],
    )


def _relativistic_branch(cfg: ExperimentConfig, axis: float) -> dict:
    S = cs.relativistic_spin_vector(cfg.beta)
    H_lab = cs.classical_sg_lab(cfg.fields, cfg.alpha)
    H_rest = cs.classical_sg_rest(cfg.fields, cfg.alpha)
    up, _ = cs.planar_eigenstates(axis)
    sx, sy, sz = (cs.expectation(s, up) for s in S)
    lab_energy, lab_res = eigen_residual(H_lab, up.amplitudes)
    rest_energy, rest_res = eigen_residual(H_rest, up.amplitudes)
    tol = cfg.tolerance
    return {
        "axis": axis,
        "state": up.amplitudes,
        "expectations": (sx, sy, sz),
        "lab_energy": lab_energy,
        "rest_energy": rest_energy,
        "lab_eigen_residual": lab_res,
        "rest_eigen_residual": rest_res,
        "consistency_ok": abs(sx) < tol and abs(sz) < tol,
        "covariance_ok": rest_res < tol * _scale(H_rest) and lab_res < tol * _scale(H_lab),
    }


def _run_relativistic(cfg: ExperimentConfig) -> ExperimentReport:
    theta = cs.theta_angle(cfg.phi, cfg.gamma)
    xi = cs.xi_consistency_angle(cfg.phi, cfg.gamma)
    branches = {"u_theta": _relativistic_branch(cfg, theta), "u_xi": _relativistic_branch(cfg, xi)}
    chosen = branches["u_theta"]
    paradox = not any(b["consistency_ok"] and b["covariance_ok"] for b in branches.values())
    E_rest, B_rest = rest_frame_fields(cfg.fields)
    up, _ = cs.planar_eigenstates(theta)
    notes = []
    if not branches["u_theta"]["consistency_ok"]:
        notes.append("u_theta: covariant but lab <S^x> != 0")
    if not branches["u_xi"]["covariance_ok"]:
        notes.append("u_xi: lab-consistent but not an eigenstate of the rest-frame Hamiltonian")
    return ExperimentReport(
        model="relativistic",
        gamma=cfg.gamma,
        phi=cfg.phi,
        rest_fields=(E_rest, B_rest),
        theta=theta,
        xi_consistency=xi,
        hamiltonian_lab=cs.classical_sg_lab(cfg.fields, cfg.alpha),
        hamiltonian_rest=cs.classical_sg_rest(cfg.fields, cfg.alpha),
        initial_state=chosen["state"],
        detector="upper" if chosen["expectations"][1] > 0 else "lower",
        sx_lab_expectation=chosen["expectations"][0],
        rest_expectations=tuple(cs.expectation(s, up) for s in cs.rest_spin()),
        consistency_ok=chosen["consistency_ok"],
        covariance_ok=chosen["covariance_ok"],
        paradox=paradox,
        lab_energy=chosen["lab_energy"],
        rest_energy=chosen["rest_energy"],
        rest_eigen_residual=chosen["rest_eigen_residual"],
        branches=branches,
        notes=notes,
    )


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    if cfg.model == "dirac":
        return _run_dirac(cfg)
    return _run_relativistic(cfg)
