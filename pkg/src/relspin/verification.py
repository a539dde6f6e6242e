"""Closed-form and two-route checks run by ``relspin verify-paper``.

Each check reports a single number and the bound it is held to.  ``kind``
is ``"max_error"`` (pass when value <= bound) or ``"lower_bound"`` (pass
when value > bound).  Informational checks never affect the exit status.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from . import classical_spin as cs
from . import dirac_core as dc
from . import experiment as ex
from . import fields as fl
from .operators import spin_algebra_residual
from .tensor_core import (
    METRIC,
    FourVector,
    gamma_to_speed,
    minkowski_inner,
    pure_boost,
    transform_rank2,
)

GAMMA_GRID = (1.0, 1.25, 2.0, 5.0)
PHI_GRID = tuple(k * math.pi / 12 for k in range(7))
SPEEDS = (0.1, 0.3, 0.6, 0.9)
N_RANDOM = 50


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    kind: str = "max_error"
    informational: bool = False
    detail: str = ""

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        return self.value <= self.bound if self.kind == "max_error" else self.value > self.bound

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def grid() -> Iterator[tuple[float, float]]:
    for phi in PHI_GRID:
        for g in GAMMA_GRID:
            yield g, phi


def random_betas(seed: int = 0, speeds=SPEEDS, n: int = N_RANDOM) -> list[np.ndarray]:
    """``n`` random directions for each speed in ``speeds``."""
    rng = np.random.default_rng(seed)
    out = []
    for speed in speeds:
        for _ in range(n):
            v = rng.normal(size=3)
            out.append(speed * v / np.linalg.norm(v))
    return out


def _max(values) -> float:
    return float(max(values, default=0.0))


def _cfg(gamma: float, phi: float, **kw) -> ex.ExperimentConfig:
    return ex.ExperimentConfig.from_gamma(gamma, phi, **kw)


def spin_algebra_checks(seed: int = 0) -> list[Check]:
    betas = random_betas(seed)
    rel_min = min(spin_algebra_residual(cs.relativistic_spin_vector(b)) for b in betas)
    return [
        Check("dirac_spin_algebra", _max(spin_algebra_residual(dc.dirac_spin_vector(b)) for b in betas), 1e-12),
        Check("relativistic_spin_algebra_fails", rel_min, 1e-3, kind="lower_bound"),
        Check("relativistic_spin_algebra_at_rest", spin_algebra_residual(cs.relativistic_spin_vector(np.zeros(3))), 1e-14),
    ]


def field_checks() -> list[Check]:
    closed_vs_tensor = []
    invariants = []
    for g, phi in grid():
        cfg = fl.FieldConfig(1.0, phi, gamma_to_speed(g))
        Ec, Bc = fl.rest_frame_fields(cfg)
        Et, Bt = fl.rest_frame_fields_tensor(cfg)
        closed_vs_tensor.append(max(np.max(np.abs(Ec - Et)), np.max(np.abs(Bc - Bt))))
        lab = fl.field_tensor_from_EB(np.zeros(3), cfg.lab_B)
        rest = fl.boost_fields(lab, pure_boost(cfg.beta))
        invariants.append(np.max(np.abs(np.subtract(fl.field_invariants(lab), fl.field_invariants(rest)))))
    E, B = fl.rest_frame_fields(fl.FieldConfig(1.0, math.pi / 4, gamma_to_speed(2.0)))
    point = max(abs(E[2] + 1.2247449), abs(B[0] + 0.5), abs(B[1] - 1.5), abs(B[2]), abs(E[0]), abs(E[1]))
    return [
        Check("rest_fields_closed_form_vs_tensor", _max(closed_vs_tensor), 1e-10),
        Check("field_invariants_preserved", _max(invariants), 1e-10),
        Check("rest_fields_gamma2_phi45", float(point), 1e-6),
    ]


def paradox_number_checks() -> list[Check]:
    th = cs.theta_angle(math.pi / 4, 2.0)
    xi = cs.xi_consistency_angle(math.pi / 4, 2.0)
    sx_matrix = cs.lab_sx_expectation(math.pi / 4, 2.0)
    sx_closed = cs.lab_sx_expectation_closed_form(math.pi / 4, 2.0)
    ratio_err = []
    for theta in np.linspace(-3.0, 3.0, 13):
        if abs(math.cos(theta)) < 1e-3:
            continue
        up, _ = cs.planar_eigenstates(theta)
        S = cs.rest_spin()
        ratio_err.append(abs(cs.expectation(S.y, up) / cs.expectation(S.x, up) - math.tan(theta)))
    return [
        Check("tan_theta_minus_3", abs(math.tan(th) + 3.0), 1e-10),
        Check("tan_xi_plus_3", abs(math.tan(xi) - 3.0), 1e-10),
        Check("lab_sx_expectation_value", abs(sx_matrix + 0.9486833), 1e-6),
        Check("lab_sx_matrix_vs_closed_form", _max(
            abs(cs.lab_sx_expectation(phi, g) - cs.lab_sx_expectation_closed_form(phi, g)) for g, phi in grid()
        ), 1e-10, detail=f"closed form {sx_closed:.12g}"),
        Check("planar_expectation_ratio_tan_theta", _max(ratio_err), 1e-10),
        Check("paradox_gap_gamma2_phi45", ex.ray_gap(th, xi), 1e-6, kind="lower_bound"),
    ]


def dirac_resolution_checks() -> list[Check]:
    triple = ex.rest_frame_dirac_expectations(_cfg(2.0, math.pi / 4))
    direction, lab_perp, closed = [], [], []
    for g, phi in grid():
        cfg = _cfg(g, phi)
        x, y, z = ex.rest_frame_dirac_expectations(cfg)
        closed.append(np.max(np.abs(np.subtract((x, y, z), ex.rest_frame_dirac_expectations_closed_form(phi, g)))))
        direction.append(ex.ray_gap(math.atan2(y, x), cs.theta_angle(phi, g)))
        psi = ex.boosted_plus_y(cfg)
        S = dc.dirac_spin_vector(cfg.beta)
        lab_perp.append(max(abs(dc.covariant_expectation(S.x, psi)), abs(dc.covariant_expectation(S.z, psi))))
    return [
        Check("rest_dirac_expectations_gamma2_phi45",
              float(np.max(np.abs(np.subtract(triple, (-0.5, 1.5, 0.0))))), 1e-10),
        Check("rest_dirac_expectations_closed_form_grid", _max(closed), 1e-10),
        Check("rest_dirac_direction_equals_theta", _max(direction), 1e-10),
        Check("lab_dirac_sx_sz_vanish", _max(lab_perp), 1e-10),
    ]


def covariance_checks() -> list[Check]:
    classical, quantum = [], []
    for g, phi in grid():
        cfg = _cfg(g, phi)
        classical.append(np.max(np.abs(g * cs.classical_sg_lab(cfg.fields) - cs.classical_sg_rest(cfg.fields))))
        psi = ex.boosted_plus_y(cfg).components
        quantum.append(max(ex.eigen_residual(ex.quantum_sg_lab(cfg), psi)[1],
                           ex.eigen_residual(ex.quantum_sg_rest(cfg), psi)[1]))
    return [
        Check("classical_hamiltonian_covariance", _max(classical), 1e-12),
        Check("quantum_hamiltonians_share_eigenvector", _max(quantum), 1e-10),
    ]


def two_route_checks(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed + 1)
    eq5, eq9, eq20_conj, eq20_tensor, eq19 = [], [], [], [], []
    for b in random_betas(seed, speeds=(0.9,), n=N_RANDOM) + random_betas(seed + 2, speeds=(0.3,), n=N_RANDOM):
        d_rest, mu_rest = rng.normal(size=3), rng.normal(size=3)
        d, mu = cs.transform_dipoles(d_rest, mu_rest, b)
        L = pure_boost(b)
        D = transform_rank2(L, cs.dipole_tensor(d_rest, mu_rest, 1.0).tensor)
        dt, mut = cs.extract_dipoles(D.matrix, L.gamma)
        eq5.append(max(np.max(np.abs(d - dt)), np.max(np.abs(mu - mut))))
        eq9.append(np.max(np.abs(cs.relativistic_spin_vector(b).ops - cs.relativistic_spin_vector_from_tensor(b).ops)))
        closed = dc.dirac_spin_vector(b).ops
        eq20_conj.append(np.max(np.abs(closed - dc.conjugated_spin_vector(b).ops)))
        eq20_tensor.append(np.max(np.abs(closed - dc.dirac_spin_vector_from_tensor(b).ops)))
        (dd, mm), (dd_t, mm_t) = dc.dirac_dipole_operators(b, 1.0), dc.dirac_dipoles_from_tensor(b, 1.0)
        eq19.append(max(np.max(np.abs(dd.ops - dd_t.ops)), np.max(np.abs(mm.ops - mm_t.ops))))
    return [
        Check("dipole_transform_closed_vs_tensor", _max(eq5), 1e-12),
        Check("relativistic_spin_closed_vs_tensor", _max(eq9), 1e-12),
        Check("dirac_spin_closed_vs_conjugation", _max(eq20_conj), 1e-12),
        Check("dirac_spin_closed_vs_tensor", _max(eq20_tensor), 1e-12),
        Check("dirac_dipoles_closed_vs_tensor", _max(eq19), 1e-12),
    ]


def structural_checks(seed: int = 0) -> list[Check]:
    gs = dc.gamma_matrices()
    G, g5 = gs.gamma, gs.gamma5
    I4 = np.eye(4)
    clifford = _max(
        np.max(np.abs(G[m] @ G[n] + G[n] @ G[m] - 2 * METRIC[m, n] * I4)) for m in range(4) for n in range(4)
    )
    g5_err = max(
        np.max(np.abs(g5 @ g5 - I4)),
        np.max(np.abs(g5 - np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]]))),
        _max(np.max(np.abs(g5 @ G[m] + G[m] @ g5)) for m in range(4)),
    )
    residuals, norms, mass = [], [], []
    for b in random_betas(seed + 3, n=10):
        for direction in ([0, 1, 0], [1, 0, 0], [0.3, -0.2, 0.9]):
            for up in (True, False):
                for sign in (1, -1):
                    rest = dc.rest_spinor(direction, up, sign)
                    moving = dc.boost_spinor(rest, b)
                    residuals += [dc.dirac_residual(rest), dc.dirac_residual(moving)]
                    norms.append(abs(moving.covariant_norm() - rest.covariant_norm()))
        p = pure_boost(b).apply(FourVector.at_rest())
        mass.append(abs(minkowski_inner(p, p) - 1.0))
    return [
        Check("clifford_relation", clifford, 1e-14),
        Check("gamma5_properties", float(g5_err), 1e-14),
        Check("dirac_equation_residual", _max(residuals), 1e-12),
        Check("covariant_norm_invariance", _max(norms), 1e-12),
        Check("invariant_mass", _max(mass), 1e-10),
    ]


def electric_dipole_checks() -> list[Check]:
    ratios = []
    for g, phi in grid():
        cfg = _cfg(g, phi)
        printed = ex.printed_electric_dipole(cfg)
        if abs(printed) > 1e-9:
            ratios.append(ex.electric_dipole_expectation(cfg) / printed)
    value = ex.electric_dipole_expectation(_cfg(2.0, math.pi / 4))
    spread = max(ratios) - min(ratios)
    return [
        Check("electric_dipole_ratio_constant", float(spread), 1e-10, informational=True,
              detail=f"matrix value {value:.12g} vs printed 1.5 at gamma=2, phi=45deg; ratio {ratios[0]:.12g} (alpha=1)"),
    ]


ALL_GROUPS: tuple[Callable[[], list[Check]], ...] = (
    spin_algebra_checks,
    field_checks,
    paradox_number_checks,
    dirac_resolution_checks,
    covariance_checks,
    two_route_checks,
    structural_checks,
    electric_dipole_checks,
)


def run_all() -> list[Check]:
    out: list[Check] = []
    for group in ALL_GROUPS:
        out.extend(group())
    return out
