"""Relativistic spin built from the classical dipole tensor.

The dipole tensor ``D_{ak}`` (lower indices) packs the electric dipole
``d`` and magnetic dipole ``mu`` as::

    gamma * [[ 0,   d1,   d2,   d3],
             [-d1,  0,    mu3, -mu2],
             [-d2, -mu3,  0,    mu1],
             [-d3,  mu2, -mu1,  0  ]]

Entries may be operator valued (``d`` and ``mu`` of shape ``(3, n, n)``),
in which case the tensor has shape ``(4, 4, n, n)``.

Rest-frame content is ``mu_rest = alpha * sigma / 2`` and ``d_rest = 0``.
The moving-frame dipoles follow from the covariant transformation law
``D_{ak} = L_a^r L_k^s D_rest_{rs}``.

Expectation values of two-component states are reported with the state
normalised to ``<psi|psi> = 2``, the same convention as the covariant Dirac
norm ``psi^dagger gamma^0 psi = 2``; classical and Dirac numbers are
therefore directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidFactorError, MalformedTensorError
from .fields import FieldConfig, rest_frame_fields
from .operators import PAULI, OperatorTriple, cross, outer_beta, spin_algebra_residual
from .tensor_core import (
    ATOL,
    EPSILON,
    Rank2Tensor,
    as_beta,
    lorentz_factor,
    pure_boost,
    spatial_dual,
    transform_rank2,
)

__all__ = [
    "COVARIANT_NORM",
    "DipoleTensor",
    "PlanarState",
    "rest_spin",
    "dipole_tensor",
    "extract_dipoles",
    "transform_dipoles",
    "relativistic_spin_tensor",
    "relativistic_spin_vector",
    "spin_algebra_residual",
    "classical_sg_lab",
    "classical_sg_rest",
    "theta_angle",
    "xi_consistency_angle",
    "planar_eigenstates",
    "expectation",
    "lab_sx_expectation",
    "lab_sx_expectation_closed_form",
]

COVARIANT_NORM = 2.0


@dataclass(frozen=True)
class DipoleTensor:
    tensor: Rank2Tensor
    gamma: float = 1.0

    @property
    def matrix(self) -> np.ndarray:
        return self.tensor.matrix


@dataclass(frozen=True)
class PlanarState:
    amplitudes: np.ndarray
    theta: float

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)


def rest_spin() -> OperatorTriple:
    """Pauli spin ``sigma / 2``."""
    return OperatorTriple(PAULI / 2)


def dipole_tensor(d, mu, gamma: float = 1.0) -> DipoleTensor:
    if gamma < 1.0:
        raise InvalidFactorError(f"Lorentz factor must be >= 1, got {gamma}")
    d = np.asarray(d)
    mu = np.asarray(mu)
    extra = np.broadcast_shapes(d.shape[1:], mu.shape[1:])
    d = np.broadcast_to(d, (3,) + extra)
    mu = np.broadcast_to(mu, (3,) + extra)
    dtype = np.result_type(d, mu, float)
    D = np.zeros((4, 4) + extra, dtype=dtype)
    D[0, 1:] = d
    D[1:, 0] = -d
    # spatial block D_jk = eps_jkl mu_l
    D[1:, 1:] = np.einsum("jkl,l...->jk...", EPSILON, mu)
    return DipoleTensor(Rank2Tensor(gamma * D, "covariant"), float(gamma))


def extract_dipoles(D, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    m = np.asarray(getattr(D, "matrix", D))
    if m.shape[:2] != (4, 4) or not np.allclose(m, -np.swapaxes(m, 0, 1), rtol=0, atol=ATOL):
        raise MalformedTensorError("dipole tensor must be antisymmetric in its space-time indices")
    d = m[0, 1:] / gamma
    mu = spatial_dual(m) / gamma
    return d, mu


def transform_dipoles(d_rest, mu_rest, beta) -> tuple[np.ndarray, np.ndarray]:
    """Moving-frame dipoles from rest-frame ones (closed form)."""
    b = as_beta(beta)
    g = lorentz_factor(b)
    d_rest = np.asarray(d_rest)
    mu_rest = np.asarray(mu_rest)
    k = g / (g + 1.0)
    d = d_rest + cross(b, mu_rest) - k * outer_beta(b, d_rest)
    mu = mu_rest - cross(b, d_rest) - k * outer_beta(b, mu_rest)
    return d, mu


def relativistic_spin_tensor(beta, alpha: float = 1.0) -> Rank2Tensor:
    """``S_{mn} = D_{mn} / alpha`` in the frame moving with ``beta``.

    Entries are 2x2 operators; the result has shape ``(4, 4, 2, 2)``.
    """
    if alpha == 0:
        raise InvalidFactorError("gyromagnetic ratio alpha must be nonzero")
    S_rest = rest_spin().ops
    D_rest = dipole_tensor(np.zeros_like(S_rest), alpha * S_rest, 1.0)
    D = transform_rank2(pure_boost(beta), D_rest.tensor)
    return Rank2Tensor(D.matrix / alpha, "covariant")


def relativistic_spin_vector(beta) -> OperatorTriple:
    """``S = gamma S_rest - gamma^2 beta (beta . S_rest) / (gamma + 1)``."""
    b = as_beta(beta)
    g = lorentz_factor(b)
    S_rest = rest_spin().ops
    return OperatorTriple(g * S_rest - g * g / (g + 1.0) * outer_beta(b, S_rest))


def relativistic_spin_vector_from_tensor(beta) -> OperatorTriple:
    return OperatorTriple(spatial_dual(relativistic_spin_tensor(beta).matrix))


def classical_sg_lab(cfg: FieldConfig, alpha: float = 1.0) -> np.ndarray:
    S = relativistic_spin_vector(cfg.beta)
    return -(alpha / cfg.gamma) * cfg.B_magnitude * S.y


def classical_sg_rest(cfg: FieldConfig, alpha: float = 1.0) -> np.ndarray:
    """``-alpha B_theta S_theta`` from the rest-frame magnetic field.

    The rest-frame electric dipole vanishes, so the rest-frame electric
    field does not enter.
    """
    _, B_rest = rest_frame_fields(cfg)
    B_theta = float(np.hypot(B_rest[0], B_rest[1]))
    theta = float(np.arctan2(B_rest[1], B_rest[0]))
    S = rest_spin()
    return -alpha * B_theta * (np.cos(theta) * S.x + np.sin(theta) * S.y)


def theta_angle(phi: float, gamma: float) -> float:
    """Azimuth of the rest-frame magnetic field (and of the rest Hamiltonian axis)."""
    if gamma < 1.0:
        raise InvalidFactorError(f"Lorentz factor must be >= 1, got {gamma}")
    s, c = np.sin(phi), np.cos(phi)
    return float(np.arctan2(s * s + gamma * c * c, (1.0 - gamma) * s * c))


def xi_consistency_angle(phi: float, gamma: float) -> float:
    """Rest-frame azimuth a state needs for lab ``<S^x> = 0``."""
    if gamma < 1.0:
        raise InvalidFactorError(f"Lorentz factor must be >= 1, got {gamma}")
    s, c = np.sin(phi), np.cos(phi)
    return float(np.arctan2(c * c + gamma * s * s, (gamma - 1.0) * c * s))


def planar_eigenstates(theta: float) -> tuple[PlanarState, PlanarState]:
    """Unit-norm eigenstates of ``cos(theta) S^x + sin(theta) S^y`` (eigenvalues +-1/2)."""
    a, b = np.exp(-0.5j * theta), np.exp(0.5j * theta)
    up = PlanarState(np.array([a, b]) / np.sqrt(2.0), theta)
    down = PlanarState(np.array([a, -b]) / np.sqrt(2.0), theta)
    return up, down


def expectation(op: np.ndarray, state) -> float:
    """``<psi|op|psi>`` with ``psi`` rescaled to ``<psi|psi> = COVARIANT_NORM``."""
    v = np.asarray(state.amplitudes if isinstance(state, PlanarState) else state, dtype=complex)
    val = np.vdot(v, op @ v) / np.vdot(v, v).real * COVARIANT_NORM
    return float(val.real)


def lab_sx_expectation(phi: float, gamma: float) -> float:
    """Lab ``<S^x>`` in the state ``|u_theta>`` (matrix route)."""
    beta = np.sqrt(1.0 - 1.0 / gamma**2) if gamma > 1.0 else 0.0
    S = relativistic_spin_vector(beta * np.array([np.cos(phi), np.sin(phi), 0.0]))
    up, _ = planar_eigenstates(theta_angle(phi, gamma))
    return expectation(S.x, up)


def lab_sx_expectation_closed_form(phi: float, gamma: float) -> float:
    s, c = np.sin(phi), np.cos(phi)
    return float((1.0 - gamma**2) * s * c / np.sqrt(s * s + gamma**2 * c * c))
