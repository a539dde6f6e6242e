"""Dirac spinors, gamma matrices and the Dirac spin operator.

Standard (Dirac) representation.  Spinors are normalised covariantly,
``psi^dagger gamma^0 psi = 2 * energy_sign`` with ``m = 1``, and
expectation values are ``energy_sign * psi^dagger gamma^0 O psi``.

Moving-frame operators are obtained with the spinor boost ``D(L)``, which
maps the rest spinor to ``|p, s> = D(L) |p_rest, s>``.  The spin tensor
transforms as ``S_{ak} = L^r_a L^s_k S_rest_{rs}``, i.e. by the inverse of
the covariant rule used for the classical dipole tensor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .operators import PAULI, OperatorTriple, cross, dot, outer_beta
from .tensor_core import (
    METRIC,
    FourVector,
    Rank2Tensor,
    as_beta,
    lorentz_factor,
    pure_boost,
    spatial_dual,
    transform_rank2,
)

I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)
I4 = np.eye(4, dtype=complex)


@dataclass(frozen=True)
class GammaSet:
    gamma: np.ndarray  # (4, 4, 4), upper index first
    gamma5: np.ndarray

    @property
    def lowered(self) -> np.ndarray:
        return np.einsum("mn,n...->m...", METRIC, self.gamma)


@lru_cache(maxsize=None)
def gamma_matrices() -> GammaSet:
    g0 = np.block([[I2, Z2], [Z2, -I2]])
    gs = [np.block([[Z2, s], [-s, Z2]]) for s in PAULI]
    G = np.array([g0, *gs])
    g5 = 1j * G[0] @ G[1] @ G[2] @ G[3]
    G.setflags(write=False)
    g5.setflags(write=False)
    return GammaSet(G, g5)


def _block_offdiag(a: np.ndarray) -> np.ndarray:
    return np.block([[Z2, a], [a, Z2]])


@dataclass(frozen=True)
class SpinorBoost:
    matrix: np.ndarray
    beta: np.ndarray

    def inverse(self) -> np.ndarray:
        # D(L)^-1 = gamma^0 D(L) gamma^0 for a pure boost
        g0 = gamma_matrices().gamma[0]
        return g0 @ self.matrix @ g0


def spinor_boost(beta) -> SpinorBoost:
    b = as_beta(beta)
    speed = float(np.linalg.norm(b))
    if speed == 0.0:
        return SpinorBoost(I4.copy(), b)
    xi = np.arctanh(speed)
    sp = dot(b / speed, PAULI)
    M = np.cosh(xi / 2) * I4 + np.sinh(xi / 2) * _block_offdiag(sp)
    return SpinorBoost(M, b)


@dataclass(frozen=True)
class DiracSpinor:
    components: np.ndarray
    energy_sign: int = 1
    momentum: FourVector = field(default_factory=FourVector.at_rest)

    def __post_init__(self):
        c = np.array(self.components, dtype=complex)
        if c.shape != (4,):
            raise ValueError(f"Dirac spinor needs 4 components, got {c.shape}")
        if self.energy_sign not in (1, -1):
            raise ValueError("energy_sign must be +1 or -1")
        c.setflags(write=False)
        object.__setattr__(self, "components", c)

    def covariant_norm(self) -> float:
        g0 = gamma_matrices().gamma[0]
        return float(np.vdot(self.components, g0 @ self.components).real)

    def with_phase(self, angle: float) -> "DiracSpinor":
        return DiracSpinor(np.exp(1j * angle) * self.components, self.energy_sign, self.momentum)


def pauli_eigenvector(direction, up: bool = True) -> np.ndarray:
    """Unit eigenvector of ``sigma . n`` with eigenvalue +1 (``up``) or -1.

    The global phase makes the first nonzero component real and positive.
    """
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    w, v = np.linalg.eigh(dot(n, PAULI))
    vec = v[:, 1] if up else v[:, 0]
    k = int(np.argmax(np.abs(vec) > 1e-12))
    vec = vec * np.exp(-1j * np.angle(vec[k]))
    return vec / np.linalg.norm(vec)


def rest_spinor(direction, up: bool = True, energy_sign: int = 1, mass: float = 1.0) -> DiracSpinor:
    chi = np.sqrt(2.0) * pauli_eigenvector(direction, up)
    comps = np.zeros(4, dtype=complex)
    if energy_sign > 0:
        comps[:2] = chi
    else:
        comps[2:] = chi
    return DiracSpinor(comps, energy_sign, FourVector.at_rest(mass))


def boost_spinor(psi_rest: DiracSpinor, beta) -> DiracSpinor:
    D = spinor_boost(beta)
    p = pure_boost(beta).apply(psi_rest.momentum)
    return DiracSpinor(D.matrix @ psi_rest.components, psi_rest.energy_sign, p)


def rest_spin() -> OperatorTriple:
    """``1/2 diag(sigma, sigma)``."""
    return OperatorTriple(np.array([np.block([[s, Z2], [Z2, s]]) / 2 for s in PAULI]))


def dirac_spin_vector(beta) -> OperatorTriple:
    """Moving-frame Dirac spin, closed form.

    ``S = gamma S_r - gamma^2 beta (beta . S_r)/(gamma + 1) + i gamma g5 (S_r x beta)``
    """
    b = as_beta(beta)
    g = lorentz_factor(b)
    Sr = rest_spin().ops
    g5 = gamma_matrices().gamma5
    quantum = 1j * g * np.einsum("ab,ibc->iac", g5, cross(Sr, b))
    return OperatorTriple(g * Sr - g * g / (g + 1.0) * outer_beta(b, Sr) + quantum)


def conjugated_spin_vector(beta) -> OperatorTriple:
    """``D(L) S_rest D(L)^-1``; independent route to :func:`dirac_spin_vector`."""
    D = spinor_boost(beta)
    Dinv = np.linalg.inv(D.matrix)
    return OperatorTriple(np.array([D.matrix @ s @ Dinv for s in rest_spin().ops]))


def rest_spin_tensor() -> np.ndarray:
    """``(i/4)[gamma_a, gamma_k]``, shape ``(4, 4, 4, 4)``.

    The 1/4 makes ``1/2 eps_ijk S_jk`` equal ``1/2 diag(sigma, sigma)``.
    """
    gl = gamma_matrices().lowered
    prod = np.einsum("aij,kjl->akil", gl, gl)
    return 0.25j * (prod - np.swapaxes(prod, 0, 1))


def dirac_spin_tensor(beta) -> Rank2Tensor:
    S_rest = Rank2Tensor(rest_spin_tensor(), "covariant")
    return transform_rank2(pure_boost(beta), S_rest, inverse=True)


def dirac_spin_vector_from_tensor(beta) -> OperatorTriple:
    return OperatorTriple(spatial_dual(dirac_spin_tensor(beta).matrix))


def dirac_dipole_operators(beta, alpha: float = 1.0) -> tuple[OperatorTriple, OperatorTriple]:
    """Electric and magnetic dipole operators ``(d_D, mu_D)`` of the Dirac spin.

    The ``beta x S`` term of ``d_D`` carries the sign fixed by the tensor
    route (``d^i = alpha S_{0i} / gamma``), consistent with the spin vector
    above.
    """
    b = as_beta(beta)
    g = lorentz_factor(b)
    Sr = rest_spin().ops
    g5 = gamma_matrices().gamma5
    proj = Sr - g / (g + 1.0) * outer_beta(b, Sr)
    d = -alpha * cross(b, Sr) - 1j * alpha * np.einsum("ab,ibc->iac", g5, proj)
    mu = alpha * proj + 1j * alpha * np.einsum("ab,ibc->iac", g5, cross(Sr, b))
    return OperatorTriple(d), OperatorTriple(mu)


def dirac_dipoles_from_tensor(beta, alpha: float = 1.0) -> tuple[OperatorTriple, OperatorTriple]:
    T = dirac_spin_tensor(beta).matrix
    g = lorentz_factor(beta)
    return OperatorTriple(alpha * T[0, 1:] / g), OperatorTriple(alpha * spatial_dual(T) / g)


def is_covariantly_hermitian(op: np.ndarray, atol: float = 1e-12) -> bool:
    """True when ``gamma^0 op`` is Hermitian, so covariant expectations are real."""
    h = gamma_matrices().gamma[0] @ op
    return bool(np.allclose(h, h.conj().T, rtol=0, atol=atol))


def covariant_expectation(op: np.ndarray, psi: DiracSpinor) -> float | complex:
    """``energy_sign * psi^dagger gamma^0 op psi``.

    Returns a float when ``gamma^0 op`` is Hermitian, otherwise the complex
    value (check with :func:`is_covariantly_hermitian`).
    """
    g0 = gamma_matrices().gamma[0]
    val = psi.energy_sign * np.vdot(psi.components, g0 @ op @ psi.components)
    return float(val.real) if is_covariantly_hermitian(op) else complex(val)


def dirac_residual(psi: DiracSpinor) -> float:
    """``|| (p^mu gamma_mu - energy_sign m) psi ||``."""
    gs = gamma_matrices()
    p = psi.momentum.components
    mass = float(np.sqrt(max(p @ METRIC @ p, 0.0)))
    pslash = np.einsum("m,mij->ij", p, gs.lowered)
    return float(np.linalg.norm((pslash - psi.energy_sign * mass * I4) @ psi.components))
