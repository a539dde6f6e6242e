"""Minkowski space-time primitives.

Metric signature is (+, -, -, -), natural units (hbar = c = 1).  Every
raise/lower of an index goes through :func:`lower_matrix` so that the sign
convention lives in exactly one place.

Rank-2 tensors are stored as arrays of shape ``(4, 4)`` or, when the
entries are themselves operators, ``(4, 4, n, n)``.  The leading two axes
are always the space-time indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import MalformedTensorError, SuperluminalError

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
METRIC.setflags(write=False)

ATOL = 1e-12
RTOL = 1e-10

Variance = Literal["contravariant", "covariant", "mixed"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


def as_beta(beta) -> np.ndarray:
    """Validate a three-velocity (in units of c) and return it as floats."""
    b = np.asarray(beta, dtype=float)
    if b.shape != (3,):
        raise ValueError(f"beta must have shape (3,), got {b.shape}")
    if not np.all(np.isfinite(b)):
        raise SuperluminalError("beta has non-finite components")
    speed = float(np.linalg.norm(b))
    if speed >= 1.0:
        raise SuperluminalError(f"|beta| = {speed:.6g} is not below the speed of light")
    return b


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


EPSILON = _frozen(levi_civita())


@dataclass(frozen=True)
class FourVector:
    components: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float)
        if c.shape != (4,):
            raise ValueError(f"four-vector needs 4 components, got {c.shape}")
        object.__setattr__(self, "components", _frozen(c))

    @classmethod
    def at_rest(cls, mass: float = 1.0) -> "FourVector":
        return cls(np.array([mass, 0.0, 0.0, 0.0]))

    @property
    def time(self) -> float:
        return float(self.components[0])

    @property
    def spatial(self) -> np.ndarray:
        return self.components[1:]


@dataclass(frozen=True)
class BoostParams:
    beta: np.ndarray
    gamma: float
    rapidity: float
    direction: np.ndarray

    @classmethod
    def from_beta(cls, beta) -> "BoostParams":
        b = as_beta(beta)
        speed = float(np.linalg.norm(b))
        direction = b / speed if speed > 0 else np.zeros(3)
        return cls(
            beta=_frozen(b),
            gamma=lorentz_factor(b),
            rapidity=float(np.arctanh(speed)),
            direction=_frozen(direction),
        )


@dataclass(frozen=True)
class LorentzBoost:
    """Pure boost ``L^mu_nu`` with ``p = L p_rest``."""

    matrix: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(np.asarray(self.matrix, dtype=float)))
        object.__setattr__(self, "beta", _frozen(np.asarray(self.beta, dtype=float)))

    @property
    def gamma(self) -> float:
        return float(self.matrix[0, 0])

    def inverse_matrix(self) -> np.ndarray:
        # L^-1 = g L^T g for any Lorentz transformation
        return METRIC @ self.matrix.T @ METRIC

    def apply(self, v: FourVector) -> FourVector:
        return FourVector(self.matrix @ v.components)


@dataclass(frozen=True)
class Rank2Tensor:
    matrix: np.ndarray
    variance: Variance = "contravariant"

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape[:2] != (4, 4):
            raise MalformedTensorError(f"rank-2 tensor needs leading shape (4, 4), got {m.shape}")
        if self.variance not in ("contravariant", "covariant", "mixed"):
            raise ValueError(f"unknown variance {self.variance!r}")
        object.__setattr__(self, "matrix", _frozen(m))

    def is_antisymmetric(self, atol: float = ATOL) -> bool:
        return bool(np.allclose(self.matrix, -np.swapaxes(self.matrix, 0, 1), rtol=0, atol=atol))


def lorentz_factor(beta) -> float:
    b = as_beta(beta)
    return float(1.0 / np.sqrt(1.0 - b @ b))


def gamma_to_speed(gamma: float) -> float:
    """Speed |beta| for a given Lorentz factor (inverse of :func:`lorentz_factor`)."""
    if gamma < 1.0:
        raise ValueError(f"Lorentz factor must be >= 1, got {gamma}")
    return float(np.sqrt(1.0 - 1.0 / gamma**2))


def pure_boost(beta) -> LorentzBoost:
    b = as_beta(beta)
    g = lorentz_factor(b)
    L = np.eye(4)
    L[0, 0] = g
    L[0, 1:] = L[1:, 0] = g * b
    b2 = b @ b
    if b2 > 0:
        L[1:, 1:] += (g - 1.0) * np.outer(b, b) / b2
    return LorentzBoost(L, b)


def lower_matrix(M: np.ndarray) -> np.ndarray:
    """Index-lowered form ``g M g`` of a mixed transformation matrix.

    For a transformation ``L^mu_nu`` this yields ``L_mu^nu``, the matrix
    that acts on covariant components.
    """
    return METRIC @ M @ METRIC


def transform_rank2(L: LorentzBoost, T: Rank2Tensor, inverse: bool = False) -> Rank2Tensor:
    """Transform a rank-2 tensor by the boost ``L`` (or ``L^-1``).

    contravariant: ``T'^{ak} = L^a_r L^k_s T^{rs}``
    covariant:     ``T'_{ak} = L_a^r L_k^s T_{rs}``
    mixed (upper, lower): ``T'^a_k = L^a_r L_k^s T^r_s``
    """
    M = L.inverse_matrix() if inverse else L.matrix
    if T.variance == "contravariant":
        A = B = M
    elif T.variance == "covariant":
        A = B = lower_matrix(M)
    else:
        A, B = M, lower_matrix(M)
    out = np.einsum("ar,ks,rs...->ak...", A, B, T.matrix)
    return Rank2Tensor(out, T.variance)


def minkowski_inner(u: FourVector, v: FourVector) -> float:
    return float(u.components @ METRIC @ v.components)


def spatial_dual(T: np.ndarray) -> np.ndarray:
    """Three-vector ``V^i = 1/2 eps_ijk T_jk`` of the spatial block of ``T``.

    Works for scalar and operator-valued entries; the result has shape
    ``(3,)`` or ``(3, n, n)``.
    """
    return 0.5 * np.einsum("ijk,jk...->i...", EPSILON, np.asarray(T)[1:, 1:])
