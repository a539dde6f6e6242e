"""Electromagnetic field tensor and the Stern-Gerlach field configuration.

Layout of ``F^{ak}`` (contravariant)::

    [[ 0,  -Ex, -Ey, -Ez],
     [ Ex,  0,  -Bz,  By],
     [ Ey,  Bz,  0,  -Bx],
     [ Ez, -By,  Bx,  0 ]]

The lab field is ``B`` along +y; the particle moves in the x-y plane at
azimuth ``phi`` from the x axis.  Rest-frame fields come from
``F_rest = L F_lab L^T`` with ``L = pure_boost(beta)``; this is the
orientation that reproduces ``E_rest,z = -gamma v cos(phi) B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedTensorError, SuperluminalError
from .tensor_core import ATOL, LorentzBoost, Rank2Tensor, pure_boost, transform_rank2


@dataclass(frozen=True)
class FieldTensor:
    tensor: Rank2Tensor

    def __post_init__(self):
        if self.tensor.variance != "contravariant":
            raise MalformedTensorError("field tensor is stored with upper indices")
        if not self.tensor.is_antisymmetric():
            raise MalformedTensorError("field tensor must be antisymmetric")

    @property
    def matrix(self) -> np.ndarray:
        return self.tensor.matrix


@dataclass(frozen=True)
class FieldConfig:
    B_magnitude: float = 1.0
    phi: float = 0.0
    beta_magnitude: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.beta_magnitude < 1.0:
            raise SuperluminalError(f"beta_magnitude must lie in [0, 1), got {self.beta_magnitude}")

    @property
    def beta(self) -> np.ndarray:
        return self.beta_magnitude * np.array([np.cos(self.phi), np.sin(self.phi), 0.0])

    @property
    def gamma(self) -> float:
        return float(1.0 / np.sqrt(1.0 - self.beta_magnitude**2))

    @property
    def lab_B(self) -> np.ndarray:
        return np.array([0.0, self.B_magnitude, 0.0])


def field_tensor_from_EB(E, B) -> FieldTensor:
    Ex, Ey, Ez = np.asarray(E, dtype=float)
    Bx, By, Bz = np.asarray(B, dtype=float)
    F = np.array(
        [
            [0.0, -Ex, -Ey, -Ez],
            [Ex, 0.0, -Bz, By],
            [Ey, Bz, 0.0, -Bx],
            [Ez, -By, Bx, 0.0],
        ]
    )
    return FieldTensor(Rank2Tensor(F, "contravariant"))


def extract_EB(F) -> tuple[np.ndarray, np.ndarray]:
    m = np.asarray(getattr(F, "matrix", F))
    if m.shape != (4, 4) or not np.allclose(m, -m.T, rtol=0, atol=ATOL):
        raise MalformedTensorError("field tensor must be a 4x4 antisymmetric matrix")
    E = -m[0, 1:].real.copy()
    B = np.array([m[3, 2], m[1, 3], m[2, 1]]).real
    return E, B


def boost_fields(F: FieldTensor, L: LorentzBoost, inverse: bool = False) -> FieldTensor:
    return FieldTensor(transform_rank2(L, F.tensor, inverse=inverse))


def rest_frame_fields_tensor(cfg: FieldConfig) -> tuple[np.ndarray, np.ndarray]:
    """Rest-frame (E, B) through the tensor congruence; oracle for the closed form."""
    lab = field_tensor_from_EB(np.zeros(3), cfg.lab_B)
    return extract_EB(boost_fields(lab, pure_boost(cfg.beta)))


def rest_frame_fields(cfg: FieldConfig) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form rest-frame fields for a lab field ``B y_hat``."""
    g = cfg.gamma
    s, c = np.sin(cfg.phi), np.cos(cfg.phi)
    B = cfg.B_magnitude
    E_rest = np.array([0.0, 0.0, -g * cfg.beta_magnitude * c * B])
    B_rest = np.array([(1.0 - g) * s * c * B, (s * s + g * c * c) * B, 0.0])
    return E_rest, B_rest


def field_invariants(F) -> tuple[float, float]:
    """``(B^2 - E^2, E . B)``."""
    E, B = extract_EB(F)
    return float(B @ B - E @ E), float(E @ B)
