"""Operator-valued three-vectors and the spin commutation check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor_core import EPSILON

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
PAULI.setflags(write=False)


@dataclass(frozen=True)
class OperatorTriple:
    """Components (x, y, z) of a spin three-vector operator, shape ``(3, n, n)``."""

    ops: np.ndarray

    def __post_init__(self):
        ops = np.array(self.ops, dtype=complex)
        if ops.ndim != 3 or ops.shape[0] != 3 or ops.shape[1] != ops.shape[2]:
            raise ValueError(f"operator triple needs shape (3, n, n), got {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)

    @property
    def dim(self) -> int:
        return self.ops.shape[1]

    @property
    def x(self) -> np.ndarray:
        return self.ops[0]

    @property
    def y(self) -> np.ndarray:
        return self.ops[1]

    @property
    def z(self) -> np.ndarray:
        return self.ops[2]

    def __getitem__(self, i: int) -> np.ndarray:
        return self.ops[i]

    def __iter__(self):
        return iter(self.ops)

    def along(self, n) -> np.ndarray:
        """Projection ``n . S``."""
        return dot(n, self.ops)


def dot(a, b) -> np.ndarray:
    """``a . b`` where either factor may be operator valued (leading axis 3)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return np.tensordot(a, b, axes=(0, 0)) if a.ndim == 1 else np.tensordot(b, a, axes=(0, 0))


def cross(a, b) -> np.ndarray:
    """``a x b`` where at most one factor is operator valued."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim > 1 and b.ndim > 1:
        raise ValueError("cross product of two operator-valued vectors is not supported")
    return np.einsum("ijk,j...,k...->i...", EPSILON, a, b)


def outer_beta(beta, vec) -> np.ndarray:
    """``beta (beta . vec)`` for an operator-valued ``vec``."""
    beta = np.asarray(beta, dtype=float)
    return np.einsum("i,...->i...", beta, dot(beta, vec))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def spin_algebra_residual(ops) -> float:
    """Max-norm violation of ``[S^i, S^j] = i eps_ijk S^k`` over all (i, j)."""
    S = ops.ops if isinstance(ops, OperatorTriple) else np.asarray(ops, dtype=complex)
    if S.ndim != 3 or S.shape[0] != 3 or S.shape[1] != S.shape[2]:
        raise ValueError(f"expected three square matrices of equal size, got shape {S.shape}")
    worst = 0.0
    for i in range(3):
        for j in range(3):
            rhs = 1j * np.einsum("k,kab->ab", EPSILON[i, j], S)
            worst = max(worst, float(np.max(np.abs(commutator(S[i], S[j]) - rhs))))
    return worst
