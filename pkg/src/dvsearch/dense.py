"""Explicit N x N gate matrices for small layouts.

These are built straight from the matrix-element definitions (1-based row
positions included) and exist to cross-check the matrix-free kernels. They
are never used on the simulation path.
"""
from __future__ import annotations

import enum

import numpy as np

from .statevector import RegisterLayout, StateVector, oracle_values

MAX_DENSE_QUBITS = 10

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


class GateKind(enum.Enum):
    HADAMARD_ALL = "H"
    PHASE_P = "P"
    DIFFUSION_D = "D"
    PHASE_PG = "PG"
    DIFFUSION_DG = "DG"
    ORACLE_UF = "Uf"
    LAMBDA_NU = "Lambda"


def _check_size(layout: RegisterLayout):
    if layout.total_qubits > MAX_DENSE_QUBITS:
        raise ValueError(
            f"dense matrices are limited to {MAX_DENSE_QUBITS} qubits, got {layout.total_qubits}"
        )


def _diag_sign_matrix(dim: int, one_based_positions) -> np.ndarray:
    m = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(1, dim + 1):
        m[i - 1, i - 1] = -1.0 if i in one_based_positions else 1.0
    return m


def hadamard_matrix(layout: RegisterLayout) -> np.ndarray:
    m = np.ones((1, 1))
    for _ in range(layout.total_qubits):
        m = np.kron(m, _H)
    return m.astype(np.complex128)


def phase_matrix(layout: RegisterLayout) -> np.ndarray:
    # -1 at i = j = sqrt(N)*zeta + zeta + 1 (1-based)
    root = layout.work_dim
    marked = {root * z + z + 1 for z in range(min(layout.control_dim, root))}
    return _diag_sign_matrix(layout.dim, marked)


def lambda_matrix(layout: RegisterLayout, nu: int) -> np.ndarray:
    root = layout.work_dim
    if not 0 <= nu < min(layout.control_dim, root):
        raise ValueError(f"nu={nu} out of range")
    return _diag_sign_matrix(layout.dim, {root * nu + nu + 1})


def diffusion_matrix(layout: RegisterLayout) -> np.ndarray:
    dim = layout.dim
    m = np.full((dim, dim), 2.0 / dim, dtype=np.complex128)
    m[np.diag_indices(dim)] = 2.0 / dim - 1.0
    return m


def work_phase_matrix(layout: RegisterLayout) -> np.ndarray:
    """``I (x) P'`` with P' = diag(-1, 1, ..., 1) on the work register."""
    p_prime = _diag_sign_matrix(layout.work_dim, {1})
    return np.kron(np.eye(layout.control_dim), p_prime)


def reflection_matrix(reference: StateVector) -> np.ndarray:
    r = reference.amplitudes
    return 2.0 * np.outer(r, r.conj()) - np.eye(r.size)


def oracle_matrix(layout: RegisterLayout, oracle) -> np.ndarray:
    values = oracle_values(oracle, layout)
    m = np.zeros((layout.dim, layout.dim), dtype=np.complex128)
    for c in range(layout.control_dim):
        g = c ^ int(values[c])
        for w in range(layout.work_dim):
            m[layout.index(c, w ^ g), layout.index(c, w)] = 1.0
    return m


def dense_reference_gate(kind: GateKind, layout: RegisterLayout, *, nu=None, reference=None, oracle=None):
    """Return the explicit matrix for ``kind`` on ``layout``.

    ``LAMBDA_NU`` needs ``nu``, ``DIFFUSION_DG`` needs ``reference`` and
    ``ORACLE_UF`` needs ``oracle``.
    """
    _check_size(layout)
    if kind is GateKind.HADAMARD_ALL:
        return hadamard_matrix(layout)
    if kind is GateKind.PHASE_P:
        return phase_matrix(layout)
    if kind is GateKind.LAMBDA_NU:
        if nu is None:
            raise ValueError("LAMBDA_NU needs nu")
        return lambda_matrix(layout, nu)
    if kind is GateKind.DIFFUSION_D:
        return diffusion_matrix(layout)
    if kind is GateKind.PHASE_PG:
        return work_phase_matrix(layout)
    if kind is GateKind.DIFFUSION_DG:
        if reference is None:
            raise ValueError("DIFFUSION_DG needs a reference state")
        return reflection_matrix(reference)
    if kind is GateKind.ORACLE_UF:
        if oracle is None:
            raise ValueError("ORACLE_UF needs an oracle")
        return oracle_matrix(layout, oracle)
    raise ValueError(f"unknown gate kind {kind!r}")
