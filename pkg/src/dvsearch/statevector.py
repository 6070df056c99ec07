"""Matrix-free statevector engine for the two-register search machine.

A state lives on a control register (high-order bits) and a work register
(low-order bits): the pair ``(c, w)`` sits at flat index ``c * 2**n_work + w``.
Every gate returns a fresh :class:`StateVector`; inputs are never mutated.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import CapacityError, DimensionError, NormalizationError, OracleRangeError
from .reduce import _pairwise_sum, _pairwise_vdot, pairwise_norm2

DEFAULT_MAX_QUBITS = 26
MAX_QUBITS_ENV = "DVSEARCH_MAX_QUBITS"

NORM_TOL = 1e-10


def max_total_qubits() -> int:
    """Qubit cap for ``n_control + n_work``; the environment may override it."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise CapacityError(f"{MAX_QUBITS_ENV}={raw!r} is not an integer") from None
    if value < 2:
        raise CapacityError(f"{MAX_QUBITS_ENV} must be at least 2, got {value}")
    return value


@dataclass(frozen=True)
class RegisterLayout:
    n_control: int
    n_work: int

    def __post_init__(self):
        if self.n_control < 1 or self.n_work < 1:
            raise ValueError(
                f"both registers need at least one qubit, got ({self.n_control}, {self.n_work})"
            )
        cap = max_total_qubits()
        if self.n_control + self.n_work > cap:
            raise CapacityError(
                f"{self.n_control}+{self.n_work} qubits exceeds the cap of {cap}"
            )

    @classmethod
    def symmetric(cls, n: int) -> "RegisterLayout":
        return cls(n, n)

    @property
    def total_qubits(self) -> int:
        return self.n_control + self.n_work

    @property
    def dim(self) -> int:
        return 1 << self.total_qubits

    @property
    def control_dim(self) -> int:
        return 1 << self.n_control

    @property
    def work_dim(self) -> int:
        return 1 << self.n_work

    def index(self, c: int, w: int) -> int:
        if not 0 <= c < self.control_dim:
            raise IndexError(f"control index {c} outside [0, {self.control_dim})")
        if not 0 <= w < self.work_dim:
            raise IndexError(f"work index {w} outside [0, {self.work_dim})")
        return (c << self.n_work) | w

    def split(self, i: int) -> tuple[int, int]:
        return i >> self.n_work, i & (self.work_dim - 1)


@dataclass
class StateVector:
    layout: RegisterLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if a.ndim != 1 or a.size != self.layout.dim:
            raise DimensionError(
                f"expected {self.layout.dim} amplitudes, got shape {np.shape(self.amplitudes)}"
            )
        self.amplitudes = a

    @classmethod
    def random(cls, layout: RegisterLayout, seed=None) -> "StateVector":
        """Haar-ish random normalized state (complex Gaussian entries)."""
        rng = np.random.default_rng(seed)
        a = rng.standard_normal(layout.dim) + 1j * rng.standard_normal(layout.dim)
        a /= math.sqrt(pairwise_norm2(a))
        return cls(layout, a)

    def norm(self) -> float:
        return math.sqrt(pairwise_norm2(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        """``|a|**2`` as a ``(control_dim, work_dim)`` table."""
        a = self.amplitudes
        p = a.real * a.real + a.imag * a.imag
        return p.reshape(self.layout.control_dim, self.layout.work_dim)

    def copy(self) -> "StateVector":
        return _wrap(self.layout, self.amplitudes.copy())


def _wrap(layout: RegisterLayout, amplitudes: np.ndarray) -> StateVector:
    # Kernel outputs are already contiguous complex128 of the right length.
    state = object.__new__(StateVector)
    state.layout = layout
    state.amplitudes = amplitudes
    return state


def _require_normalized(state: StateVector, what: str = "state"):
    norm2 = pairwise_norm2(state.amplitudes)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NormalizationError(f"{what} has squared norm {norm2!r}, expected 1")


def zero_state(layout: RegisterLayout) -> StateVector:
    a = np.zeros(layout.dim, dtype=np.complex128)
    a[0] = 1.0
    return StateVector(layout, a)


def basis_state(layout: RegisterLayout, c: int, w: int) -> StateVector:
    a = np.zeros(layout.dim, dtype=np.complex128)
    a[layout.index(c, w)] = 1.0
    return StateVector(layout, a)


def uniform_state(layout: RegisterLayout) -> StateVector:
    return StateVector(layout, np.full(layout.dim, 1.0 / math.sqrt(layout.dim), dtype=np.complex128))


# -- kernels -----------------------------------------------------------------


@njit(cache=True)
def _fwht(a, scale):
    out = a.copy()
    n = out.size
    h = 1
    while h < n:
        for lo in range(0, n, 2 * h):
            for i in range(lo, lo + h):
                x = out[i]
                y = out[i + h]
                out[i] = x + y
                out[i + h] = x - y
        h *= 2
    for i in range(n):
        out[i] *= scale
    return out


@njit(cache=True)
def _negate_diagonal(a, n_work, count):
    out = a.copy()
    for z in range(count):
        k = (z << n_work) | z
        out[k] = -out[k]
    return out


@njit(cache=True)
def _negate_work_zero(a, n_work, control_dim):
    out = a.copy()
    for c in range(control_dim):
        k = c << n_work
        out[k] = -out[k]
    return out


@njit(cache=True)
def _negate_one(a, k):
    out = a.copy()
    out[k] = -out[k]
    return out


@njit(cache=True)
def _invert_about_mean(a):
    twice_mean = 2.0 * _pairwise_sum(a) / a.size
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = twice_mean - a[i]
    return out


@njit(cache=True)
def _reflect(a, r):
    coef = 2.0 * _pairwise_vdot(r, a)
    out = np.empty_like(a)
    for i in range(a.size):
        out[i] = coef * r[i] - a[i]
    return out


@njit(cache=True)
def _xor_work(a, masks, n_work):
    out = np.empty_like(a)
    work_dim = 1 << n_work
    for c in range(masks.size):
        base = c << n_work
        g = masks[c]
        for w in range(work_dim):
            out[base + (w ^ g)] = a[base + w]
    return out


# -- gates -------------------------------------------------------------------


def hadamard_all(state: StateVector) -> StateVector:
    """H on every qubit of both registers (fast Walsh-Hadamard transform)."""
    _require_normalized(state)
    scale = 2.0 ** (-state.layout.total_qubits / 2)
    return _wrap(state.layout, _fwht(state.amplitudes, scale))


def phase_p(state: StateVector) -> StateVector:
    """Negate every amplitude with equal control and work values."""
    lay = state.layout
    count = min(lay.control_dim, lay.work_dim)
    return _wrap(lay, _negate_diagonal(state.amplitudes, lay.n_work, count))


def lambda_nu(state: StateVector, nu: int) -> StateVector:
    """One factor of the phase gate: negate only the amplitude of ``(nu, nu)``."""
    lay = state.layout
    if not 0 <= nu < min(lay.control_dim, lay.work_dim):
        raise ValueError(f"nu={nu} outside [0, {min(lay.control_dim, lay.work_dim)})")
    return _wrap(lay, _negate_one(state.amplitudes, lay.index(nu, nu)))


def diffusion_d(state: StateVector) -> StateVector:
    """Inversion about the mean, ``a_i -> 2*mean(a) - a_i``."""
    return _wrap(state.layout, _invert_about_mean(state.amplitudes))


def phase_pg(state: StateVector) -> StateVector:
    """Negate every amplitude whose work register reads zero."""
    lay = state.layout
    return _wrap(lay, _negate_work_zero(state.amplitudes, lay.n_work, lay.control_dim))


def reflect_about(state: StateVector, reference: StateVector) -> StateVector:
    """``2|r><r| - I`` applied to ``state``."""
    if reference.layout != state.layout:
        raise DimensionError(f"layout mismatch: {state.layout} vs {reference.layout}")
    _require_normalized(reference, "reference")
    return _wrap(state.layout, _reflect(state.amplitudes, reference.amplitudes))


def xor_masks(oracle, layout: RegisterLayout) -> np.ndarray:
    """Per-control work-register masks ``g(c) = c ^ f(c)``."""
    values = oracle_values(oracle, layout)
    return np.arange(layout.control_dim, dtype=np.int64) ^ values


def oracle_values(oracle, layout: RegisterLayout) -> np.ndarray:
    if layout.n_control != layout.n_work:
        raise DimensionError("the validity oracle needs equal register widths")
    values = np.asarray(oracle.values, dtype=np.int64)
    if values.size != layout.control_dim:
        raise DimensionError(
            f"oracle covers {values.size} inputs, control register has {layout.control_dim}"
        )
    bad = np.flatnonzero((values < 0) | (values >= layout.work_dim))
    if bad.size:
        c = int(bad[0])
        raise OracleRangeError(f"f({c}) = {int(values[c])} outside [0, {layout.work_dim})")
    return values


_MASK_CACHE_ATTR = "_xor_masks"


def _cached_masks(oracle, layout: RegisterLayout) -> np.ndarray:
    masks = getattr(oracle, _MASK_CACHE_ATTR, None)
    if masks is None or masks.size != layout.control_dim:
        masks = xor_masks(oracle, layout)
        masks.setflags(write=False)
        try:
            object.__setattr__(oracle, _MASK_CACHE_ATTR, masks)
        except AttributeError:
            pass
    elif layout.n_control != layout.n_work:
        raise DimensionError("the validity oracle needs equal register widths")
    return masks


def oracle_uf(state: StateVector, oracle) -> StateVector:
    """Validity oracle as the permutation ``|c, w> -> |c, w ^ c ^ f(c)>``.

    On the diagonal this is exactly ``|z, z> -> |z, f(z)>``; the XOR form makes
    the map a self-inverse permutation on the rest of the basis.
    """
    lay = state.layout
    masks = _cached_masks(oracle, lay)
    return _wrap(lay, _xor_work(state.amplitudes, masks, lay.n_work))


def probability(state: StateVector, c: int, w: int) -> float:
    a = state.amplitudes[state.layout.index(c, w)]
    return float(a.real * a.real + a.imag * a.imag)
