"""End-to-end search pipeline: entangle, query the oracle, amplify, measure."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .oracle import ValidityOracle, make_oracle
from .reduce import pairwise_sum
from .statevector import (
    RegisterLayout,
    StateVector,
    diffusion_d,
    hadamard_all,
    oracle_uf,
    phase_p,
    phase_pg,
    reflect_about,
    zero_state,
)

PHASES = ("init", "dp", "oracle", "grover")


def default_iterations(n: int) -> int:
    """floor(2**(n/2)), computed exactly for integer n."""
    return math.isqrt(1 << n)


@dataclass
class QueryLedger:
    """How many times each gate was applied during a run."""

    P: int = 0
    D: int = 0
    PG: int = 0
    DG: int = 0
    Uf: int = 0
    H: int = 0

    def as_dict(self) -> dict:
        return {"P": self.P, "D": self.D, "PG": self.PG, "DG": self.DG, "Uf": self.Uf, "H": self.H}

    @property
    def phase_queries(self) -> int:
        return self.P + self.PG


@dataclass
class RunConfig:
    n: int
    oracle: object = "toy"
    m: Optional[int] = None
    t: Optional[int] = None
    full_distribution: bool = False
    seed: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.m is None:
            self.m = default_iterations(self.n)
        if self.t is None:
            self.t = default_iterations(self.n)
        if self.m < 0 or self.t < 0:
            raise ValueError(f"iteration counts must be non-negative (m={self.m}, t={self.t})")


@dataclass
class TraceRecord:
    step: int
    phase: str
    p_valid: float
    p_regular: float
    p_tail: float
    p_best_valid: float
    best_valid_index: int
    distribution: Optional[np.ndarray] = field(default=None, repr=False, compare=False)


@dataclass
class IterationTrace:
    records: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def phase(self, name: str) -> list:
        return [r for r in self.records if r.phase == name]

    def peak(self) -> tuple[int, float]:
        """Grover iteration (1-based) with the largest valid probability."""
        grover = self.phase("grover")
        if not grover:
            return 0, self.records[-1].p_valid if self.records else 0.0
        best = max(range(len(grover)), key=lambda i: (grover[i].p_valid, -i))
        return best + 1, grover[best].p_valid


class ClassTotals(NamedTuple):
    valid: float
    regular: float
    tail: float


class SearchResult(NamedTuple):
    state: StateVector
    trace: IterationTrace
    ledger: QueryLedger


class _Partition:
    """Flat indices of the valid and regular classes for one oracle/layout."""

    def __init__(self, layout: RegisterLayout, oracle: ValidityOracle):
        values = np.asarray(oracle.values, dtype=np.int64)
        controls = np.arange(layout.control_dim, dtype=np.int64)
        is_valid = values == 0
        self.valid_controls = controls[is_valid]
        self.valid_idx = self.valid_controls << layout.n_work
        self.regular_idx = (controls[~is_valid] << layout.n_work) | values[~is_valid]
        self.tail_mask = np.ones(layout.dim, dtype=bool)
        self.tail_mask[self.valid_idx] = False
        self.tail_mask[self.regular_idx] = False

    def totals(self, probs: np.ndarray) -> ClassTotals:
        return ClassTotals(
            float(pairwise_sum(probs[self.valid_idx])),
            float(pairwise_sum(probs[self.regular_idx])),
            float(pairwise_sum(np.where(self.tail_mask, probs, 0.0))),
        )

    def best_valid(self, probs: np.ndarray) -> tuple[float, int]:
        if self.valid_idx.size == 0:
            return 0.0, -1
        pv = probs[self.valid_idx]
        k = int(np.argmax(pv))
        return float(pv[k]), int(self.valid_controls[k])


def classify(state: StateVector, oracle: ValidityOracle) -> ClassTotals:
    """Split probability into valid ``(c, 0)``, regular ``(c, f(c))`` and tail mass."""
    probs = state.probabilities().ravel()
    return _Partition(state.layout, oracle).totals(probs)


def prepare_entangled(
    state: StateVector,
    m: int,
    ledger: QueryLedger,
    observe: Optional[Callable[[str, StateVector], None]] = None,
) -> StateVector:
    """Hadamard everything, then ``m`` rounds of P followed by D.

    ``observe(phase, state)`` is called after the Hadamard layer and after
    every round.
    """
    a = state.amplitudes
    if abs(a[0] - 1.0) > 1e-12 or pairwise_sum(np.abs(a[1:]) ** 2) > 1e-24:
        raise ValueError("prepare_entangled expects the all-zero basis state")
    state = hadamard_all(state)
    ledger.H += 1
    if observe:
        observe("init", state)
    for _ in range(m):
        state = phase_p(state)
        ledger.P += 1
        state = diffusion_d(state)
        ledger.D += 1
        if observe:
            observe("dp", state)
    return state


def run_search(config: RunConfig) -> SearchResult:
    layout = RegisterLayout.symmetric(config.n)
    oracle = make_oracle(config.oracle, config.n)
    part = _Partition(layout, oracle)
    trace = IterationTrace()
    ledger = QueryLedger()

    def record(phase: str, st: StateVector):
        probs = st.probabilities().ravel()
        totals = part.totals(probs)
        best_p, best_c = part.best_valid(probs)
        trace.records.append(
            TraceRecord(
                step=len(trace.records),
                phase=phase,
                p_valid=totals.valid,
                p_regular=totals.regular,
                p_tail=totals.tail,
                p_best_valid=best_p,
                best_valid_index=best_c,
                distribution=probs.copy() if config.full_distribution else None,
            )
        )

    state = prepare_entangled(zero_state(layout), config.m, ledger, record)
    state = oracle_uf(state, oracle)
    ledger.Uf += 1
    record("oracle", state)
    # D_G reflects about this fixed post-oracle snapshot for every iteration.
    psi_f = state.copy()
    for _ in range(config.t):
        state = phase_pg(state)
        ledger.PG += 1
        state = reflect_about(state, psi_f)
        ledger.DG += 1
        record("grover", state)
    return SearchResult(state, trace, ledger)


def analytic_two_level(overlap: float, k: int) -> float:
    """Marked probability after ``k`` amplification rounds: sin^2((2k+1) asin(overlap))."""
    if not 0.0 < overlap <= 1.0:
        raise ValueError(f"overlap must lie in (0, 1], got {overlap}")
    if k < 0:
        raise ValueError("k must be non-negative")
    return math.sin((2 * k + 1) * math.asin(overlap)) ** 2


def entangled_overlap(n: int) -> float:
    """Amplitude overlap of the uniform state with the normalized diagonal subspace."""
    return 2.0 ** (-n / 2)


def diagonal_probability(state: StateVector) -> float:
    """Total probability on the ``(z, z)`` basis states."""
    probs = state.probabilities()
    k = min(probs.shape)
    return float(pairwise_sum(probs[np.arange(k), np.arange(k)]))


def sample_measurements(state: StateVector, shots: int, seed=None) -> dict:
    """Measure every qubit ``shots`` times; returns ``{(c, w): count}`` in index order."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    probs = state.probabilities().ravel()
    probs = probs / probs.sum()
    counts = np.random.default_rng(seed).multinomial(shots, probs)
    hits = np.flatnonzero(counts)
    return {state.layout.split(int(i)): int(counts[i]) for i in hits}


def amplified_controls(state: StateVector) -> tuple:
    """Controls ``c`` whose ``(c, 0)`` probability beats a uniform address share."""
    probs = state.probabilities()
    share = 1.0 / state.layout.control_dim
    return tuple(int(c) for c in np.flatnonzero(probs[:, 0] > share))


@dataclass(frozen=True)
class ComplexityReport:
    n: int
    m: int
    t: int
    queries: int
    bound: float

    @property
    def limit(self) -> int:
        return math.ceil(self.bound - 1e-9)

    @property
    def within_bound(self) -> bool:
        return self.queries <= self.limit

    def __str__(self):
        verdict = "within" if self.within_bound else "EXCEEDS"
        return (
            f"phase-gate queries m+t = {self.m}+{self.t} = {self.queries}; "
            f"bound 2^(n/2+1) = {self.bound:.4g} (limit {self.limit}) -> {verdict}"
        )


def verify_complexity(ledger: QueryLedger, n: int) -> ComplexityReport:
    return ComplexityReport(
        n=n, m=ledger.P, t=ledger.PG, queries=ledger.phase_queries, bound=2.0 ** (n / 2 + 1)
    )
