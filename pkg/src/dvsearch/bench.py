"""Wall-clock timing of individual gates and of the full pipeline."""
from __future__ import annotations

import statistics
import time

from .grover import RunConfig, run_search
from .oracle import toy_oracle
from .statevector import (
    RegisterLayout,
    StateVector,
    diffusion_d,
    hadamard_all,
    oracle_uf,
    phase_p,
    phase_pg,
    reflect_about,
)

GATES = ("P", "D", "PG", "DG", "Uf")


def _gate_callables(n: int, seed: int = 0):
    layout = RegisterLayout.symmetric(n)
    state = StateVector.random(layout, seed)
    ref = StateVector.random(layout, seed + 1)
    oracle = toy_oracle(n)
    return state, {
        "H": lambda s: hadamard_all(s),
        "P": phase_p,
        "D": diffusion_d,
        "PG": phase_pg,
        "DG": lambda s: reflect_about(s, ref),
        "Uf": lambda s: oracle_uf(s, oracle),
    }


def _time_batch(fn, state, inner: int) -> float:
    t0 = time.perf_counter()
    for _ in range(inner):
        fn(state)
    return (time.perf_counter() - t0) / inner


def time_gates(n: int, reps: int = 3, min_batch_seconds: float = 0.02, gates=None) -> dict:
    """Seconds per application for each gate, as ``{gate: [rep times]}``.

    Each rep times a batch of applications long enough to swamp timer
    resolution; small registers therefore get large batches.
    """
    state, table = _gate_callables(n)
    names = gates or ("H",) + GATES
    out = {}
    for name in names:
        fn = table[name]
        fn(state)  # warm-up (JIT load, page faults)
        inner = 1
        while True:
            dt = _time_batch(fn, state, inner)
            if dt * inner >= min_batch_seconds or inner >= 1 << 16:
                break
            inner *= 4
        out[name] = [dt] + [_time_batch(fn, state, inner) for _ in range(reps - 1)]
    return out


def time_pipeline(n: int, reps: int = 3, m=None, t=None) -> list:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        run_search(RunConfig(n=n, oracle="toy", m=m, t=t))
        times.append(time.perf_counter() - t0)
    return times


def summarize(times) -> dict:
    return {"min": min(times), "median": statistics.median(times), "reps": len(times)}


def run_bench(n: int, reps: int = 3) -> dict:
    gate_times = time_gates(n, reps)
    return {
        "n": n,
        "amplitudes": 1 << (2 * n),
        "gates": {k: summarize(v) for k, v in gate_times.items()},
        "pipeline": summarize(time_pipeline(n, reps)),
    }


def scaling_profile(ns, reps: int = 3, gates=GATES) -> dict:
    """Best per-amplitude cost (seconds) per gate for each register width."""
    profile = {}
    for n in ns:
        dim = 1 << (2 * n)
        times = time_gates(n, reps, gates=gates)
        profile[n] = {g: min(v) / dim for g, v in times.items()}
    return profile
