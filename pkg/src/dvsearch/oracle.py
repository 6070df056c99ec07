"""Validity oracles: total maps f on [0, 2**n) whose zeros mark valid DVs."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dv import TypeITable, type_i_table
from .errors import OracleFileError, OracleRangeError


@dataclass(frozen=True)
class ValidityOracle:
    n: int
    values: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"register width must be positive, got {self.n}")
        values = np.array(self.values, dtype=np.int64)
        if values.shape != (1 << self.n,):
            raise ValueError(f"oracle needs {1 << self.n} values, got shape {values.shape}")
        bad = np.flatnonzero((values < 0) | (values >= (1 << self.n)))
        if bad.size:
            z = int(bad[0])
            raise OracleRangeError(f"f({z}) = {int(values[z])} outside [0, {1 << self.n})")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __call__(self, zeta: int) -> int:
        return int(self.values[zeta])

    def valid_set(self) -> tuple:
        return tuple(int(z) for z in np.flatnonzero(self.values == 0))


def _identity_default(n: int) -> np.ndarray:
    values = np.arange(1 << n, dtype=np.int64)
    values[0] = 1
    return values


def toy_oracle(n: int) -> ValidityOracle:
    """Only zeta = 0 is valid; every other input maps to itself."""
    return ValidityOracle(n, np.arange(1 << n, dtype=np.int64), name="toy")


def table_oracle(table: TypeITable | None = None, n: int = 5) -> ValidityOracle:
    """Line ``l`` maps to its local-collision start ``u_l``; other inputs to themselves."""
    table = table or type_i_table()
    if (1 << n) < len(table.entries):
        raise ValueError(f"n={n} is too narrow for {len(table.entries)} table lines")
    values = np.arange(1 << n, dtype=np.int64)
    for line, start in table.entries:
        values[line] = start
    return ValidityOracle(n, values, name="table")


def parse_oracle_text(text: str, n: int, source: str = "<string>") -> ValidityOracle:
    """Parse ``zeta f(zeta)`` records, one per line; ``#`` starts a comment line."""
    values = _identity_default(n)
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise OracleFileError(f"{source}:{lineno}: expected 'zeta value', got {raw!r}")
        try:
            zeta, value = (int(p, 10) for p in parts)
        except ValueError:
            raise OracleFileError(f"{source}:{lineno}: not unsigned decimals: {raw!r}") from None
        if zeta < 0 or value < 0:
            raise OracleFileError(f"{source}:{lineno}: negative value in {raw!r}")
        if zeta >= (1 << n):
            raise OracleFileError(f"{source}:{lineno}: zeta={zeta} outside [0, {1 << n})")
        if value >= (1 << n):
            raise OracleRangeError(f"{source}:{lineno}: f({zeta}) = {value} outside [0, {1 << n})")
        if zeta in seen:
            raise OracleFileError(f"{source}:{lineno}: duplicate zeta={zeta}")
        seen.add(zeta)
        values[zeta] = value
    return ValidityOracle(n, values, name="file")


def file_oracle(path, n: int) -> ValidityOracle:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OracleFileError(f"cannot read oracle file {path}: {exc}") from exc
    return parse_oracle_text(text, n, source=str(path))


def make_oracle(spec, n: int) -> ValidityOracle:
    """Build an oracle from ``"toy"``, ``"table"`` or ``"file:PATH"``."""
    if isinstance(spec, ValidityOracle):
        if spec.n != n:
            raise ValueError(f"oracle width {spec.n} does not match n={n}")
        return spec
    if spec == "toy":
        return toy_oracle(n)
    if spec == "table":
        return table_oracle(n=n)
    if isinstance(spec, str) and spec.startswith("file:"):
        return file_oracle(spec[len("file:"):], n)
    raise ValueError(f"unknown oracle spec {spec!r}; use toy, table or file:PATH")
