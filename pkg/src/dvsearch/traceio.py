"""Trace serialization (CSV / JSON) with write-then-rename semantics."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

from .grover import IterationTrace

TRACE_FIELDS = (
    "step",
    "phase",
    "p_valid",
    "p_regular",
    "p_tail",
    "p_best_valid",
    "best_valid_index",
)


def _row(record) -> dict:
    return {name: getattr(record, name) for name in TRACE_FIELDS}


def trace_to_csv(trace: IterationTrace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_FIELDS)
    for rec in trace:
        writer.writerow(repr(v) if isinstance(v, float) else v for v in _row(rec).values())
    return buf.getvalue()


def distribution_to_csv(trace: IterationTrace, n_work: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("step", "control", "work", "probability"))
    mask = (1 << n_work) - 1
    for rec in trace:
        if rec.distribution is None:
            continue
        for i, p in enumerate(rec.distribution.tolist()):
            writer.writerow((rec.step, i >> n_work, i & mask, repr(p)))
    return buf.getvalue()


def trace_to_json(trace: IterationTrace, meta: dict | None = None) -> str:
    records = []
    for rec in trace:
        row = _row(rec)
        if rec.distribution is not None:
            row["distribution"] = rec.distribution.tolist()
        records.append(row)
    doc = {"records": records}
    if meta:
        doc = {"meta": meta, **doc}
    return json.dumps(doc, indent=1) + "\n"


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temp file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
