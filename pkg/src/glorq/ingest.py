"""Read one numeric column of a delimited text file into a SampleSeries."""

from __future__ import annotations

import csv
import logging
import math
from datetime import datetime
from pathlib import Path

import numpy as np

from .errors import IngestError
from .series import SampleSeries

log = logging.getLogger(__name__)

MAX_SKIP_FRACTION = 0.01


class IngestFailure(IngestError):
    """Ingest error tagged with a ``kind``: unreadable, column, empty or skips."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _sniff_delimiter(lines):
    sample = "\n".join(lines[:20])
    if "," in sample:
        return ","
    if "\t" in sample:
        return "\t"
    return None


def _split(lines, delimiter):
    if delimiter is None or delimiter == " ":
        return [ln.split() for ln in lines]
    return [[c.strip() for c in row] for row in csv.reader(lines, delimiter=delimiter)]


def _to_float(cell: str, allow_time: bool) -> float | None:
    try:
        v = float(cell)
    except ValueError:
        if not allow_time:
            return None
        try:
            return datetime.fromisoformat(cell).timestamp()
        except ValueError:
            return None
    return v if math.isfinite(v) else None


def _resolve_column(column, header):
    if column is None:
        return 0
    if isinstance(column, int) or str(column).isdigit():
        idx = int(column) - 1
        if idx < 0:
            raise IngestFailure("column", f"column index is 1-based, got {column!r}")
        return idx
    if header is None:
        raise IngestFailure("column", f"column {column!r} given by name but the file has no header")
    try:
        return header.index(column)
    except ValueError:
        raise IngestFailure("column", f"column {column!r} not in header {header}") from None


def ingest(path, column=None, transform: str = "none", delimiter: str | None = None,
           log_input: bool = False, max_skip_fraction: float = MAX_SKIP_FRACTION) -> SampleSeries:
    """Parse ``path`` and return the selected column as a positive series.

    ``transform="diff"`` replaces the column by successive differences (ISO
    timestamps are accepted and measured in seconds). ``log_input`` marks
    the column as already holding natural logarithms. Unparseable or
    non-positive entries are skipped and counted; more than
    ``max_skip_fraction`` of them aborts the read.
    """
    if transform not in ("none", "diff"):
        raise IngestFailure("unreadable", f"unknown transform {transform!r}")
    if log_input and transform != "none":
        raise IngestFailure("unreadable", "log input cannot be combined with a transform")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestFailure("unreadable", f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise IngestFailure("empty", f"{path} contains no data rows")
    if delimiter == "\\t":
        delimiter = "\t"
    rows = _split(lines, delimiter if delimiter is not None else _sniff_delimiter(lines))

    header = None
    first = rows[0]
    allow_time = transform == "diff"
    if any(_to_float(c, allow_time) is None for c in first) or (
            column is not None and not str(column).isdigit() and not isinstance(column, int)):
        header, rows = first, rows[1:]
    idx = _resolve_column(column, header)

    raw = []
    skipped = 0
    for row in rows:
        v = _to_float(row[idx], allow_time) if idx < len(row) else None
        if v is None:
            skipped += 1
        else:
            raw.append(v)
    candidates = len(rows)
    vals = np.asarray(raw, dtype=float)
    if transform == "diff":
        vals = np.diff(vals)
        candidates = max(candidates - 1, 0)
    if not log_input:
        keep = vals > 0
        skipped += int((~keep).sum())
        vals = vals[keep]
    if vals.size == 0:
        raise IngestFailure("empty", f"no usable values in column {column or 1} of {path}")
    if skipped:
        log.warning("%s: skipped %d of %d entries", path, skipped, candidates)
    if candidates and skipped / candidates > max_skip_fraction:
        raise IngestFailure("skips", f"{path}: {skipped} of {candidates} entries unusable "
                                     f"(limit {max_skip_fraction:.0%})")
    label = header[idx] if header is not None and idx < len(header) else str(idx + 1)
    meta = {"column": label, "skipped": skipped, "rows": candidates}
    if log_input:
        return SampleSeries.from_log(vals, source=str(path), meta=meta)
    return SampleSeries(vals, source=str(path), transform=transform, meta=meta)
