"""Validated positive-valued data sequences."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import DomainError

TRANSFORMS = ("none", "diff", "log")


class SampleSeries:
    """A finite sequence of positive reals with provenance.

    A series is stored either by its positive values or, when it comes from
    ln-space (``transform="log"``), by its natural logarithms. The log form
    keeps draws whose exponential would overflow usable for rank counting.
    """

    __slots__ = ("_values", "_logs", "source", "transform", "meta")

    def __init__(self, values: Iterable[float], source: str = "<memory>",
                 transform: str = "none", meta: dict | None = None):
        if transform not in TRANSFORMS:
            raise DomainError(f"unknown transform {transform!r}")
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size == 0:
            raise DomainError("series is empty")
        if transform == "log":
            bad = np.flatnonzero(~np.isfinite(arr))
            if bad.size:
                raise DomainError(f"non-finite log value at index {bad[0]}")
            self._logs = arr
            self._values = None
        else:
            bad = np.flatnonzero(~(np.isfinite(arr) & (arr > 0)))
            if bad.size:
                i = int(bad[0])
                raise DomainError(f"non-positive or non-finite value {arr[i]!r} at index {i}")
            self._values = arr
            self._logs = None
        self.source = source
        self.transform = transform
        self.meta = dict(meta or {})

    @classmethod
    def from_log(cls, logs: Iterable[float], source: str = "<memory>",
                 meta: dict | None = None) -> "SampleSeries":
        return cls(logs, source=source, transform="log", meta=meta)

    @property
    def is_log(self) -> bool:
        return self.transform == "log"

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            with np.errstate(over="ignore", under="ignore"):
                vals = np.exp(self._logs)
            if not np.all(np.isfinite(vals) & (vals > 0)):
                raise DomainError("log values too large to exponentiate; use .logs")
            self._values = vals
        return self._values

    @property
    def logs(self) -> np.ndarray:
        if self._logs is None:
            self._logs = np.log(self._values)
        return self._logs

    def __len__(self) -> int:
        return int((self._logs if self.is_log else self._values).size)

    def __repr__(self) -> str:
        return f"SampleSeries(n={len(self)}, source={self.source!r}, transform={self.transform!r})"


def as_series(s) -> SampleSeries:
    if isinstance(s, SampleSeries):
        return s
    return SampleSeries(s)
