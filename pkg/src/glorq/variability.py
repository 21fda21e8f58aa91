"""Truncated-range variability ``R_delta`` and the compliance-expectation rule."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .law import LawParams, _params
from .series import SampleSeries, as_series

DEFAULT_DELTA = 0.01
LOG_RATIO_THRESHOLD = 3.0
LENGTH_FACTOR = 100


@dataclass(frozen=True)
class VariabilityResult:
    delta: float
    r_delta: float
    log_f_r: float
    n_removed_each_side: int
    meets_threshold: bool


class ComplianceExpectation(NamedTuple):
    log_f_r: float
    expected_close: bool
    long_enough: bool


def _trim_count(n: int, delta: float) -> int:
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 0.5), got {delta!r}")
    k = math.floor(delta * n)
    if n - 2 * k < 1:
        raise DomainError(f"trimming {k} from each end of {n} values leaves nothing")
    return k


def truncate(s, delta: float) -> SampleSeries:
    """Sort ascending and drop ``floor(delta*n)`` values from each end."""
    s = as_series(s)
    n = len(s)
    k = _trim_count(n, delta)
    if s.is_log:
        kept = np.sort(s.logs, kind="stable")[k:n - k]
        return SampleSeries.from_log(kept, source=s.source)
    kept = np.sort(s.values, kind="stable")[k:n - k]
    return SampleSeries(kept, source=s.source, transform=s.transform)


def r_delta(s, delta: float = DEFAULT_DELTA) -> float:
    """``max / min`` of the truncated series; always ``>= 1``."""
    t = truncate(s, delta)
    if t.is_log:
        return float(math.exp(t.logs[-1] - t.logs[0]))
    v = t.values
    return float(v[-1] / v[0])


def compliance_from_ratio(F: float, ratio: float, n: int | None = None, D: int | None = None
                          ) -> ComplianceExpectation:
    """Apply the ``log_F R >= 3`` rule to a known ratio.

    ``long_enough`` is the advisory ``n >= 100 D`` check; it is ``True`` when
    either ``n`` or ``D`` is unknown.
    """
    if ratio < 1:
        raise DomainError(f"ratio must be >= 1, got {ratio!r}")
    log_f_r = math.log(ratio) / math.log(F)
    long_enough = True if n is None or D is None else n >= LENGTH_FACTOR * D
    return ComplianceExpectation(log_f_r, bool(log_f_r >= LOG_RATIO_THRESHOLD and long_enough),
                                 long_enough)


def compliance_expectation(params: LawParams, s, delta: float = DEFAULT_DELTA
                           ) -> ComplianceExpectation:
    params = _params(params)
    s = as_series(s)
    return compliance_from_ratio(params.F, r_delta(s, delta), len(s), params.D)


def variability(s, F: float, delta: float = DEFAULT_DELTA) -> VariabilityResult:
    s = as_series(s)
    r = r_delta(s, delta)
    log_f_r = math.log(r) / math.log(F)
    return VariabilityResult(delta=delta, r_delta=r, log_f_r=log_f_r,
                             n_removed_each_side=_trim_count(len(s), delta),
                             meets_threshold=log_f_r >= LOG_RATIO_THRESHOLD)


def sigma_log(s) -> float:
    """Sample standard deviation of ``ln s`` (``ddof=1``; 0 for a single value)."""
    logs = as_series(s).logs
    return float(np.std(logs, ddof=1)) if logs.size > 1 else 0.0
