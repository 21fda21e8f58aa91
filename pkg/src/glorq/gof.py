"""Kolmogorov-Smirnov goodness of fit with the asymptotic Brownian-bridge tail."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TAIL_TERM_TOL = 1e-18


@dataclass(frozen=True)
class KsResult:
    statistic: float
    n: int
    p_value: float
    max_at: float
    d_n: float


def kolmogorov_tail(x: float) -> float:
    """``2 sum_{k>=1} (-1)**(k-1) exp(-2 k**2 x**2)``, clamped to ``[0, 1]``.

    Below ``x = 0.8`` the alternating series needs many terms, so the
    equivalent theta-function form of the same distribution is summed there.
    """
    x = float(x)
    if x <= 0:
        return 1.0
    if x < 0.8:
        # P(K <= x) = sqrt(2 pi)/x * sum_k exp(-(2k-1)^2 pi^2 / (8 x^2))
        c = -math.pi**2 / (8.0 * x * x)
        cdf = 0.0
        k = 1
        while True:
            term = math.exp((2 * k - 1) ** 2 * c)
            cdf += term
            if term <= TAIL_TERM_TOL * cdf or term == 0.0:
                break
            k += 1
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / x * cdf))
    total = 0.0
    k = 1
    while True:
        term = math.exp(-2.0 * k * k * x * x)
        total += term if k % 2 else -term
        if term < TAIL_TERM_TOL * total or term == 0.0:
            break
        k += 1
    return min(1.0, max(0.0, 2.0 * total))


def ks_statistic(logs, model) -> KsResult:
    """Two-sided ``sqrt(n) * sup |F_n - F|`` of ln-space samples against ``model.cdf``."""
    x = np.sort(np.asarray(logs, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise DomainError("KS statistic needs at least one sample")
    c = np.asarray(model.cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    upper = np.abs(i / n - c)
    lower = np.abs((i - 1) / n - c)
    gap = np.maximum(upper, lower)
    # with ties only the last copy's upper step and the first copy's lower step are real
    if n > 1:
        dup_next = np.r_[x[1:] == x[:-1], False]
        dup_prev = np.r_[False, x[1:] == x[:-1]]
        gap = np.maximum(np.where(dup_next, 0.0, upper), np.where(dup_prev, 0.0, lower))
    j = int(np.argmax(gap))
    d_n = float(gap[j])
    stat = math.sqrt(n) * d_n
    return KsResult(statistic=stat, n=int(n), p_value=kolmogorov_tail(stat),
                    max_at=float(x[j]), d_n=d_n)
