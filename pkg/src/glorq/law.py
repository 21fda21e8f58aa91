"""Rank partition, the general law L_{F,D}, rank frequencies and SSD compliance.

For a scale factor ``F > 1`` and bin count ``D >= 2`` the positive reals are
split into ``D`` classes. Class ``d`` collects every ``x`` whose mantissa
``m = x / F**floor(log_F x)`` lies in ``[1 + (d-1)(F-1)/D, 1 + d(F-1)/D)``.
When ``F = D + 1`` the rank is the leading base-F digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .series import SampleSeries, as_series

F_MAX = 1e6
D_MAX = 10**6


@dataclass(frozen=True)
class LawParams:
    F: float
    D: int

    def __post_init__(self):
        F, D = self.F, self.D
        if isinstance(D, bool) or int(D) != D:
            raise DomainError(f"D must be an integer, got {D!r}")
        object.__setattr__(self, "D", int(D))
        object.__setattr__(self, "F", float(F))
        if not (math.isfinite(self.F) and 1.0 < self.F <= F_MAX):
            raise DomainError(f"F must lie in (1, {F_MAX:g}], got {F!r}")
        if not 2 <= self.D <= D_MAX:
            raise DomainError(f"D must lie in [2, {D_MAX}], got {D!r}")

    @property
    def ln_f(self) -> float:
        return math.log(self.F)

    def boundaries(self) -> np.ndarray:
        """Mantissa cut points ``1 + k(F-1)/D`` for ``k = 0..D``."""
        k = np.arange(self.D + 1, dtype=float)
        return 1.0 + k * (self.F - 1.0) / self.D

    def log_boundaries(self) -> np.ndarray:
        """Left and right ends of the ln-space intervals, ``ln(1 + k(F-1)/D)``."""
        k = np.arange(self.D + 1, dtype=float)
        return np.log1p(k * (self.F - 1.0) / self.D)


def _params(params, D=None) -> LawParams:
    if isinstance(params, LawParams):
        return params
    return LawParams(params, D)


def _check_rank(params: LawParams, d) -> int:
    if isinstance(d, bool) or int(d) != d or not 1 <= d <= params.D:
        raise DomainError(f"rank d must be an integer in [1, {params.D}], got {d!r}")
    return int(d)


def law_vector(params: LawParams) -> np.ndarray:
    """All ``D`` values of the general law as an array indexed from rank 1."""
    params = _params(params)
    lb = params.log_boundaries()
    return np.diff(lb) / params.ln_f


def law_value(params: LawParams, d: int) -> float:
    """``log_F[(1 + d(F-1)/D) / (1 + (d-1)(F-1)/D)]``."""
    params = _params(params)
    d = _check_rank(params, d)
    step = (params.F - 1.0) / params.D
    return (math.log1p(d * step) - math.log1p((d - 1) * step)) / params.ln_f


def law_bounds(params: LawParams, d: int) -> tuple[float, float]:
    """Intermediate-value bracket ``lower <= law_value(d) < upper``."""
    params = _params(params)
    d = _check_rank(params, d)
    F, D = params.F, params.D
    c = (F - 1.0) / math.log(F)
    lower = c / (1.0 + d * (F - 1.0) / D) / D
    upper = c / (1.0 + (d - 1) * (F - 1.0) / D) / D
    return lower, upper


def s_of_f(F: float) -> float:
    """``(F-1)**2 / (F ln(F)**2)``; the large-D limit of ``D * sum(L**2)``."""
    F = float(F)
    if not F > 1.0:
        raise DomainError(f"F must exceed 1, got {F!r}")
    return (F - 1.0) ** 2 / (F * math.log(F) ** 2)


def flat_ssd(params: LawParams) -> float:
    """``D * SSD`` of a sequence whose rank frequencies are all ``1/D``."""
    params = _params(params)
    lv = law_vector(params)
    return params.D * float(np.dot(lv, lv)) - 1.0


def _mantissa(params: LawParams, x: np.ndarray) -> np.ndarray:
    F = params.F
    k = np.floor(np.log(x) / params.ln_f)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        # division and multiplication by exact integer powers keep the mantissa exact for F = 2, 10, ...
        m = np.where(k >= 0, x / np.power(F, k), x * np.power(F, -k))
    bad = ~np.isfinite(m) | (m <= 0)
    if np.any(bad):
        m[bad] = np.exp(np.log(x[bad]) - k[bad] * params.ln_f)
    m = np.where(m >= F, m / F, m)
    m = np.where(m < 1.0, m * F, m)
    return m


def _bin(cuts: np.ndarray, t: np.ndarray, d_guess: np.ndarray, D: int) -> np.ndarray:
    d = np.clip(d_guess, 1, D)
    # half-open [cuts[d-1], cuts[d]) enforced against the same cut values the oracle uses
    d = np.where((d < D) & (t >= cuts[np.minimum(d, D)]), d + 1, d)
    d = np.where((d > 1) & (t < cuts[d - 1]), d - 1, d)
    return d


def ranks(params: LawParams, x) -> np.ndarray:
    """Vectorized rank of positive reals."""
    params = _params(params)
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    bad = np.flatnonzero(~(np.isfinite(flat) & (flat > 0)))
    if bad.size:
        i = int(bad[0])
        raise DomainError(f"rank needs finite positive input; got {flat[i]!r} at index {i}")
    F, D = params.F, params.D
    m = _mantissa(params, flat)
    guess = 1 + np.floor((m - 1.0) * D / (F - 1.0)).astype(np.int64)
    d = _bin(params.boundaries(), m, guess, D)
    return d.reshape(x.shape)


def ranks_from_log(params: LawParams, y) -> np.ndarray:
    """Rank of ``exp(y)`` computed without leaving ln-space."""
    params = _params(params)
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise DomainError("log values must be finite")
    L, F, D = params.ln_f, params.F, params.D
    t = y - np.floor(y / L) * L
    t = np.where(t >= L, t - L, t)
    t = np.where(t < 0, t + L, t)
    guess = 1 + np.floor(np.expm1(t) * D / (F - 1.0)).astype(np.int64)
    return _bin(params.log_boundaries(), t, guess, D)


def rank(params: LawParams, x: float) -> int:
    """Index ``d`` in ``1..D`` of the partition class containing ``x``."""
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"rank needs a finite positive number, got {x!r}")
    return int(ranks(params, np.array([x]))[0])


@dataclass(frozen=True)
class RankHistogram:
    params: LawParams
    counts: tuple
    n: int

    @property
    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.n

    def __add__(self, other: "RankHistogram") -> "RankHistogram":
        if other.params != self.params:
            raise DomainError("cannot merge histograms with different LawParams")
        counts = tuple(a + b for a, b in zip(self.counts, other.counts))
        return RankHistogram(self.params, counts, self.n + other.n)


def histogram(params: LawParams, s) -> RankHistogram:
    """Per-rank counts of a positive series."""
    params = _params(params)
    s = as_series(s)
    r = ranks_from_log(params, s.logs) if s.is_log else ranks(params, s.values)
    counts = np.bincount(r.ravel(), minlength=params.D + 1)[1:]
    return RankHistogram(params, tuple(int(c) for c in counts), len(s))


def ssd(params: LawParams, observed: Sequence[float]) -> float:
    """Sum of squared deviations of ``observed`` from the law."""
    params = _params(params)
    obs = np.asarray(observed, dtype=float)
    if obs.shape != (params.D,):
        raise DomainError(f"expected {params.D} observed values, got shape {obs.shape}")
    dev = obs - law_vector(params)
    return float(np.dot(dev, dev))


@dataclass(frozen=True)
class ComplianceReport:
    """Law values against observed frequencies or model probabilities.

    ``kind`` is ``"law"``, ``"data"`` or ``"model"``. Data reports carry the
    sample size and variability diagnostics; model reports carry the
    integral bound and the Fourier perfect-deviation.
    """

    params: LawParams
    law: tuple
    observed: tuple
    deviations: tuple
    ssd: float
    kind: str = "data"
    label: str = ""
    n: Optional[int] = None
    variability: Optional[float] = None
    r_delta: Optional[float] = None
    delta: Optional[float] = None
    sigma_log: Optional[float] = None
    expected_close: Optional[bool] = None
    integral_bound: Optional[float] = None
    perfect_deviation: Optional[float] = None
    extras: dict = field(default_factory=dict)

    @classmethod
    def build(cls, params: LawParams, observed, **kw) -> "ComplianceReport":
        params = _params(params)
        obs = np.asarray(observed, dtype=float)
        if obs.shape != (params.D,):
            raise DomainError(f"expected {params.D} observed values, got shape {obs.shape}")
        law = law_vector(params)
        dev = obs - law
        return cls(params=params, law=tuple(map(float, law)), observed=tuple(map(float, obs)),
                   deviations=tuple(map(float, dev)), ssd=float(np.dot(dev, dev)), **kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {"F": self.params.F, "D": self.params.D}
        for key in ("law", "observed", "deviations"):
            d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ComplianceReport":
        d = dict(d)
        d["params"] = LawParams(d["params"]["F"], d["params"]["D"])
        for key in ("law", "observed", "deviations"):
            d[key] = tuple(float(v) for v in d[key])
        return cls(**d)
