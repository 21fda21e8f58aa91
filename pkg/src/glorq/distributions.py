"""Continuous models for ``ln X`` and their general-law probabilities.

Three models are provided: normal (``X`` lognormal), reflected Gumbel
(``X`` Weibull) and the band-limited ``sinc**2`` density whose Fourier
transform is a triangle supported on ``[-K, K]``. A model answers the rank
probabilities of ``X`` through its ``ln F``-periodized density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr, sici

from .errors import DomainError
from .law import LawParams, _params
from .series import SampleSeries
from .special import (EULER_GAMMA, gamma_one_plus_ib_abs, integrate, inverse_normal_cdf,
                      normal_interval, normal_pdf)

WRAP_RTOL = 1e-18
WRAP_CAP = 10_000
MIN_RESOLUTION = 16


def _check_q(q):
    q = np.asarray(q, dtype=float)
    if np.any(~((q > 0) & (q < 1))):
        raise DomainError("quantile level must lie strictly inside (0, 1)")
    return q


def _open_uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    # (0, 1) exclusive on both ends
    return (rng.integers(0, 2**53, size=n) + 0.5) / 2.0**53


@dataclass(frozen=True)
class NormalLogModel:
    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"normal model needs finite mu and sigma > 0, got {self!r}")

    @property
    def mode(self) -> float:
        return self.mu

    @property
    def mean(self) -> float:
        return self.mu

    @property
    def std(self) -> float:
        return self.sigma

    def pdf(self, x):
        return normal_pdf((np.asarray(x, dtype=float) - self.mu) / self.sigma) / self.sigma

    def cdf(self, x):
        return ndtr((np.asarray(x, dtype=float) - self.mu) / self.sigma)

    def interval_prob(self, a, b):
        return normal_interval((np.asarray(a) - self.mu) / self.sigma,
                               (np.asarray(b) - self.mu) / self.sigma)

    def quantile(self, q):
        q = _check_q(q)
        z = np.vectorize(inverse_normal_cdf, otypes=[float])(q)
        out = self.mu + self.sigma * z
        return float(out) if out.ndim == 0 else out

    def fourier_magnitude(self, y):
        y = np.asarray(y, dtype=float)
        return np.exp(-2.0 * math.pi**2 * self.sigma**2 * y * y)

    def xspace_pdf(self, x):
        """Lognormal density of ``X`` itself."""
        x = np.asarray(x, dtype=float)
        z = (np.log(x) - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (x * self.sigma * math.sqrt(2.0 * math.pi))

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.mu + self.sigma * rng.standard_normal(n)


@dataclass(frozen=True)
class GumbelLogModel:
    """Reflected (minimum) Gumbel: density ``exp(z - e**z) / beta``, ``z = (x - mu)/beta``."""

    mu: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"Gumbel model needs finite mu and beta > 0, got {self!r}")

    @property
    def mode(self) -> float:
        return self.mu

    @property
    def mean(self) -> float:
        return self.mu - self.beta * EULER_GAMMA

    @property
    def std(self) -> float:
        return math.pi * self.beta / math.sqrt(6.0)

    def _z(self, x):
        return (np.asarray(x, dtype=float) - self.mu) / self.beta

    def pdf(self, x):
        z = self._z(x)
        with np.errstate(over="ignore"):
            return np.exp(z - np.exp(z)) / self.beta

    def cdf(self, x):
        with np.errstate(over="ignore"):
            return -np.expm1(-np.exp(self._z(x)))

    def sf(self, x):
        with np.errstate(over="ignore"):
            return np.exp(-np.exp(self._z(x)))

    def interval_prob(self, a, b):
        with np.errstate(over="ignore"):
            return np.expm1(-np.exp(self._z(a))) - np.expm1(-np.exp(self._z(b)))

    def quantile(self, q):
        q = _check_q(q)
        out = self.mu + self.beta * np.log(-np.log1p(-q))
        return float(out) if out.ndim == 0 else out

    def fourier_magnitude(self, y):
        return gamma_one_plus_ib_abs(2.0 * math.pi * self.beta * np.asarray(y, dtype=float))

    def xspace_pdf(self, x):
        """Weibull density of ``X = exp(ln X)``."""
        return weibull_of_gumbel(self).pdf(x)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        u = _open_uniform(rng, n)
        return self.mu + self.beta * np.log(-np.log1p(-u))


@dataclass(frozen=True)
class PerfectModel:
    """Density ``(1/K) (sin(pi K x) / (pi x))**2`` with triangular Fourier transform."""

    k_support: float

    def __post_init__(self):
        if not (self.k_support > 0 and math.isfinite(self.k_support)):
            raise DomainError(f"k_support must be positive, got {self.k_support!r}")

    mode = 0.0
    mean = 0.0

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        K = self.k_support
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (np.sin(math.pi * K * x) / (math.pi * x)) ** 2 / K
        return np.where(np.abs(x) * K < 1e-8, K, out)

    def cdf(self, x):
        # integral of sin(t)**2/t**2 is Si(2t) - sin(t)**2/t
        t = math.pi * self.k_support * np.asarray(x, dtype=float)
        si, _ = sici(2.0 * t)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(t == 0, 0.0, np.sin(t) ** 2 / t)
        return np.clip(0.5 + (si - tail) / math.pi, 0.0, 1.0)

    def interval_prob(self, a, b):
        return self.cdf(b) - self.cdf(a)

    def quantile(self, q):
        q = _check_q(q)

        def one(p):
            f = lambda x: float(self.cdf(x)) - p
            hi = 1.0 / self.k_support
            while f(hi) < 0:
                hi *= 2.0
            lo = -1.0 / self.k_support
            while f(lo) > 0:
                lo *= 2.0
            return brentq(f, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500)

        out = np.vectorize(one, otypes=[float])(q)
        return float(out) if out.ndim == 0 else out

    def fourier_magnitude(self, y):
        y = np.asarray(y, dtype=float)
        return np.maximum(0.0, 1.0 - np.abs(y) / self.k_support)

    def xspace_pdf(self, x):
        x = np.asarray(x, dtype=float)
        return self.pdf(np.log(x)) / x

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        # envelope min(K, 1/(K pi^2 x^2)) has total mass 4/pi, so about pi/4 of proposals survive
        K = self.k_support
        c = 1.0 / (math.pi * K)
        out = np.empty(0)
        while out.size < n:
            m = int(1.3 * (n - out.size)) + 16
            centre = rng.random(m) < 0.5
            x = np.where(centre, c * (2.0 * rng.random(m) - 1.0),
                         np.where(rng.random(m) < 0.5, -1.0, 1.0) * c / _open_uniform(rng, m))
            env = np.minimum(K, 1.0 / (K * math.pi**2 * x * x))
            keep = rng.random(m) * env <= self.pdf(x)
            out = np.concatenate([out, x[keep]])
        return out[:n]


Model = Union[NormalLogModel, GumbelLogModel, PerfectModel]


@dataclass(frozen=True)
class WeibullParams:
    lambda_: float
    k: float

    def __post_init__(self):
        if not (self.lambda_ > 0 and self.k > 0):
            raise DomainError("Weibull scale and shape must be positive")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        r = x / self.lambda_
        with np.errstate(over="ignore"):
            return (self.k / self.lambda_) * r ** (self.k - 1.0) * np.exp(-(r ** self.k))

    def cdf(self, x):
        r = np.asarray(x, dtype=float) / self.lambda_
        return -np.expm1(-(r ** self.k))


def weibull_of_gumbel(model: GumbelLogModel) -> WeibullParams:
    """Weibull law of ``X`` when ``ln X`` is reflected Gumbel: scale ``e**mu``, shape ``1/beta``."""
    return WeibullParams(lambda_=math.exp(model.mu), k=1.0 / model.beta)


# ---------------------------------------------------------------- generic ops

def density(model: Model, x):
    return model.pdf(x)


def cdf(model: Model, x):
    return model.cdf(x)


def quantile(model: Model, q):
    return model.quantile(q)


def fourier_magnitude(model: Model, y):
    return model.fourier_magnitude(y)


def fit_normal(log_mean: float, log_std: float) -> NormalLogModel:
    if not log_std > 0:
        raise DomainError(f"log_std must be positive, got {log_std!r}")
    return NormalLogModel(float(log_mean), float(log_std))


def fit_gumbel(log_mean: float, log_std: float) -> GumbelLogModel:
    """Moment match: ``std = pi beta / sqrt(6)``, ``mean = mu - beta * gamma``."""
    if not log_std > 0:
        raise DomainError(f"log_std must be positive, got {log_std!r}")
    beta = log_std * math.sqrt(6.0) / math.pi
    return GumbelLogModel(float(log_mean) + beta * EULER_GAMMA, beta)


def quantile_ratio(model: Model, delta: float = 0.01) -> float:
    """Model counterpart of ``R_delta``: ``exp(q(1-delta) - q(delta))``."""
    return math.exp(model.quantile(1.0 - delta) - model.quantile(delta))


def _ln_f(F: float) -> float:
    F = float(F)
    if not F > 1.0:
        raise DomainError(f"F must exceed 1, got {F!r}")
    return math.log(F)


def _outward(term, j0: int, past, total):
    """Add ``term(j)`` for ``j = j0 +- 1, +- 2, ...`` until each side is negligible."""
    for step in (1, -1):
        j = j0
        for _ in range(WRAP_CAP):
            j += step
            t = term(j)
            total = total + t
            if past(j, step) and np.all(t <= WRAP_RTOL * total):
                break
    return total


def periodized_values(model: Model, F: float, x) -> np.ndarray:
    """``sum_j p(x + j ln F)`` at the points ``x``."""
    L = _ln_f(F)
    x = np.asarray(x, dtype=float)
    if isinstance(model, PerfectModel):
        # Poisson summation; the transform vanishes beyond K so the series is finite
        kmax = int(math.ceil(model.k_support * L))
        out = np.full(x.shape, 1.0 / L)
        for k in range(1, kmax + 1):
            c = float(model.fourier_magnitude(k / L))
            if c > 0:
                out = out + (2.0 / L) * c * np.cos(2.0 * math.pi * k * x / L)
        return out
    centre = model.mode
    x0 = float(np.mean(x)) if x.size else 0.0
    j0 = int(round((centre - x0) / L))
    xmin, xmax = (float(x.min()), float(x.max())) if x.size else (0.0, 0.0)

    def past(j, step):
        return (xmin + j * L > centre) if step > 0 else (xmax + j * L < centre)

    return _outward(lambda j: model.pdf(x + j * L), j0, past, model.pdf(x + j0 * L))


@dataclass(frozen=True)
class PeriodizedDensity:
    model: object
    ln_f: float
    resolution: int
    x: np.ndarray
    values: np.ndarray

    def period_integral(self) -> float:
        """Trapezoid rule on the periodic grid (the sample mean times the period)."""
        return float(self.values.mean() * self.ln_f)

    @property
    def spread(self) -> float:
        return float(self.values.max() - self.values.min())


def periodize(model: Model, F: float, resolution: int = 4096) -> PeriodizedDensity:
    """Sample the ``ln F``-periodized density on ``resolution`` points of ``[0, ln F)``."""
    if resolution < MIN_RESOLUTION:
        raise DomainError(f"resolution must be at least {MIN_RESOLUTION}")
    L = _ln_f(F)
    x = np.arange(resolution) * (L / resolution)
    return PeriodizedDensity(model, L, int(resolution), x, periodized_values(model, F, x))


def model_probs(model: Model, params: LawParams) -> np.ndarray:
    """``Prob(rank(X) = d)`` for ``d = 1..D``."""
    params = _params(params)
    L = params.ln_f
    lb = params.log_boundaries()
    if isinstance(model, PerfectModel):
        f = lambda t: periodized_values(model, params.F, t)
        return np.array([integrate(f, lb[d], lb[d + 1]) for d in range(params.D)])
    a, b = lb[:-1], lb[1:]
    centre = model.mode
    j0 = int(math.floor(centre / L))

    def past(j, step):
        return (j * L > centre) if step > 0 else ((j + 1) * L < centre)

    total = _outward(lambda j: model.interval_prob(a + j * L, b + j * L), j0, past,
                     model.interval_prob(a + j0 * L, b + j0 * L))
    return np.asarray(total, dtype=float)


def model_ssd(model: Model, params: LawParams) -> float:
    from .law import ssd
    return ssd(params, model_probs(model, params))


def integral_bound(model: Model, F: float) -> float:
    """``(F-1) * integral_0^{ln F} e**-x (p~(x) - 1/ln F)**2 dx``; dominates ``D * SSD`` for all D."""
    L = _ln_f(F)

    def g(x):
        dev = periodized_values(model, F, x) - 1.0 / L
        return np.exp(-x) * dev * dev

    # p~ carries rounding of order 64 eps / L, so squared deviations below that are noise
    floor = 64.0 * np.finfo(float).eps / L
    return (float(F) - 1.0) * integrate(g, 0.0, L, atol=L * floor * floor)


def perfect_deviation(model: Model, F: float, j_max: int = 50) -> float:
    """Largest Fourier magnitude at the harmonics ``j / ln F``, ``j = 1..j_max``."""
    L = _ln_f(F)
    if j_max < 1:
        raise DomainError("j_max must be at least 1")
    y = np.arange(1, int(j_max) + 1) / L
    return float(np.max(model.fourier_magnitude(y)))


def sample(model: Model, n: int, seed: int) -> SampleSeries:
    """Reproducible ln-space draws, returned as a log-native series."""
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = np.random.default_rng(seed)
    return SampleSeries.from_log(model.draw(rng, int(n)), source=f"sample:{model!r}:seed={seed}")
