"""Generalized Benford analysis: the general law of relative quantities.

Rank frequencies of positive data under the ``(F, D)`` partition, the
theoretical law ``L_{F,D}``, SSD compliance, ln-space distribution models
with periodized densities and Fourier criteria, and Kolmogorov-Smirnov
goodness of fit.
"""

from .distributions import (GumbelLogModel, NormalLogModel, PerfectModel, PeriodizedDensity,
                            WeibullParams, cdf, density, fit_gumbel, fit_normal,
                            fourier_magnitude, integral_bound, model_probs, periodize,
                            perfect_deviation, quantile, quantile_ratio, sample,
                            weibull_of_gumbel)
from .errors import DomainError, EmitError, GlorqError, IngestError
from .gof import KsResult, kolmogorov_tail, ks_statistic
from .ingest import ingest
from .law import (ComplianceReport, LawParams, RankHistogram, flat_ssd, histogram, law_bounds,
                  law_value, law_vector, rank, ranks, ranks_from_log, s_of_f, ssd)
from .report import RunConfig, analyze, emit, model_report
from .series import SampleSeries
from .variability import (VariabilityResult, compliance_expectation, r_delta, truncate,
                          variability)

__version__ = "0.1.0"
