"""Assemble compliance reports and render them as tables, JSON, CSV or plot data."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import distributions as dist
from .errors import DomainError, EmitError
from .law import ComplianceReport, LawParams, histogram, law_vector
from .series import SampleSeries, as_series
from .variability import DEFAULT_DELTA, compliance_from_ratio, r_delta, sigma_log

FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    f_list: Sequence[float] = (2.0, 8.0, 32.0)
    d: int = 5
    delta: float = DEFAULT_DELTA
    model: Optional[str] = None
    fmt: str = "table"
    plot_data: Optional[str] = None
    resolution: int = 10_000
    j_max: int = 50

    def __post_init__(self):
        if not self.f_list:
            raise DomainError("f_list must not be empty")
        self.f_list = [float(F) for F in self.f_list]
        for F in self.f_list:
            LawParams(F, self.d)
        if self.fmt not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}")

    def params(self):
        return [LawParams(F, self.d) for F in self.f_list]


def model_label(model) -> str:
    if isinstance(model, dist.NormalLogModel):
        return f"normal(mu={model.mu:.6g}, sigma={model.sigma:.6g})"
    if isinstance(model, dist.GumbelLogModel):
        return f"gumbel(mu={model.mu:.6g}, beta={model.beta:.6g})"
    return f"perfect(K={model.k_support:.6g})"


def law_reports(config: RunConfig) -> list[ComplianceReport]:
    return [ComplianceReport.build(p, law_vector(p), kind="law", label=f"L_{{{p.F:g},{p.D}}}")
            for p in config.params()]


def analyze(s: SampleSeries, config: RunConfig) -> list[ComplianceReport]:
    """One data report per F: rank frequencies, SSD and variability diagnostics."""
    s = as_series(s)
    n = len(s)
    ratio = r_delta(s, config.delta)
    sig = sigma_log(s)
    out = []
    for p in config.params():
        h = histogram(p, s)
        exp = compliance_from_ratio(p.F, ratio, n, p.D)
        out.append(ComplianceReport.build(
            p, h.frequencies, kind="data", label=s.source, n=n, variability=exp.log_f_r,
            r_delta=ratio, delta=config.delta, sigma_log=sig, expected_close=exp.expected_close,
            extras={"counts": list(h.counts), "mean_log": float(np.mean(s.logs)),
                    "long_enough": exp.long_enough}))
    return out


def model_report(model, config: RunConfig) -> list[ComplianceReport]:
    """Per F: model rank probabilities, their SSD, the integral bound and the Fourier deviation."""
    out = []
    for p in config.params():
        probs = dist.model_probs(model, p)
        out.append(ComplianceReport.build(
            p, probs, kind="model", label=model_label(model),
            integral_bound=dist.integral_bound(model, p.F),
            perfect_deviation=dist.perfect_deviation(model, p.F, config.j_max)))
    return out


# ------------------------------------------------------------------ rendering

def _fmt_ssd(v: float) -> str:
    return "0" if v == 0 else f"{v:.3g}"


def _row(label, values, ssd, decimals, width=12):
    cells = "".join(f"{v:>{width}.{decimals}f}" for v in values)
    return f"{label:<14}{cells}{_fmt_ssd(ssd):>{width}}"


def render_table(reports: Sequence[ComplianceReport]) -> str:
    lines = []
    for r in reports:
        D = r.params.D
        head = f"F={r.params.F:g} D={D}"
        if r.label:
            head += f"  [{r.kind}: {r.label}]"
        lines.append(head)
        lines.append(f"{'':<14}" + "".join(f"{'d=' + str(d):>12}" for d in range(1, D + 1))
                     + f"{'SSD':>12}")
        lines.append(_row(f"L_{{{r.params.F:g},{D}}}", r.law, 0.0, 8))
        if r.kind == "data":
            lines.append(_row("frequency", r.observed, r.ssd, 5))
            lines.append(f"  n={r.n}  sigma(ln s)={r.sigma_log:.4f}  R_{r.delta:g}={r.r_delta:.6g}"
                         f"  log_F R={r.variability:.4f}  expected_close={r.expected_close}")
        elif r.kind == "model":
            lines.append(_row("model", r.observed, r.ssd, 8))
            lines.append(f"  integral_bound={r.integral_bound:.6g}"
                         f"  D*SSD={D * r.ssd:.6g}  perfect_deviation={r.perfect_deviation:.6g}")
        lines.append("")
    return "\n".join(lines)


def to_json(reports: Sequence[ComplianceReport]) -> str:
    return json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2, sort_keys=True)


def from_json(text: str) -> list[ComplianceReport]:
    return [ComplianceReport.from_dict(d) for d in json.loads(text)["reports"]]


def render_csv(reports: Sequence[ComplianceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "label", "F", "D", "d", "law", "observed", "deviation", "ssd"])
    for r in reports:
        for d in range(r.params.D):
            w.writerow([r.kind, r.label, repr(r.params.F), r.params.D, d + 1, repr(r.law[d]),
                        repr(r.observed[d]), repr(r.deviations[d]), repr(r.ssd)])
    return buf.getvalue()


def emit(reports: Sequence[ComplianceReport], fmt: str = "table") -> str:
    if not reports:
        raise DomainError("nothing to emit")
    if fmt == "table":
        return render_table(reports)
    if fmt == "json":
        return to_json(reports)
    if fmt == "csv":
        return render_csv(reports)
    raise DomainError(f"unknown format {fmt!r}")


def emit_records(records: Sequence[dict], fmt: str = "table") -> str:
    """Render flat dictionaries (KS, variability and perfect-check results)."""
    if not records:
        raise DomainError("nothing to emit")
    keys = list(records[0])
    if fmt == "json":
        return json.dumps({"results": list(records)}, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(records)
        return buf.getvalue()
    out = []
    for rec in records:
        out.extend(f"{k:<22}{_cell(v)}" for k, v in rec.items())
        out.append("")
    return "\n".join(out)


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def write_text(text: str, path) -> None:
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc}") from exc


# ------------------------------------------------------------------ plot data

def periodized_rows(model, F: float, resolution: int) -> str:
    pd = dist.periodize(model, F, resolution)
    lines = ["x\tperiodized_density"]
    lines += [f"{x!r}\t{v!r}" for x, v in zip(pd.x.tolist(), pd.values.tolist())]
    return "\n".join(lines) + "\n"


def cumulative_rows(logs, model) -> str:
    """Sorted ln-space samples with their empirical and model CDF values."""
    x = np.sort(np.asarray(logs, dtype=float))
    n = x.size
    emp = np.arange(1, n + 1) / n
    mod = np.asarray(model.cdf(x), dtype=float)
    lines = ["ln_x\tempirical_cdf\tmodel_cdf"]
    lines += [f"{a!r}\t{b!r}\t{c!r}" for a, b, c in zip(x.tolist(), emp.tolist(), mod.tolist())]
    return "\n".join(lines) + "\n"


def write_plot_data(prefix: str, model=None, f_list=(), resolution: int = 10_000,
                    logs=None) -> list[str]:
    """Write periodized-density files per F and, given samples, a cumulative comparison."""
    paths = []
    if model is not None:
        for F in f_list:
            path = f"{prefix}_periodized_F{F:g}.tsv"
            write_text(periodized_rows(model, F, resolution), path)
            paths.append(path)
        if logs is not None:
            path = f"{prefix}_cumulative.tsv"
            write_text(cumulative_rows(logs, model), path)
            paths.append(path)
    return paths
