"""Configuration-driven Monte Carlo harness for variance-ratio experiments,
timing benchmarks, and deterministic CSV/SVG emission."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt
from pathlib import Path
from typing import IO, Sequence

import numpy as np
from threadpoolctl import threadpool_limits

from .errors import ConfigError, DegenerateGraphError, UndefinedStatisticError
from .functionals import Statistic, parse_statistic, statistic_value
from .graph import Graph
from .models import (
    GraphonModel,
    absdiff_model,
    benchmark_sbm_model,
    replicate_seed,
    rho_n,
    sample_graph,
    sbm_model,
)
from .resampling import jackknife, subsample_variance

DEFAULT_REPS = 100
DEFAULT_SUBSAMPLE_B = 1000
DEFAULT_B_FRACTIONS = (0.05, 0.1, 0.2)


@dataclass(frozen=True)
class MethodSpec:
    """One variance-estimation method: the jackknife or subsampling at b_frac."""

    kind: str
    b_frac: float | None = None
    B: int | None = None

    def __post_init__(self):
        if self.kind == "jackknife":
            if self.b_frac is not None or self.B is not None:
                raise ConfigError("jackknife method takes no parameters")
        elif self.kind == "subsample":
            if self.b_frac is None or not 0.0 < self.b_frac <= 1.0:
                raise ConfigError("subsample method needs b_frac in (0, 1]")
            if self.B is None or self.B < 2:
                raise ConfigError("subsample method needs B >= 2")
        else:
            raise ConfigError(f"unknown method kind '{self.kind}'")

    @property
    def label(self) -> str:
        if self.kind == "jackknife":
            return "jackknife"
        return f"subsample:b={self.b_frac:g}:B={self.B}"


@dataclass(frozen=True)
class ExperimentConfig:
    model: GraphonModel
    n_list: tuple[int, ...]
    statistics: tuple[Statistic, ...]
    methods: tuple[MethodSpec, ...]
    reps: int = DEFAULT_REPS
    master_seed: int = 0
    output_path: str | None = None


def model_from_spec(spec) -> GraphonModel:
    """Model from a config value: 'sbm-paper', 'gr2', or an explicit object."""
    if isinstance(spec, str):
        token = spec.strip().lower()
        if token in ("sbm-paper", "sbm-benchmark"):
            return benchmark_sbm_model()
        if token == "gr2":
            return absdiff_model(-1.0 / 3.0)
        raise ConfigError(f"unknown model shorthand '{spec}'")
    if not isinstance(spec, dict):
        raise ConfigError("model must be a shorthand string or an object")
    kind = spec.get("kind")
    try:
        if kind == "sbm":
            _reject_unknown_keys(spec, {"kind", "B", "pi"}, where="model")
            return sbm_model(spec["B"], spec["pi"])
        if kind == "absdiff":
            _reject_unknown_keys(spec, {"kind", "exponent"}, where="model")
            return absdiff_model(spec["exponent"])
    except KeyError as exc:
        raise ConfigError(f"model spec missing field {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"invalid model spec: {exc}") from None
    raise ConfigError(f"unknown model kind '{kind}'")


def _reject_unknown_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} field(s): {', '.join(sorted(unknown))}")


def parse_config(source: str | IO[str]) -> ExperimentConfig:
    """Parse and validate a JSON experiment configuration.

    Defaults: reps=100, methods = jackknife plus subsampling at b_frac
    0.05/0.1/0.2 with B=1000, master_seed=0.
    """
    text = source if isinstance(source, str) else source.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    allowed = {"model", "n_list", "reps", "statistics", "methods", "master_seed", "output_path"}
    _reject_unknown_keys(obj, allowed, where="config")
    for required in ("model", "n_list", "statistics"):
        if required not in obj:
            raise ConfigError(f"config missing required field '{required}'")

    model = model_from_spec(obj["model"])

    n_list = obj["n_list"]
    if not isinstance(n_list, list) or not n_list:
        raise ConfigError("n_list must be a nonempty list")
    if any(not isinstance(n, int) or n < 2 for n in n_list):
        raise ConfigError("n_list entries must be integers >= 2")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError("n_list must be strictly ascending")

    reps = obj.get("reps", DEFAULT_REPS)
    if not isinstance(reps, int) or reps < 2:
        raise ConfigError("reps must be an integer >= 2")

    stats_spec = obj["statistics"]
    if not isinstance(stats_spec, list) or not stats_spec:
        raise ConfigError("statistics must be a nonempty list")
    try:
        statistics = tuple(parse_statistic(name) for name in stats_spec)
    except ValueError as exc:
        raise ConfigError(f"invalid statistic: {exc}") from None

    if "methods" in obj:
        methods = []
        for entry in obj["methods"]:
            if not isinstance(entry, dict):
                raise ConfigError("each method must be an object")
            _reject_unknown_keys(entry, {"kind", "b_frac", "B"}, where="method")
            kind = entry.get("kind")
            if kind == "subsample":
                methods.append(
                    MethodSpec(
                        kind="subsample",
                        b_frac=entry.get("b_frac"),
                        B=entry.get("B", DEFAULT_SUBSAMPLE_B),
                    )
                )
            else:
                methods.append(MethodSpec(kind=kind or "<missing>"))
        methods = tuple(methods)
    else:
        methods = (MethodSpec("jackknife"),) + tuple(
            MethodSpec("subsample", b_frac=f, B=DEFAULT_SUBSAMPLE_B) for f in DEFAULT_B_FRACTIONS
        )

    master_seed = obj.get("master_seed", 0)
    if not isinstance(master_seed, int):
        raise ConfigError("master_seed must be an integer")
    output_path = obj.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError("output_path must be a string")

    return ExperimentConfig(
        model=model,
        n_list=tuple(n_list),
        statistics=statistics,
        methods=methods,
        reps=reps,
        master_seed=master_seed,
        output_path=output_path,
    )


@dataclass(frozen=True)
class RatioRow:
    """One (n, statistic, method) cell of a ratio experiment."""

    n: int
    stat: str
    method: str
    b_frac: float | None
    mean_ratio: float
    se_ratio: float
    reps_used: int


@dataclass(frozen=True)
class RatioReport:
    rows: tuple[RatioRow, ...]
    master_seed: int


def _worker_count() -> int:
    raw = os.environ.get("NETJACK_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"NETJACK_THREADS must be an integer, got '{raw}'") from None
    return max(1, workers)


def _map_ordered(fn, items):
    """Apply fn over items, optionally with NETJACK_THREADS workers.

    Results come back keyed by input order, so the worker count can never
    change downstream reductions.
    """
    workers = _worker_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_ratio_experiment(cfg: ExperimentConfig) -> RatioReport:
    """Simulate reps graphs per size, estimate each statistic's variance with
    each method, and report mean and standard error of estimate/true ratios.

    The true variance of a cell is the empirical variance of the statistic
    across the replicate graphs of that size.  Replicates where a statistic
    is undefined are excluded from its cells, never imputed.  Deterministic
    given the config (replicates own derived seeds; BLAS pinned to one
    thread so reductions are bit-stable regardless of NETJACK_THREADS).
    """
    rows: list[RatioRow] = []
    n_stats = len(cfg.statistics)
    with threadpool_limits(limits=1):
        for n_idx, n in enumerate(cfg.n_list):
            rho = rho_n(cfg.model, n)

            def one_replicate(r: int, _n=n, _n_idx=n_idx, _rho=rho):
                graph_seed = replicate_seed(cfg.master_seed, _n_idx * cfg.reps + r)
                g = sample_graph(cfg.model, _n, graph_seed).graph
                values = [None] * n_stats
                estimates = [[None] * len(cfg.methods) for _ in range(n_stats)]
                for s_idx, stat in enumerate(cfg.statistics):
                    try:
                        values[s_idx] = statistic_value(g, stat, rho=_rho)
                    except (DegenerateGraphError, UndefinedStatisticError):
                        continue
                    for m_idx, meth in enumerate(cfg.methods):
                        try:
                            if meth.kind == "jackknife":
                                estimates[s_idx][m_idx] = jackknife(g, stat, rho=_rho).var_hat
                            else:
                                b = max(stat.min_nodes + 1, round(meth.b_frac * _n))
                                sub_seed = replicate_seed(graph_seed, m_idx + 1)
                                estimates[s_idx][m_idx] = subsample_variance(
                                    g, stat, b=b, B=meth.B, seed=sub_seed, rho=_rho
                                ).var_hat
                        except (DegenerateGraphError, UndefinedStatisticError):
                            pass
                return values, estimates

            results = _map_ordered(one_replicate, range(cfg.reps))

            for s_idx, stat in enumerate(cfg.statistics):
                defined = [res[0][s_idx] for res in results if res[0][s_idx] is not None]
                true_var = float(np.var(defined, ddof=1)) if len(defined) >= 2 else 0.0
                for m_idx, meth in enumerate(cfg.methods):
                    ratios = [
                        res[1][s_idx][m_idx] / true_var
                        for res in results
                        if res[0][s_idx] is not None
                        and res[1][s_idx][m_idx] is not None
                        and true_var > 0.0
                    ]
                    if ratios and true_var > 0.0:
                        arr = np.asarray(ratios)
                        mean_ratio = float(arr.mean())
                        se_ratio = float(arr.std(ddof=1) / sqrt(arr.size)) if arr.size > 1 else float("nan")
                        used = arr.size
                    else:
                        mean_ratio = float("nan")
                        se_ratio = float("nan")
                        used = 0
                    rows.append(
                        RatioRow(
                            n=n,
                            stat=stat.name,
                            method="jackknife" if meth.kind == "jackknife" else "subsample",
                            b_frac=meth.b_frac,
                            mean_ratio=mean_ratio,
                            se_ratio=se_ratio,
                            reps_used=used,
                        )
                    )
    return RatioReport(rows=tuple(rows), master_seed=cfg.master_seed)


@dataclass(frozen=True)
class TimingRow:
    method: str
    wall_time: float
    var_hat: float


def run_timing_benchmark(
    g: Graph,
    stat: Statistic,
    methods: Sequence[MethodSpec],
    seed: int = 0,
    rho: float | None = None,
) -> list[TimingRow]:
    """Wall-clock each variance method on the same graph, single-threaded.

    One warm-up run per method is excluded from the measurement.  The
    estimates themselves are deterministic; only the timings vary.
    """
    if not methods:
        raise ValueError("need at least one method to benchmark")
    rows = []
    with threadpool_limits(limits=1):
        for m_idx, meth in enumerate(methods):
            if meth.kind == "jackknife":
                run = lambda: jackknife(g, stat, rho=rho).var_hat
            else:
                b = max(stat.min_nodes + 1, round(meth.b_frac * g.n))
                sub_seed = replicate_seed(seed, m_idx + 1)
                run = lambda b=b, meth=meth, sub_seed=sub_seed: subsample_variance(
                    g, stat, b=b, B=meth.B, seed=sub_seed, rho=rho
                ).var_hat
            run()  # warm-up: caches, allocator, BLAS init
            start = time.perf_counter()
            var_hat = run()
            elapsed = time.perf_counter() - start
            rows.append(TimingRow(method=meth.label, wall_time=elapsed, var_hat=var_hat))
    return rows


# -- emission ------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


RATIO_COLUMNS = ("n", "stat", "method", "b_frac", "mean_ratio", "se_ratio", "reps_used")
TIMING_COLUMNS = ("method", "wall_time", "var_hat")


def _needs_quoting(text: str) -> bool:
    return any(ch in text for ch in (",", '"', "\n", "\r"))


def _csv_cell(text: str) -> str:
    if _needs_quoting(text):
        return '"' + text.replace('"', '""') + '"'
    return text


def _rows_to_csv(columns: Sequence[str], rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(_fmt(getattr(row, col))) for col in columns))
    return "\n".join(lines) + "\n"


def report_csv(report) -> str:
    """RFC-4180 CSV text (LF endings, 17 significant digits) for a report."""
    if isinstance(report, RatioReport):
        return _rows_to_csv(RATIO_COLUMNS, report.rows)
    rows = list(report)
    if rows and isinstance(rows[0], TimingRow):
        return _rows_to_csv(TIMING_COLUMNS, rows)
    raise ValueError("unsupported report type")


def emit_report(report, path: str | Path, format: str = "csv") -> None:
    """Write a report to path as CSV or as a minimal SVG ratio plot."""
    if format == "csv":
        payload = report_csv(report)
    elif format == "svg":
        if not isinstance(report, RatioReport):
            raise ValueError("SVG emission is defined for ratio reports")
        payload = render_ratio_svg(report)
    else:
        raise ValueError(f"unknown report format '{format}'")
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    except OSError as exc:
        raise IOError(f"cannot write report to {path}: {exc}") from exc


_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_ratio_svg(report: RatioReport) -> str:
    """Hand-rolled SVG: mean_ratio +- 2 se vs n per series, reference line at 1."""
    width, height = 720, 480
    left, right, top, bottom = 70, 180, 30, 50
    plot_w, plot_h = width - left - right, height - top - bottom

    rows = [r for r in report.rows if np.isfinite(r.mean_ratio)]
    series: dict[tuple, list[RatioRow]] = {}
    for row in rows:
        series.setdefault((row.stat, row.method, row.b_frac), []).append(row)

    xs = sorted({r.n for r in rows}) or [0, 1]
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    y_vals = [1.0]
    for r in rows:
        spread = 2 * r.se_ratio if np.isfinite(r.se_ratio) else 0.0
        y_vals += [r.mean_ratio - spread, r.mean_ratio + spread]
    y_lo, y_hi = min(y_vals), max(y_vals)
    pad = 0.05 * (y_hi - y_lo or 1.0)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def sx(value):
        return left + plot_w * (value - x_lo) / (x_hi - x_lo)

    def sy(value):
        return top + plot_h * (1.0 - (value - y_lo) / (y_hi - y_lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
        f'<line class="refline" x1="{left}" y1="{sy(1.0):.2f}" x2="{left + plot_w}" '
        f'y2="{sy(1.0):.2f}" stroke="gray" stroke-dasharray="6,4"/>',
    ]
    for s_idx, (key, pts) in enumerate(sorted(series.items(), key=lambda kv: str(kv[0]))):
        color = _SVG_PALETTE[s_idx % len(_SVG_PALETTE)]
        pts = sorted(pts, key=lambda r: r.n)
        coords = " ".join(f"{sx(r.n):.2f},{sy(r.mean_ratio):.2f}" for r in pts)
        if len(pts) > 1:
            parts.append(
                f'<polyline class="series" points="{coords}" fill="none" stroke="{color}"/>'
            )
        for r in pts:
            if np.isfinite(r.se_ratio):
                parts.append(
                    f'<line class="errbar" x1="{sx(r.n):.2f}" y1="{sy(r.mean_ratio - 2 * r.se_ratio):.2f}" '
                    f'x2="{sx(r.n):.2f}" y2="{sy(r.mean_ratio + 2 * r.se_ratio):.2f}" stroke="{color}"/>'
                )
            parts.append(
                f'<circle class="marker" cx="{sx(r.n):.2f}" cy="{sy(r.mean_ratio):.2f}" '
                f'r="3.5" fill="{color}"/>'
            )
        stat, method, b_frac = key
        label = f"{stat} {method}" + (f" b={b_frac:g}" if b_frac is not None else "")
        parts.append(
            f'<text x="{left + plot_w + 10}" y="{top + 16 * (s_idx + 1)}" '
            f'font-size="11" fill="{color}">{label}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.0f}" y="{height - 12}" font-size="12" '
        f'text-anchor="middle">graph size n</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
