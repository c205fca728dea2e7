"""From a Pajek file to a per-unit indicator table, and its analysis.

``run`` computes one :class:`~interdiv.diversity.IndicatorRow` per column
of the (possibly transposed) matrix and writes them as CSV. ``analyze``
joins indicator tables with other per-unit metrics (betweenness, impact
factors, ...) and produces correlation, ranking and range tables.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, Union

import numpy as np

from .diversity import GINI_SUPPORTS, IndicatorRow, RSParams, indicator_row
from .matrix import CoocMatrix, TwoModeMatrix, column_profile, drop_loops, row_projection, transpose
from .pajek import cooc_from_network, read_net, to_two_mode
from .similarity import DisparityMatrix, cosine_similarity, disparity_from_similarity, jaccard_similarity
from .stats import CorrelationReport, correlation_report, top_k

__all__ = [
    "CSV_HEADER",
    "PipelineError",
    "RunConfig",
    "build_disparity",
    "compute_indicators",
    "run",
    "format_indicator_csv",
    "read_table",
    "join_tables",
    "range_histogram",
    "Analysis",
    "analyze",
    "write_rows",
]

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "unit",
    "rs",
    "true_div",
    "div",
    "gini",
    "gini_simpson",
    "shannon",
    "disparity",
    "variety_rel",
    "variety_abs",
    "n_available",
)

INDICATOR_FIELDS = CSV_HEADER[1:9]

NPolicy = Union[str, int]


class PipelineError(RuntimeError):
    """Failure in one named stage of the pipeline."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


@dataclass
class RunConfig:
    input: Path
    out: Path | None = None
    direction: str = "citing"
    measure: str = "cosine"
    drop_loops: bool = False
    gini_support: str = "nonzero"
    n_policy: NPolicy = "rows"
    alpha: float = 1.0
    beta: float = 1.0
    coocc: Path | None = None
    full_precision: bool = False
    force: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.direction not in ("citing", "cited"):
            raise PipelineError("config", f"direction must be 'citing' or 'cited', not {self.direction!r}")
        if self.measure not in ("cosine", "jaccard"):
            raise PipelineError("config", f"unknown measure {self.measure!r}")
        if self.gini_support not in GINI_SUPPORTS:
            raise PipelineError("config", f"gini support must be one of {GINI_SUPPORTS}")
        if isinstance(self.n_policy, str):
            if self.n_policy not in ("rows", "max-observed"):
                raise PipelineError("config", f"unknown N policy {self.n_policy!r}")
        elif int(self.n_policy) < 1:
            raise PipelineError("config", "explicit N must be positive")
        if not (self.alpha >= 0 and self.beta >= 0):
            raise PipelineError("config", "alpha and beta must be nonnegative")
        if self.coocc is not None and self.measure != "cosine":
            raise PipelineError("config", "a co-occurrence file only applies to the cosine measure")
        if self.workers < 1:
            raise PipelineError("config", "workers must be at least 1")


def _aligned_cooc(cooc: CoocMatrix, labels: Sequence[str]) -> CoocMatrix:
    if tuple(cooc.labels) == tuple(labels):
        return cooc
    if set(cooc.labels) != set(labels):
        missing = sorted(set(labels) - set(cooc.labels))[:5]
        raise ValueError(f"co-occurrence labels do not match the matrix rows (missing e.g. {missing})")
    pos = {lab: k for k, lab in enumerate(cooc.labels)}
    order = np.array([pos[lab] for lab in labels])
    return CoocMatrix(labels, cooc.values[np.ix_(order, order)])


def build_disparity(m: TwoModeMatrix, measure: str = "cosine", cooc: CoocMatrix | None = None) -> DisparityMatrix:
    """Disparity among the rows of ``m``.

    With ``measure="cosine"`` the co-occurrence matrix is computed from
    ``m`` unless one is supplied (it is then matched to the row labels).
    """
    if measure == "cosine":
        c = row_projection(m) if cooc is None else _aligned_cooc(cooc, m.row_labels)
        s = cosine_similarity(c)
    elif measure == "jaccard":
        if cooc is not None:
            raise ValueError("a co-occurrence matrix only applies to the cosine measure")
        s = jaccard_similarity(m)
    else:
        raise ValueError(f"unknown measure {measure!r}")
    return disparity_from_similarity(s, m.row_labels)


def _resolve_n(m: TwoModeMatrix, policy: NPolicy) -> int:
    counts = np.diff(m.csc.indptr)
    observed = int(counts.max()) if counts.size else 0
    if policy == "rows":
        return m.shape[0]
    if policy == "max-observed":
        return max(observed, 1)
    n = int(policy)
    if n < observed:
        raise ValueError(f"explicit N={n} is below the {observed} classes observed in one column")
    return n


def compute_indicators(
    m: TwoModeMatrix,
    d: DisparityMatrix,
    n_available: int,
    params: RSParams | None = None,
    gini_support: str = "nonzero",
    workers: int = 1,
) -> list[IndicatorRow]:
    """One indicator row per column, in column order.

    Columns are split into contiguous chunks for ``workers`` threads; each
    column is computed by the same code path, so the output does not
    depend on ``workers``.
    """
    params = params or RSParams()
    n_cols = m.shape[1]

    def chunk(lo: int, hi: int) -> list[IndicatorRow]:
        return [indicator_row(column_profile(m, j), d, n_available, params, gini_support) for j in range(lo, hi)]

    if workers == 1 or n_cols < 2:
        return chunk(0, n_cols)
    bounds = np.linspace(0, n_cols, min(workers * 4, n_cols) + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda ab: chunk(*ab), zip(bounds[:-1], bounds[1:]))
        return [row for part in parts for row in part]


def _fmt(value, full_precision: bool) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    value = float(value)
    return repr(value) if full_precision else f"{value:.6g}"


def write_rows(rows: Sequence[Sequence], full_precision: bool = False) -> str:
    """CSV text for rows of mixed strings and numbers; NaN becomes empty."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([v if isinstance(v, str) else _fmt(v, full_precision) for v in row])
    return buf.getvalue()


def format_indicator_csv(rows: Sequence[IndicatorRow], full_precision: bool = False) -> str:
    return write_rows([CSV_HEADER, *(row.astuple() for row in rows)], full_precision)


def _write_text(path: Path, text: str, force: bool, stage: str = "write") -> None:
    path = Path(path)
    if path.exists() and not force:
        raise PipelineError(stage, f"{path} exists; pass force to overwrite")
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise PipelineError(stage, f"{path}: {exc}") from exc


def run(config: RunConfig) -> tuple[list[IndicatorRow], dict]:
    """Run the full computation described by ``config``.

    Returns the indicator rows and a log dictionary with dataset
    descriptives and per-stage timings. When ``config.out`` is set the
    rows are also written as CSV.
    """
    config.validate()
    log: dict = {"input": str(config.input), "direction": config.direction, "measure": config.measure, "timings": {}}
    clock = time.perf_counter()

    def lap(stage):
        nonlocal clock
        now = time.perf_counter()
        log["timings"][stage] = now - clock
        clock = now

    if config.out is not None and Path(config.out).exists() and not config.force:
        raise PipelineError("write", f"{config.out} exists; pass force to overwrite")

    try:
        net = read_net(config.input)
        m = to_two_mode(net)
    except (OSError, ValueError) as exc:
        raise PipelineError("parse", f"{config.input}: {exc}") from exc
    log["one_mode_input"] = not net.is_two_mode
    lap("parse")

    try:
        if config.drop_loops:
            m, report = drop_loops(m)
            log["loops_removed"] = report.count
            log["loop_weight_removed"] = report.weight
        if config.direction == "cited":
            m = transpose(m)
        n_available = _resolve_n(m, config.n_policy)
    except ValueError as exc:
        raise PipelineError("transform", str(exc)) from exc
    counts = np.diff(m.csc.indptr)
    log.update(
        classes=m.shape[0],
        units=m.shape[1],
        nonzeros=m.nnz,
        total_weight=m.total(),
        empty_units=int((counts == 0).sum()),
        n_available=n_available,
    )
    lap("transform")

    cooc = None
    if config.coocc is not None:
        try:
            cooc = cooc_from_network(read_net(config.coocc))
        except (OSError, ValueError) as exc:
            raise PipelineError("coocc", f"{config.coocc}: {exc}") from exc
    try:
        d = build_disparity(m, config.measure, cooc)
    except ValueError as exc:
        raise PipelineError("disparity", str(exc)) from exc
    lap("disparity")

    try:
        rows = compute_indicators(
            m, d, n_available, RSParams(config.alpha, config.beta), config.gini_support, config.workers
        )
    except (ValueError, IndexError) as exc:
        raise PipelineError("indicators", str(exc)) from exc
    lap("indicators")

    if config.out is not None:
        _write_text(config.out, format_indicator_csv(rows, config.full_precision), config.force)
        log["output"] = str(config.out)
    lap("write")
    logger.info(
        "%d classes x %d units, %d nonzeros; indicators in %.2fs",
        log["classes"], log["units"], log["nonzeros"], log["timings"]["indicators"],
    )
    return rows, log


def _cell(value: str):
    if value == "":
        return math.nan
    try:
        return float(value)
    except ValueError:
        return value


def read_table(path, key: str = "unit") -> list[dict]:
    """Read a CSV keyed by its first column.

    Numeric cells become floats and empty cells NaN. The key column is
    renamed ``key``.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = []
        for rec in reader:
            if not rec:
                continue
            row = {key: rec[0]}
            row.update((h, _cell(v)) for h, v in zip(header[1:], rec[1:]))
            rows.append(row)
    return rows


def join_tables(base: Sequence[Mapping], *others: Sequence[Mapping], key: str = "unit") -> tuple[list[dict], dict]:
    """Outer join on ``key``; missing cells become NaN.

    Row order follows ``base``, then new keys in order of appearance.
    Raises ValueError on duplicate keys within a table or a column name
    shared by two tables. Returns the joined rows and, per joined table,
    the keys it did not share with ``base``.
    """
    tables = [base, *others]
    columns: list[str] = []
    owner: dict[str, int] = {}
    for t, table in enumerate(tables):
        keys = [row[key] for row in table]
        if len(set(keys)) != len(keys):
            raise ValueError(f"table {t} has duplicate {key} values")
        for row in table:
            for col in row:
                if col == key:
                    continue
                if owner.setdefault(col, t) != t:
                    raise ValueError(f"column {col!r} appears in more than one table")
                if col not in columns:
                    columns.append(col)

    merged: dict[str, dict] = {}
    for table in tables:
        for row in table:
            merged.setdefault(row[key], {key: row[key]}).update(row)
    out = []
    for k, row in merged.items():
        out.append({key: k, **{c: row.get(c, math.nan) for c in columns}})
    base_keys = {row[key] for row in base}
    unmatched = {t: sorted({row[key] for row in table} ^ base_keys) for t, table in enumerate(others, start=1)}
    return out, unmatched


def range_histogram(rs, div, per_decade: int = 5) -> list[list]:
    """Log-binned counts of RS and DIV values.

    The first row counts zeros (and anything nonpositive); the rest use
    ``per_decade`` log-spaced bins from the decade of the smallest
    positive value up to 1 (or the largest value, if above 1).
    """
    rs = np.asarray(rs, dtype=np.float64)
    div = np.asarray(div, dtype=np.float64)
    rs, div = rs[np.isfinite(rs)], div[np.isfinite(div)]
    both = np.concatenate([rs, div])
    pos = both[both > 0]
    rows = [["bin_lo", "bin_hi", "rs", "div"], [0.0, 0.0, int((rs <= 0).sum()), int((div <= 0).sum())]]
    if pos.size == 0:
        return rows
    lo = math.floor(math.log10(pos.min()))
    hi = max(0, math.ceil(math.log10(pos.max())))
    edges = 10.0 ** (np.arange(lo * per_decade, hi * per_decade + 1) / per_decade)
    rs_counts, _ = np.histogram(rs[rs > 0], edges)
    div_counts, _ = np.histogram(div[div > 0], edges)
    for a, b, x, y in zip(edges[:-1], edges[1:], rs_counts, div_counts):
        rows.append([float(a), float(b), int(x), int(y)])
    return rows


@dataclass
class Analysis:
    table: list[dict]
    report: CorrelationReport
    top: dict[str, list[dict]] = field(default_factory=dict)
    histogram: list[list] = field(default_factory=list)
    unmatched: dict = field(default_factory=dict)

    def top_rows(self) -> list[list]:
        rows = [["field", "rank", "unit", "value"]]
        for name, ranked in self.top.items():
            rows.extend([name, k, row["unit"], row[name]] for k, row in enumerate(ranked, start=1))
        return rows


def _numeric_columns(table: Sequence[Mapping], skip: Sequence[str]) -> list[str]:
    cols = []
    for row in table:
        for c, v in row.items():
            if c in skip or c in cols:
                continue
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                cols.append(c)
    return [c for c in cols if all(isinstance(r.get(c), (int, float)) for r in table)]


def analyze(
    indicators: Sequence[Mapping],
    extras: Sequence[Sequence[Mapping]] = (),
    k: int = 25,
    variables: Sequence[str] | None = None,
) -> Analysis:
    """Join, correlate, rank and bin.

    ``indicators`` are rows as read back from an indicator CSV (dicts with
    a ``unit`` key). By default every numeric column except ``n_available``
    enters the correlation table and gets a top-``k`` list.
    """
    table, unmatched = join_tables(indicators, *extras)
    if variables is None:
        variables = _numeric_columns(table, skip=("unit", "n_available", "variety_abs"))
    report = correlation_report({v: [row[v] for row in table] for v in variables})
    top = {v: top_k(table, v, k) for v in variables}
    hist = range_histogram([row.get("rs", math.nan) for row in table], [row.get("div", math.nan) for row in table])
    return Analysis(table, report, top, hist, unmatched)
