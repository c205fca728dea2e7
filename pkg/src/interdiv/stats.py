"""Pearson/Spearman correlation tables and top-k rankings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import stats as sps

__all__ = [
    "pearson",
    "spearman",
    "average_ranks",
    "CorrelationReport",
    "correlation_report",
    "top_k",
]


def _paired(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-D and of equal length")
    ok = np.isfinite(x) & np.isfinite(y)
    return x[ok], y[ok]


def _t_pvalue(r: float, n: int) -> float:
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return float(2.0 * sps.t.sf(abs(t), n - 2))


def _product_moment(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0 or syy == 0:
        raise ValueError("correlation undefined for a constant variable")
    r = float(np.dot(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def pearson(x, y) -> tuple[float, float, int]:
    """Product-moment correlation with a two-tailed Student-t p-value.

    Pairs where either value is missing (NaN) are dropped first.

    Returns
    -------
    (r, p, n)
    """
    x, y = _paired(x, y)
    n = x.size
    if n < 3:
        raise ValueError(f"need at least 3 complete pairs, got {n}")
    r = _product_moment(x, y)
    return r, _t_pvalue(r, n), n


def average_ranks(x) -> np.ndarray:
    """Ranks from 1, ties sharing their mean rank."""
    return sps.rankdata(np.asarray(x, dtype=np.float64), method="average")


def spearman(x, y) -> tuple[float, float, int]:
    """Spearman's rho: Pearson on average ranks of the complete pairs."""
    x, y = _paired(x, y)
    if x.size < 3:
        raise ValueError(f"need at least 3 complete pairs, got {x.size}")
    return pearson(average_ranks(x), average_ranks(y))


@dataclass
class CorrelationReport:
    """Pairwise correlations among named variables.

    Undefined cells (constant variable, too few pairs) hold NaN. The
    p-values come from the t approximation, not a permutation test.
    """

    names: list[str]
    r: np.ndarray
    r_p: np.ndarray
    rho: np.ndarray
    rho_p: np.ndarray
    n: np.ndarray

    def annex_rows(self) -> list[list]:
        """Rows in the layout of a combined correlation table.

        Per variable three rows (correlation, two-tailed p, N); Spearman
        above the diagonal, Pearson below.
        """
        k = len(self.names)
        rows = [["variable", "statistic", *self.names]]
        for i, name in enumerate(self.names):
            corr, sig, cnt = [], [], []
            for j in range(k):
                if i == j:
                    corr.append(self.r[i, i])
                    sig.append(math.nan)
                elif j > i:
                    corr.append(self.rho[i, j])
                    sig.append(self.rho_p[i, j])
                else:
                    corr.append(self.r[i, j])
                    sig.append(self.r_p[i, j])
                cnt.append(int(self.n[i, j]))
            rows.append([name, "correlation", *corr])
            rows.append([name, "sig_2tailed", *sig])
            rows.append([name, "n", *cnt])
        return rows


def correlation_report(columns: Mapping[str, Sequence[float]]) -> CorrelationReport:
    """Pearson and Spearman for every pair, missing values dropped pairwise."""
    names = list(columns)
    data = [np.asarray(columns[c], dtype=np.float64) for c in names]
    k = len(names)
    r = np.full((k, k), np.nan)
    r_p = np.full((k, k), np.nan)
    rho = np.full((k, k), np.nan)
    rho_p = np.full((k, k), np.nan)
    n = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        n[i, i] = int(np.isfinite(data[i]).sum())
        if np.unique(data[i][np.isfinite(data[i])]).size > 1:
            r[i, i] = rho[i, i] = 1.0
        for j in range(i + 1, k):
            n[i, j] = n[j, i] = int((np.isfinite(data[i]) & np.isfinite(data[j])).sum())
            try:
                r[i, j], r_p[i, j], _ = pearson(data[i], data[j])
                rho[i, j], rho_p[i, j], _ = spearman(data[i], data[j])
            except ValueError:
                continue
            r[j, i], r_p[j, i] = r[i, j], r_p[i, j]
            rho[j, i], rho_p[j, i] = rho[i, j], rho_p[i, j]
    return CorrelationReport(names, r, r_p, rho, rho_p, n)


def top_k(rows: Sequence[Mapping], field: str, k: int, direction: str = "desc", label: str = "unit") -> list[Mapping]:
    """The ``k`` best rows by ``field``.

    Missing values (None or NaN) are excluded; ties go to the
    alphabetically first label whatever the direction.
    """
    if direction not in ("desc", "asc"):
        raise ValueError("direction must be 'desc' or 'asc'")
    if rows and not any(field in row for row in rows):
        raise KeyError(f"unknown field {field!r}")

    def present(row):
        v = row.get(field)
        return v is not None and not (isinstance(v, float) and math.isnan(v))

    sign = -1 if direction == "desc" else 1
    ranked = sorted((row for row in rows if present(row)), key=lambda row: (sign * row[field], row[label]))
    return ranked[:k]
