"""Diversity indicators computed over one column profile.

Three components are kept apart:

* variety: ``n_c`` classes in use, or ``n_c / N`` relative to the ``N``
  classes available;
* balance: ``1 - Gini`` over the nonzero values;
* disparity: mean distance between the classes in use.

DIV is their product. Rao-Stirling diversity (RS) mixes variety and
balance through ``p_i * p_j`` instead, and is provided together with the
usual dual-concept indices (Shannon, Gini-Simpson) for comparison.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .matrix import CoocMatrix, ColumnProfile
from .similarity import DisparityMatrix

__all__ = [
    "RSParams",
    "IndicatorRow",
    "gini",
    "gini_bruteforce",
    "shannon",
    "gini_simpson",
    "variety",
    "avg_disparity",
    "rao_stirling",
    "true_diversity",
    "div_indicator",
    "coherence",
    "indicator_row",
]

GINI_SUPPORTS = ("nonzero", "all")

# tolerance on sum(p) == 1
_PROB_TOL = 1e-9
# rows per block when walking the lower triangle of a column's submatrix
_BLOCK = 512


@dataclass(frozen=True)
class RSParams:
    """Exponents of generalised Rao-Stirling diversity.

    ``alpha`` applies to the distances, ``beta`` to ``p_i * p_j``.
    """

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if not (self.alpha >= 0 and self.beta >= 0):
            raise ValueError("alpha and beta must be nonnegative")


@dataclass(frozen=True)
class IndicatorRow:
    unit_label: str
    rs: float
    true_diversity: float
    div: float
    gini: float
    gini_simpson: float
    shannon: float
    disparity: float
    variety_rel: float
    variety_abs: int
    n_classes_available: int

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def astuple(self) -> tuple:
        return astuple(self)


def _gini_sorted(xs: np.ndarray, n_zeros: int = 0) -> float:
    # xs ascending and positive-sum; zeros sit in front of it.
    # Subtracting the minimum leaves the numerator unchanged (the rank
    # weights sum to zero) and makes uniform inputs give exactly 0.
    n = xs.size + n_zeros
    if n == 1:
        return 0.0
    ranks = np.arange(n_zeros + 1, n + 1, dtype=np.float64)
    base = 0.0 if n_zeros else xs[0]
    num = np.dot(2.0 * ranks - n - 1.0, xs - base)
    return max(float(num / (n * xs.sum())), 0.0)


def _as_values(values) -> np.ndarray:
    xs = np.asarray(values, dtype=np.float64).ravel()
    if xs.size == 0:
        raise ValueError("Gini coefficient of an empty sequence")
    if np.any(xs < 0) or not np.all(np.isfinite(xs)):
        raise ValueError("Gini coefficient needs finite nonnegative values")
    if not np.any(xs > 0):
        raise ValueError("Gini coefficient of an all-zero sequence")
    return xs


def gini(values) -> float:
    """Gini coefficient via the rank formula.

    Values are sorted ascending and
    ``G = sum((2i - n - 1) * x_i) / (n * sum(x))`` with ranks ``i`` from 1.

    Parameters
    ----------
    values : array_like
        Nonnegative values, at least one positive. Indicators pass only
        the nonzero cells of a column here.

    Returns
    -------
    float
        In [0, 1); 0 for a single value or a perfectly even sequence.
    """
    return _gini_sorted(np.sort(_as_values(values)))


def gini_bruteforce(values) -> float:
    """Gini as mean absolute difference, ``sum|x_i - x_j| / (2 n^2 mean)``."""
    xs = _as_values(values)
    diffs = np.abs(xs[:, None] - xs[None, :]).sum()
    return float(diffs / (2.0 * xs.size * xs.sum()))


def _check_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64).ravel()
    if p.size == 0 or np.any(p <= 0) or abs(p.sum() - 1.0) > _PROB_TOL:
        raise ValueError("expected strictly positive proportions summing to 1")
    return p


def shannon(p) -> float:
    """Shannon entropy in nats."""
    p = _check_distribution(p)
    return float(-np.dot(p, np.log(p))) + 0.0


def gini_simpson(p) -> float:
    """``1 - sum(p_i^2)``."""
    p = _check_distribution(p)
    return 1.0 - float(np.dot(p, p))


def variety(profile: ColumnProfile, n_available: int) -> tuple[int, float]:
    """Absolute and relative variety, ``(n_c, n_c / N)``."""
    n_c = profile.n_c
    if n_available <= 0:
        raise ValueError("number of available classes must be positive")
    if n_c > n_available:
        raise ValueError(f"{n_c} classes in use exceeds {n_available} available")
    return n_c, n_c / n_available


def _dmat(d) -> np.ndarray:
    return d.d if isinstance(d, DisparityMatrix) else np.asarray(d, dtype=np.float64)


def _check_indices(idx: np.ndarray, dm: np.ndarray) -> None:
    if idx.size and (idx.min() < 0 or idx.max() >= dm.shape[0]):
        raise IndexError("profile refers to a class outside the disparity matrix")


def _lower_sums(idx, p, dm, params: RSParams | None):
    """Sums over pairs i > j of the present classes.

    Returns ``(sum d_ij, sum d_ij^alpha (p_i p_j)^beta)``; the second is
    skipped when ``params`` is None. Walks row blocks so memory stays
    bounded for columns with thousands of classes.
    """
    n = idx.size
    d_sum = 0.0
    rs_sum = 0.0
    for a in range(0, n, _BLOCK):
        b = min(a + _BLOCK, n)
        sub = np.tril(dm[np.ix_(idx[a:b], idx[:b])], k=a - 1)
        d_sum += float(sub.sum())
        if params is None:
            continue
        if params.alpha == 1 and params.beta == 1:
            rs_sum += float(np.dot(p[a:b], sub @ p[:b]))
            continue
        pp = np.outer(p[a:b], p[:b])
        mask = np.tril(np.ones_like(pp, dtype=bool), k=a - 1)
        full = dm[np.ix_(idx[a:b], idx[:b])]
        terms = np.power(full, params.alpha) * np.power(pp, params.beta)
        rs_sum += float(terms[mask].sum())
    return d_sum, rs_sum


def avg_disparity(profile: ColumnProfile, d) -> float:
    """Mean distance over ordered pairs of distinct classes in use.

    0 when fewer than two classes are present.
    """
    dm = _dmat(d)
    _check_indices(profile.indices, dm)
    n_c = profile.n_c
    if n_c < 2:
        return 0.0
    d_sum, _ = _lower_sums(profile.indices, None, dm, None)
    return 2.0 * d_sum / (n_c * (n_c - 1))


def rao_stirling(profile: ColumnProfile, d, params: RSParams | None = None) -> float:
    """Rao-Stirling diversity ``sum_{i != j} d_ij^alpha (p_i p_j)^beta``.

    Only classes present in the column enter the sum. The lower triangle
    is summed and doubled.
    """
    params = params or RSParams()
    dm = _dmat(d)
    _check_indices(profile.indices, dm)
    if profile.n_c < 2:
        return 0.0
    _, rs_sum = _lower_sums(profile.indices, profile.proportions(), dm, params)
    return 2.0 * rs_sum


def true_diversity(rs: float) -> float:
    """``1 / (1 - RS)``; NaN (missing) when ``rs >= 1``."""
    if not rs < 1:
        return math.nan
    return 1.0 / (1.0 - rs)


def _balance_gini(profile: ColumnProfile, n_rows: int, gini_support: str) -> float:
    if gini_support not in GINI_SUPPORTS:
        raise ValueError(f"gini_support must be one of {GINI_SUPPORTS}")
    xs = np.sort(profile.values)
    if gini_support == "all":
        if n_rows < profile.n_c:
            raise ValueError("column has more classes than the matrix has rows")
        return _gini_sorted(xs, n_rows - profile.n_c)
    return _gini_sorted(xs)


def div_indicator(profile: ColumnProfile, d, n_available: int, gini_support: str = "nonzero") -> float:
    """DIV: relative variety x (1 - Gini) x mean disparity.

    Each factor is bounded by [0, 1], so DIV is as well. Columns with fewer
    than two classes score 0 since the disparity factor vanishes.
    """
    dm = _dmat(d)
    n_c, rel = variety(profile, n_available)
    if n_c < 2:
        _check_indices(profile.indices, dm)
        return 0.0
    g = _balance_gini(profile, dm.shape[0], gini_support)
    return rel * (1.0 - g) * avg_disparity(profile, dm)


def coherence(cooc: CoocMatrix, d: DisparityMatrix) -> float:
    """Observed-pair distance ``sum_{i != j} p_ij d_ij``.

    ``p_ij`` is the off-diagonal co-occurrence normalised to sum 1.
    """
    if tuple(cooc.labels) != tuple(d.labels):
        raise ValueError("co-occurrence and disparity matrices have different labels")
    off = cooc.values.copy()
    np.fill_diagonal(off, 0.0)
    mass = off.sum()
    if mass == 0:
        return 0.0
    return float((off * d.d).sum() / mass)


def indicator_row(
    profile: ColumnProfile,
    d,
    n_available: int,
    params: RSParams | None = None,
    gini_support: str = "nonzero",
) -> IndicatorRow:
    """Every indicator for one column.

    An all-zero column yields zeros everywhere except ``true_diversity``,
    which is 1.
    """
    params = params or RSParams()
    dm = _dmat(d)
    _check_indices(profile.indices, dm)
    n_c, rel = variety(profile, n_available)
    if n_c == 0:
        return IndicatorRow(profile.unit_label, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0, n_available)

    p = profile.proportions()
    g = _balance_gini(profile, dm.shape[0], gini_support)
    if n_c > 1:
        d_sum, rs_sum = _lower_sums(profile.indices, p, dm, params)
        disp = 2.0 * d_sum / (n_c * (n_c - 1))
        rs = 2.0 * rs_sum
    else:
        disp = rs = 0.0
    return IndicatorRow(
        unit_label=profile.unit_label,
        rs=rs,
        true_diversity=true_diversity(rs),
        div=rel * (1.0 - g) * disp,
        gini=g,
        gini_simpson=1.0 - float(np.dot(p, p)),
        shannon=float(-np.dot(p, np.log(p))) + 0.0,
        disparity=disp,
        variety_rel=rel,
        variety_abs=n_c,
        n_classes_available=n_available,
    )
