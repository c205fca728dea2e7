"""Sparse two-mode matrices and the column profiles every indicator reads.

Rows are the classes (e.g. cited journals or subject categories) and
columns are the units of analysis. Indicators are always computed along
the columns; transpose the matrix to switch direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "TwoModeMatrix",
    "ColumnProfile",
    "CoocMatrix",
    "LoopReport",
    "column_profile",
    "drop_loops",
    "transpose",
    "row_projection",
]


def _check_labels(labels: Sequence[str], axis: str) -> tuple[str, ...]:
    labels = tuple(str(lab) for lab in labels)
    if not labels:
        raise ValueError(f"{axis} axis must have at least one label")
    if len(set(labels)) != len(labels):
        seen = set()
        dupes = sorted({lab for lab in labels if lab in seen or seen.add(lab)})
        raise ValueError(f"duplicate {axis} labels: {dupes[:5]}")
    return labels


class TwoModeMatrix:
    """Nonnegative classes x units matrix with labelled axes.

    Stored as a CSC array so that a column's nonzero cells are a
    contiguous slice. Explicit zeros are removed on construction and
    duplicate coordinates are summed.
    """

    __slots__ = ("row_labels", "col_labels", "_csc")

    def __init__(self, row_labels: Sequence[str], col_labels: Sequence[str], data):
        self.row_labels = _check_labels(row_labels, "row")
        self.col_labels = _check_labels(col_labels, "column")
        shape = (len(self.row_labels), len(self.col_labels))
        if sp.issparse(data):
            csc = sp.csc_array(data, dtype=np.float64)
        else:
            csc = sp.csc_array(np.asarray(data, dtype=np.float64))
        if csc.shape != shape:
            raise ValueError(f"data shape {csc.shape} does not match labels {shape}")
        csc.sum_duplicates()
        if csc.nnz and (np.any(csc.data < 0) or not np.all(np.isfinite(csc.data))):
            raise ValueError("matrix weights must be finite and nonnegative")
        csc.eliminate_zeros()
        csc.sort_indices()
        self._csc = csc

    @classmethod
    def from_cells(
        cls,
        row_labels: Sequence[str],
        col_labels: Sequence[str],
        cells: Mapping[tuple[int, int], float],
    ) -> "TwoModeMatrix":
        """Build from a ``{(row, col): weight}`` mapping."""
        if cells:
            (rows, cols), vals = zip(*cells.keys()), list(cells.values())
        else:
            rows, cols, vals = (), (), ()
        coo = sp.coo_array(
            (np.asarray(vals, dtype=np.float64), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=(len(row_labels), len(col_labels)),
        )
        return cls(row_labels, col_labels, coo)

    @property
    def shape(self) -> tuple[int, int]:
        return self._csc.shape

    @property
    def nnz(self) -> int:
        return self._csc.nnz

    @property
    def csc(self) -> sp.csc_array:
        """The underlying CSC array. Treat as read-only."""
        return self._csc

    def cells(self) -> dict[tuple[int, int], float]:
        coo = self._csc.tocoo()
        return {(int(i), int(j)): float(v) for i, j, v in zip(coo.row, coo.col, coo.data)}

    def toarray(self) -> np.ndarray:
        return self._csc.toarray()

    def total(self) -> float:
        return float(self._csc.data.sum())

    def __eq__(self, other):
        if not isinstance(other, TwoModeMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.cells() == other.cells()
        )

    def __repr__(self):
        r, u = self.shape
        return f"TwoModeMatrix({r} rows x {u} columns, nnz={self.nnz})"


@dataclass(frozen=True, eq=False)
class ColumnProfile:
    """Nonzero entries of one column.

    ``indices`` are class (row) indices in ascending order and ``values``
    the matching positive weights.
    """

    unit_label: str
    indices: np.ndarray
    values: np.ndarray

    @classmethod
    def from_dense(cls, column, unit_label: str = "") -> "ColumnProfile":
        """Profile of a dense column vector; zeros are dropped."""
        column = np.asarray(column, dtype=np.float64)
        if np.any(column < 0):
            raise ValueError("column values must be nonnegative")
        idx = np.flatnonzero(column)
        return cls(unit_label, idx.astype(np.int64), column[idx])

    @property
    def n_c(self) -> int:
        return int(self.indices.size)

    @property
    def total(self) -> float:
        return float(self.values.sum()) if self.values.size else 0.0

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(int(i), float(v)) for i, v in zip(self.indices, self.values)]

    def proportions(self) -> np.ndarray:
        if not self.values.size:
            return np.zeros(0)
        return self.values / self.values.sum()


def column_profile(m: TwoModeMatrix, col: int) -> ColumnProfile:
    """Return the nonzero cells of column ``col`` as a profile."""
    n_cols = m.shape[1]
    if not 0 <= col < n_cols:
        raise IndexError(f"column index {col} out of range for {n_cols} columns")
    csc = m.csc
    lo, hi = csc.indptr[col], csc.indptr[col + 1]
    return ColumnProfile(
        m.col_labels[col],
        csc.indices[lo:hi].astype(np.int64),
        csc.data[lo:hi].copy(),
    )


@dataclass(frozen=True)
class LoopReport:
    count: int
    weight: float


def drop_loops(m: TwoModeMatrix) -> tuple[TwoModeMatrix, LoopReport]:
    """Remove cells whose row label equals their column label.

    The two axes must carry the same label set (in any order), as for a
    1-mode network converted to two-mode form.
    """
    if set(m.row_labels) != set(m.col_labels):
        raise ValueError("drop_loops needs a square matrix with matching row and column labels")
    col_of = {lab: j for j, lab in enumerate(m.col_labels)}
    loop_col = np.array([col_of[lab] for lab in m.row_labels], dtype=np.int64)
    coo = m.csc.tocoo()
    is_loop = loop_col[coo.row] == coo.col
    report = LoopReport(int(is_loop.sum()), float(coo.data[is_loop].sum()))
    keep = ~is_loop
    kept = sp.coo_array((coo.data[keep], (coo.row[keep], coo.col[keep])), shape=m.shape)
    return TwoModeMatrix(m.row_labels, m.col_labels, kept), report


def transpose(m: TwoModeMatrix) -> TwoModeMatrix:
    """Swap rows and columns, labels included."""
    return TwoModeMatrix(m.col_labels, m.row_labels, m.csc.T)


class CoocMatrix:
    """Symmetric class x class co-occurrence matrix (dense)."""

    __slots__ = ("labels", "values")

    def __init__(self, labels: Sequence[str], values):
        self.labels = _check_labels(labels, "co-occurrence")
        values = np.array(values, dtype=np.float64)
        n = len(self.labels)
        if values.shape != (n, n):
            raise ValueError(f"co-occurrence shape {values.shape} does not match {n} labels")
        if np.any(values < 0) or not np.array_equal(values, values.T):
            raise ValueError("co-occurrence matrix must be symmetric and nonnegative")
        values.setflags(write=False)
        self.values = values

    def __repr__(self):
        return f"CoocMatrix({len(self.labels)} classes)"


def row_projection(m: TwoModeMatrix) -> CoocMatrix:
    """Project onto the rows: ``C = M @ M.T``.

    Only the upper triangle of the sparse product is kept and mirrored,
    so the result is exactly symmetric.
    """
    csr = m.csc.tocsr()
    prod = (csr @ csr.T).toarray()
    upper = np.triu(prod)
    return CoocMatrix(m.row_labels, upper + np.triu(prod, 1).T)
