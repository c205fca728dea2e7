"""Class-by-class (dis)similarity from row co-occurrence."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .matrix import CoocMatrix, TwoModeMatrix, _check_labels

__all__ = [
    "DisparityMatrix",
    "cosine_similarity",
    "jaccard_similarity",
    "disparity_from_similarity",
]

# rounding slack when checking similarities against [0, 1]
_EPS = 1e-12


class DisparityMatrix:
    """Symmetric distances ``d[i, j]`` in [0, 1] with a zero diagonal.

    Built once per dataset and shared read-only by every column.
    """

    __slots__ = ("labels", "d")

    def __init__(self, labels: Sequence[str], d):
        self.labels = _check_labels(labels, "disparity")
        d = np.array(d, dtype=np.float64)
        n = len(self.labels)
        if d.shape != (n, n):
            raise ValueError(f"disparity shape {d.shape} does not match {n} labels")
        if not np.all(np.isfinite(d)) or d.min(initial=0) < 0 or d.max(initial=0) > 1:
            raise ValueError("disparities must lie in [0, 1]")
        if not np.array_equal(d, d.T):
            raise ValueError("disparity matrix must be symmetric")
        if np.any(np.diag(d) != 0):
            raise ValueError("disparity matrix must have a zero diagonal")
        d.setflags(write=False)
        self.d = d

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"DisparityMatrix({len(self.labels)} classes)"


def cosine_similarity(c: CoocMatrix) -> np.ndarray:
    """Cosine between the row vectors whose inner products make up ``c``.

    ``s[i, j] = c[i, j] / sqrt(c[i, i] * c[j, j])``. Rows with a zero norm
    get similarity 0 to everything, themselves included.
    """
    vals = c.values
    diag = np.diag(vals).copy()
    if np.any((diag == 0) & (vals.sum(axis=1) > 0)):
        raise ValueError("co-occurrence matrix has off-diagonal mass on a zero diagonal; loops missing?")
    norm = np.sqrt(np.outer(diag, diag))
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(norm > 0, vals / norm, 0.0)
    np.minimum(s, 1.0, out=s)
    np.fill_diagonal(s, (diag > 0).astype(np.float64))
    return s


def jaccard_similarity(m: TwoModeMatrix) -> np.ndarray:
    """Jaccard index between the binary supports of the rows."""
    b = m.csc.tocsr().astype(bool).astype(np.float64)
    inter = (b @ b.T).toarray()
    size = np.asarray(b.sum(axis=1)).ravel()
    union = size[:, None] + size[None, :] - inter
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(union > 0, inter / union, 0.0)
    return s


def disparity_from_similarity(s, labels: Sequence[str]) -> DisparityMatrix:
    """``d = 1 - s`` off the diagonal, 0 on it."""
    s = np.asarray(s, dtype=np.float64)
    if s.size and (s.min() < -_EPS or s.max() > 1 + _EPS):
        raise ValueError("similarities must lie in [0, 1]")
    d = 1.0 - np.clip(s, 0.0, 1.0)
    np.fill_diagonal(d, 0.0)
    return DisparityMatrix(labels, d)
