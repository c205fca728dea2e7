"""Reader and writer for Pajek ``.net`` files.

Supported sections are ``*Vertices n [r]`` (``r`` row vertices marks a
two-mode network), ``*Arcs``, ``*Edges`` and ``*Matrix``. A leading
``*Network`` line is tolerated and ignored. Blank lines and lines starting
with ``%`` are skipped.

Labels may be quoted or bare on input; output always quotes them.
"""

from __future__ import annotations

import logging
import math
import re
from collections import Counter
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp

from .matrix import CoocMatrix, TwoModeMatrix

__all__ = [
    "Link",
    "PajekNetwork",
    "PajekError",
    "parse_net",
    "write_net",
    "read_net",
    "save_net",
    "to_two_mode",
    "network_from_matrix",
    "network_from_cooc",
    "cooc_from_network",
]

logger = logging.getLogger(__name__)

_VERTEX_RE = re.compile(r'^\s*(\S+)(?:\s+(?:"([^"]*)"|(\S+)))?')


class PajekError(ValueError):
    """Malformed Pajek input. ``lineno`` is 1-based, or None."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


class Link(NamedTuple):
    source: int
    target: int
    weight: float = 1.0
    kind: str = "arc"


class PajekNetwork:
    """A parsed Pajek network.

    Vertex ids are implicit: ``labels[k]`` belongs to vertex ``k + 1``.
    Equality is semantic, i.e. independent of link order.
    """

    __slots__ = ("labels", "mode_split", "links")

    def __init__(self, labels: Sequence[str], links: Iterable[Link] = (), mode_split: int | None = None):
        self.labels = tuple(labels)
        self.mode_split = mode_split
        self.links = tuple(Link(int(s), int(t), float(w), k) for s, t, w, k in links)
        self.validate()

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> list[tuple[int, str]]:
        return [(k + 1, lab) for k, lab in enumerate(self.labels)]

    @property
    def is_two_mode(self) -> bool:
        return self.mode_split is not None

    def validate(self) -> None:
        n, r = self.n, self.mode_split
        if r is not None and not 0 < r < n:
            raise PajekError(f"row-vertex count {r} must satisfy 0 < r < {n}")
        for s, t, w, kind in self.links:
            if kind not in ("arc", "edge"):
                raise PajekError(f"unknown link kind {kind!r}")
            if not (1 <= s <= n and 1 <= t <= n):
                raise PajekError(f"link {s} {t} references an unknown vertex")
            if not w >= 0 or not math.isfinite(w):
                raise PajekError(f"link {s} {t} has invalid weight {w}")
            if r is not None and not s <= r < t:
                raise PajekError(f"link {s} {t} violates the two-mode split at {r}")

    def __eq__(self, other):
        if not isinstance(other, PajekNetwork):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.mode_split == other.mode_split
            and Counter(self.links) == Counter(other.links)
        )

    def __repr__(self):
        mode = f", mode_split={self.mode_split}" if self.is_two_mode else ""
        return f"PajekNetwork(n={self.n}, links={len(self.links)}{mode})"


def _parse_weight(token: str, lineno: int) -> float:
    try:
        w = float(token)
    except ValueError:
        raise PajekError(f"cannot read weight {token!r}", lineno) from None
    if not math.isfinite(w):
        raise PajekError(f"weight {token!r} is not finite", lineno)
    if w < 0:
        raise PajekError(f"negative weight {token}", lineno)
    return w


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise PajekError(f"cannot read {what} {token!r}", lineno) from None


def parse_net(text: str) -> PajekNetwork:
    """Parse the text of a ``.net`` file."""
    n = r = None
    labels: list[str | None] = []
    links: list[Link] = []
    section = None
    matrix_row = 0

    def check_ids(s, t, lineno):
        for v in (s, t):
            if not 1 <= v <= n:
                raise PajekError(f"link references unknown vertex {v}", lineno)
        if r is not None and not s <= r < t:
            raise PajekError(f"link {s} {t} violates the two-mode split at {r}", lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("*"):
            if section == "matrix" and matrix_row != (r if r is not None else n):
                raise PajekError(f"*Matrix section ended after {matrix_row} rows", lineno)
            head = line.split()
            key = head[0].lower()
            if key == "*network":
                continue
            if key == "*vertices":
                if n is not None:
                    raise PajekError("repeated *Vertices header", lineno)
                if len(head) not in (2, 3):
                    raise PajekError(f"malformed header {line!r}", lineno)
                n = _parse_int(head[1], "vertex count", lineno)
                if n < 1:
                    raise PajekError("vertex count must be positive", lineno)
                if len(head) == 3:
                    r = _parse_int(head[2], "row-vertex count", lineno)
                    if not 0 < r < n:
                        raise PajekError(f"row-vertex count {r} must satisfy 0 < r < {n}", lineno)
                labels = [None] * n
                section = "vertices"
                continue
            if n is None:
                raise PajekError(f"{head[0]} before *Vertices header", lineno)
            if key in ("*arcs", "*edges"):
                section = key[1:-1]
            elif key == "*matrix":
                section = "matrix"
                matrix_row = 0
            else:
                raise PajekError(f"unsupported section {head[0]}", lineno)
            continue

        if section is None:
            raise PajekError("data before *Vertices header", lineno)

        if section == "vertices":
            m = _VERTEX_RE.match(line)
            vid = _parse_int(m.group(1), "vertex id", lineno)
            if not 1 <= vid <= n:
                raise PajekError(f"vertex id {vid} out of range 1..{n}", lineno)
            if labels[vid - 1] is not None:
                raise PajekError(f"duplicate vertex id {vid}", lineno)
            if m.group(2) is not None:
                label = m.group(2)
            elif m.group(3) is not None:
                label = m.group(3)
            else:
                label = str(vid)
            labels[vid - 1] = label
        elif section in ("arc", "edge"):
            tokens = line.split()
            if len(tokens) < 2:
                raise PajekError(f"malformed link line {line!r}", lineno)
            s = _parse_int(tokens[0], "vertex id", lineno)
            t = _parse_int(tokens[1], "vertex id", lineno)
            check_ids(s, t, lineno)
            w = _parse_weight(tokens[2], lineno) if len(tokens) > 2 else 1.0
            links.append(Link(s, t, w, section))
        else:
            n_rows = r if r is not None else n
            n_cols = n - r if r is not None else n
            if matrix_row >= n_rows:
                raise PajekError(f"*Matrix has more than {n_rows} rows", lineno)
            tokens = line.split()
            if len(tokens) != n_cols:
                raise PajekError(f"*Matrix row has {len(tokens)} values, expected {n_cols}", lineno)
            offset = r if r is not None else 0
            for j, tok in enumerate(tokens):
                w = _parse_weight(tok, lineno)
                if w != 0:
                    links.append(Link(matrix_row + 1, offset + j + 1, w, "arc"))
            matrix_row += 1

    if n is None:
        raise PajekError("missing *Vertices header")
    if section == "matrix" and matrix_row != (r if r is not None else n):
        raise PajekError(f"*Matrix section ended after {matrix_row} rows")
    labels = [str(k + 1) if lab is None else lab for k, lab in enumerate(labels)]
    return PajekNetwork(labels, links, r)


def _format_weight(w: float) -> str:
    if w.is_integer() and abs(w) < 1e15:
        return str(int(w))
    return repr(w)


def write_net(net: PajekNetwork) -> str:
    """Serialise to canonical ``.net`` text (arcs first, then edges)."""
    net.validate()
    header = f"*Vertices {net.n}" if net.mode_split is None else f"*Vertices {net.n} {net.mode_split}"
    out = [header]
    for vid, label in net.vertices:
        if '"' in label or len((label + ".").splitlines()) != 1:
            raise ValueError(f"label {label!r} cannot be written to a Pajek file")
        out.append(f'{vid} "{label}"')
    for kind, title in (("arc", "*Arcs"), ("edge", "*Edges")):
        group = [lk for lk in net.links if lk.kind == kind]
        if group:
            out.append(title)
            out.extend(f"{s} {t} {_format_weight(w)}" for s, t, w, _ in group)
    return "\n".join(out) + "\n"


def read_net(path) -> PajekNetwork:
    """Read a ``.net`` file, decoding as UTF-8 and falling back lossily."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError:
        logger.warning("%s is not valid UTF-8; undecodable bytes replaced", path)
        text = data.decode("utf-8", errors="replace")
    return parse_net(text)


def save_net(net: PajekNetwork, path) -> None:
    Path(path).write_text(write_net(net), encoding="utf-8")


def to_two_mode(net: PajekNetwork) -> TwoModeMatrix:
    """Convert a network to a matrix.

    A two-mode network maps row vertices to rows and column vertices to
    columns. A one-mode network becomes an n x n matrix with the same
    labels on both axes; arcs fill ``(source, target)``, edges fill both
    directions (a loop edge only once). Parallel links are summed.
    """
    rows, cols, vals = [], [], []
    r = net.mode_split
    for s, t, w, kind in net.links:
        if r is not None:
            rows.append(s - 1)
            cols.append(t - 1 - r)
            vals.append(w)
            continue
        rows.append(s - 1)
        cols.append(t - 1)
        vals.append(w)
        if kind == "edge" and s != t:
            rows.append(t - 1)
            cols.append(s - 1)
            vals.append(w)
    if r is not None:
        row_labels, col_labels = net.labels[:r], net.labels[r:]
    else:
        row_labels = col_labels = net.labels
    coo = sp.coo_array(
        (np.asarray(vals, dtype=np.float64), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(len(row_labels), len(col_labels)),
    )
    return TwoModeMatrix(row_labels, col_labels, coo)


def network_from_matrix(m: TwoModeMatrix) -> PajekNetwork:
    """Express a matrix as a two-mode network (rows first, then columns)."""
    r = m.shape[0]
    coo = m.csc.tocsr().tocoo()
    links = [Link(int(i) + 1, r + int(j) + 1, float(w), "arc") for i, j, w in zip(coo.row, coo.col, coo.data)]
    return PajekNetwork(m.row_labels + m.col_labels, links, r)


def network_from_cooc(c: CoocMatrix) -> PajekNetwork:
    """Write a co-occurrence matrix as an undirected network.

    Each unordered pair with a nonzero value becomes one edge; the
    diagonal is kept as loop edges, since cosine needs it.
    """
    vals = c.values
    links = []
    for i, j in zip(*np.nonzero(np.triu(vals))):
        links.append(Link(int(i) + 1, int(j) + 1, float(vals[i, j]), "edge"))
    return PajekNetwork(c.labels, links)


def cooc_from_network(net: PajekNetwork) -> CoocMatrix:
    """Read a one-mode co-occurrence network back into a dense matrix."""
    if net.is_two_mode:
        raise PajekError("co-occurrence network must be one-mode")
    m = to_two_mode(net)
    dense = m.toarray()
    if not np.array_equal(dense, dense.T):
        raise PajekError("co-occurrence network is not symmetric")
    return CoocMatrix(net.labels, dense)
