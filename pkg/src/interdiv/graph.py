"""One-mode network statistics: betweenness, components, descriptives.

Shortest paths are hop counts throughout; weights are carried along for
the totals but never used as lengths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .matrix import TwoModeMatrix
from .pajek import PajekNetwork

__all__ = [
    "Graph",
    "Descriptives",
    "betweenness",
    "normalize_betweenness",
    "largest_component",
    "descriptives",
]

BC_MODES = ("undirected", "directed")


class Graph:
    """Weighted graph on nodes ``0..n-1``.

    ``succ[u]`` maps each successor to the summed weight of the links
    ``u -> v``. For an undirected graph ``succ`` is kept symmetric. Loops
    are stored but skipped by every path computation.
    """

    __slots__ = ("labels", "directed", "succ")

    def __init__(self, labels: Sequence[str], links: Iterable[tuple[int, int, float]] = (), directed: bool = True):
        self.labels = tuple(labels)
        self.directed = directed
        self.succ: list[dict[int, float]] = [{} for _ in self.labels]
        n = len(self.labels)
        for u, v, w in links:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"link ({u}, {v}) outside 0..{n - 1}")
            self.succ[u][v] = self.succ[u].get(v, 0.0) + w
            if not directed and u != v:
                self.succ[v][u] = self.succ[v].get(u, 0.0) + w

    @classmethod
    def from_network(cls, net: PajekNetwork, directed: bool = True) -> "Graph":
        """Arcs become ``u -> v``; edges become both directions."""
        links = []
        for s, t, w, kind in net.links:
            links.append((s - 1, t - 1, w))
            if directed and kind == "edge" and s != t:
                links.append((t - 1, s - 1, w))
        return cls(net.labels, links, directed)

    @classmethod
    def from_matrix(cls, m: TwoModeMatrix, directed: bool = True) -> "Graph":
        """Square, label-aligned matrix read as an adjacency matrix."""
        if m.row_labels != m.col_labels:
            raise ValueError("adjacency matrix needs identical row and column labels")
        return cls(m.row_labels, ((i, j, w) for (i, j), w in m.cells().items()), directed)

    @property
    def n(self) -> int:
        return len(self.labels)

    def links(self) -> list[tuple[int, int, float]]:
        """Stored links; undirected graphs list each pair once (u <= v)."""
        out = []
        for u, nbrs in enumerate(self.succ):
            for v, w in sorted(nbrs.items()):
                if self.directed or u <= v:
                    out.append((u, v, w))
        return out

    def neighbors(self, directed: bool) -> list[list[int]]:
        """Binary adjacency lists without loops.

        With ``directed=False`` arcs are followed in both directions.
        """
        if directed:
            return [sorted(v for v in nbrs if v != u) for u, nbrs in enumerate(self.succ)]
        sym: list[set[int]] = [set() for _ in self.labels]
        for u, nbrs in enumerate(self.succ):
            for v in nbrs:
                if v != u:
                    sym[u].add(v)
                    sym[v].add(u)
        return [sorted(s) for s in sym]

    def subgraph(self, nodes: Iterable[int]) -> "Graph":
        keep = sorted(set(nodes))
        pos = {u: k for k, u in enumerate(keep)}
        links = []
        for u in keep:
            for v, w in self.succ[u].items():
                if v in pos and (self.directed or u <= v):
                    links.append((pos[u], pos[v], w))
        return Graph([self.labels[u] for u in keep], links, self.directed)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph({self.n} nodes, {len(self.links())} links, {kind})"


def betweenness(g: Graph, mode: str = "undirected", exact: bool = False) -> list:
    """Raw shortest-path betweenness (Brandes' accumulation).

    Parameters
    ----------
    g : Graph
    mode : {"undirected", "directed"}
        Binary adjacency; ``"undirected"`` ignores arc direction and counts
        each unordered pair once.
    exact : bool
        Accumulate with :class:`fractions.Fraction` instead of floats.

    Returns
    -------
    list
        One value per node.
    """
    if mode not in BC_MODES:
        raise ValueError(f"mode must be one of {BC_MODES}")
    adj = g.neighbors(directed=mode == "directed")
    n = g.n
    zero = Fraction(0) if exact else 0.0
    bc = [zero] * n
    for s in range(n):
        stack = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [zero] * n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                if exact:
                    delta[v] += Fraction(sigma[v], sigma[w]) * (1 + delta[w])
                else:
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    if mode == "undirected":
        bc = [b / 2 for b in bc]
    return bc


def normalize_betweenness(raw: Sequence, n: int, mode: str = "undirected") -> list[float]:
    """Scale raw counts to [0, 1] by the number of possible pairs."""
    if n < 3:
        raise ValueError("normalised betweenness needs at least 3 nodes")
    pairs = (n - 1) * (n - 2)
    scale = 2.0 / pairs if mode == "undirected" else 1.0 / pairs
    return [float(b) * scale for b in raw]


def _components(g: Graph) -> list[list[int]]:
    adj = g.neighbors(directed=False)
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest weakly connected component.

    Ties go to the component holding the smallest node index.
    """
    if g.n == 0:
        raise ValueError("empty graph has no components")
    # components come out ordered by their smallest node
    best = max(_components(g), key=len)
    return g.subgraph(best)


@dataclass(frozen=True)
class Descriptives:
    nodes: int
    links: int
    loops: int
    total_weight: float
    density: float
    mean_degree: float
    clustering: float
    avg_distance: float
    max_distance: int


def _clustering(adj: list[list[int]]) -> float:
    sets = [set(a) for a in adj]
    total = 0.0
    for u, nbrs in enumerate(adj):
        k = len(nbrs)
        if k < 2:
            continue
        closed = sum(len(sets[v] & sets[u]) for v in nbrs) / 2
        total += closed / (k * (k - 1) / 2)
    return total / len(adj) if adj else 0.0


def _distances(adj: list[list[int]]) -> tuple[float, int]:
    total = pairs = longest = 0
    for s in range(len(adj)):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        for t, dd in dist.items():
            if t != s:
                total += dd
                pairs += 1
                longest = max(longest, dd)
    return (total / pairs if pairs else 0.0), longest


def descriptives(g: Graph) -> Descriptives:
    """Summary statistics of a network.

    ``links`` counts stored links (loops included), so ``mean_degree`` is
    ``2 * links / n``. Density uses the non-loop links over ``n(n-1)``
    ordered pairs, doubled for undirected graphs. Clustering is the mean
    local coefficient of the undirected binary graph with nodes of degree
    below 2 counting as 0. Distances are hop counts over the largest
    component, again undirected.
    """
    stored = g.links()
    loops = sum(1 for u, v, _ in stored if u == v)
    n_links = len(stored)
    n = g.n
    proper = n_links - loops
    if n > 1:
        density = (proper if g.directed else 2 * proper) / (n * (n - 1))
    else:
        density = 0.0
    adj = g.neighbors(directed=False)
    if n:
        lc = largest_component(g)
        avg_d, max_d = _distances(lc.neighbors(directed=False))
    else:
        avg_d, max_d = 0.0, 0
    return Descriptives(
        nodes=n,
        links=n_links,
        loops=loops,
        total_weight=float(sum(w for _, _, w in stored)),
        density=density,
        mean_degree=2 * n_links / n if n else 0.0,
        clustering=_clustering(adj),
        avg_distance=avg_d,
        max_distance=max_d,
    )
