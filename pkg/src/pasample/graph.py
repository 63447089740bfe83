"""Simple undirected graphs with degree bookkeeping.

Vertices are identified by birth order (0-based). Graphs grow one vertex at
a time via ``add_newborn``; the canonical starting points are complete
graphs and the wheel-minus-arc family used by the systematic-design
asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class Graph:
    """Simple undirected graph: no self-loops, no duplicate edges."""

    __slots__ = ("_adj",)

    def __init__(self, vertex_count: int = 0):
        self._adj: list[set[int]] = [set() for _ in range(vertex_count)]

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self._adj]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj) // 2

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(len(self._adj)):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        n = len(self._adj)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
        if v in self._adj[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def add_newborn(self, targets: Iterable[int]) -> int:
        """Add a new vertex connected to ``targets``; return its id.

        Targets must be distinct existing vertices.
        """
        targets = list(targets)
        n = len(self._adj)
        if len(set(targets)) != len(targets):
            raise ValueError(f"duplicate targets {sorted(targets)}")
        for t in targets:
            if not (0 <= t < n):
                raise ValueError(f"target {t} out of range for {n} vertices")
        self._adj.append(set())
        for t in targets:
            self._adj[n].add(t)
            self._adj[t].add(n)
        return n

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = [set(nbrs) for nbrs in self._adj]
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, edges={self.edge_count})"

    def edge_list_lines(self) -> list[str]:
        """Edge list as "u v" lines, u < v, sorted by (u, v)."""
        return [f"{u} {v}" for u, v in self.edges()]

    def write_edge_list(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            for line in self.edge_list_lines():
                fh.write(line + "\n")


def complete_graph(k: int) -> Graph:
    """Complete graph on k >= 1 vertices."""
    if k < 1:
        raise ValueError(f"complete graph needs k >= 1, got {k}")
    g = Graph(k)
    for u in range(k):
        for v in range(u + 1, k):
            g.add_edge(u, v)
    return g


def wheel_minus_arc(t: int) -> Graph:
    """Wheel graph on t vertices missing one rim edge, center first-born.

    Grown along the m=2 path where newborn i (i >= 2) connects to
    {0, i-1}: vertex 0 is the hub with degree t-1, vertices 1 and t-1 are
    the rim endpoints with degree 2, all other rim vertices have degree 3.
    """
    if t < 4:
        raise ValueError(f"wheel-minus-arc needs t >= 4, got {t}")
    g = complete_graph(2)
    for i in range(2, t):
        g.add_newborn([0, i - 1])
    return g


class WeightedProjection:
    """Complete weighted graph of pairwise neighbor-set Jaccard indices.

    Only nonzero weights are stored; absent pairs weigh 0.
    """

    __slots__ = ("vertex_count", "weights")

    def __init__(self, vertex_count: int, weights: dict[tuple[int, int], Fraction]):
        self.vertex_count = vertex_count
        self.weights = weights

    def weight(self, i: int, j: int) -> Fraction:
        if i == j:
            raise ValueError("projection weights are defined for distinct pairs")
        key = (i, j) if i < j else (j, i)
        return self.weights.get(key, Fraction(0))

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write("i,j,weight\n")
            for (i, j) in sorted(self.weights):
                fh.write(f"{i},{j},{float(self.weights[(i, j)]):.12g}\n")


def jaccard_projection(g: Graph) -> WeightedProjection:
    """Pairwise Jaccard indices of open neighborhoods.

    w_ij = |N(i) & N(j)| / |N(i) | N(j)| with N the open neighborhood;
    pairs whose neighborhoods are both empty weigh 0.
    """
    n = g.vertex_count
    if n < 2:
        raise ValueError("projection needs at least 2 vertices")
    # Count common neighbors: each vertex v contributes one shared neighbor
    # to every pair within N(v).
    common: dict[tuple[int, int], int] = {}
    for v in range(n):
        nbrs = sorted(g.neighbors(v))
        for a_idx in range(len(nbrs)):
            for b_idx in range(a_idx + 1, len(nbrs)):
                key = (nbrs[a_idx], nbrs[b_idx])
                common[key] = common.get(key, 0) + 1
    degs = g.degrees
    weights = {
        (i, j): Fraction(c, degs[i] + degs[j] - c) for (i, j), c in common.items()
    }
    return WeightedProjection(n, weights)
