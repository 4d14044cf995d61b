"""Simple undirected graphs, their canonical matrices and component structure.

Vertices are 0-indexed. Edges are kept as a sorted tuple of ``(u, v)`` pairs
with ``u < v`` so that iteration order never depends on how a graph was built.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import InputError

RANDOM_ALGORITHM = "erdos-renyi/numpy-PCG64/lexicographic-pairs"


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.n!r}")
        canon = set()
        for pair in self.edges:
            try:
                u, v = (int(x) for x in pair)
            except (TypeError, ValueError):
                raise InputError(f"edge {pair!r} is not a vertex pair") from None
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            for x in (u, v):
                if not 0 <= x < self.n:
                    raise InputError(f"edge ({u}, {v}) has endpoint {x} outside [0, {self.n})")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, silently merging duplicate (or reversed) edges."""
    return Graph(n, tuple(pairs))


# -- generators ---------------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star(n: int) -> Graph:
    """Vertex 0 joined to every other vertex."""
    return Graph(n, tuple((0, i) for i in range(1, n)))


def empty(n: int) -> Graph:
    return Graph(n)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Place ``g2`` after ``g1``; its vertices are shifted by ``g1.n``."""
    off = g1.n
    return Graph(g1.n + g2.n, g1.edges + tuple((u + off, v + off) for u, v in g2.edges))


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p).

    Pairs ``(u, v)``, ``u < v``, are visited in lexicographic order and each is
    kept when the next draw of ``numpy.random.Generator(PCG64(seed)).random()``
    is below ``p``. The output is reproducible bit for bit for a given seed.
    """
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p!r}")
    if n < 1:
        raise InputError(f"vertex count must be a positive integer, got {n!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = list(itertools.combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return Graph(n, tuple(pr for pr, x in zip(pairs, draws) if x < p))


def random_connected_graph(n: int, p: float, seed: int, max_tries: int = 10_000) -> Graph:
    """First connected draw of ``random_graph(n, p, seed + i)`` for i = 0, 1, ..."""
    for i in range(max_tries):
        g = random_graph(n, p, seed + i)
        if connected_components(g).count == 1:
            return g
    raise InputError(f"no connected G({n}, {p}) found in {max_tries} draws from seed {seed}")


# -- matrices -----------------------------------------------------------------

def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(degree_info(g).degrees.astype(np.float64))


def laplacian_matrix(g: Graph) -> np.ndarray:
    return degree_matrix(g) - adjacency_matrix(g)


# -- components and degrees ----------------------------------------------------

class ComponentPartition(NamedTuple):
    count: int
    labels: tuple[int, ...]

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in enumerate(self.labels):
            out[c].append(v)
        return out


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def connected_components(g: Graph) -> ComponentPartition:
    """Component labels, numbered by each component's smallest vertex."""
    ds = DisjointSet(g.n)
    for u, v in g.edges:
        ds.union(u, v)
    ids: dict[int, int] = {}
    labels = []
    for v in range(g.n):
        labels.append(ids.setdefault(ds.find(v), len(ids)))
    return ComponentPartition(len(ids), tuple(labels))


def induced_subgraph(g: Graph, vertices: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    return Graph(len(vertices), tuple((index[u], index[v]) for u, v in g.edges if u in index and v in index))


class DegreeInfo(NamedTuple):
    degrees: np.ndarray
    delta: int
    Delta: int


def degree_info(g: Graph) -> DegreeInfo:
    deg = np.zeros(g.n, dtype=np.int64)
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return DegreeInfo(deg, int(deg.min()), int(deg.max()))


def is_regular(g: Graph) -> tuple[bool, int | None]:
    """``(True, r)`` when every vertex has degree ``r``, else ``(False, None)``."""
    info = degree_info(g)
    if info.delta == info.Delta:
        return True, info.delta
    return False, None


def has_null_vertex(g: Graph) -> bool:
    return degree_info(g).delta == 0
