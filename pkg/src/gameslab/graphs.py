"""Graphs, random graph models and the random graph process.

Vertices are ``0 .. n-1`` and edges are stored canonically as ``(u, v)``
with ``u < v``.  All randomness goes through :func:`make_rng`, a PCG64
generator; independent streams are split off a master seed with
:func:`derive_seed`, so trial ``i`` of a run seeded with ``master`` always
sees the stream seeded by ``derive_seed(master, i)``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, TextIO

import numpy as np

Edge = tuple[int, int]


def canon_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {(u, v)} is not canonical for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(canon_edge(u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges in sorted order; the index of an edge here is its board index."""
        return tuple(sorted(self.edges))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edge_list)}

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nbrs: list[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return canon_edge(u, v) in self.edges

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Same vertex set, edge set replaced."""
        return Graph.from_edges(self.n, edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0 .. len(vertices)-1`` in sorted order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        return Graph.from_edges(
            len(vs), ((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos)
        )

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        """Delete edges at ``vertices``; the vertex labels are kept."""
        gone = set(vertices)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] not in gone and e[1] not in gone))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# seeds


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def derive_seed(master: int, *keys: int) -> int:
    """Child seed for the stream addressed by ``keys`` under ``master``.

    Uses numpy's SeedSequence hashing, so the result does not depend on the
    order in which streams are requested.
    """
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# constructors


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete_graph needs n >= 1")
    return Graph(n, frozenset(combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices with centre 0."""
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def wheel_graph(rim: int) -> Graph:
    """Hub 0 joined to the rim cycle ``1 .. rim``."""
    if rim < 3:
        raise ValueError("wheel rim must have length >= 3")
    spokes = [(0, i) for i in range(1, rim + 1)]
    rim_edges = [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph.from_edges(rim + 1, spokes + rim_edges)


def complete_minus_edge(n: int) -> Graph:
    """K_n with the edge (n-2, n-1) removed."""
    g = complete_graph(n)
    return Graph(n, g.edges - {(n - 2, n - 1)})


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def gnp(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph G(n, p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    pairs = list(combinations(range(n), 2))
    keep = make_rng(seed).random(len(pairs)) < p
    return Graph(n, frozenset(e for e, k in zip(pairs, keep) if k))


def gnm(n: int, M: int, seed: int) -> Graph:
    """Uniform random graph G(n, M), by partial Fisher-Yates over E(K_n)."""
    pairs = list(combinations(range(n), 2))
    if not 0 <= M <= len(pairs):
        raise ValueError(f"M must lie in [0, {len(pairs)}] for n={n}, got {M}")
    rng = make_rng(seed)
    for i in range(M):
        j = int(rng.integers(i, len(pairs)))
        pairs[i], pairs[j] = pairs[j], pairs[i]
    return Graph(n, frozenset(pairs[:M]))


# ---------------------------------------------------------------------------
# graph process


@dataclass(frozen=True)
class GraphProcess:
    n: int
    order: tuple[Edge, ...]

    def __post_init__(self):
        if len(self.order) != self.n * (self.n - 1) // 2 or set(self.order) != set(
            combinations(range(self.n), 2)
        ):
            raise ValueError("order must list every edge of K_n exactly once")

    def __len__(self) -> int:
        return len(self.order)


def graph_process(n: int, seed: int) -> GraphProcess:
    if n < 2:
        raise ValueError("graph process needs n >= 2")
    pairs = list(combinations(range(n), 2))
    perm = make_rng(seed).permutation(len(pairs))
    return GraphProcess(n, tuple(pairs[i] for i in perm))


def prefix(process: GraphProcess, i: int) -> Graph:
    if not 0 <= i <= len(process.order):
        raise ValueError(f"prefix index {i} outside [0, {len(process.order)}]")
    return Graph(process.n, frozenset(process.order[:i]))


def hitting_time(
    process: GraphProcess,
    prop: Callable[[Graph], bool],
    method: str = "bisect",
) -> int:
    """Smallest ``i`` with ``prop(prefix(process, i))`` for a monotone ``prop``."""
    m = len(process.order)
    if not prop(prefix(process, m)):
        raise ValueError("never hit: property is false on K_n")
    if method == "scan":
        for i in range(m + 1):
            if prop(prefix(process, i)):
                return i
    if method != "bisect":
        raise ValueError(f"unknown method {method!r}")
    lo, hi = -1, m  # prop false at lo (virtual), true at hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if prop(prefix(process, mid)):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# edge-list text format: "n m" then m lines "u v"


def write_edge_list(g: Graph, fh: TextIO | None = None) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edge_list]
    text = "\n".join(lines) + "\n"
    if fh is not None:
        fh.write(text)
    return text


def read_edge_list(source: str | TextIO) -> Graph:
    fh = io.StringIO(source) if isinstance(source, str) else source
    rows = [line.split() for line in fh if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty edge-list file")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"header promises {m} edges, found {len(rows) - 1}")
    g = Graph.from_edges(n, ((int(r[0]), int(r[1])) for r in rows[1:]))
    if g.m != m:
        raise ValueError("duplicate edges in edge list")
    return g


def edge_count_k(n: int) -> int:
    return math.comb(n, 2)
