"""Clique unions, densities, bunches, collections and degeneracy orders.

Densities are exact ``Fraction`` values.  The maximum density m(G) only
needs induced subgraphs: for any subgraph H, the subgraph induced on V(H)
has at least e(H) edges on the same vertex count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

import networkx as nx

from .graphs import Edge, Graph, canon_edge, complete_graph
from .limits import check, current_limits
from . import oracles


# ---------------------------------------------------------------------------
# clique unions


@dataclass(frozen=True)
class CliqueUnion:
    """Union of k-cliques (``parts``), optionally with one removed edge per part."""

    k: int
    parts: tuple[tuple[int, ...], ...]
    graph: Graph
    removed: Optional[tuple[Edge, ...]] = None

    def __post_init__(self):
        for p in self.parts:
            if len(set(p)) != self.k:
                raise ValueError(f"part {p} does not have {self.k} vertices")
        if self.removed is not None:
            if len(self.removed) != len(self.parts):
                raise ValueError("need exactly one removed edge per part")
            if len(set(self.removed)) != len(self.removed):
                raise ValueError("removed edges must be distinct")
            for p, e in zip(self.parts, self.removed):
                if not set(e) <= set(p):
                    raise ValueError(f"removed edge {e} is not inside part {p}")

    @property
    def v(self) -> int:
        return len({x for p in self.parts for x in p})

    @property
    def e(self) -> int:
        return self.graph.m

    def common(self) -> frozenset:
        out = set(self.parts[0])
        for p in self.parts[1:]:
            out &= set(p)
        return frozenset(out)

    def is_simple(self) -> bool:
        """Pairwise intersections are exactly the common vertex set."""
        c = self.common()
        return all(set(p) & set(q) == c for p, q in combinations(self.parts, 2))


def _union(k: int, parts: list[tuple[int, ...]], removed: Optional[list[Edge]] = None) -> CliqueUnion:
    n = max(x for p in parts for x in p) + 1
    edges = {canon_edge(u, v) for p in parts for u, v in combinations(p, 2)}
    if removed is not None:
        removed = [canon_edge(*e) for e in removed]
        edges -= set(removed)
    return CliqueUnion(k, tuple(parts), Graph(n, frozenset(edges)),
                       None if removed is None else tuple(removed))


def _common_parts(k: int, t: int, common: int) -> list[tuple[int, ...]]:
    size = k - common
    return [tuple(range(common)) + tuple(range(common + i * size, common + (i + 1) * size)) for i in range(t)]


def simple_2_cluster(k: int, s: int) -> CliqueUnion:
    """s k-cliques sharing the pair {0, 1} and otherwise disjoint."""
    if k < 3 or s < 1:
        raise ValueError("need k >= 3 and s >= 1")
    return _union(k, _common_parts(k, s, 2))


def t_3_cluster(k: int, t: int) -> CliqueUnion:
    """t k-cliques sharing the triangle {0, 1, 2}."""
    if k < 3 or t < 1:
        raise ValueError("need k >= 3 and t >= 1")
    if k == 3 and t > 1:
        raise ValueError("for k=3 the shared triangle is the whole clique; t must be 1")
    return _union(k, _common_parts(k, t, 3))


def _distinct_removals(parts, common: int) -> list[Edge]:
    # remove an edge from the first private vertex to vertex 0 (or inside the
    # common set when a clique has no private vertex)
    out = []
    for p in parts:
        private = p[common:]
        out.append((0, private[0]) if private else (p[0], p[1]))
    return out


def t_fan(k: int, t: int) -> CliqueUnion:
    """Simple t-2-cluster with one distinct edge removed from each clique."""
    parts = simple_2_cluster(k, t).parts
    return _union(k, list(parts), _distinct_removals(parts, 2))


def t_flower(k: int, t: int) -> CliqueUnion:
    """t-3-cluster with one distinct edge removed from each clique."""
    parts = t_3_cluster(k, t).parts
    return _union(k, list(parts), _distinct_removals(parts, 3))


def cluster_closed_form(k: int, s: int) -> tuple[int, int, Fraction]:
    """(v, e, d) of the simple s-cluster of k-cliques, from the formulas."""
    v = s * (k - 2) + 2
    e = s * math.comb(k, 2) - s + 1
    d = Fraction(k + 1, 2) - Fraction(k, s * k - 2 * s + 2)
    return v, e, d


# ---------------------------------------------------------------------------
# densities


@dataclass(frozen=True)
class DensityReport:
    d: Fraction
    m: Fraction
    m_witness: frozenset
    m_prime: Optional[Fraction]
    m_prime_witness: Optional[frozenset]

    @property
    def balanced(self) -> bool:
        return self.m == self.d


def _subset_edge_counts(g: Graph) -> list[int]:
    n = g.n
    adj = g.adj_mask
    e = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        v = low.bit_length() - 1
        rest = S ^ low
        e[S] = e[rest] + (adj[v] & rest).bit_count()
    return e


def _verts(S: int) -> frozenset:
    return frozenset(i for i in range(S.bit_length()) if S >> i & 1)


def density_report(g: Graph, limit: Optional[int] = None) -> DensityReport:
    check(g.n, current_limits().density if limit is None else limit, "vertices (density)")
    if g.n == 0:
        raise ValueError("density of the empty vertex set is undefined")
    e = _subset_edge_counts(g)
    best_num, best_den, best_S = -1, 1, 0
    bp_num, bp_den, bp_S = None, 1, None
    for S in range(1, 1 << g.n):
        v = S.bit_count()
        es = e[S]
        if es * best_den > best_num * v:
            best_num, best_den, best_S = es, v, S
        if v >= 3:
            num, den = es - 1, v - 2
            if bp_num is None or num * bp_den > bp_num * den:
                bp_num, bp_den, bp_S = num, den, S
    return DensityReport(
        Fraction(g.m, g.n),
        Fraction(best_num, best_den),
        _verts(best_S),
        None if bp_num is None else Fraction(bp_num, bp_den),
        None if bp_S is None else _verts(bp_S),
    )


def _denser_subset(g: Graph, target: Fraction) -> Optional[frozenset]:
    """A vertex set S with e(S)/|S| > target, or None (one min cut).

    Network: source -> v with capacity q*m, v -> sink with q*m + 2p - q*deg(v),
    and q in both directions along each edge, for target = p/q.  A cut with
    source side S costs q*m*n + 2(p|S| - q e(S)), so some S beats the
    target exactly when the minimum cut is below q*m*n.
    """
    p, q = target.numerator, target.denominator
    h = nx.DiGraph()
    for v in range(g.n):
        h.add_edge("s", v, capacity=q * g.m)
        h.add_edge(v, "t", capacity=q * g.m + 2 * p - q * g.degree(v))
    for u, v in g.edges:
        h.add_edge(u, v, capacity=q)
        h.add_edge(v, u, capacity=q)
    cut, (side, _) = nx.minimum_cut(h, "s", "t")
    if cut >= q * g.m * g.n:
        return None
    return frozenset(side - {"s"})


def max_density_flow(g: Graph) -> tuple[Fraction, frozenset]:
    """Exact m(G) with a witness, for any size, by iterated min cuts.

    Each round either certifies the current density as maximal or finds a
    strictly denser vertex set; densities are fractions with denominator at
    most n, so the loop terminates.
    """
    if g.n == 0:
        raise ValueError("density of the empty vertex set is undefined")
    best, witness = Fraction(g.m, g.n), frozenset(range(g.n))
    while True:
        denser = _denser_subset(g, best)
        if denser is None:
            return best, witness
        best, witness = Fraction(g.induced(denser).m, len(denser)), denser


def is_balanced(g: Graph) -> bool:
    return max_density(g) == Fraction(g.m, g.n)


def max_density(g: Graph) -> Fraction:
    """m(G); exhaustive within the density limit, min-cut based above it."""
    if g.n <= current_limits().density:
        return density_report(g).m
    return max_density_flow(g)[0]


# ---------------------------------------------------------------------------
# canonical forms (individualization-refinement)


def _refine(adj: tuple[frozenset, ...], colors: list) -> list[int]:
    """Equitable refinement; colours are relabelled by sorted signature."""
    cur = _relabel(colors)
    while True:
        sig = [(cur[v], tuple(sorted(cur[w] for w in adj[v]))) for v in range(len(adj))]
        nxt = _relabel(sig)
        if len(set(nxt)) == len(set(cur)):
            return nxt
        cur = nxt


def _relabel(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def canonical_form(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    """An isomorphism invariant that determines the graph up to isomorphism."""
    adj = g.adj
    best: list = [None]

    def leaf(colors: list[int]) -> None:
        enc = tuple(sorted(canon_edge(colors[u], colors[v]) for u, v in g.edges))
        if best[0] is None or enc < best[0]:
            best[0] = enc

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        if len(set(colors)) == g.n:
            leaf(colors)
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(g.n):
            if colors[v] == target:
                search([(c, 0 if (c != target or w == v) else 1) for w, c in enumerate(colors)])

    search([len(a) for a in adj])
    return g.n, best[0] if best[0] is not None else ()


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# bunches


def _guard(k: int, s: int) -> None:
    if k not in (3, 4) or not 1 <= s <= 4:
        raise ValueError(f"bunch enumeration supports k in {{3, 4}} and 1 <= s <= 4, got k={k}, s={s}")


def _extensions(g: Graph, k: int, v_max: Optional[int]):
    """Graphs obtained by adding one k-clique meeting V(g) in >= 2 vertices and adding >= 1 new one."""
    for size in range(2, min(k - 1, g.n) + 1):
        new = k - size
        if v_max is not None and g.n + new > v_max:
            continue
        for inside in combinations(range(g.n), size):
            clique = inside + tuple(range(g.n, g.n + new))
            extra = {canon_edge(u, v) for u, v in combinations(clique, 2)}
            yield Graph(g.n + new, g.edges | extra)


def enumerate_bunches(k: int, s: int, v_max: Optional[int] = None) -> list[Graph]:
    """All s-bunches of k-cliques up to isomorphism, in canonical order."""
    _guard(k, s)
    level = {canonical_form(complete_graph(k)): complete_graph(k)}
    for _ in range(s - 1):
        nxt: dict = {}
        for g in level.values():
            for h in _extensions(g, k, v_max):
                nxt.setdefault(canonical_form(h), h)
        level = nxt
    return [level[key] for key in sorted(level)]


def enumerate_bunches_bruteforce(k: int, s: int, v_max: Optional[int] = None) -> list[Graph]:
    """Same classes, generating every labelled sequence before canonising once."""
    _guard(k, s)
    graphs = [complete_graph(k)]
    for _ in range(s - 1):
        graphs = [h for g in graphs for h in _extensions(g, k, v_max)]
    classes = {canonical_form(g): g for g in graphs}
    return [classes[key] for key in sorted(classes)]


# ---------------------------------------------------------------------------
# collections


@dataclass(frozen=True)
class Collection:
    cliques: tuple[tuple[int, ...], ...]
    graph: Graph

    @property
    def vertices(self) -> frozenset:
        return frozenset(x for q in self.cliques for x in q)


def collections(h: Graph, k: int) -> tuple[frozenset, list[Collection]]:
    """Split E(h) into edges in no k-clique and the collections of k-cliques."""
    qs = oracles.all_cliques(h, k)
    dsu = oracles._DSU(len(qs))
    sets = [set(q) for q in qs]
    for i, j in combinations(range(len(qs)), 2):
        if len(sets[i] & sets[j]) >= 2:
            dsu.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(qs)):
        groups.setdefault(dsu.find(i), []).append(i)
    covered: set = set()
    parts = []
    for idx in sorted(groups.values()):
        members = tuple(qs[i] for i in idx)
        edges = frozenset(canon_edge(u, v) for q in members for u, v in combinations(q, 2))
        covered |= edges
        parts.append(Collection(members, Graph(h.n, edges)))
    return frozenset(h.edges - covered), parts


def greedy_bunch(cliques: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Grow a bunch inside a collection until it covers every vertex.

    Each step takes the first clique that meets the current union in at
    least two vertices and is not contained in it.
    """
    if not cliques:
        return []
    seq = [tuple(cliques[0])]
    union = set(cliques[0])
    while True:
        for q in cliques:
            inter = len(union & set(q))
            if inter >= 2 and not set(q) <= union:
                seq.append(tuple(q))
                union |= set(q)
                break
        else:
            return seq


def is_bunch(seq: Sequence[tuple[int, ...]]) -> bool:
    union: set = set()
    for i, q in enumerate(seq):
        q = set(q)
        if i and (len(union & q) < 2 or q <= union):
            return False
        union |= q
    return True


# ---------------------------------------------------------------------------
# degeneracy


def degeneracy_order(g: Graph, d: int) -> Optional[list[int]]:
    """Ordering in which every vertex has at most ``d`` earlier neighbours."""
    deg = g.degrees()
    alive = set(range(g.n))
    removed = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        if deg[v] > d:
            return None
        removed.append(v)
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return removed[::-1]


def degeneracy(g: Graph) -> int:
    d = 0
    while degeneracy_order(g, d) is None:
        d += 1
    return d


def degenerate_graphs(n: int, d: int) -> list[Graph]:
    """All d-degenerate graphs on n vertices up to isomorphism.

    Grows vertex by vertex, joining each new vertex to at most d earlier
    ones; every d-degenerate graph arises this way (drop a vertex of
    degree <= d and recurse).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    level = {canonical_form(Graph(1, frozenset())): Graph(1, frozenset())}
    for size in range(1, n):
        nxt: dict = {}
        for g in level.values():
            for r in range(min(d, size) + 1):
                for nbrs in combinations(range(size), r):
                    h = Graph(size + 1, g.edges | {(u, size) for u in nbrs})
                    nxt.setdefault(canonical_form(h), h)
        level = nxt
    return [level[key] for key in sorted(level)]


# ---------------------------------------------------------------------------
# dangerous fans


def clique_threats(g: Graph, maker: int, breaker: int, k: int, cliques=None) -> list[tuple[tuple[int, ...], Edge]]:
    """k-cliques of the board where Maker owns every edge but one free edge."""
    idx = g.edge_index
    out = []
    for q in cliques if cliques is not None else oracles.all_cliques(g, k):
        missing = []
        for u, v in combinations(q, 2):
            bit = 1 << idx[(u, v)]
            if breaker & bit:
                break
            if not maker & bit:
                missing.append((u, v))
                if len(missing) > 1:
                    break
        else:
            if len(missing) == 1:
                out.append((q, missing[0]))
    return out


def dangerous_fans(g: Graph, maker: int, breaker: int, t: int, k: int, cliques=None) -> list[CliqueUnion]:
    """t-fans on the board whose clique edges are Maker's and whose removed edges are free.

    The t cliques share a common pair; ``maker``/``breaker`` are claim masks
    over ``g.edge_list``.
    """
    threats = clique_threats(g, maker, breaker, k, cliques)
    by_pair: dict[tuple[int, int], list] = {}
    for q, e in threats:
        for pair in combinations(q, 2):
            by_pair.setdefault(pair, []).append((q, e))
    seen = set()
    out = []
    for pair in sorted(by_pair):
        group = by_pair[pair]
        for combo in combinations(group, t):
            if len({e for _, e in combo}) < t:
                continue
            key = frozenset(q for q, _ in combo)
            if key in seen:
                continue
            seen.add(key)
            parts = sorted(combo)
            out.append(CliqueUnion(
                k, tuple(q for q, _ in parts),
                Graph(g.n, frozenset(canon_edge(u, v) for q, _ in parts for u, v in combinations(q, 2))
                      - {e for _, e in parts}),
                tuple(e for _, e in parts),
            ))
    return out


def _fan_edges(parts, removed) -> set:
    """Edges of the union of (clique minus its removed edge)."""
    out = set()
    for q, e in zip(parts, removed):
        out |= {canon_edge(u, v) for u, v in combinations(q, 2)} - {canon_edge(*e)}
    return out


def fan_edge_sets(g: Graph, t: int, k: int, simple: bool = True) -> set[frozenset]:
    """Edge sets of all t-fans of k-cliques inside g (distinct graphs only)."""
    qs = oracles.all_cliques(g, k)
    out = set()
    for combo in combinations(qs, t):
        sets = [set(q) for q in combo]
        common = set.intersection(*sets)
        if len(common) < 2:
            continue
        if simple and any(len(a & b) != 2 for a, b in combinations(sets, 2)):
            continue
        for removed in product(*[list(combinations(q, 2)) for q in combo]):
            if len(set(removed)) == t:
                out.add(frozenset(_fan_edges(combo, removed)))
    return out


def dangerous_fans_bruteforce(g: Graph, maker: int, breaker: int, t: int, k: int) -> set:
    """Literal search over t-sets of cliques and removed-edge choices."""
    idx = g.edge_index
    free = ((1 << g.m) - 1) & ~(maker | breaker)
    qs = oracles.all_cliques(g, k)
    out = set()
    for combo in combinations(qs, t):
        common = set(combo[0])
        for q in combo[1:]:
            common &= set(q)
        if len(common) < 2:
            continue
        for removed in product(*[list(combinations(q, 2)) for q in combo]):
            if len(set(removed)) < t:
                continue
            if any(not free >> idx[e] & 1 for e in removed):
                continue
            rest = _fan_edges(combo, removed)
            if rest & set(removed):
                continue  # a removed edge survives through another clique, so it is not missing
            if all(maker >> idx[e] & 1 for e in rest):
                out.add((frozenset(combo), frozenset(removed)))
    return out
