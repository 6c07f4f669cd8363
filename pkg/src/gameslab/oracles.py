"""Exact structural predicates on graphs.

Every oracle here is exact.  The ones with exponential worst case
(Hamiltonicity, independence number, exhaustive tree packing) check a size
limit from :mod:`gameslab.limits` and raise :class:`LimitExceeded` rather
than guess.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Optional

import networkx as nx

from .graphs import Edge, Graph, canon_edge
from .limits import check, current_limits


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.comps = n

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
        self.parent[ra] = rb
        self.comps -= 1
        return True


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    if g.n < 1:
        raise ValueError("is_connected needs n >= 1")
    dsu = _DSU(g.n)
    for u, v in g.edges:
        dsu.union(u, v)
    return dsu.comps == 1


def min_degree(g: Graph) -> int:
    if g.n < 1:
        raise ValueError("min_degree needs n >= 1")
    return min(g.degrees())


# ---------------------------------------------------------------------------
# matchings


def find_perfect_matching(g: Graph) -> Optional[list[Edge]]:
    """A perfect matching of ``g`` or None (blossom algorithm via networkx)."""
    if g.n % 2:
        return None
    if g.n == 0:
        return []
    if min_degree(g) == 0:
        return None
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    mate = nx.max_weight_matching(nxg, maxcardinality=True)
    if 2 * len(mate) != g.n:
        return None
    return sorted(canon_edge(u, v) for u, v in mate)


def has_perfect_matching(g: Graph) -> bool:
    return find_perfect_matching(g) is not None


def exhaustive_perfect_matching(g: Graph) -> Optional[list[Edge]]:
    """Brute-force search; used as an independent check on small graphs."""
    if g.n % 2:
        return None

    def rec(free: frozenset) -> Optional[list[Edge]]:
        if not free:
            return []
        v = min(free)
        for w in sorted(g.adj[v] & free):
            rest = rec(free - {v, w})
            if rest is not None:
                return [(v, w)] + rest
        return None

    return rec(frozenset(range(g.n)))


def bipartite_matching(g: Graph, A: Iterable[int], B: Iterable[int]) -> dict[int, int]:
    """Maximum matching using only A-B edges (Kuhn's augmenting paths).

    Returns the map ``a -> b`` for matched vertices of ``A``.
    """
    A = sorted(A)
    Bset = set(B)
    match_b: dict[int, int] = {}

    def augment(a: int, seen: set) -> bool:
        for b in sorted(g.adj[a] & Bset):
            if b in seen:
                continue
            seen.add(b)
            if b not in match_b or augment(match_b[b], seen):
                match_b[b] = a
                return True
        return False

    for a in A:
        augment(a, set())
    return {a: b for b, a in match_b.items()}


def bipartite_hall_violation(
    g: Graph, A: Iterable[int], B: Iterable[int]
) -> Optional[tuple[frozenset, frozenset]]:
    """None if the A-B edges of ``g`` hold a perfect matching, else (X, Y).

    The witness satisfies ``|X| > |Y|`` and every A-B neighbour of X lies in Y.
    """
    A, B = frozenset(A), frozenset(B)
    if len(A) != len(B):
        raise ValueError(f"unbalanced sides: |A|={len(A)}, |B|={len(B)}")
    if A & B:
        raise ValueError("sides must be disjoint")
    if A | B != frozenset(range(g.n)):
        raise ValueError("sides must cover the vertex set")
    mate = bipartite_matching(g, A, B)
    if len(mate) == len(A):
        return None
    mate_of_b = {b: a for a, b in mate.items()}
    root = min(A - set(mate))
    X, Y = {root}, set()
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b in g.adj[a] & B:
            if b not in Y:
                Y.add(b)
                a2 = mate_of_b[b]  # b is matched, otherwise an augmenting path would exist
                if a2 not in X:
                    X.add(a2)
                    queue.append(a2)
    return frozenset(X), frozenset(Y)


# ---------------------------------------------------------------------------
# Hamiltonicity


def has_hamiltonian_cycle(g: Graph, limit: Optional[int] = None) -> bool:
    """Exact Held-Karp style DP over vertex subsets."""
    n = g.n
    check(n, current_limits().hamiltonian if limit is None else limit, "vertices (Hamiltonicity)")
    if n < 3 or min_degree(g) < 2 or not is_connected(g):
        return False
    adj = g.adj_mask
    full = (1 << n) - 1
    # reach[mask]: bitmask of end vertices v such that some path starting at
    # vertex 0 visits exactly `mask` and ends at v.
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, full + 1, 2):
        ends = reach[mask]
        if not ends:
            continue
        if mask == full:
            return bool(ends & adj[0])
        while ends:
            low = ends & -ends
            v = low.bit_length() - 1
            ends ^= low
            nxt = adj[v] & ~mask
            while nxt:
                lw = nxt & -nxt
                nxt ^= lw
                reach[mask | lw] |= lw
    return False


# ---------------------------------------------------------------------------
# connectivity and independence


def _local_connectivity(adj: tuple[frozenset, ...], n: int, s: int, t: int, cap: int) -> int:
    """Number of internally vertex-disjoint s-t paths, capped at ``cap``.

    Unit-capacity max flow on the split-vertex network: node v becomes
    v_in = 2v, v_out = 2v+1 with an arc of capacity 1 (infinite for s, t).
    """
    flow: dict[tuple[int, int], int] = {}

    def residual(x: int, y: int) -> int:
        return _capacity(x, y) - flow.get((x, y), 0)

    def _capacity(x: int, y: int) -> int:
        vx, vy = x >> 1, y >> 1
        if vx == vy:
            if x & 1 == 0 and y == x + 1:
                return n if vx in (s, t) else 1
            return 0
        if x & 1 and y & 1 == 0 and vy in adj[vx]:
            return n
        return 0

    def out_arcs(x: int):
        v = x >> 1
        if x & 1 == 0:
            yield x + 1
            for w in adj[v]:
                yield 2 * w + 1  # reverse of w_out -> v_in
        else:
            yield x - 1
            for w in adj[v]:
                yield 2 * w

    source, sink = 2 * s + 1, 2 * t
    total = 0
    while total < cap:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in out_arcs(x):
                if y not in parent and residual(x, y) > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while parent[y] is not None:
            x = parent[y]
            flow[(x, y)] = flow.get((x, y), 0) + 1
            flow[(y, x)] = flow.get((y, x), 0) - 1
            y = x
        total += 1
    return total


def vertex_connectivity(g: Graph) -> int:
    """kappa(G); kappa(K_n) = n - 1 by convention."""
    n = g.n
    if n < 2:
        raise ValueError("vertex connectivity needs n >= 2")
    if g.m == n * (n - 1) // 2:
        return n - 1
    if not is_connected(g):
        return 0
    best = min_degree(g)
    # Any minimum separator misses one of the first best+1 vertices, so
    # taking sources among them suffices.
    for s in range(min(n, best + 1)):
        for t in range(n):
            if t == s or t in g.adj[s]:
                continue
            best = min(best, _local_connectivity(g.adj, n, s, t, best))
            if best == 0:
                return 0
    return best


def _max_clique_size(adj: list[int], n: int) -> int:
    """Branch and bound maximum clique on bitmask adjacency (greedy colouring bound)."""
    best = 0

    def colour_order(cand: int) -> list[tuple[int, int]]:
        # Greedy colouring; returns (vertex, colour) with non-decreasing colours.
        out = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~adj[v]
                rest &= ~low
                out.append((v, colour))
        return out

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order = colour_order(cand)
        for v, col in reversed(order):
            if size + col <= best:
                return
            nsize = size + 1
            ncand = cand & adj[v]
            if ncand:
                expand(nsize, ncand)
            elif nsize > best:
                best = nsize
            cand &= ~(1 << v)

    if n:
        expand(0, (1 << n) - 1)
    return best


def independence_number(g: Graph, limit: Optional[int] = None) -> int:
    check(g.n, current_limits().independence if limit is None else limit, "vertices (independence)")
    full = (1 << g.n) - 1
    comp = [full & ~g.adj_mask[v] & ~(1 << v) for v in range(g.n)]
    return _max_clique_size(comp, g.n)


def chvatal_erdos_sufficient(g: Graph) -> bool:
    """kappa(G) >= alpha(G): sufficient for a Hamiltonian cycle when n >= 3."""
    return vertex_connectivity(g) >= independence_number(g)


# ---------------------------------------------------------------------------
# edge-disjoint forests


def _forest_path(tree_adj: list[set], u: int, v: int) -> Optional[list[Edge]]:
    """Edges on the u-v path inside a forest, or None if not connected."""
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in tree_adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        return None
    path = []
    while parent[v] is not None:
        path.append(canon_edge(v, parent[v]))
        v = parent[v]
    return path


def forest_packing(g: Graph, k: int = 2) -> list[set]:
    """Maximum-size union of ``k`` edge-disjoint forests (matroid partition).

    Edges are inserted one at a time; each insertion searches the exchange
    graph breadth-first for a shortest augmenting sequence.
    """
    forests: list[set] = [set() for _ in range(k)]
    adj: list[list[set]] = [[set() for _ in range(g.n)] for _ in range(k)]
    owner: dict[Edge, int] = {}

    def add(e: Edge, i: int) -> None:
        forests[i].add(e)
        adj[i][e[0]].add(e[1])
        adj[i][e[1]].add(e[0])
        owner[e] = i

    def remove(e: Edge) -> None:
        i = owner.pop(e)
        forests[i].discard(e)
        adj[i][e[0]].discard(e[1])
        adj[i][e[1]].discard(e[0])

    for e in g.edge_list:
        label: dict[Edge, Optional[tuple[Edge, int]]] = {e: None}
        queue = deque([e])
        found: Optional[tuple[Edge, int]] = None
        while queue and found is None:
            x = queue.popleft()
            for i in range(k):
                if owner.get(x) == i:
                    continue
                path = _forest_path(adj[i], x[0], x[1])
                if path is None:
                    found = (x, i)
                    break
                for y in path:
                    if y not in label:
                        label[y] = (x, i)
                        queue.append(y)
        if found is None:
            continue
        # x enters forest i; the chain of labels says who it displaces.
        x, i = found
        while True:
            if x in owner:
                remove(x)
            add(x, i)
            if label[x] is None:
                break
            prev, j = label[x]
            # x left forest j (it was on prev's cycle there); prev takes its place
            x, i = prev, j
    return forests


def find_two_spanning_trees(g: Graph, method: str = "auto") -> Optional[tuple[list[Edge], list[Edge]]]:
    """Two edge-disjoint spanning trees of ``g`` or None."""
    if g.n == 0:
        raise ValueError("needs n >= 1")
    if g.n == 1:
        return [], []  # the empty tree spans a single vertex
    if g.m < 2 * (g.n - 1) or min_degree(g) < 2:
        return None
    if method == "auto":
        method = "exhaustive" if g.n <= current_limits().exhaustive_trees else "matroid"
    if method == "exhaustive":
        return _exhaustive_tree_pair(g)
    if method != "matroid":
        raise ValueError(f"unknown method {method!r}")
    f1, f2 = forest_packing(g, 2)
    if len(f1) == len(f2) == g.n - 1:
        return sorted(f1), sorted(f2)
    return None


def two_edge_disjoint_spanning_trees(g: Graph, method: str = "auto") -> bool:
    return find_two_spanning_trees(g, method) is not None


def spanning_trees(g: Graph) -> list[tuple[Edge, ...]]:
    """All spanning trees of a small graph, by subset enumeration."""
    out = []
    for combo in combinations(g.edge_list, g.n - 1):
        dsu = _DSU(g.n)
        if all(dsu.union(u, v) for u, v in combo):
            out.append(combo)
    return out


def _exhaustive_tree_pair(g: Graph) -> Optional[tuple[list[Edge], list[Edge]]]:
    check(g.n, max(current_limits().exhaustive_trees, 7), "vertices (exhaustive tree pairs)")
    for t1 in spanning_trees(g):
        rest = g.edges - set(t1)
        dsu = _DSU(g.n)
        t2 = [e for e in sorted(rest) if dsu.union(*e)]
        if dsu.comps == 1:
            return sorted(t1), t2
    return None


def spanning_tree_and_two_forest(g: Graph) -> bool:
    """A spanning tree plus an edge-disjoint spanning forest with two components.

    Such a pair exists exactly when two edge-disjoint forests can cover
    2n - 3 edges: sizes n-1 and n-2 are then forced.
    """
    if g.n < 2:
        raise ValueError("needs n >= 2")
    if g.m < 2 * g.n - 3:
        return False
    f1, f2 = forest_packing(g, 2)
    return len(f1) + len(f2) >= 2 * g.n - 3


# ---------------------------------------------------------------------------
# cliques


def find_clique(g: Graph, k: int) -> Optional[tuple[int, ...]]:
    """A k-clique of ``g`` (sorted vertex tuple) or None; pivoting Bron-Kerbosch."""
    if k < 2:
        raise ValueError("clique size must be >= 2")
    adj = g.adj_mask

    def bk(r: list[int], p: int, x: int) -> Optional[list[int]]:
        if len(r) == k:
            return r
        if len(r) + p.bit_count() < k:
            return None
        px = p | x
        # pivot with most neighbours in p
        pivot, best = -1, -1
        tmp = px
        while tmp:
            low = tmp & -tmp
            u = low.bit_length() - 1
            tmp ^= low
            c = (p & adj[u]).bit_count()
            if c > best:
                pivot, best = u, c
        cand = p & ~adj[pivot] if pivot >= 0 else p
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            hit = bk(r + [v], p & adj[v], x & adj[v])
            if hit is not None:
                return hit
            p &= ~low
            x |= low
        return None

    hit = bk([], (1 << g.n) - 1, 0)
    return None if hit is None else tuple(sorted(hit))


def contains_clique(g: Graph, k: int) -> bool:
    return find_clique(g, k) is not None


def all_cliques(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Every k-vertex clique of ``g`` as a sorted vertex tuple, in lexicographic order."""
    adj = g.adj_mask
    out = []

    def rec(chosen: list[int], cand: int) -> None:
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(chosen + [v], cand & adj[v])

    rec([], (1 << g.n) - 1)
    return out
