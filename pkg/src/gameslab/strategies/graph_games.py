"""Strategies for the spanning-structure games on a graph board.

All of them expect the game board to be ``G.edge_list`` for the board
graph ``G``.
"""

from __future__ import annotations

import logging
import math
from itertools import combinations
from typing import Optional, Sequence

from .. import oracles
from ..game import (
    BiasedGame, GameState, Player, Strategy, WinningFamily, bits, cut_masks, default_halves,
    hall, incidence_masks, popcount, removed_cuts,
)
from ..graphs import Graph
from ..limits import current_limits
from .box import pick_box
from .potential import PotentialEngine

log = logging.getLogger(__name__)


def _board_graph(game: BiasedGame, graph: Optional[Graph]) -> Graph:
    g = graph if graph is not None else game.graph
    if g is None:
        raise ValueError("strategy needs a board graph")
    if tuple(g.edge_list) != tuple(game.board):
        raise ValueError("game board must be the edge list of the board graph")
    return g


def isolation_centres(g: Graph) -> list[int]:
    """The floor(n / ln n) lowest-degree vertices (ties: lower label)."""
    count = max(1, math.floor(g.n / math.log(g.n)))
    return sorted(range(g.n), key=lambda v: (g.degree(v), v))[:count]


class IsolationBreaker(Strategy):
    """Breaker isolating a vertex by playing a box game on stars.

    Each centre v gives a box: the board edges at v.  Maker touching v
    destroys the box; Breaker fills it by claiming every edge at v.  With
    bias >= 2 the box rule is the balancing one; with bias 1 it attacks the
    surviving star with the fewest free edges.
    """

    name = "isolation"
    markov = True

    def __init__(self, graph: Optional[Graph] = None):
        self.graph = graph

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        if g.n < 3:
            raise ValueError("isolation breaker needs n >= 3")
        self.g = g
        self.centres = isolation_centres(g)
        inc = incidence_masks(g)
        self.stars = [inc[v] for v in self.centres]
        self.mode = "balance" if game.bias(side) >= 2 else "fewest"
        self._disconnected = not oracles.is_connected(g)

    def verdict(self):
        return "already_won" if self._disconnected else None

    def choose(self, state, rng):
        own, opp = state.owned(self.side), state.owned(self.side.other)
        i = pick_box(self.stars, own, opp, state.free, state.picks_left(self.game), self.mode)
        if i is None:
            return state.free_elements()[0]
        return bits(self.stars[i] & state.free)[0]

    def isolated_centres(self, maker: int) -> list[int]:
        return [v for v, m in zip(self.centres, self.stars) if not m & maker]


def auto_cut_side(n: int, cap: int) -> int:
    """Largest r with sum_{k<=r} C(n, k) <= cap (at least 1)."""
    r, total = 0, 0
    while r < n // 2:
        nxt = total + math.comb(n, r + 1)
        if nxt > cap and r >= 1:
            break
        r, total = r + 1, nxt
    return max(r, 1)


class _FamilyBlocker(Strategy):
    """Shared plumbing: Maker blocking a hostile explicit family on the board."""

    markov = True

    def _engine(self, masks, opponent_bias: int) -> PotentialEngine:
        return PotentialEngine(masks, self.game.size, self.game.bias(self.side), opponent_bias)

    def _pick(self, engine: PotentialEngine, state: GameState) -> int:
        own, opp = state.owned(self.side), state.owned(self.side.other)
        return engine.best(opp, own, state.free)


class ConnectivityMaker(_FamilyBlocker):
    """Maker keeps every cut of the board hit, blocking Breaker's cut family.

    For n above the cut-enumeration limit only cuts whose smaller side has at
    most ``max_side`` vertices are blocked (default: as many as fit in
    ``cut_cap`` sets).
    """

    name = "conn_maker"

    def __init__(self, graph: Optional[Graph] = None, max_side: Optional[int] = None, cut_cap: int = 5000):
        self.graph = graph
        self.max_side = max_side
        self.cut_cap = cut_cap

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        side_cap = self.max_side
        if side_cap is None and g.n > current_limits().cut_vertices:
            side_cap = auto_cut_side(g.n, self.cut_cap)
        self.side_cap = side_cap
        masks = list(dict.fromkeys(cut_masks(g, side_cap)))
        self._unwinnable = 0 in masks
        self.engine = self._engine(masks, game.bias(side.other))

    def verdict(self):
        return "unwinnable" if self._unwinnable else None

    def choose(self, state, rng):
        return self._pick(self.engine, state)


class HamiltonicityMaker(_FamilyBlocker):
    """Maker aiming at vertex connectivity >= independence number.

    Odd Maker moves block the cuts of G - V0 over all k-sets V0 (pushing the
    connectivity above k); even moves block the edge sets of the
    (k+2)-vertex subsets of G (each traced on E(G)), so that every such
    vertex set ends up spanning a Maker edge: no independent set of size
    k+2 in Maker's graph.  Each half plays against twice the
    opponent's bias.
    """

    name = "ham_maker"

    def __init__(self, graph: Optional[Graph] = None, k: Optional[int] = None,
                 clique_size: Optional[int] = None):
        self.graph = graph
        self.k = k
        self.clique_size = clique_size

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        k = self.k if self.k is not None else max(1, math.floor(math.sqrt(g.n) / 2))
        q = self.clique_size if self.clique_size is not None else k + 2
        self.k_used, self.q_used = k, q
        opp = 2 * game.bias(side.other)
        self.cut_family = removed_cuts(g, k)
        self.clique_family = subset_traces(g, q)
        self.cut_engine = self._engine(self.cut_family.sets, opp)
        self.clique_engine = self._engine(self.clique_family.sets, opp)

    def choose(self, state, rng):
        own, opp = state.owned(self.side), state.owned(self.side.other)
        odd = popcount(own) % 2 == 0  # the next pick is Maker's odd-numbered one
        first, second = (self.cut_engine, self.clique_engine) if odd else (self.clique_engine, self.cut_engine)
        for engine in (first, second):
            d = engine.danger(opp, own)
            free = bits(state.free)
            if any(d[x] > 0 for x in free):
                return engine.best(opp, own, state.free)
        return bits(state.free)[0]


def subset_traces(g: Graph, q: int) -> WinningFamily:
    """For every q-set of vertices, the board edges inside it."""
    idx = g.edge_index
    masks = []
    for vs in combinations(range(g.n), q):
        m = 0
        for e in combinations(vs, 2):
            if e in idx:
                m |= 1 << idx[e]
        masks.append(m)
    return WinningFamily.from_masks(g.edge_list, masks, name=f"traces{q}", graph=g)


class MatchingMaker(_FamilyBlocker):
    """Maker blocking the Hall violators E(X, Y), |X| + |Y| = n/2 + 1."""

    name = "match_maker"

    def __init__(self, graph: Optional[Graph] = None, partition: Optional[tuple[Sequence[int], Sequence[int]]] = None):
        self.graph = graph
        self.partition = partition

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        if g.n % 2:
            raise ValueError(f"matching maker needs an even number of vertices, got n={g.n}")
        A, B = self.partition if self.partition is not None else default_halves(g.n)
        if len(A) != len(B) or set(A) & set(B) or set(A) | set(B) != set(range(g.n)):
            raise ValueError("partition must split the vertices into two equal halves")
        self.A, self.B = tuple(A), tuple(B)
        fam = hall(g, self.A, self.B)
        self._unwinnable = 0 in fam.sets
        self.engine = self._engine(fam.sets, game.bias(side.other))

    def verdict(self):
        return "unwinnable" if self._unwinnable else None

    def choose(self, state, rng):
        return self._pick(self.engine, state)

    def has_ab_matching(self, maker_edges) -> bool:
        g = Graph(self.game.graph.n if self.game.graph else len(self.A) * 2, frozenset(maker_edges))
        return oracles.bipartite_hall_violation(g, self.A, self.B) is None
