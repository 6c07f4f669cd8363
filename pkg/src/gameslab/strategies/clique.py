"""Clique games: the random Maker and the composite Breaker."""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Optional

from .. import oracles, structures
from ..game import BiasedGame, GameState, Player, Strategy, bits, popcount
from ..graphs import Graph
from .graph_games import _board_graph
from .potential import PotentialEngine

log = logging.getLogger(__name__)


class RandomMaker(Strategy):
    """Walks a uniformly random order of the board, skipping its own elements.

    When the drawn element already belongs to the opponent the draw is a
    recorded skip and a uniformly random free element is claimed instead.
    ``stream`` lists every draw, successful or not.
    """

    name = "random_maker"

    def reset(self, game, side):
        super().reset(game, side)
        self.order = None
        self.pos = 0
        self.stream: list[int] = []
        self.skips = 0

    def choose(self, state, rng):
        if self.order is None:
            self.order = [int(x) for x in rng.permutation(self.game.size)]
        own, opp = state.owned(self.side), state.owned(self.side.other)
        while self.pos < len(self.order):
            x = self.order[self.pos]
            self.pos += 1
            if own >> x & 1:
                continue
            self.stream.append(x)
            if opp >> x & 1:
                self.skips += 1
                break
            return x
        free = state.free_elements()
        return free[int(rng.integers(len(free)))]


def clique_edge_masks(g: Graph, k: int) -> tuple[list[tuple[int, ...]], list[int]]:
    idx = g.edge_index
    qs = oracles.all_cliques(g, k)
    masks = []
    for q in qs:
        m = 0
        for e in combinations(q, 2):
            m |= 1 << idx[e]
        masks.append(m)
    return qs, masks


def threat_block_move(state: GameState, clique_masks, side: Player = Player.BREAKER) -> Optional[int]:
    """Lowest-index free edge that is the only non-Maker edge of some clique."""
    maker, breaker = state.owned(side.other), state.owned(side)
    best = None
    for q in clique_masks:
        if q & breaker:
            continue
        missing = q & ~maker
        if missing and missing & (missing - 1) == 0:
            x = missing.bit_length() - 1
            if best is None or x < best:
                best = x
    return best


def cluster_masks(g: Graph, k: int, t: int, cap: int) -> Optional[list[int]]:
    """Edge masks of the t-3-clusters of k-cliques in g; None when over ``cap``."""
    qs, masks = clique_edge_masks(g, k)
    if k == 3:
        return masks if len(masks) <= cap else None  # a shared triangle is the clique itself
    by_triangle: dict[tuple, list[int]] = {}
    for q, m in zip(qs, masks):
        for tri in combinations(q, 3):
            by_triangle.setdefault(tri, []).append(m)
    out: dict[int, None] = {}
    for tri in sorted(by_triangle):
        for combo in combinations(by_triangle[tri], t):
            u = 0
            for m in combo:
                u |= m
            out[u] = None
            if len(out) > cap:
                return None
    return list(out)


class CliqueBreakerComposite(Strategy):
    """Breaker splitting each turn between threat blocking and a potential game.

    The first ceil(b/2) picks of a turn answer immediate threats (cliques
    missing a single free edge).  The rest run the greedy potential blocker
    on the t-3-clusters of k-cliques of the board.  If that family exceeds
    ``cap`` sets the strategy blocks threats only.  Dangerous t-fans are
    counted at the start of each turn into ``fan_log``.
    """

    name = "clique_breaker"
    markov = True

    def __init__(self, k: int = 3, t: int = 2, cap: int = 100_000, graph: Optional[Graph] = None,
                 log_fans: bool = True):
        self.k = k
        self.t = t
        self.cap = cap
        self.graph = graph
        self.log_fans = log_fans

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        self.g = g
        self.cliques, self.clique_masks = clique_edge_masks(g, self.k)
        t = 1 if self.k == 3 else self.t
        fam = cluster_masks(g, self.k, t, self.cap)
        if fam is None:
            log.warning("cluster family above cap %d; blocking threats only", self.cap)
            self.engine = None
        else:
            self.engine = PotentialEngine(fam, game.size, game.bias(side), game.bias(side.other))
        self.threat_budget = -(-game.bias(side) // 2)
        self.fan_log: list[int] = []

    def choose(self, state, rng):
        if self.log_fans and state.taken_this_turn == 0:
            fans = structures.dangerous_fans(
                self.g, state.owned(self.side.other), state.owned(self.side), self.t, self.k, self.cliques
            )
            self.fan_log.append(len(fans))
        threat = threat_block_move(state, self.clique_masks, self.side)
        if threat is not None and state.taken_this_turn < self.threat_budget:
            return threat
        if self.engine is not None:
            own, opp = state.owned(self.side), state.owned(self.side.other)
            return self.engine.best(opp, own, state.free)
        if threat is not None:
            return threat
        return state.free_elements()[0]
