"""Pairing Breakers for clique games on sparse boards."""

from __future__ import annotations

from typing import Optional

from ..game import Player, Strategy, bits
from ..graphs import Graph, wheel_graph
from ..structures import degeneracy_order
from .graph_games import _board_graph


class DegeneracyPairingBreaker(Strategy):
    """Answers each Maker edge with another back-edge of its later endpoint.

    Vertices are ordered so each has at most 2k-4 earlier neighbours (its
    back-edges).  Maker then never owns k-1 back-edges of any vertex, which
    a k-clique needs at its latest vertex.
    """

    name = "degeneracy_pairing"
    markov = True

    def __init__(self, k: int = 3, graph: Optional[Graph] = None):
        if k < 3:
            raise ValueError("clique size must be >= 3")
        self.k = k
        self.graph = graph

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        order = degeneracy_order(g, 2 * self.k - 4)
        if order is None:
            raise ValueError(f"board not ({2 * self.k - 4})-degenerate")
        self.order = order
        pos = {v: i for i, v in enumerate(order)}
        self.later = []
        back = [0] * g.n
        for i, (u, v) in enumerate(g.edge_list):
            w = u if pos[u] > pos[v] else v
            self.later.append(w)
            back[w] |= 1 << i
        self.back = back
        self.fallbacks = 0

    def choose(self, state, rng):
        last = state.last_turn(self.side.other)
        if last:
            cand = self.back[self.later[last[-1]]] & state.free
            if cand:
                return bits(cand)[0]
        self.fallbacks += 1
        return state.free_elements()[0]

    def max_maker_back_edges(self, maker: int) -> int:
        return max(((b & maker).bit_count() for b in self.back), default=0)


class WheelPairingBreaker(Strategy):
    """Pairs spoke (hub, r_i) with rim edge (r_i, r_{i+1}) on a wheel.

    Expects the labelling of :func:`wheel_graph`: hub 0, rim 1..r.
    """

    name = "wheel_pairing"
    markov = True

    def __init__(self, graph: Optional[Graph] = None):
        self.graph = graph

    def reset(self, game, side):
        super().reset(game, side)
        g = _board_graph(game, self.graph)
        rim = g.n - 1
        if rim < 4:
            raise ValueError("wheel pairing needs rim length >= 4 (rim 3 is K_4)")
        if g != wheel_graph(rim):
            raise ValueError("board must be wheel_graph(rim): hub 0, rim 1..rim")
        idx = g.edge_index
        self.partner = {}
        for i in range(1, rim + 1):
            spoke = idx[(0, i)]
            j = i % rim + 1
            rim_edge = idx[(min(i, j), max(i, j))]
            self.partner[spoke] = rim_edge
            self.partner[rim_edge] = spoke
        self.pairs = [(idx[(0, i)], self.partner[idx[(0, i)]]) for i in range(1, rim + 1)]

    def choose(self, state, rng):
        last = state.last_turn(self.side.other)
        if last:
            y = self.partner[last[-1]]
            if state.free >> y & 1:
                return y
        return state.free_elements()[0]
