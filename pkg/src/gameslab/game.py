"""Biased Maker/Breaker games: families, state machine and the play loop.

Board elements are referred to by their *index* into ``board`` everywhere
inside the engine; labels (edges, ordered pairs, ...) only appear at the
edges of the API (transcripts, witnesses, JSON).  Explicit winning sets are
stored as integer bitmasks over those indices.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from . import oracles
from .graphs import Graph, derive_seed, make_rng
from .limits import current_limits


class Player(str, enum.Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER

    def __str__(self) -> str:
        return self.value.capitalize()


class FamilyTooLarge(ValueError):
    pass


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


# ---------------------------------------------------------------------------
# winning families


@dataclass(frozen=True, eq=False)
class WinningFamily:
    """Winning sets over a board.

    ``kind == "explicit"``: ``sets`` holds deduplicated bitmasks.
    ``kind == "oracle"``: ``predicate`` decides a Maker win from the labels
    Maker owns.  An oracle family may carry ``dual``, an explicit family of
    sets Breaker must fully claim to win (e.g. the cuts of the board graph
    for connectivity); the solver uses it for exact play.  ``dual_factory``
    builds it on first access, so plain play never pays for it.
    """

    board: tuple
    kind: str = "explicit"
    sets: tuple[int, ...] = ()
    predicate: Optional[Callable[[frozenset], bool]] = None
    dual_factory: Optional[Callable[[], Optional["WinningFamily"]]] = None
    name: str = "family"
    flags: frozenset = frozenset()
    graph: Optional[Graph] = None

    def __post_init__(self):
        if self.kind not in ("explicit", "oracle"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "oracle" and self.predicate is None:
            raise ValueError("oracle family needs a predicate")
        full = (1 << len(self.board)) - 1
        if any(s & ~full for s in self.sets):
            raise ValueError("winning set not contained in the board")

    @classmethod
    def explicit(
        cls,
        board: Sequence[Hashable],
        sets: Iterable[Iterable[Hashable]],
        name: str = "explicit",
        graph: Optional[Graph] = None,
        extra_flags: Iterable[str] = (),
    ) -> "WinningFamily":
        board = tuple(board)
        index = {x: i for i, x in enumerate(board)}
        masks = []
        for s in sets:
            m = 0
            for x in s:
                if x not in index:
                    raise ValueError(f"winning set element {x!r} not on the board")
                m |= 1 << index[x]
            masks.append(m)
        return cls.from_masks(board, masks, name=name, graph=graph, extra_flags=extra_flags)

    @classmethod
    def from_masks(
        cls,
        board: Sequence[Hashable],
        masks: Iterable[int],
        name: str = "explicit",
        graph: Optional[Graph] = None,
        extra_flags: Iterable[str] = (),
    ) -> "WinningFamily":
        uniq = tuple(dict.fromkeys(masks))
        flags = set(extra_flags)
        if 0 in uniq:
            flags.add("vacuous")
        return cls(tuple(board), "explicit", uniq, name=name, flags=frozenset(flags), graph=graph)

    @property
    def dual(self) -> Optional["WinningFamily"]:
        if self.dual_factory is None:
            return None
        if "_dual" not in self.__dict__:
            object.__setattr__(self, "_dual", self.dual_factory())
        return self.__dict__["_dual"]

    @property
    def is_explicit(self) -> bool:
        return self.kind == "explicit"

    @property
    def vacuous(self) -> bool:
        """Maker wins without moving (the empty set is winning)."""
        return "vacuous" in self.flags

    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.board)}

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.board[i] for i in bits(mask))

    def set_labels(self) -> list[frozenset]:
        return [self.labels(s) for s in self.sets]

    def sizes(self) -> list[int]:
        return [popcount(s) for s in self.sets]

    def maker_wins(self, maker_mask: int) -> Optional[int]:
        """Witness mask if ``maker_mask`` completes a winning set, else None.

        For oracle families the witness is Maker's whole set.
        """
        if self.kind == "explicit":
            for s in self.sets:
                if s & ~maker_mask == 0:
                    return s
            return None
        return maker_mask if self.predicate(self.labels(maker_mask)) else None

    def __len__(self) -> int:
        return len(self.sets)

    def __repr__(self) -> str:
        size = f"{len(self.sets)} sets" if self.is_explicit else "oracle"
        return f"WinningFamily({self.name!r}, |X|={len(self.board)}, {size})"


def thin_family(family: WinningFamily, surviving: Iterable[Hashable]) -> WinningFamily:
    """Keep the sets lying entirely inside ``surviving``; the board shrinks to it."""
    if not family.is_explicit:
        raise ValueError("thinning needs an explicit family; oracle families thin via the board graph")
    keep = set(surviving)
    new_board = tuple(x for x in family.board if x in keep)
    kept = [s for s in family.set_labels() if s <= keep]
    return WinningFamily.explicit(new_board, kept, name=f"{family.name}_p")


def induce_family(family: WinningFamily, surviving: Iterable[Hashable]) -> WinningFamily:
    """Replace every set by its trace on ``surviving``.

    An empty trace is kept and flagged ``induced_empty``: in the transversal
    reading the blocker can then never hit that set.
    """
    if not family.is_explicit:
        raise ValueError("inducing needs an explicit family")
    keep = set(surviving)
    new_board = tuple(x for x in family.board if x in keep)
    traces = [s & keep for s in family.set_labels()]
    flags = ["induced_empty"] if any(not t for t in traces) else []
    return WinningFamily.explicit(new_board, traces, name=f"{family.name}_cap", extra_flags=flags)


# ---------------------------------------------------------------------------
# family builders


def _cap(count: int) -> None:
    cap = current_limits().family_cap
    if count > cap:
        raise FamilyTooLarge(
            f"explicit family would have {count} sets (> cap {cap}); use a smaller n"
        )


def _edge_mask(g: Graph, edges: Iterable[tuple[int, int]]) -> int:
    idx = g.edge_index
    m = 0
    for e in edges:
        m |= 1 << idx[e]
    return m


def incidence_masks(g: Graph) -> list[int]:
    """Per vertex, the mask of board edges (indices into ``g.edge_list``) at it."""
    inc = [0] * g.n
    for i, (u, v) in enumerate(g.edge_list):
        inc[u] |= 1 << i
        inc[v] |= 1 << i
    return inc


def cut_masks(g: Graph, max_side: Optional[int] = None, removed: int = 0) -> list[int]:
    """Edge masks E_G(S, V' \\ S) over bipartitions of V' = V minus ``removed``.

    With ``max_side`` only bipartitions whose smaller side has at most that
    many vertices are listed.
    """
    verts = [v for v in range(g.n) if not (removed >> v) & 1]
    r = len(verts)
    if r < 2:
        return []
    top = r // 2 if max_side is None else min(max_side, r // 2)
    count = sum(math.comb(r, k) for k in range(1, top + 1))
    _cap(count)
    inc = incidence_masks(g)
    dead = 0
    for v in range(g.n):
        if (removed >> v) & 1:
            dead |= inc[v]
    out = []
    for k in range(1, top + 1):
        for side in combinations(verts, k):
            if 2 * k == r and side[0] != verts[0]:
                continue  # each balanced bipartition once
            m = 0
            for v in side:
                m ^= inc[v]  # edges with exactly one end in the side
            out.append(m & ~dead)
    return out


def cuts(g: Graph, max_side: Optional[int] = None) -> WinningFamily:
    if max_side is None and g.n > current_limits().cut_vertices:
        raise FamilyTooLarge(f"full cut family needs n <= {current_limits().cut_vertices}")
    name = "cuts" if max_side is None else f"cuts_le{max_side}"
    return WinningFamily.from_masks(g.edge_list, cut_masks(g, max_side), name=name, graph=g)


def removed_cuts(g: Graph, k: int) -> WinningFamily:
    """Cuts of G - V0 for every k-set V0 (edges of G between V1 and V2)."""
    _cap(math.comb(g.n, k) * (2 ** max(g.n - k - 1, 0)))
    masks = []
    for v0 in combinations(range(g.n), k):
        masks.extend(cut_masks(g, removed=sum(1 << v for v in v0)))
    return WinningFamily.from_masks(g.edge_list, masks, name=f"removed_cuts{k}", graph=g)


def clique_masks(g: Graph, k: int) -> list[int]:
    out = []
    for q in oracles.all_cliques(g, k):
        out.append(_edge_mask(g, combinations(q, 2)))
    return out


def cliques(g: Graph, k: int) -> WinningFamily:
    return WinningFamily.from_masks(g.edge_list, clique_masks(g, k), name=f"K{k}", graph=g)


def default_halves(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(range(n // 2)), tuple(range(n // 2, n))


def hall(g: Graph, A: Sequence[int], B: Sequence[int]) -> WinningFamily:
    """Sets E_G(X, Y), X in A, Y in B nonempty, |X| + |Y| = n/2 + 1."""
    if len(A) != len(B):
        raise ValueError("Hall family needs |A| = |B|")
    half = len(A)
    target = half + 1
    _cap(math.comb(2 * half, target))
    masks = []
    for kx in range(1, half + 1):
        ky = target - kx
        if not 1 <= ky <= half:
            continue
        for X in combinations(A, kx):
            for Y in combinations(B, ky):
                Yset = set(Y)
                masks.append(
                    _edge_mask(g, (e for e in g.edge_list if (e[0] in X and e[1] in Yset) or (e[1] in X and e[0] in Yset)))
                )
    return WinningFamily.from_masks(g.edge_list, masks, name="hall", graph=g)


def boxes(sizes: Sequence[int]) -> WinningFamily:
    """Disjoint boxes; element ``(i, j)`` is slot j of box i."""
    board = [(i, j) for i, s in enumerate(sizes) for j in range(s)]
    sets = [[(i, j) for j in range(s)] for i, s in enumerate(sizes)]
    return WinningFamily.explicit(board, sets, name="boxes")


def star_boxes(g: Graph, centres: Sequence[int]) -> WinningFamily:
    """Ordered-pair stars W_v = {(v, u) : u adjacent to v}, v in ``centres``."""
    board = [(v, u) for v in centres for u in sorted(g.adj[v])]
    sets = [[(v, u) for u in sorted(g.adj[v])] for v in centres]
    return WinningFamily.explicit(board, sets, name="stars")


def _graph_of(g: Graph, labels: frozenset) -> Graph:
    return Graph(g.n, frozenset(labels))


def connectivity(g: Graph) -> WinningFamily:
    dual = (lambda: cuts(g)) if g.n <= current_limits().cut_vertices else None
    return WinningFamily(
        g.edge_list, "oracle", predicate=lambda s: oracles.is_connected(_graph_of(g, s)),
        dual_factory=dual, name="connectivity", graph=g,
    )


def perfect_matching(g: Graph) -> WinningFamily:
    return WinningFamily(
        g.edge_list, "oracle", predicate=lambda s: oracles.has_perfect_matching(_graph_of(g, s)),
        name="perfect_matching", graph=g,
    )


def ab_matching(g: Graph, A: Optional[Sequence[int]] = None, B: Optional[Sequence[int]] = None) -> WinningFamily:
    """Maker wins with a perfect matching of A-B edges; the dual is the Hall family."""
    if g.n % 2:
        raise ValueError(f"A-B matching needs an even number of vertices, got n={g.n}")
    if A is None:
        A, B = default_halves(g.n)
    A, B = tuple(A), tuple(B)
    return WinningFamily(
        g.edge_list, "oracle",
        predicate=lambda s: oracles.bipartite_hall_violation(_graph_of(g, s), A, B) is None,
        dual_factory=lambda: hall(g, A, B), name="ab_matching", graph=g,
    )


def hamiltonicity(g: Graph) -> WinningFamily:
    return WinningFamily(
        g.edge_list, "oracle", predicate=lambda s: oracles.has_hamiltonian_cycle(_graph_of(g, s)),
        name="hamiltonicity", graph=g,
    )


def k_clique(g: Graph, k: int) -> WinningFamily:
    return WinningFamily(
        g.edge_list, "oracle", predicate=lambda s: oracles.contains_clique(_graph_of(g, s), k),
        name=f"clique{k}", graph=g,
    )


def build_family(kind: str, g: Graph, **params: Any) -> WinningFamily:
    """Construct a named family on board graph ``g``.

    Explicit kinds: ``cuts``, ``removed_cuts`` (k), ``cliques`` (k),
    ``hall`` (A, B), ``stars`` (centres).  Oracle kinds: ``connectivity``,
    ``perfect_matching``, ``ab_matching`` (A, B), ``hamiltonicity``, ``k_clique`` (k).
    """
    if kind == "cuts":
        return cuts(g, params.get("max_side"))
    if kind == "removed_cuts":
        return removed_cuts(g, params["k"])
    if kind == "cliques":
        return cliques(g, params["k"])
    if kind == "hall":
        A, B = params.get("A"), params.get("B")
        if A is None:
            A, B = default_halves(g.n)
        return hall(g, A, B)
    if kind in ("stars", "boxes"):
        return star_boxes(g, params["centres"])
    if kind == "connectivity":
        return connectivity(g)
    if kind == "perfect_matching":
        return perfect_matching(g)
    if kind == "hamiltonicity":
        return hamiltonicity(g)
    if kind == "ab_matching":
        return ab_matching(g, params.get("A"), params.get("B"))
    if kind == "k_clique":
        return k_clique(g, params["k"])
    raise ValueError(f"unknown family kind {kind!r}")


FAMILY_KINDS = (
    "cuts", "removed_cuts", "cliques", "hall", "stars",
    "connectivity", "perfect_matching", "ab_matching", "hamiltonicity", "k_clique",
)


# ---------------------------------------------------------------------------
# game, state, outcome


@dataclass(frozen=True, eq=False)
class BiasedGame:
    board: tuple
    family: WinningFamily
    a: int = 1
    b: int = 1
    first: Player = Player.MAKER

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"biases must be >= 1, got a={self.a}, b={self.b}")
        if tuple(self.family.board) != tuple(self.board):
            raise ValueError("family board does not match the game board")
        object.__setattr__(self, "first", Player(self.first))

    def bias(self, player: Player) -> int:
        return self.a if player is Player.MAKER else self.b

    @property
    def size(self) -> int:
        return len(self.board)

    @property
    def graph(self) -> Optional[Graph]:
        return self.family.graph

    def initial_state(self) -> "GameState":
        return GameState(self.first, size=len(self.board))


def new_game(board, family: WinningFamily, a: int = 1, b: int = 1, first="maker") -> BiasedGame:
    return BiasedGame(tuple(board), family, a, b, Player(first))


@dataclass
class GameState:
    turn: Player
    size: int
    maker: int = 0
    breaker: int = 0
    taken_this_turn: int = 0
    history: list = field(default_factory=list)

    @property
    def claimed(self) -> int:
        return self.maker | self.breaker

    @property
    def free(self) -> int:
        return ((1 << self.size) - 1) & ~self.claimed

    def free_elements(self) -> list[int]:
        return bits(self.free)

    def owned(self, player: Player) -> int:
        return self.maker if player is Player.MAKER else self.breaker

    def picks_left(self, game: BiasedGame) -> int:
        return min(game.bias(self.turn) - self.taken_this_turn, popcount(self.free))

    def claim(self, game: BiasedGame, x: int) -> None:
        """Claim element ``x`` for the side to move and advance the turn phase."""
        bit = 1 << x
        if not self.free & bit:
            raise ValueError(f"element {x} is not free")
        if self.turn is Player.MAKER:
            self.maker |= bit
        else:
            self.breaker |= bit
        self.history.append((self.turn, x))
        self.taken_this_turn += 1
        if self.taken_this_turn >= game.bias(self.turn) or not self.free:
            self.turn = self.turn.other
            self.taken_this_turn = 0

    def last_turn(self, player: Player) -> list[int]:
        """Elements claimed by ``player`` in their most recent completed or running turn."""
        out = []
        for who, x in reversed(self.history):
            if who is player:
                out.append(x)
            elif out:
                break
        return out[::-1]

    def copy(self) -> "GameState":
        return GameState(self.turn, self.size, self.maker, self.breaker, self.taken_this_turn, list(self.history))


class StrategyError(RuntimeError):
    pass


class Strategy:
    """Move chooser.  ``choose`` returns the index of a free board element.

    A strategy is *markov* when its choice depends only on the two claim
    masks, the turn phase and the opponent's latest turn; the verifier can
    then memoise on those.
    """

    name = "strategy"
    markov = False

    def reset(self, game: BiasedGame, side: Player) -> None:
        self.game = game
        self.side = side

    def choose(self, state: GameState, rng: np.random.Generator) -> int:
        raise NotImplementedError

    def verdict(self) -> Optional[str]:
        """A static assessment such as ``"already_won"`` or ``"unwinnable"``."""
        return None


@dataclass
class Outcome:
    winner: Player
    witness: Optional[frozenset]
    transcript: list
    seed: Optional[int] = None
    strategies: tuple = ()
    maker_set: frozenset = frozenset()
    notes: dict = field(default_factory=dict)

    def transcript_text(self) -> str:
        lines = [f"{i} {p.value} {_fmt(x)}" for i, (p, x) in enumerate(self.transcript)]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> str:
        return json.dumps(
            {
                "winner": self.winner.value,
                "witness": None if self.witness is None else sorted(_jsonable(x) for x in self.witness),
                "seed": self.seed,
                "strategies": {"maker": self.strategies[0], "breaker": self.strategies[1]}
                if self.strategies else {},
                "transcript": [[p.value, _jsonable(x)] for p, x in self.transcript],
                "notes": self.notes,
            },
            sort_keys=True,
        )


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "-".join(str(v) for v in x)
    return str(x)


def play(
    game: BiasedGame,
    maker: Strategy,
    breaker: Strategy,
    seed: int = 0,
    incremental: bool = False,
) -> Outcome:
    """Play to the end of the board (or until Maker completes an explicit set).

    Oracle families are evaluated on Maker's final set unless
    ``incremental`` is set, in which case the predicate is checked after
    every Maker claim.
    """
    family = game.family
    state = game.initial_state()
    maker.reset(game, Player.MAKER)
    breaker.reset(game, Player.BREAKER)
    rngs = {Player.MAKER: make_rng(derive_seed(seed, 0)), Player.BREAKER: make_rng(derive_seed(seed, 1))}
    strategies = {Player.MAKER: maker, Player.BREAKER: breaker}
    names = (maker.name, breaker.name)

    def outcome(winner: Player, witness: Optional[int]) -> Outcome:
        return Outcome(
            winner,
            None if witness is None else family.labels(witness),
            [(p, game.board[x]) for p, x in state.history],
            seed,
            names,
            family.labels(state.maker),
        )

    if family.vacuous:
        return outcome(Player.MAKER, 0)

    containing: dict[int, list[int]] = {}
    if family.is_explicit:
        for s in family.sets:
            for x in bits(s):
                containing.setdefault(x, []).append(s)

    while state.free:
        mover = state.turn
        x = strategies[mover].choose(state, rngs[mover])
        if not isinstance(x, (int, np.integer)) or not state.free >> int(x) & 1:
            raise StrategyError(f"strategy {strategies[mover].name!r} returned non-free element {x!r}")
        x = int(x)
        state.claim(game, x)
        if mover is Player.MAKER:
            if family.is_explicit:
                for s in containing.get(x, ()):
                    if s & ~state.maker == 0:
                        return outcome(Player.MAKER, s)
            elif incremental:
                w = family.maker_wins(state.maker)
                if w is not None:
                    return outcome(Player.MAKER, w)
    w = family.maker_wins(state.maker)
    if w is not None:
        return outcome(Player.MAKER, w)
    return outcome(Player.BREAKER, None)
