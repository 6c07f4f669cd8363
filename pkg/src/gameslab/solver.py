"""Exact minimax for small Maker/Breaker games.

Internally every game is a *claimer* trying to fully occupy one set of an
explicit family against a *blocker*.  For an explicit Maker family the
claimer is Maker; for an oracle family solved through its ``dual`` (e.g.
cuts for connectivity) the claimer is Breaker.

A position is reduced to the claimer's live residuals (sets not touched by
the blocker, minus what the claimer already owns), with supersets dropped,
plus the turn phase.  Elements outside every live residual are dead: owning
one never matters, and in these monotone games the mover never does better
by taking a dead element than a live one, so only live moves are searched.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional

import numpy as np

from .game import BiasedGame, GameState, Player, Strategy, WinningFamily, bits, popcount
from .graphs import derive_seed, make_rng
from .limits import LimitExceeded, current_limits


@dataclass
class SolveResult:
    winner: Player
    principal_move: Optional[Hashable]
    nodes: int
    cached: bool = False


def _minimal(sets) -> frozenset:
    """Drop every set that contains another one."""
    ordered = sorted(set(sets), key=popcount)
    keep: list[int] = []
    for s in ordered:
        if not any(k & ~s == 0 for k in keep):
            keep.append(s)
    return frozenset(keep)


@dataclass
class _Frame:
    """Claimer/blocker reading of a game."""

    claimer: Player
    sets: tuple
    size: int


def _frame(game: BiasedGame) -> _Frame:
    fam = game.family
    if fam.is_explicit:
        return _Frame(Player.MAKER, fam.sets, game.size)
    if fam.dual is not None:
        if tuple(fam.dual.board) != tuple(game.board):
            raise ValueError("dual family must live on the game board")
        return _Frame(Player.BREAKER, fam.dual.sets, game.size)
    raise ValueError(
        f"family {fam.name!r} is an oracle family without an explicit dual; "
        "materialise it before solving"
    )


def _check_size(game: BiasedGame) -> None:
    lim = current_limits()
    cap = lim.solver_board if game.a == game.b == 1 else lim.solver_board_biased
    if game.size > cap:
        raise LimitExceeded(f"solver board limit exceeded: {game.size} elements > {cap}")


def _residuals(frame: _Frame, maker: int, breaker: int) -> frozenset:
    own, opp = (maker, breaker) if frame.claimer is Player.MAKER else (breaker, maker)
    return _minimal(s & ~own for s in frame.sets if not s & opp)


class Solver:
    """Memoised exact search; one instance may be reused across positions of a game."""

    def __init__(self, game: BiasedGame, use_cache: bool = True):
        self.game = game
        self.frame = _frame(game)
        self.use_cache = use_cache
        self.memo: dict = {}
        self.nodes = 0
        self.node_cap = current_limits().solver_nodes

    def _bias(self, role_is_claimer: bool) -> int:
        player = self.frame.claimer if role_is_claimer else self.frame.claimer.other
        return self.game.bias(player)

    def claimer_wins(self, res: frozenset, claimer_to_move: bool, picks: int) -> bool:
        if 0 in res:
            return True
        if not res:
            return False
        key = (res, claimer_to_move, picks)
        if self.use_cache:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise LimitExceeded(f"solver node budget exceeded ({self.node_cap})")
        value = self._search(res, claimer_to_move, picks)
        if self.use_cache:
            self.memo[key] = value
        return value

    def _next_phase(self, claimer_to_move: bool, picks: int) -> tuple[bool, int]:
        if picks > 1:
            return claimer_to_move, picks - 1
        return (not claimer_to_move), self._bias(not claimer_to_move)

    def _moves(self, res: frozenset) -> list[int]:
        weight: dict[int, float] = {}
        for r in res:
            w = 2.0 ** -popcount(r)
            for x in bits(r):
                weight[x] = weight.get(x, 0.0) + w
        return sorted(weight, key=lambda x: (-weight[x], x))

    def child(self, res: frozenset, claimer_to_move: bool, x: int) -> frozenset:
        bit = 1 << x
        if claimer_to_move:
            return _minimal(r & ~bit for r in res)
        return frozenset(r for r in res if not r & bit)

    def _search(self, res: frozenset, claimer_to_move: bool, picks: int) -> bool:
        nxt = self._next_phase(claimer_to_move, picks)
        for x in self._moves(res):
            value = self.claimer_wins(self.child(res, claimer_to_move, x), *nxt)
            if value == claimer_to_move:
                return value
        return not claimer_to_move

    # -- public helpers ---------------------------------------------------

    def position(self, state: GameState) -> tuple[frozenset, bool, int]:
        res = _residuals(self.frame, state.maker, state.breaker)
        picks = state.picks_left(self.game)
        return res, state.turn is self.frame.claimer, picks

    def winner(self, state: GameState) -> Player:
        res, ctm, picks = self.position(state)
        if picks == 0:  # board exhausted
            return self.frame.claimer if 0 in res else self.frame.claimer.other
        win = self.claimer_wins(res, ctm, picks)
        return self.frame.claimer if win else self.frame.claimer.other

    def best_move(self, state: GameState) -> int:
        """Lowest-index free element that keeps the mover's game value."""
        free = state.free_elements()
        if not free:
            raise ValueError("no free element")
        mover = state.turn
        if self.winner(state) is not mover:
            return free[0]
        for x in free:
            nxt = state.copy()
            nxt.claim(self.game, x)
            if self._terminal_winner(nxt) is mover:
                return x
            if nxt.free and self.winner(nxt) is mover:
                return x
        raise AssertionError("winning position without a winning move")

    def _terminal_winner(self, state: GameState) -> Optional[Player]:
        res = _residuals(self.frame, state.maker, state.breaker)
        if 0 in res:
            return self.frame.claimer
        if not res:
            return self.frame.claimer.other
        if not state.free:
            return self.frame.claimer.other
        return None


_SHARED: dict[int, Solver] = {}


def solve(game: BiasedGame, use_cache: bool = True, check_limits: bool = True) -> SolveResult:
    """Winner of ``game`` under optimal play, with a principal first move."""
    if check_limits:
        _check_size(game)
    if game.family.vacuous:
        return SolveResult(Player.MAKER, None, 0, False)
    solver = _SHARED.get(id(game)) if use_cache else None
    if solver is None or solver.game is not game:
        solver = Solver(game, use_cache)
        if use_cache:
            _SHARED.clear()
            _SHARED[id(game)] = solver
    state = game.initial_state()
    key = solver.position(state)
    cached = use_cache and key in solver.memo
    before = solver.nodes
    winner = solver.winner(state) if state.free else (
        Player.MAKER if game.family.maker_wins(0) is not None else Player.BREAKER
    )
    move = solver.best_move(state) if state.free else None
    return SolveResult(
        winner,
        None if move is None else game.board[move],
        solver.nodes - before,
        cached,
    )


def best_move(game: BiasedGame, state: GameState) -> int:
    """Index of a value-preserving move for the side to move (ties: lowest index)."""
    _check_size(game)
    return Solver(game).best_move(state)


class SolverOptimal(Strategy):
    """Plays :func:`best_move`; only for boards within the solver limits."""

    name = "solver_optimal"
    markov = True

    def reset(self, game, side):
        super().reset(game, side)
        _check_size(game)
        self.solver = Solver(game)

    def choose(self, state, rng):
        return self.solver.best_move(state)


# ---------------------------------------------------------------------------
# strategy verification


@dataclass
class VerifyResult:
    ok: bool
    counterexample: Optional[list] = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.ok


class _Search:
    def __init__(self, strategy, game, side, canonical, frame, seed):
        self.strategy = strategy
        self.game = game
        self.side = side
        self.canonical = canonical
        self.frame = frame
        self.seed = seed
        self.memo: dict = {}
        self.nodes = 0
        self.cap = current_limits().solver_nodes

    def status(self, state: GameState) -> Optional[Player]:
        res = _residuals(self.frame, state.maker, state.breaker)
        if 0 in res:
            return self.frame.claimer
        if not res:
            return self.frame.claimer.other
        if not state.free:
            return self.frame.claimer.other
        return None

    def key(self, state: GameState):
        if self.canonical is not None:
            return self.canonical(self.game, state)
        if not self.strategy.markov:
            return None
        opp = tuple(state.last_turn(self.side.other))
        return (state.maker, state.breaker, state.turn, state.taken_this_turn, opp)

    def wins(self, state: GameState, strat) -> Optional[list]:
        """None if the strategy wins from here, else a losing continuation."""
        done = self.status(state)
        if done is not None:
            return None if done is self.side else []
        key = self.key(state)
        if key is not None and key in self.memo:
            return self.memo[key]
        self.nodes += 1
        if self.nodes > self.cap:
            raise LimitExceeded(f"verification node budget exceeded ({self.cap})")
        result = self._expand(state, strat)
        if key is not None:
            self.memo[key] = result
        return result

    def _expand(self, state: GameState, strat) -> Optional[list]:
        if state.turn is self.side:
            rng = make_rng(derive_seed(self.seed, len(state.history), state.maker & 0xFFFFFFFF, state.breaker & 0xFFFFFFFF))
            x = strat.choose(state, rng)
            if not state.free >> int(x) & 1:
                raise RuntimeError(f"strategy {strat.name!r} returned non-free element {x!r}")
            nxt = state.copy()
            nxt.claim(self.game, int(x))
            bad = self.wins(nxt, strat)
            return None if bad is None else [(state.turn, self.game.board[int(x)])] + bad
        seen = set()
        for x in state.free_elements():
            nxt = state.copy()
            nxt.claim(self.game, x)
            if self.canonical is not None:
                k = self.canonical(self.game, nxt)
                if k in seen:
                    continue
                seen.add(k)
            branch = strat if self.strategy.markov or self.canonical is not None else copy.deepcopy(strat)
            bad = self.wins(nxt, branch)
            if bad is not None:
                return [(state.turn, self.game.board[x])] + bad
        return None


def verify_strategy(
    strategy: Strategy,
    game: BiasedGame,
    side,
    canonical: Optional[Callable[[BiasedGame, GameState], Hashable]] = None,
    seed: int = 0,
) -> VerifyResult:
    """Does ``strategy`` playing ``side`` win against every opponent line?

    ``canonical`` optionally maps positions to a symmetry-reduced key; the
    opponent then tries one move per resulting class.  It must only be used
    with strategies whose decisions are invariant under that symmetry.
    The board limit is not applied when a canonical key is supplied.
    """
    side = Player(side)
    if canonical is None:
        _check_size(game)
    frame = _frame(game)
    strategy.reset(game, side)
    if game.family.vacuous:
        return VerifyResult(side is Player.MAKER, None if side is Player.MAKER else [], 0)
    search = _Search(strategy, game, side, canonical, frame, seed)
    bad = search.wins(game.initial_state(), strategy)
    return VerifyResult(bad is None, bad, search.nodes)
