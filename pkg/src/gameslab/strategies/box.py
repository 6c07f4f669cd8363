"""Box game: BoxMaker tries to fill one of several disjoint boxes.

BoxMaker (the game's Maker, bias b) plays against BoxBreaker (bias 1 or
2).  A box survives while BoxBreaker owns none of its elements.

Rule used here: if some surviving box can be completed with the picks left
in this turn, fill it (smallest such box first).  Otherwise claim in the
surviving box with the most free elements, keeping the boxes level.
Attacking the box with the fewest free elements instead is a losing rule
in general (e.g. 4 boxes of size 5 at b=3); it is kept as ``mode="fewest"``
for the bias-1 fallback used by the isolation Breaker.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from ..game import BiasedGame, GameState, Player, Strategy, WinningFamily, bits, boxes, popcount


def harmonic(k: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def box_condition(k: int, s: int, b: int) -> bool:
    """BoxMaker's guarantee for k equal boxes of size s: s <= (b-1) H_{k-1}."""
    return s <= (b - 1) * harmonic(k - 1)


def pick_box(box_masks: Sequence[int], own: int, opp: int, free: int, picks_left: int,
             mode: str = "balance") -> Optional[int]:
    """Index of the box to claim in, or None when no surviving box has a free element."""
    best = None
    finish = None
    for i, m in enumerate(box_masks):
        if m & opp:
            continue
        f = popcount(m & free)
        if f == 0:
            continue
        if mode == "balance" and f <= picks_left and (finish is None or f < finish[0]):
            finish = (f, i)
        if mode == "balance":
            if best is None or f > best[0]:
                best = (f, i)
        elif best is None or f < best[0]:
            best = (f, i)
    if finish is not None:
        return finish[1]
    return None if best is None else best[1]


def box_maker_move(state: GameState, box_masks: Sequence[int], side: Player, picks_left: int,
                   mode: str = "balance") -> int:
    own, opp = state.owned(side), state.owned(side.other)
    i = pick_box(box_masks, own, opp, state.free, picks_left, mode)
    if i is None:
        raise ValueError("no surviving box")
    return bits(box_masks[i] & state.free)[0]


class BoxMaker(Strategy):
    name = "box_maker"
    markov = True

    def __init__(self, mode: str = "balance"):
        if mode not in ("balance", "fewest"):
            raise ValueError(f"unknown box mode {mode!r}")
        self.mode = mode

    def reset(self, game: BiasedGame, side: Player) -> None:
        super().reset(game, side)
        fam = game.family
        if not fam.is_explicit:
            raise ValueError("box_maker needs an explicit box family")
        seen = 0
        for s in fam.sets:
            if s & seen:
                raise ValueError("box_maker needs pairwise disjoint boxes")
            seen |= s
        self.boxes = list(fam.sets)

    def choose(self, state, rng):
        try:
            return box_maker_move(state, self.boxes, self.side, state.picks_left(self.game), self.mode)
        except ValueError:
            return state.free_elements()[0]  # every box destroyed; any move


def box_game(k: int, s: int, b: int, breaker_bias: int = 1) -> BiasedGame:
    """k equal boxes of size s, BoxMaker (Maker) bias b moving first."""
    fam = boxes([s] * k)
    return BiasedGame(fam.board, fam, b, breaker_bias, Player.MAKER)


def box_canonical_key(game: BiasedGame, state: GameState):
    """Symmetry key: permuting boxes or slots inside a box changes nothing.

    Kept per box: its size and BoxMaker's count, for surviving boxes only;
    plus the number of free elements in destroyed boxes.
    """
    alive = []
    dead_free = 0
    for m in game.family.sets:
        if m & state.breaker:
            dead_free += popcount(m & state.free)
        else:
            alive.append((popcount(m), popcount(m & state.maker)))
    return (tuple(sorted(alive)), dead_free, state.turn, state.taken_this_turn)
