"""Baseline strategies."""

from __future__ import annotations

from ..game import Strategy


class RandomStrategy(Strategy):
    """Uniformly random free element."""

    name = "random"
    markov = True  # the verifier derives its generator from the position

    def choose(self, state, rng):
        free = state.free_elements()
        return free[int(rng.integers(len(free)))]


class FirstFree(Strategy):
    """Lowest-index free element."""

    name = "first_free"
    markov = True

    def choose(self, state, rng):
        return state.free_elements()[0]
