"""Potential-function criteria and the greedy potential blocker.

The blocker faces a claimer with bias ``claimer_bias`` and owns bias
``blocker_bias``.  A winning set untouched by the blocker, with ``r``
elements still missing for the claimer, carries weight
``(1 + blocker_bias) ** (-r / claimer_bias)``.  Each blocker pick takes the
free element whose live sets carry the most weight (ties: lowest index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from ..game import BiasedGame, GameState, Player, Strategy, WinningFamily, bits, popcount

# Sum of set sizes above which the sparse backend is used.
SPARSE_FROM = 4000


@dataclass
class PotentialReport:
    total: float
    per_set: dict
    satisfied: bool
    threshold: float

    def __str__(self) -> str:
        verdict = "satisfied" if self.satisfied else "not satisfied"
        return f"sum={self.total:.6g} threshold={self.threshold:.6g} {verdict}"


def _require_explicit(family: WinningFamily) -> None:
    if not family.is_explicit:
        raise ValueError(f"family {family.name!r} is an oracle family; the criterion needs explicit sets")


def _terms(family: WinningFamily, base: float, exponent_div: float) -> dict:
    out = {}
    for s in family.sets:
        out[family.labels(s)] = base ** (-popcount(s) / exponent_div)
    return out


def _report(family, a, b, threshold) -> PotentialReport:
    _require_explicit(family)
    if a < 1 or b < 1:
        raise ValueError("biases must be >= 1")
    per_set = _terms(family, 1.0 + b, a)
    total = math.fsum(per_set.values())
    return PotentialReport(total, per_set, total < threshold, threshold)


def es_condition(family: WinningFamily, a: int, b: int, first) -> PotentialReport:
    """Biased potential criterion; the threshold is 1 when Breaker starts, 1/(1+b) otherwise."""
    first = Player(first)
    threshold = 1.0 if first is Player.BREAKER else 1.0 / (1 + b)
    return _report(family, a, b, threshold)


def gen_es_condition(family: WinningFamily, a: int, b: int, c: int) -> PotentialReport:
    """Criterion for blocking every union of ``c`` winning sets: sum < c/(1+b)."""
    if c < 1:
        raise ValueError("c must be a positive integer")
    return _report(family, a, b, c / (1.0 + b))


@dataclass
class RandomizedEsParams:
    b: int
    p: float
    delta: float
    derived_bias: int
    potential: float
    min_size_ratio: float
    probability_ok: bool
    sum_ok: bool

    @property
    def satisfied(self) -> bool:
        return self.probability_ok and self.sum_ok


def randomized_es_feasibility(family: WinningFamily, b: int, p: float, delta: float) -> RandomizedEsParams:
    """Check the random-board potential conditions and derive the blocker bias.

    Conditions: sum of 2^(-|A|/b) below 1 and p > 4 ln 2 / (delta^2 b).
    The derived bias is floor((1 - delta) p b).
    """
    _require_explicit(family)
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if b < 1:
        raise ValueError("b must be >= 1")
    sizes = family.sizes()
    total = math.fsum(2.0 ** (-s / b) for s in sizes)
    return RandomizedEsParams(
        b=b, p=p, delta=delta,
        derived_bias=math.floor((1 - delta) * p * b),
        potential=total,
        min_size_ratio=(min(sizes) / b) if sizes else math.inf,
        probability_ok=p > 4 * math.log(2) / (delta * delta * b),
        sum_ok=total < 1.0,
    )


# ---------------------------------------------------------------------------
# potential engine


class PotentialEngine:
    """Danger scores over a fixed explicit family.

    ``danger[x]`` is the summed weight of live sets (no blocker element)
    containing free element ``x``.  Two backends give identical values: a
    pure bitmask loop for small families and a scipy.sparse incidence
    matrix for large ones.
    """

    def __init__(self, masks: Sequence[int], size: int, blocker_bias: int, claimer_bias: int,
                 backend: str = "auto"):
        self.masks = [m for m in masks]
        self.size = size
        self.base = 1.0 + blocker_bias
        self.claimer_bias = claimer_bias
        load = sum(popcount(m) for m in self.masks)
        if backend == "auto":
            backend = "sparse" if load > SPARSE_FROM else "bitmask"
        if backend not in ("bitmask", "sparse"):
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        if backend == "sparse":
            self.inc = masks_to_csr(self.masks, size)
            self.inc_t = self.inc.T.tocsr()
            self.sizes = np.asarray(self.inc.sum(axis=1)).ravel()

    def _weight(self, remaining):
        return self.base ** (-np.asarray(remaining, dtype=float) / self.claimer_bias)

    def danger(self, claimer: int, blocker: int) -> np.ndarray:
        if self.backend == "sparse":
            return self._danger_sparse(claimer, blocker)
        out = np.zeros(self.size)
        div = self.claimer_bias
        base = self.base
        for s in self.masks:
            if s & blocker:
                continue
            rest = s & ~claimer
            w = base ** (-popcount(rest) / div)
            for x in bits(rest):
                out[x] += w
        return out

    def _danger_sparse(self, claimer: int, blocker: int) -> np.ndarray:
        cvec = mask_to_vector(claimer, self.size)
        bvec = mask_to_vector(blocker, self.size)
        live = (self.inc @ bvec) == 0
        remaining = self.sizes - self.inc @ cvec
        w = np.where(live, self._weight(remaining), 0.0)
        d = self.inc_t @ w
        d[cvec > 0] = 0.0  # owned elements carry no danger
        return d

    def potential(self, claimer: int, blocker: int) -> float:
        total = 0.0
        for s in self.masks:
            if not s & blocker:
                total += self.base ** (-popcount(s & ~claimer) / self.claimer_bias)
        return total

    def best(self, claimer: int, blocker: int, free: int) -> int:
        d = self.danger(claimer, blocker)
        free_idx = bits(free)
        if not free_idx:
            raise ValueError("no free element")
        vals = d[free_idx]
        top = vals.max()
        tol = 1e-12 * max(top, 1e-300)
        for x, v in zip(free_idx, vals):
            if v >= top - tol:
                return x
        return free_idx[0]


def mask_to_vector(mask: int, size: int) -> np.ndarray:
    nbytes = max(1, (size + 7) // 8)
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(float)


def masks_to_csr(masks: Sequence[int], size: int) -> sp.csr_matrix:
    nbytes = max(1, (size + 7) // 8)
    if not masks:
        return sp.csr_matrix((0, size))
    raw = np.frombuffer(b"".join(m.to_bytes(nbytes, "little") for m in masks), dtype=np.uint8)
    dense = np.unpackbits(raw.reshape(len(masks), nbytes), axis=1, bitorder="little")[:, :size]
    return sp.csr_matrix(dense.astype(float))


def es_blocker_move(state: GameState, engine: PotentialEngine, side: Player) -> int:
    """One greedy potential pick for ``side`` (the blocker)."""
    own = state.owned(side)
    opp = state.owned(side.other)
    return engine.best(opp, own, state.free)


class EsBlocker(Strategy):
    """Greedy potential blocker against an explicit family of the opponent.

    ``family`` defaults to the game's own family (Breaker blocking Maker).
    For Maker as blocker (cut games) pass the hostile family explicitly.
    """

    name = "es_blocker"
    markov = True

    def __init__(self, family: Optional[WinningFamily] = None, backend: str = "auto",
                 opponent_bias: Optional[int] = None):
        self.family = family
        self.backend = backend
        self.opponent_bias = opponent_bias

    def reset(self, game: BiasedGame, side: Player) -> None:
        super().reset(game, side)
        fam = self.family if self.family is not None else game.family
        if not fam.is_explicit:
            if fam.dual is None:
                raise ValueError(f"es_blocker needs an explicit family, got {fam.name!r}")
            fam = fam.dual
        if tuple(fam.board) != tuple(game.board):
            raise ValueError("blocker family must live on the game board")
        self.target = fam
        opp = self.opponent_bias if self.opponent_bias is not None else game.bias(side.other)
        self.engine = PotentialEngine(fam.sets, game.size, game.bias(side), opp, self.backend)

    def choose(self, state, rng):
        return es_blocker_move(state, self.engine, self.side)
