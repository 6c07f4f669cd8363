"""Strategies for Maker/Breaker games, plus a registry by name."""

from __future__ import annotations

import difflib
from typing import Any, Callable

from ..game import Strategy
from .baseline import FirstFree, RandomStrategy
from .box import BoxMaker, box_canonical_key, box_condition, box_game, box_maker_move
from .clique import CliqueBreakerComposite, RandomMaker, threat_block_move
from .graph_games import ConnectivityMaker, HamiltonicityMaker, IsolationBreaker, MatchingMaker
from .pairing import DegeneracyPairingBreaker, WheelPairingBreaker
from .potential import (
    EsBlocker, PotentialEngine, PotentialReport, RandomizedEsParams, es_blocker_move,
    es_condition, gen_es_condition, randomized_es_feasibility,
)


def _solver_optimal(**params):
    from ..solver import SolverOptimal
    return SolverOptimal(**params)


REGISTRY: dict[str, Callable[..., Strategy]] = {
    "es_blocker": EsBlocker,
    "box_maker": BoxMaker,
    "isolation": IsolationBreaker,
    "conn_maker": ConnectivityMaker,
    "ham_maker": HamiltonicityMaker,
    "match_maker": MatchingMaker,
    "random_maker": RandomMaker,
    "clique_breaker": CliqueBreakerComposite,
    "degeneracy_pairing": DegeneracyPairingBreaker,
    "wheel_pairing": WheelPairingBreaker,
    "random": RandomStrategy,
    "first_free": FirstFree,
    "solver_optimal": _solver_optimal,
}


class UnknownName(KeyError):
    def __str__(self) -> str:
        return self.args[0]


def suggest(name: str, choices) -> str:
    close = difflib.get_close_matches(name, list(choices), n=3)
    hint = f"; did you mean {', '.join(close)}?" if close else ""
    return f"unknown name {name!r}{hint} (known: {', '.join(sorted(choices))})"


def make_strategy(name: str, **params: Any) -> Strategy:
    if name not in REGISTRY:
        raise UnknownName(suggest(name, REGISTRY))
    return REGISTRY[name](**params)


__all__ = [
    "REGISTRY", "UnknownName", "make_strategy", "suggest",
    "BoxMaker", "CliqueBreakerComposite", "ConnectivityMaker", "DegeneracyPairingBreaker",
    "EsBlocker", "FirstFree", "HamiltonicityMaker", "IsolationBreaker", "MatchingMaker",
    "PotentialEngine", "PotentialReport", "RandomMaker", "RandomStrategy", "RandomizedEsParams",
    "WheelPairingBreaker", "box_canonical_key", "box_condition", "box_game", "box_maker_move",
    "es_blocker_move", "es_condition", "gen_es_condition", "randomized_es_feasibility",
    "threat_block_move",
]
