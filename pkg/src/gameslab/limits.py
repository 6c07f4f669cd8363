"""Size limits for the exact oracles and the game solver.

Defaults can be overridden with the ``GAMES_LAB_LIMITS`` environment
variable, either as JSON (``{"hamiltonian": 18}``) or as a comma separated
list of ``key=value`` pairs (``hamiltonian=18,solver_board=14``).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "GAMES_LAB_LIMITS"


class LimitExceeded(ValueError):
    """An exact computation was asked for an instance above its size limit."""


@dataclass(frozen=True)
class Limits:
    hamiltonian: int = 22
    independence: int = 40
    density: int = 18
    exhaustive_trees: int = 7
    family_cap: int = 2_000_000
    cut_vertices: int = 20
    solver_board: int = 16
    solver_board_biased: int = 14
    solver_nodes: int = 50_000_000


def _parse(text: str) -> dict:
    text = text.strip()
    if not text:
        return {}
    if text.startswith("{"):
        return dict(json.loads(text))
    out = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        out[key.strip()] = value.strip()
    return out


def current_limits() -> Limits:
    """Return the defaults with any ``GAMES_LAB_LIMITS`` overrides applied."""
    overrides = _parse(os.environ.get(ENV_VAR, ""))
    known = {f.name for f in fields(Limits)}
    bad = set(overrides) - known
    if bad:
        raise ValueError(f"unknown limit(s) in {ENV_VAR}: {sorted(bad)}; known: {sorted(known)}")
    return replace(Limits(), **{k: int(v) for k, v in overrides.items()})


def check(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise LimitExceeded(
            f"exact oracle limit exceeded: {what} = {value} > {limit} "
            f"(raise it via {ENV_VAR})"
        )
