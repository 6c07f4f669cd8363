"""Monte Carlo sweeps over random boards, threshold brackets and hitting-time studies.

Trial ``j`` at grid point ``i`` of a sweep seeded with ``master`` uses the
seed ``derive_seed(master, i, j)``; the board and the game then split that
seed further.  Results therefore do not depend on the worker count or the
order in which trials finish.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import isotonic_regression

from . import oracles
from .game import BiasedGame, Player, build_family, play
from .graphs import Graph, derive_seed, gnp, graph_process, hitting_time
from .strategies import make_strategy

Z95 = 1.959963984540054


def wilson(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # clamp so rounding never pushes the bounds past the observed rate
    lo = 0.0 if successes == 0 else min(phat, max(0.0, centre - half))
    hi = 1.0 if successes == trials else max(phat, min(1.0, centre + half))
    return lo, hi


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepConfig:
    family: str
    n: int
    p_grid: list = field(default_factory=lambda: [1.0])
    b_grid: list = field(default_factory=lambda: [1])
    maker: str = "random"
    breaker: str = "random"
    trials: int = 100
    seed: int = 0
    first: str = "maker"
    a: int = 1
    family_params: dict = field(default_factory=dict)
    maker_params: dict = field(default_factory=dict)
    breaker_params: dict = field(default_factory=dict)
    points: Optional[list] = None  # explicit (p, b) list; overrides the grids
    labels: Optional[list] = None  # extra per-point value echoed as column "c"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.points is None and (not self.p_grid or not self.b_grid):
            raise ValueError("grids must be nonempty")
        if self.points is not None and not self.points:
            raise ValueError("point list must be nonempty")

    def grid(self) -> list[tuple[float, int]]:
        if self.points is not None:
            return [(float(p), int(b)) for p, b in self.points]
        return [(float(p), int(b)) for p in self.p_grid for b in self.b_grid]

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SweepResult:
    rows: list
    config: dict
    seed: int

    def rates(self) -> np.ndarray:
        return np.array([r["win_rate"] for r in self.rows])

    def column(self, name: str) -> np.ndarray:
        return np.array([r[name] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = list(self.rows[0].keys()) if self.rows else []
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({k: (f"{v:.10g}" if isinstance(v, float) else v) for k, v in r.items()})
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"config": self.config, "seed": self.seed, "rows": self.rows}, sort_keys=True, indent=1)

    def filename(self, ext: str = "csv") -> str:
        return f"{self.config['family']}_{self.config['n']}_{self.seed:x}.{ext}"


class SweepError(RuntimeError):
    pass


def graph_game(kind: str, g: Graph, a: int = 1, b: int = 1, first="maker", **params) -> BiasedGame:
    fam = build_family(kind, g, **params)
    return BiasedGame(g.edge_list, fam, a, b, Player(first))


def trial_seed(master: int, point: int, trial: int) -> int:
    return derive_seed(master, point, trial)


def run_trial(cfg: SweepConfig, point: int, trial: int) -> bool:
    p, b = cfg.grid()[point]
    seed = trial_seed(cfg.seed, point, trial)
    try:
        g = gnp(cfg.n, p, derive_seed(seed, 0))
        game = graph_game(cfg.family, g, cfg.a, b, cfg.first, **cfg.family_params)
        maker = make_strategy(cfg.maker, **cfg.maker_params)
        breaker = make_strategy(cfg.breaker, **cfg.breaker_params)
        return play(game, maker, breaker, seed=derive_seed(seed, 1)).winner is Player.MAKER
    except Exception as exc:  # recorded with the offending seed
        raise SweepError(f"trial failed at point {point} (p={p}, b={b}), trial {trial}, seed {seed}: {exc!r}") from exc


def _point_wins(args) -> int:
    cfg, point = args
    return sum(run_trial(cfg, point, j) for j in range(cfg.trials))


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> SweepResult:
    grid = cfg.grid()
    tasks = [(cfg, i) for i in range(len(grid))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            wins = list(pool.map(_point_wins, tasks))
    else:
        wins = [_point_wins(t) for t in tasks]
    rows = []
    for i, ((p, b), k) in enumerate(zip(grid, wins)):
        lo, hi = wilson(k, cfg.trials)
        row = {"n": cfg.n, "p": p, "b": b}
        if cfg.labels is not None:
            row["c"] = cfg.labels[i]
        row.update(trials=cfg.trials, maker_wins=k, win_rate=k / cfg.trials, ci_lo=lo, ci_hi=hi)
        rows.append(row)
    return SweepResult(rows, cfg.to_dict(), cfg.seed)


def coupled_bias(c: float, p: float, n: int, clique_k: Optional[int] = None) -> int:
    """b = round(c p n / ln n), or round(c p n^(2/(k+1))) for the k-clique game; at least 1."""
    if clique_k is None:
        raw = c * p * n / math.log(n)
    else:
        raw = c * p * n ** (2.0 / (clique_k + 1))
    return max(1, int(round(raw)))


def coupled_bias_sweep(cfg: SweepConfig, c_grid: Sequence[float], p: float,
                       clique_k: Optional[int] = None, jobs: int = 1) -> SweepResult:
    """Sweep the constant c in the coupled bias at fixed (n, p)."""
    points = [(p, coupled_bias(c, p, cfg.n, clique_k)) for c in c_grid]
    d = cfg.to_dict()
    d.update(points=points, labels=[float(c) for c in c_grid])
    return run_sweep(SweepConfig(**d), jobs)


# ---------------------------------------------------------------------------
# thresholds


@dataclass
class ThresholdEstimate:
    estimate: float
    lo: float
    hi: float
    level: float

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


class NoCrossing(ValueError):
    pass


def smooth(xs: Sequence[float], rates: Sequence[float], weights=None, increasing: bool = True) -> np.ndarray:
    order = np.argsort(xs, kind="stable")
    y = np.asarray(rates, dtype=float)[order]
    w = None if weights is None else np.asarray(weights, dtype=float)[order]
    fit = isotonic_regression(y, weights=w, increasing=increasing).x
    out = np.empty_like(fit)
    out[order] = fit
    return out


def find_threshold(result: SweepResult, level: float = 0.5, axis: str = "p") -> ThresholdEstimate:
    """Isotonic-smoothed level crossing along ``axis`` with its bracketing grid points."""
    xs = result.column(axis).astype(float)
    order = np.argsort(xs, kind="stable")
    xs = xs[order]
    increasing = axis == "p"
    fit = smooth(xs, result.rates()[order], result.column("trials")[order], increasing)
    above = fit >= level if increasing else fit <= level
    if not above.any() or above[0]:
        raise NoCrossing(f"no crossing in grid at level {level}")
    j = int(np.argmax(above))
    x0, x1, y0, y1 = xs[j - 1], xs[j], fit[j - 1], fit[j]
    est = x0 + (level - y0) * (x1 - x0) / (y1 - y0) if y1 != y0 else x1
    return ThresholdEstimate(float(est), float(x0), float(x1), level)


def monotone_within_ci(result: SweepResult, axis: str = "p") -> list[tuple[int, int]]:
    """Pairs of grid points whose raw rates violate monotonicity without overlapping CIs."""
    xs = result.column(axis)
    bad = []
    rows = result.rows
    for i in range(len(rows)):
        for j in range(len(rows)):
            if xs[i] < xs[j]:
                worse = rows[j]["win_rate"] < rows[i]["win_rate"] if axis == "p" else rows[j]["win_rate"] > rows[i]["win_rate"]
                overlap = rows[i]["ci_lo"] <= rows[j]["ci_hi"] and rows[j]["ci_lo"] <= rows[i]["ci_hi"]
                if worse and not overlap:
                    bad.append((i, j))
    return bad


# ---------------------------------------------------------------------------
# hitting times


def _min_degree_at_least(k: int) -> Callable[[Graph], bool]:
    return lambda g: oracles.min_degree(g) >= k


PREDICATES: dict[str, Callable[[Graph], bool]] = {
    "min_degree2": _min_degree_at_least(2),
    "connected": oracles.is_connected,
    "two_trees": oracles.two_edge_disjoint_spanning_trees,
    "min_degree4": _min_degree_at_least(4),
    "perfect_matching": oracles.has_perfect_matching,
    "tree_and_forest": oracles.spanning_tree_and_two_forest,
}

DEFAULT_PREDICATES = ("min_degree2", "connected", "two_trees")


@dataclass
class HittingStudy:
    n: int
    trials: int
    seed: int
    predicates: tuple
    records: list
    errors: list

    def agreement(self, a: str, b: str) -> float:
        ok = [r for r in self.records if a in r and b in r]
        return sum(r[a] == r[b] for r in ok) / len(ok) if ok else float("nan")

    def agreement_rates(self) -> dict:
        return {f"{a}={b}": self.agreement(a, b)
                for i, a in enumerate(self.predicates) for b in self.predicates[i + 1:]}

    def to_json(self) -> str:
        return json.dumps(asdict(self) | {"agreement": self.agreement_rates()}, sort_keys=True, indent=1)


def run_hitting_study(n: int, trials: int, seed: int, predicates: Sequence[str] = DEFAULT_PREDICATES) -> HittingStudy:
    unknown = set(predicates) - set(PREDICATES)
    if unknown:
        raise ValueError(f"unknown predicates {sorted(unknown)}; known: {sorted(PREDICATES)}")
    records, errors = [], []
    for t in range(trials):
        proc = graph_process(n, derive_seed(seed, t))
        rec = {"trial": t}
        for name in predicates:
            try:
                rec[name] = hitting_time(proc, PREDICATES[name])
            except Exception as exc:
                errors.append({"trial": t, "predicate": name, "error": repr(exc)})
        records.append(rec)
    return HittingStudy(n, trials, seed, tuple(predicates), records, errors)
