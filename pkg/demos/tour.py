"""A short walk through the package: exact solving, potential strategies,
densities and one small Monte Carlo sweep.

    python3 demos/tour.py
"""

from __future__ import annotations

from gameslab.experiments import SweepConfig, find_threshold, run_sweep
from gameslab.game import cliques, connectivity, new_game, play
from gameslab.graphs import complete_graph, complete_minus_edge, gnp, wheel_graph
from gameslab.solver import solve, verify_strategy
from gameslab.strategies import (
    BoxMaker, EsBlocker, WheelPairingBreaker, box_condition, box_game, es_condition, make_strategy,
)
from gameslab.structures import density_report, simple_2_cluster


def exact_games() -> None:
    print("== exact solving")
    for name, g in (("K4", complete_graph(4)), ("K5-e", complete_minus_edge(5))):
        res = solve(new_game(g.edge_list, cliques(g, 3)))
        print(f"triangle game on {name}: {res.winner.value} wins")
    g = wheel_graph(5)
    rep = verify_strategy(WheelPairingBreaker(), new_game(g.edge_list, cliques(g, 3)), "breaker")
    print(f"wheel pairing on rim 5 holds against every Maker line: {rep.ok}")


def potential_strategies() -> None:
    print("== potential strategies")
    g = complete_graph(5)
    fam = cliques(g, 4)
    cond = es_condition(fam, 1, 2, "maker")
    print(f"K4 game on K5 at bias (1:2): potential sum {cond.total:.3f}, satisfied {cond.satisfied}")
    if cond.satisfied:
        ok = verify_strategy(EsBlocker(), new_game(g.edge_list, fam, 1, 2, "maker"), "breaker").ok
        print(f"greedy potential blocker verified: {ok}")
    k, s, b = 3, 3, 3
    print(f"box game k={k} s={s} b={b}: inequality {box_condition(k, s, b)}, "
          f"BoxMaker verified {verify_strategy(BoxMaker(), box_game(k, s, b), 'maker').ok}")


def densities() -> None:
    print("== densities")
    c = simple_2_cluster(3, 4)
    rep = density_report(c.graph)
    print(f"simple triangle cluster of size 4: {c.v} vertices, {c.e} edges, max density {rep.m}")


def random_boards() -> None:
    print("== random boards")
    g = gnp(20, 0.5, 3)
    out = play(new_game(g.edge_list, connectivity(g), 1, 2), make_strategy("conn_maker"),
               make_strategy("isolation"), seed=1)
    print(f"connectivity on G(20, 0.5) at (1:2): {out.winner.value} after {len(out.transcript)} moves")
    cfg = SweepConfig("connectivity", 16, p_grid=[0.1, 0.2, 0.3, 0.45, 0.6], maker="conn_maker",
                      breaker="random", trials=30, seed=5)
    res = run_sweep(cfg)
    for row in res.rows:
        print(f"  p={row['p']:.2f}  maker wins {row['win_rate']:.2f}  [{row['ci_lo']:.2f}, {row['ci_hi']:.2f}]")
    est = find_threshold(res, 0.5, "p")
    print(f"  half-way crossing near p = {est.estimate:.3f}")


if __name__ == "__main__":
    exact_games()
    potential_strategies()
    densities()
    random_boards()
