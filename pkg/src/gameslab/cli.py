"""Command-line interface: ``gameslab <command> ...`` (or ``python3 -m gameslab``).

Exit codes: 0 success, 1 domain error, 2 usage error (including unknown
strategy or family names).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Optional

from . import experiments, oracles, structures
from .game import BiasedGame, FamilyTooLarge, Player, StrategyError, WinningFamily, boxes, build_family, play
from .graphs import (
    Graph, complete_graph, complete_minus_edge, cycle_graph, empty_graph, gnm, gnp, path_graph,
    petersen_graph, read_edge_list, star_graph, wheel_graph,
)
from .limits import LimitExceeded
from .solver import Solver, solve
from .strategies import REGISTRY, UnknownName, es_condition, gen_es_condition, make_strategy, randomized_es_feasibility, suggest


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing helpers

BOARD_HELP = (
    "k<n> | complete:<n> | kminus:<n> | empty:<n> | path:<n> | cycle:<n> | star:<n> | "
    "wheel:<rim> | petersen | gnp:<n>:<p>:<seed> | gnm:<n>:<M>:<seed> | <edge-list file>"
)


def parse_board(text: str) -> Graph:
    m = re.fullmatch(r"k(\d+)", text, re.I)
    if m:
        return complete_graph(int(m.group(1)))
    head, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    simple = {
        "complete": complete_graph, "kminus": complete_minus_edge, "empty": empty_graph,
        "path": path_graph, "cycle": cycle_graph, "star": star_graph, "wheel": wheel_graph,
    }
    if head in simple and len(args) == 1:
        return simple[head](int(args[0]))
    if head == "petersen" and not args:
        return petersen_graph()
    if head == "gnp" and len(args) == 3:
        return gnp(int(args[0]), float(args[1]), int(args[2]))
    if head == "gnm" and len(args) == 3:
        return gnm(int(args[0]), int(args[1]), int(args[2]))
    if os.path.exists(text):
        with open(text) as fh:
            return read_edge_list(fh)
    raise UsageError(f"cannot parse board {text!r}; expected {BOARD_HELP}")


FAMILY_NAMES = ("clique<k>", "k_clique<k>", "cuts", "removed_cuts<k>", "hall", "connectivity",
                "perfect_matching", "ab_matching", "hamiltonicity", "boxes:<k>:<s>")


def parse_family(text: str, g: Graph, params: Optional[dict] = None) -> WinningFamily:
    params = dict(params or {})
    m = re.fullmatch(r"(clique|k_clique|removed_cuts)(\d+)", text)
    if m:
        kind = {"clique": "cliques", "k_clique": "k_clique", "removed_cuts": "removed_cuts"}[m.group(1)]
        return build_family(kind, g, k=int(m.group(2)), **params)
    m = re.fullmatch(r"boxes:(\d+):(\d+)", text)
    if m:
        return boxes([int(m.group(2))] * int(m.group(1)))
    if text in ("cuts", "hall", "connectivity", "perfect_matching", "ab_matching", "hamiltonicity"):
        return build_family(text, g, **params)
    raise UsageError(suggest(text, FAMILY_NAMES))


def family_to_experiment_kind(text: str) -> tuple[str, dict]:
    m = re.fullmatch(r"(clique|k_clique|removed_cuts)(\d+)", text)
    if m:
        kind = {"clique": "cliques", "k_clique": "k_clique", "removed_cuts": "removed_cuts"}[m.group(1)]
        return kind, {"k": int(m.group(2))}
    if text in ("cuts", "hall", "connectivity", "perfect_matching", "ab_matching", "hamiltonicity"):
        return text, {}
    raise UsageError(suggest(text, FAMILY_NAMES))


def _strategy(name: str, params: Optional[dict] = None):
    try:
        return make_strategy(name, **(params or {}))
    except UnknownName as exc:
        raise UsageError(str(exc)) from exc


def _spec_file(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _merge(args: argparse.Namespace, spec: dict, keys: dict) -> dict:
    """Flags win over the spec file, which wins over the defaults."""
    out = {}
    for key, default in keys.items():
        flag = getattr(args, key, None)
        out[key] = flag if flag is not None else spec.get(key, default)
    return out


def build_game(cfg: dict) -> BiasedGame:
    if cfg["board"] is None or cfg["family"] is None:
        raise UsageError("--board and --family are required (or give them in --game)")
    if str(cfg["family"]).startswith("boxes:"):
        fam = parse_family(cfg["family"], empty_graph(0))
    else:
        g = parse_board(str(cfg["board"]))
        fam = parse_family(cfg["family"], g, cfg.get("family_params"))
    return BiasedGame(fam.board, fam, int(cfg["a"]), int(cfg["b"]), Player(cfg["first"]))


def _write(out: Optional[str], name: str, text: str) -> None:
    if not out:
        return
    path = Path(out)
    if path.suffix:  # explicit file name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)


def _grid(text: Optional[str], cast=float) -> Optional[list]:
    if text is None:
        return None
    try:
        return [cast(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands

GAME_KEYS = {"board": None, "family": None, "a": 1, "b": 1, "first": "maker", "seed": 0,
             "maker": "random", "breaker": "random", "family_params": {}}


def cmd_play(args) -> int:
    spec = _spec_file(args.game)
    cfg = _merge(args, spec, GAME_KEYS)
    game = build_game(cfg)
    maker = _strategy(cfg["maker"], spec.get("maker_params"))
    breaker = _strategy(cfg["breaker"], spec.get("breaker_params"))
    outcome = play(game, maker, breaker, seed=int(cfg["seed"]), incremental=args.incremental)
    text = outcome.to_json()
    print(text)
    _write(args.out, "outcome.json", text + "\n")
    if args.transcript:
        _write(args.transcript, "transcript.txt", outcome.transcript_text())
    return 0


def cmd_solve(args) -> int:
    cfg = _merge(args, _spec_file(args.game), GAME_KEYS)
    game = build_game(cfg)
    res = solve(game)
    pv = []
    state = game.initial_state()
    solver = Solver(game)
    while state.free and solver._terminal_winner(state) is None:
        x = solver.best_move(state)
        pv.append((state.turn.value, game.board[x]))
        state.claim(game, x)
    print(str(res.winner))
    print(f"nodes {res.nodes}")
    print("pv " + " ".join(f"{p}:{_label(x)}" for p, x in pv))
    _write(args.out, "solve.json", json.dumps(
        {"winner": res.winner.value, "nodes": res.nodes, "pv": [[p, _jsonable(x)] for p, x in pv]},
        sort_keys=True) + "\n")
    return 0


def _label(x) -> str:
    return "-".join(map(str, x)) if isinstance(x, tuple) else str(x)


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def _sweep_config(args, **extra) -> experiments.SweepConfig:
    spec = _spec_file(args.game)
    cfg = _merge(args, spec, {"family": None, "n": None, "a": 1, "first": "maker", "seed": 0,
                               "maker": "random", "breaker": "random", "trials": 100})
    if cfg["family"] is None or cfg["n"] is None:
        raise UsageError("--family and --n are required")
    kind, fparams = family_to_experiment_kind(cfg["family"])
    for name in (cfg["maker"], cfg["breaker"]):
        if name not in REGISTRY:
            raise UsageError(suggest(name, REGISTRY))
    return experiments.SweepConfig(
        family=kind, n=int(cfg["n"]), maker=cfg["maker"], breaker=cfg["breaker"],
        trials=int(cfg["trials"]), seed=int(cfg["seed"]), first=cfg["first"], a=int(cfg["a"]),
        family_params=fparams, maker_params=spec.get("maker_params", {}),
        breaker_params=spec.get("breaker_params", {}), **extra,
    )


def _emit_sweep(args, result: experiments.SweepResult) -> None:
    print(result.to_csv(), end="")
    if args.out:
        _write(args.out, result.filename("csv"), result.to_csv())
        _write(args.out, result.filename("json"), result.to_json() + "\n")


def cmd_sweep(args) -> int:
    p_grid = _grid(args.grid) or [1.0]
    b_grid = _grid(args.b_grid, int) or [args.b if args.b is not None else 1]
    cfg = _sweep_config(args, p_grid=p_grid, b_grid=b_grid)
    result = experiments.run_sweep(cfg, jobs=args.jobs)
    _emit_sweep(args, result)
    if args.threshold is not None:
        axis = "p" if len(p_grid) > 1 else "b"
        est = experiments.find_threshold(result, args.threshold, axis)
        print(f"crossing {est.estimate:.6g} bracket [{est.lo:.6g}, {est.hi:.6g}]")
    return 0


def cmd_coupled(args) -> int:
    c_grid = _grid(args.grid)
    if not c_grid:
        raise UsageError("--grid (list of c values) is required")
    cfg = _sweep_config(args)
    result = experiments.coupled_bias_sweep(cfg, c_grid, args.p, args.clique_k, jobs=args.jobs)
    _emit_sweep(args, result)
    return 0


def cmd_hitting(args) -> int:
    preds = args.predicates.split(",") if args.predicates else list(experiments.DEFAULT_PREDICATES)
    unknown = [p for p in preds if p not in experiments.PREDICATES]
    if unknown:
        raise UsageError(suggest(unknown[0], experiments.PREDICATES))
    study = experiments.run_hitting_study(args.n, args.trials, args.seed, preds)
    for k, v in study.agreement_rates().items():
        print(f"{k} {v:.4f}")
    _write(args.out, f"hitting_{args.n}_{args.seed:x}.json", study.to_json() + "\n")
    return 0


ORACLES = {
    "connected": oracles.is_connected,
    "min_degree": oracles.min_degree,
    "perfect_matching": oracles.has_perfect_matching,
    "hamiltonian": oracles.has_hamiltonian_cycle,
    "kappa": oracles.vertex_connectivity,
    "alpha": oracles.independence_number,
    "chvatal_erdos": oracles.chvatal_erdos_sufficient,
    "two_trees": oracles.two_edge_disjoint_spanning_trees,
    "tree_and_forest": oracles.spanning_tree_and_two_forest,
}


def cmd_oracle(args) -> int:
    g = parse_board(args.graph)
    if args.name == "clique":
        print(oracles.contains_clique(g, args.k))
        return 0
    if args.name not in ORACLES:
        raise UsageError(suggest(args.name, list(ORACLES) + ["clique"]))
    print(ORACLES[args.name](g))
    return 0


def _frac(x) -> str:
    return "none" if x is None else f"{x.numerator}/{x.denominator}"


def cmd_structures(args) -> int:
    if args.what == "density":
        if not args.graph:
            raise UsageError("structures density needs a graph file")
        rep = structures.density_report(parse_board(args.graph))
        print(f"d {_frac(rep.d)}")
        print(f"m {_frac(rep.m)} witness {sorted(rep.m_witness)}")
        print(f"m_prime {_frac(rep.m_prime)}")
        print(f"balanced {rep.balanced}")
    elif args.what == "cluster":
        make = {"simple": structures.simple_2_cluster, "t3": structures.t_3_cluster,
                "fan": structures.t_fan, "flower": structures.t_flower}[args.kind]
        cu = make(args.k, args.s)
        rep = structures.density_report(cu.graph.induced(range(cu.v)))
        print(f"v {cu.v} e {cu.e} d {_frac(rep.d)} m {_frac(rep.m)} balanced {rep.balanced}")
    elif args.what == "bunches":
        found = structures.enumerate_bunches(args.k, args.s, args.v_max)
        print(f"classes {len(found)}")
        for g in found:
            print(f"v {g.n} e {g.m} m {_frac(structures.max_density(g))}")
    return 0


def _load_family_file(path: str) -> WinningFamily:
    spec = _spec_file(path)
    if "sets" in spec:
        def lab(x):
            return tuple(x) if isinstance(x, list) else x
        board = [lab(x) for x in spec.get("board", sorted({x for s in spec["sets"] for x in map(lab, s)}))]
        return WinningFamily.explicit(board, [[lab(x) for x in s] for s in spec["sets"]])
    if "board" in spec and "family" in spec:
        return parse_family(spec["family"], parse_board(spec["board"]), spec.get("family_params"))
    raise UsageError("family file needs 'sets' (and optionally 'board'), or 'board' and 'family'")


def cmd_criterion(args) -> int:
    fam = _load_family_file(args.family_file)
    if args.kind == "es":
        rep = es_condition(fam, args.a, args.b, args.first)
        print(f"sum {rep.total:.12g}")
        print(f"threshold {rep.threshold:.12g}")
        print("satisfied" if rep.satisfied else "not satisfied")
    elif args.kind == "gen-es":
        rep = gen_es_condition(fam, args.a, args.b, args.c)
        print(f"sum {rep.total:.12g}")
        print(f"threshold {rep.threshold:.12g}")
        print("satisfied" if rep.satisfied else "not satisfied")
    else:
        r = randomized_es_feasibility(fam, args.b, args.p, args.delta)
        print(f"sum {r.potential:.12g}")
        print(f"min_size_ratio {r.min_size_ratio:.6g}")
        print(f"derived_bias {r.derived_bias}")
        print("satisfied" if r.satisfied else "not satisfied")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gameslab", description="Maker/Breaker games on graph boards")
    sub = ap.add_subparsers(dest="command", required=True)

    def game_flags(p):
        p.add_argument("--game", help="JSON game spec file; flags override its fields")
        p.add_argument("--board", help=BOARD_HELP)
        p.add_argument("--family", help="family name, e.g. clique3, connectivity, boxes:3:2")
        p.add_argument("--a", type=int)
        p.add_argument("--b", type=int)
        p.add_argument("--first", choices=["maker", "breaker"])
        p.add_argument("--seed", type=int)
        p.add_argument("--out")

    p = sub.add_parser("play", help="play one game")
    game_flags(p)
    p.add_argument("--maker")
    p.add_argument("--breaker")
    p.add_argument("--incremental", action="store_true", help="check oracle families after every Maker claim")
    p.add_argument("--transcript", help="write the text transcript here")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("solve", help="exact winner of a small game")
    game_flags(p)
    p.set_defaults(func=cmd_solve)

    def sweep_flags(p):
        p.add_argument("--game", help="JSON sweep spec file; flags override its fields")
        p.add_argument("--family")
        p.add_argument("--n", type=int)
        p.add_argument("--a", type=int)
        p.add_argument("--first", choices=["maker", "breaker"])
        p.add_argument("--maker")
        p.add_argument("--breaker")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over p (and/or b)")
    sweep_flags(p)
    p.add_argument("--grid", help="comma separated p values")
    p.add_argument("--b", type=int)
    p.add_argument("--b-grid", help="comma separated b values")
    p.add_argument("--threshold", type=float, help="report the crossing of this level")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("coupled-sweep", help="sweep c in b = round(c p n / ln n)")
    sweep_flags(p)
    p.add_argument("--grid", help="comma separated c values")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--clique-k", type=int, help="use b = round(c p n^(2/(k+1)))")
    p.set_defaults(func=cmd_coupled)

    p = sub.add_parser("hitting", help="hitting times along random graph processes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--predicates", help=",".join(experiments.PREDICATES))
    p.add_argument("--out")
    p.set_defaults(func=cmd_hitting)

    p = sub.add_parser("oracle", help="evaluate a graph predicate")
    p.add_argument("name")
    p.add_argument("graph", help=BOARD_HELP)
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("structures", help="densities, clusters and bunches")
    p.add_argument("what", choices=["density", "cluster", "bunches"])
    p.add_argument("graph", nargs="?")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--kind", choices=["simple", "t3", "fan", "flower"], default="simple")
    p.add_argument("--v-max", type=int)
    p.set_defaults(func=cmd_structures)

    p = sub.add_parser("criterion", help="potential criteria on an explicit family")
    p.add_argument("kind", choices=["es", "gen-es", "randomized"])
    p.add_argument("--family-file", required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--first", choices=["maker", "breaker"], default="breaker")
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.5)
    p.set_defaults(func=cmd_criterion)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, LimitExceeded, FamilyTooLarge, StrategyError, experiments.SweepError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
