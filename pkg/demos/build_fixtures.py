"""Regenerate the pinned statistical fixtures under tests/fixtures.

The acceptance suite re-runs each fixture from the config stored inside it
and expects byte-identical rows, so only rerun this after a deliberate
change to the game engine or the strategies.

    python3 demos/build_fixtures.py [--jobs 4]
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from gameslab.experiments import SweepConfig, coupled_bias_sweep, run_hitting_study, run_sweep

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

P_GRID = [0.02, 0.05, 0.08, 0.1, 0.12, 0.14, 0.17, 0.2, 0.25, 0.3, 0.4]
C_GRID = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0]
HITTING_SEEDS = {10: 1010, 20: 1020, 30: 1030}


def p_sweeps(jobs: int) -> None:
    for breaker in ("isolation", "random"):
        cfg = SweepConfig("connectivity", 30, p_grid=P_GRID, maker="conn_maker", breaker=breaker,
                          trials=200, seed=7)
        t = time.time()
        res = run_sweep(cfg, jobs)
        (OUT / f"sweep_conn_vs_{breaker}_30.json").write_text(res.to_json() + "\n")
        print(f"sweep vs {breaker}: {time.time() - t:.0f}s", flush=True)


def coupled(jobs: int) -> None:
    cfg = SweepConfig("connectivity", 14, maker="conn_maker", breaker="random", trials=200, seed=11)
    t = time.time()
    res = coupled_bias_sweep(cfg, C_GRID, 0.9, jobs=jobs)
    (OUT / "coupled_conn_14.json").write_text(res.to_json() + "\n")
    print(f"coupled sweep: {time.time() - t:.0f}s", flush=True)


def hitting() -> None:
    out = {}
    for n, seed in HITTING_SEEDS.items():
        study = run_hitting_study(n, 200, seed)
        out[str(n)] = {"seed": seed, "trials": 200, "agreement": study.agreement_rates()}
    (OUT / "hitting.json").write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--only", choices=["sweeps", "coupled", "hitting"], action="append")
    args = ap.parse_args()
    parts = args.only or ["sweeps", "coupled", "hitting"]
    OUT.mkdir(parents=True, exist_ok=True)
    if "sweeps" in parts:
        p_sweeps(args.jobs)
    if "coupled" in parts:
        coupled(args.jobs)
    if "hitting" in parts:
        hitting()


if __name__ == "__main__":
    main()
