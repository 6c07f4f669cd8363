"""The eleven acceptance criteria, one test each.

Each test reports a ``CRITERION n PASS|FAIL`` line (also collected in the
terminal summary).  Statistical criteria re-run the pinned fixtures in
tests/fixtures and require byte-identical rows.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from gameslab import oracles
from gameslab.experiments import (
    SweepConfig, SweepResult, find_threshold, monotone_within_ci, run_hitting_study, run_sweep, smooth,
)
from gameslab.game import BiasedGame, Player, WinningFamily, cliques, connectivity, new_game
from gameslab.graphs import Graph, complete_graph, complete_minus_edge, derive_seed, gnp, wheel_graph
from gameslab.solver import solve, verify_strategy
from gameslab.strategies import (
    BoxMaker, DegeneracyPairingBreaker, EsBlocker, WheelPairingBreaker, box_canonical_key, box_condition,
    box_game, es_condition,
)
from gameslab.structures import (
    cluster_closed_form, density_report, degenerate_graphs, enumerate_bunches, is_balanced, max_density,
    simple_2_cluster,
)

FIXTURES = Path(__file__).parent / "fixtures"


def load_sweep(name: str) -> SweepResult:
    data = json.loads((FIXTURES / name).read_text())
    return SweepResult(data["rows"], data["config"], data["seed"])


def rerun(fixture: SweepResult) -> SweepResult:
    return run_sweep(SweepConfig(**fixture.config))


def all_labelled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(e for i, e in enumerate(pairs) if mask >> i & 1))


# ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "connectivity game with Maker second: solver = two spanning trees")
def test_connectivity_game_matches_two_trees(criterion):
    graphs = [g for n in range(1, 6) for g in all_labelled_graphs(n)]
    rnd = random.Random(2024)
    graphs += [gnp(6, rnd.uniform(0.3, 0.95), rnd.randrange(10**9)) for _ in range(200)]
    bad = []
    for g in graphs:
        game = BiasedGame(g.edge_list, connectivity(g), 1, 1, Player.BREAKER)
        maker_wins = solve(game).winner is Player.MAKER
        if maker_wins != oracles.two_edge_disjoint_spanning_trees(g):
            bad.append(g)
    criterion(not bad, f"{len(graphs)} graphs, {len(bad)} mismatches")


@pytest.mark.criterion(2, "triangle game: K5-e Maker, K4 Breaker; wheel pairing on rims 4-6")
def test_small_triangle_games(criterion):
    k5e = solve(new_game(complete_minus_edge(5).edge_list, cliques(complete_minus_edge(5), 3))).winner
    k4 = solve(new_game(complete_graph(4).edge_list, cliques(complete_graph(4), 3))).winner
    wheels = {}
    for rim in (4, 5, 6):
        g = wheel_graph(rim)
        wheels[rim] = verify_strategy(WheelPairingBreaker(), new_game(g.edge_list, cliques(g, 3)), "breaker").ok
    ok = k5e is Player.MAKER and k4 is Player.BREAKER and all(wheels.values())
    criterion(ok, f"K5-e {k5e}, K4 {k4}, wheels {wheels}")


def es_families(count: int, seed: int):
    """Random families on <= 14 elements meeting the criterion with the blocker second."""
    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        b = 1 + len(out) % 3
        size = rnd.randint(6, 14)
        sets = []
        for _ in range(rnd.randint(1, 8)):
            k = rnd.randint(2, min(size, 7))
            sets.append(rnd.sample(range(size), k))
        fam = WinningFamily.explicit(range(size), sets)
        if es_condition(fam, 1, b, "maker").satisfied:
            out.append((fam, b))
    return out


@pytest.mark.criterion(3, "greedy potential blocker wins every family meeting the criterion")
def test_potential_blocker_wins_when_criterion_holds(criterion):
    cases = es_families(100, seed=33)
    failures = []
    for fam, b in cases:
        game = new_game(fam.board, fam, 1, b, "maker")
        if not verify_strategy(EsBlocker(), game, "breaker").ok:
            failures.append((fam, b))
    sizes = sorted({len(f.board) for f, _ in cases})
    criterion(not failures, f"{len(cases)} families, sizes {sizes[0]}..{sizes[-1]}, {len(failures)} failures")


@pytest.mark.criterion(4, "box game: BoxMaker wins every instance meeting the inequality")
def test_box_maker_wins_when_inequality_holds(criterion):
    instances = [(k, s, b) for k in range(1, 6) for s in range(1, 9) for b in range(1, 7) if box_condition(k, s, b)]
    failures = [inst for inst in instances
                if not verify_strategy(BoxMaker(), box_game(*inst), "maker", canonical=box_canonical_key).ok]
    criterion(not failures, f"{len(instances)} instances, failures {failures}")


@pytest.mark.criterion(5, "simple cluster closed forms and balancedness")
def test_density_closed_forms(criterion):
    bad = []
    for k in (3, 4, 5, 6):
        for s in range(1, 7):
            c = simple_2_cluster(k, s)
            v, e, d = cluster_closed_form(k, s)
            if (c.v, c.e) != (v, e) or Fraction(c.e, c.v) != d or not is_balanced(c.graph):
                bad.append((k, s))
    m13 = max_density(simple_2_cluster(3, 13).graph)
    ok = not bad and m13 == Fraction(9, 5) == cluster_closed_form(3, 13)[2]
    criterion(ok, f"24 clusters, mismatches {bad}, m(C_13) at k=3 = {m13}")


@pytest.mark.criterion(6, "no 3-bunch is sparser than the simple 3-cluster (k = 3, 4)")
def test_no_sparse_3_bunches(criterion):
    details, ok = [], True
    for k in (3, 4):
        target = cluster_closed_form(k, 3)[2]
        found = enumerate_bunches(k, 3)
        low = [b for b in found if max_density(b) < target]
        ok &= not low
        details.append(f"k={k}: {len(found)} classes, {len(low)} below {target}")
    criterion(ok, "; ".join(details))


@pytest.mark.criterion(7, "m'(K_k) = (k+1)/2 for k = 3..6")
def test_m_prime_cliques(criterion):
    values = {k: density_report(complete_graph(k)).m_prime for k in range(3, 7)}
    criterion(all(v == Fraction(k + 1, 2) for k, v in values.items()), str({k: str(v) for k, v in values.items()}))


@pytest.mark.criterion(8, "degeneracy pairing beats optimal Maker on 2-degenerate graphs, n <= 7")
def test_degeneracy_pairing(criterion):
    graphs = [g for n in range(1, 8) for g in degenerate_graphs(n, 2)]
    failures = []
    for g in graphs:
        game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1, Player.MAKER)
        if not verify_strategy(DegeneracyPairingBreaker(3), game, "breaker").ok:
            failures.append(g)
    criterion(not failures, f"{len(graphs)} isomorphism classes, {len(failures)} failures")


@pytest.mark.criterion(9, "hitting times: two trees last, agreement with min degree 2 rising in n")
def test_hitting_trend(criterion):
    pinned = json.loads((FIXTURES / "hitting.json").read_text())
    rates, violations, drift = {}, 0, []
    for n in sorted(pinned, key=int):
        spec = pinned[n]
        study = run_hitting_study(int(n), spec["trials"], spec["seed"])
        violations += len(study.errors)
        for r in study.records:
            violations += r["two_trees"] < max(r["min_degree2"], r["connected"])
        rates[int(n)] = study.agreement("min_degree2", "two_trees")
        if study.agreement_rates() != spec["agreement"]:
            drift.append(n)
    seq = [rates[n] for n in sorted(rates)]
    ok = violations == 0 and not drift and all(a <= b for a, b in zip(seq, seq[1:]))
    criterion(ok, f"agreement {rates}, {violations} order violations, fixture drift {drift}")


@pytest.mark.criterion(10, "connectivity threshold at n=30 within a factor 2 of ln n / n")
def test_threshold_bracket(criterion):
    n = 30
    target = math.log(n) / n
    details, ok = [], True
    for name in ("sweep_conn_vs_isolation_30.json", "sweep_conn_vs_random_30.json"):
        fixture = load_sweep(name)
        fresh = rerun(fixture)
        same = fresh.to_json() == fixture.to_json()
        est = find_threshold(fresh, 0.5, "p")
        inside = target / 2 <= est.estimate <= 2 * target
        ok &= same and inside
        details.append(f"{fixture.config['breaker']}: {est.estimate:.4f} in [{est.lo}, {est.hi}]"
                       + ("" if same else " (fixture drift)"))
    criterion(ok, f"ln n/n = {target:.4f}; " + "; ".join(details))


@pytest.mark.criterion(11, "sweep fixtures monotone: up in p, down in b, within 95% CIs")
def test_monotone_fixtures(criterion):
    details, ok = [], True
    for path in sorted(FIXTURES.glob("*.json")):
        if path.name == "hitting.json":
            continue
        res = load_sweep(path.name)
        axis = "b" if res.config.get("points") else "p"
        xs = res.column(axis)
        fit = smooth(xs, res.rates(), res.column("trials"), increasing=axis == "p")
        order = sorted(range(len(xs)), key=lambda i: xs[i])
        steps = [fit[j] - fit[i] for i, j in zip(order, order[1:])]
        shape = all(d >= -1e-12 for d in steps) if axis == "p" else all(d <= 1e-12 for d in steps)
        bad = monotone_within_ci(res, axis)
        if axis == "b":
            same = rerun(res).to_json() == res.to_json()
            ok &= same
        ok &= shape and not bad
        details.append(f"{path.stem} ({axis}): {len(bad)} violations")
    criterion(ok, "; ".join(details))
