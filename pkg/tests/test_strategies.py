from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gameslab import oracles
from gameslab.game import (
    BiasedGame, GameState, Player, WinningFamily, build_family, cliques, cuts, hall, new_game, play,
)
from gameslab.graphs import (
    Graph, complete_graph, cycle_graph, derive_seed, gnp, path_graph, wheel_graph,
)
from gameslab.solver import solve, verify_strategy
from gameslab.strategies import (
    REGISTRY, BoxMaker, CliqueBreakerComposite, ConnectivityMaker, DegeneracyPairingBreaker, EsBlocker,
    HamiltonicityMaker, IsolationBreaker, MatchingMaker, PotentialEngine, RandomMaker, RandomStrategy,
    UnknownName, WheelPairingBreaker, box_canonical_key, box_condition, box_game, box_maker_move,
    es_blocker_move, es_condition, gen_es_condition, make_strategy, randomized_es_feasibility,
    threat_block_move,
)
from gameslab.strategies.box import harmonic, pick_box
from gameslab.strategies.clique import clique_edge_masks
from gameslab.strategies.graph_games import isolation_centres, subset_traces
from gameslab.structures import fan_edge_sets


def fam(size, sets):
    return WinningFamily.explicit(range(size), sets)


def masks_of(g, edges):
    idx = g.edge_index
    return sum(1 << idx[e] for e in edges)


# ---------------------------------------------------------------------------
# potential criteria


def test_es_condition_examples():
    r = es_condition(fam(2, [[0, 1]]), 1, 1, "breaker")
    assert r.total == pytest.approx(0.25) and r.satisfied and r.threshold == 1.0
    r = es_condition(fam(2, [[0], [1]]), 1, 1, "breaker")
    assert r.total == pytest.approx(1.0) and not r.satisfied
    assert es_condition(fam(2, [[0, 1]]), 1, 3, "maker").threshold == pytest.approx(0.25)


def test_es_rejects_oracle_family():
    g = complete_graph(4)
    with pytest.raises(ValueError, match="oracle"):
        es_condition(build_family("connectivity", g), 1, 1, "maker")


@pytest.mark.parametrize("n,b", [(6, 2), (6, 1), (7, 3)])
def test_cut_potential_closed_form(n, b):
    family = cuts(complete_graph(n))
    expected = 0.0
    for k in range(1, n // 2 + 1):
        count = math.comb(n, k) // (2 if 2 * k == n else 1)
        expected += count * (1 + b) ** (-k * (n - k))
    r = es_condition(family, 1, b, "maker")
    assert r.total == pytest.approx(expected, rel=1e-12)
    assert math.fsum(r.per_set.values()) == pytest.approx(r.total, rel=1e-12)


def test_gen_es_examples():
    r = gen_es_condition(fam(3, [[0, 1, 2]]), 1, 1, 1)
    assert r.threshold == 0.5 and r.total == pytest.approx(0.125) and r.satisfied
    f = fam(4, [[0, 1], [2, 3], [1, 2, 3]])
    assert gen_es_condition(f, 1, 2, 4).threshold == pytest.approx(4 * gen_es_condition(f, 1, 2, 1).threshold)
    with pytest.raises(ValueError):
        gen_es_condition(f, 1, 1, 0)


def test_gen_es_on_fan_family():
    # Simple 2-fans of triangles on K_10: every labelled P_4 and claw
    # (3 edges) and every labelled paw (4 edges), so the sum has a closed form.
    n = 10
    g = complete_graph(n)
    sets = fan_edge_sets(g, 2, 3)
    family = WinningFamily.explicit(g.edge_list, sets)
    three = math.perm(n, 4) // 2 + n * math.comb(n - 1, 3)
    paws = math.comb(n, 3) * 3 * (n - 3)
    for b in (1, 3, 8, 40):
        r = gen_es_condition(family, 1, b, 2)
        direct = three * (1 + b) ** -3 + paws * (1 + b) ** -4
        assert r.total == pytest.approx(direct, rel=1e-12)
        assert r.satisfied == (direct < 2 / (1 + b))


def test_randomized_examples():
    r = randomized_es_feasibility(fam(100, [range(100)]), 10, 0.5, 0.5)
    assert r.derived_bias == 2
    assert r.probability_ok == (0.5 > 4 * math.log(2) / (0.25 * 10))
    assert r.potential == pytest.approx(2 ** -10)
    tiny = randomized_es_feasibility(fam(100, [range(100)]), 10, 0.5, 1e-6)
    assert not tiny.probability_ok and not tiny.satisfied
    with pytest.raises(ValueError):
        randomized_es_feasibility(fam(2, [[0]]), 1, 0.5, 1.0)


def test_randomized_cut_sum_k12():
    n = 12
    b = math.floor(math.log(2) / 2 * n / math.log(n))
    assert b == 1
    r = randomized_es_feasibility(cuts(complete_graph(n)), b, 0.9, 0.5)
    hand = math.fsum(
        math.comb(n, k) // (2 if 2 * k == n else 1) * 2.0 ** (-k * (n - k) / b) for k in range(1, n // 2 + 1)
    )
    assert r.potential == pytest.approx(hand, rel=1e-12)
    assert r.derived_bias == 0 and not r.probability_ok
    assert r.min_size_ratio == 11


# ---------------------------------------------------------------------------
# greedy potential blocker


def test_es_blocker_move_examples():
    game = new_game(range(3), fam(3, [[0, 1]]))
    s = game.initial_state()
    s.claim(game, 0)
    engine = PotentialEngine(game.family.sets, 3, 1, 1)
    assert es_blocker_move(s, engine, Player.BREAKER) == 1

    game = new_game(range(3), fam(3, [[0], [1]]), first="breaker")
    engine = PotentialEngine(game.family.sets, 3, 1, 1)
    assert es_blocker_move(game.initial_state(), engine, Player.BREAKER) == 0
    game = new_game(range(3), fam(3, [[0, 2], [1]]), first="breaker")
    engine = PotentialEngine(game.family.sets, 3, 1, 1)
    assert es_blocker_move(game.initial_state(), engine, Player.BREAKER) == 1


def test_es_blocker_no_free_element():
    engine = PotentialEngine([1], 1, 1, 1)
    with pytest.raises(ValueError):
        engine.best(0, 1, 0)


@given(st.data())
def test_backends_agree(data):
    size = data.draw(st.integers(1, 40))
    masks = data.draw(st.lists(st.integers(1, (1 << size) - 1), min_size=1, max_size=30))
    claimer = data.draw(st.integers(0, (1 << size) - 1))
    blocker = data.draw(st.integers(0, (1 << size) - 1)) & ~claimer
    a, b = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 4))
    dense = PotentialEngine(masks, size, b, a, backend="bitmask")
    sparse = PotentialEngine(masks, size, b, a, backend="sparse")
    np.testing.assert_allclose(dense.danger(claimer, blocker), sparse.danger(claimer, blocker), rtol=1e-12)
    free = ((1 << size) - 1) & ~(claimer | blocker)
    if free:
        assert dense.best(claimer, blocker, free) == sparse.best(claimer, blocker, free)


@given(st.data())
def test_potential_never_increases_over_a_round(data):
    # (1:1), blocker second: from one blocker turn to the next, the potential
    # of the live sets does not grow.
    size = data.draw(st.integers(2, 10))
    masks = data.draw(st.lists(st.integers(1, (1 << size) - 1), min_size=1, max_size=8))
    game = new_game(range(size), WinningFamily.from_masks(range(size), masks))
    engine = PotentialEngine(game.family.sets, size, 1, 1)
    rnd = random.Random(data.draw(st.integers(0, 10**6)))
    s = game.initial_state()
    values = []
    while s.free:
        if s.turn is Player.MAKER:
            s.claim(game, rnd.choice(s.free_elements()))
        else:
            values.append(engine.potential(s.maker, s.breaker))
            s.claim(game, es_blocker_move(s, engine, Player.BREAKER))
    for before, after in zip(values, values[1:]):
        assert after <= before + 1e-12


@given(st.data())
def test_es_blocker_wins_when_condition_holds(data):
    size = data.draw(st.integers(2, 9))
    b = data.draw(st.integers(1, 3))
    masks = data.draw(st.lists(st.integers(1, (1 << size) - 1), min_size=1, max_size=6))
    family = WinningFamily.from_masks(range(size), masks)
    if not es_condition(family, 1, b, "maker").satisfied:
        return
    game = new_game(range(size), family, 1, b, "maker")
    assert verify_strategy(EsBlocker(), game, "breaker").ok


def test_es_blocker_uses_dual_for_oracle_family():
    g = cycle_graph(5)
    game = BiasedGame(g.edge_list, build_family("connectivity", g), 1, 1, Player.MAKER)
    s = EsBlocker()
    s.reset(game, Player.BREAKER)
    assert s.target.name == "cuts"
    with pytest.raises(ValueError, match="explicit"):
        EsBlocker().reset(BiasedGame(g.edge_list, build_family("hamiltonicity", g), 1, 1), Player.BREAKER)


# ---------------------------------------------------------------------------
# box game


def test_box_trivial_win():
    assert play(box_game(1, 1, 1), BoxMaker(), RandomStrategy()).winner is Player.MAKER


def test_box_two_boxes():
    assert box_condition(2, 2, 3)
    assert verify_strategy(BoxMaker(), box_game(2, 2, 3), "maker").ok


def test_box_condition_formula():
    assert harmonic(3) == Fraction(11, 6)
    assert box_condition(4, 3, 3) and not box_condition(4, 4, 3)


@pytest.mark.parametrize("k,s,b", [(2, 2, 3), (3, 3, 3), (2, 3, 4), (3, 2, 2), (4, 2, 2), (2, 2, 2)])
def test_box_canonical_and_plain_verify_agree(k, s, b):
    game = box_game(k, s, b)
    for mode in ("balance", "fewest"):
        plain = verify_strategy(BoxMaker(mode), game, "maker").ok
        assert plain == verify_strategy(BoxMaker(mode), game, "maker", canonical=box_canonical_key).ok


def test_fewest_rule_can_lose():
    game = box_game(5, 4, 3)
    assert box_condition(5, 4, 3)
    assert not verify_strategy(BoxMaker("fewest"), game, "maker", canonical=box_canonical_key).ok
    assert verify_strategy(BoxMaker(), game, "maker", canonical=box_canonical_key).ok


@pytest.mark.parametrize("boxes", range(2, 7))
def test_box_maker_against_bias_two_breaker(boxes):
    # k+1 disjoint boxes of size s against a bias-2 BoxBreaker:
    # s <= (floor(b/2) - 1) H_{k-1} suffices.
    k = boxes - 1
    count = 0
    for b in range(2, 9):
        for s in range(1, 9):
            if s <= (b // 2 - 1) * harmonic(k - 1):
                count += 1
                game = box_game(boxes, s, b, breaker_bias=2)
                assert verify_strategy(BoxMaker(), game, "maker", canonical=box_canonical_key).ok, (boxes, s, b)
    assert count > 0 or k == 1


def test_box_move_errors():
    game = box_game(2, 2, 1)
    s = game.initial_state()
    s.breaker = 0b0101
    with pytest.raises(ValueError, match="no surviving box"):
        box_maker_move(s, list(game.family.sets), Player.MAKER, 1)
    with pytest.raises(ValueError):
        BoxMaker("smallest")


def test_pick_box_prefers_finishing_then_largest():
    boxes_ = [0b111, 0b111000, 0b11000000]
    assert pick_box(boxes_, 0, 0, 0xFF, 2) == 2  # box 2 can be finished now
    assert pick_box(boxes_, 0, 0, 0xFF, 1) == 0  # otherwise the largest (lowest index)
    assert pick_box(boxes_, 0, 0, 0xFF, 1, "fewest") == 2


# ---------------------------------------------------------------------------
# isolation Breaker


def maker_graph(g, outcome):
    return Graph(g.n, frozenset(outcome.maker_set))


def test_isolation_completed_star_isolates_vertex():
    for seed in range(20):
        g = gnp(12, 0.7, seed)
        game = BiasedGame(g.edge_list, build_family("connectivity", g), 1, 4, Player.MAKER)
        br = IsolationBreaker()
        out = play(game, RandomStrategy(), br, seed=seed)
        mg = maker_graph(g, out)
        mk = masks_of(g, out.maker_set)
        for v in br.isolated_centres(mk):
            assert mg.degree(v) == 0
            assert out.winner is Player.BREAKER


def test_isolation_verdicts():
    two = Graph(6, frozenset([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
    game = BiasedGame(two.edge_list, build_family("connectivity", two), 1, 2)
    br = IsolationBreaker()
    br.reset(game, Player.BREAKER)
    assert br.verdict() == "already_won"
    tiny = complete_graph(2)
    with pytest.raises(ValueError, match="n >= 3"):
        IsolationBreaker().reset(BiasedGame(tiny.edge_list, build_family("connectivity", tiny)), Player.BREAKER)


def test_isolation_centres_are_low_degree():
    g = gnp(20, 0.5, 3)
    cs = isolation_centres(g)
    assert len(cs) == math.floor(20 / math.log(20))
    worst = max(g.degree(v) for v in cs)
    assert all(g.degree(v) >= worst for v in range(g.n) if v not in cs)


@pytest.mark.slow
def test_isolation_monte_carlo():
    wins = 0
    for i in range(200):
        g = gnp(20, 0.9, derive_seed(11, i))
        game = BiasedGame(g.edge_list, build_family("connectivity", g), 1, 12, Player.MAKER)
        br = IsolationBreaker()
        out = play(game, RandomStrategy(), br, seed=i)
        wins += bool(br.isolated_centres(masks_of(g, out.maker_set)))
    assert wins / 200 >= 0.9


# ---------------------------------------------------------------------------
# connectivity, Hamiltonicity and matching Makers


def test_connectivity_unwinnable():
    two = Graph(6, frozenset([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
    s = ConnectivityMaker()
    s.reset(BiasedGame(two.edge_list, build_family("connectivity", two)), Player.MAKER)
    assert s.verdict() == "unwinnable"


def test_connectivity_maker_on_k4():
    g = complete_graph(4)
    assert oracles.two_edge_disjoint_spanning_trees(g)
    game = BiasedGame(g.edge_list, build_family("connectivity", g), 1, 1, Player.BREAKER)
    assert verify_strategy(ConnectivityMaker(), game, "maker").ok


@pytest.mark.slow
def test_connectivity_maker_monte_carlo():
    n = 14
    p = min(1.0, 6 * math.log(n) / n)
    wins = 0
    for i in range(300):
        g = gnp(n, p, derive_seed(12, i))
        game = BiasedGame(g.edge_list, build_family("connectivity", g), 1, 1, Player.MAKER)
        wins += play(game, ConnectivityMaker(), RandomStrategy(), seed=i).winner is Player.MAKER
    assert wins / 300 >= 0.9


def test_ham_maker_parameters_and_odd_moves():
    g = complete_graph(12)
    game = BiasedGame(g.edge_list, build_family("hamiltonicity", g), 1, 1, Player.MAKER)
    maker = HamiltonicityMaker()
    maker.reset(game, Player.MAKER)
    assert maker.k_used == 1 and maker.q_used == 3

    class Audit(HamiltonicityMaker):
        def choose(self, state, rng):
            x = super().choose(state, rng)
            if state.maker.bit_count() % 2 == 0:
                live = [m for m in self.cut_family.sets if not m & state.maker and m & state.free]
                if live:
                    assert any(m >> x & 1 for m in live)
            return x

    play(game, Audit(), RandomStrategy(), seed=4)


def test_subset_traces_of_sparse_graph():
    g = path_graph(4)
    fam_ = subset_traces(g, 3)
    assert len(fam_.sets) == 4  # {0,1,2},{1,2,3} carry two edges, {0,1,3},{0,2,3} one
    assert sorted(fam_.sizes()) == [1, 1, 2, 2]


@pytest.mark.slow
def test_ham_maker_monte_carlo():
    g = complete_graph(12)
    good = 0
    for i in range(100):
        game = BiasedGame(g.edge_list, build_family("hamiltonicity", g), 1, 1, Player.MAKER)
        out = play(game, HamiltonicityMaker(), RandomStrategy(), seed=derive_seed(13, i))
        mg = maker_graph(g, out)
        good += oracles.vertex_connectivity(mg) >= oracles.independence_number(mg)
    assert good / 100 >= 0.95


def test_hall_family_size_n8():
    g = complete_graph(8)
    A, B = (0, 1, 2, 3), (4, 5, 6, 7)
    assert len(hall(g, A, B).sets) == sum(math.comb(4, k) * math.comb(4, 5 - k) for k in range(1, 5)) == 56


def test_matching_maker_errors_and_flags():
    g = complete_graph(5)
    with pytest.raises(ValueError, match="even"):
        MatchingMaker().reset(BiasedGame(g.edge_list, build_family("connectivity", g)), Player.MAKER)
    sparse = Graph(4, frozenset([(0, 1), (2, 3), (0, 2)]))  # vertex 3's only A-side partner missing
    s = MatchingMaker()
    s.reset(BiasedGame(sparse.edge_list, build_family("connectivity", sparse)), Player.MAKER)
    assert s.verdict() == "unwinnable"


@pytest.mark.parametrize("n", [4, 6])
def test_small_ab_matching_games_are_breaker_wins(n):
    # Exact play: on K_4 and K_6 Breaker stops an A-B perfect matching
    # whoever moves first, so no Maker strategy can win there.
    g = complete_graph(n)
    for first in ("maker", "breaker"):
        game = BiasedGame(g.edge_list, build_family("ab_matching", g), 1, 1, Player(first))
        assert solve(game).winner is Player.BREAKER
    game = BiasedGame(g.edge_list, build_family("ab_matching", g), 1, 1, Player.MAKER)
    assert not verify_strategy(MatchingMaker(), game, "maker").ok


def test_matching_maker_monte_carlo():
    g = complete_graph(10)
    wins = 0
    for i in range(MATCH_TRIALS):
        game = BiasedGame(g.edge_list, build_family("ab_matching", g), 1, 1, Player.MAKER)
        wins += play(game, MatchingMaker(), RandomStrategy(), seed=derive_seed(16, i)).winner is Player.MAKER
    assert wins / MATCH_TRIALS >= MATCH_RATE


MATCH_TRIALS = 200
MATCH_RATE = 0.9


# ---------------------------------------------------------------------------
# clique games


def test_random_maker_stream():
    g = complete_graph(6)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1)
    rm = RandomMaker()
    out = play(game, rm, RandomStrategy(), seed=5)
    assert len(set(rm.stream)) == len(rm.stream)
    maker_idx = [g.edge_index[e] for p, e in out.transcript if p is Player.MAKER]
    assert rm.skips == sum(1 for x in rm.stream if x not in maker_idx)


def test_random_maker_uniform_first_draw():
    g = complete_graph(4)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1)
    counts = np.zeros(6)
    for seed in range(600):
        rm = RandomMaker()
        rm.reset(game, Player.MAKER)
        counts[rm.choose(game.initial_state(), np.random.default_rng(seed))] += 1
    assert counts.min() > 60


@pytest.mark.slow
def test_random_maker_monte_carlo():
    wins = 0
    for i in range(200):
        g = gnp(40, 0.8, derive_seed(14, i))
        game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1, Player.MAKER)
        wins += play(game, RandomMaker(), EsBlocker(), seed=i).winner is Player.MAKER
    assert wins / 200 >= 0.9


def test_threat_block_examples():
    g = complete_graph(4)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1)
    _, qm = clique_edge_masks(g, 3)
    s = game.initial_state()
    assert threat_block_move(s, qm) is None
    idx = g.edge_index
    s.maker = 1 << idx[(0, 1)] | 1 << idx[(1, 2)]
    assert threat_block_move(s, qm) == idx[(0, 2)]
    s.maker |= 1 << idx[(2, 3)]
    assert threat_block_move(s, qm) == min(idx[(0, 2)], idx[(1, 3)])


def test_composite_breaker_on_k4():
    g = complete_graph(4)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 2, Player.MAKER)
    assert verify_strategy(CliqueBreakerComposite(k=3), game, "breaker").ok


def test_composite_answers_threats_within_budget():
    for seed in range(15):
        g = gnp(10, 0.8, seed)
        b = 2 + seed % 3
        game = BiasedGame(g.edge_list, cliques(g, 3), 2, b, Player.MAKER)
        br = CliqueBreakerComposite(k=3)
        br.reset(game, Player.BREAKER)
        mk = RandomMaker()
        mk.reset(game, Player.MAKER)
        rng = np.random.default_rng(seed)
        s = game.initial_state()
        start_threats = None
        while s.free and game.family.maker_wins(s.maker) is None:
            if s.turn is Player.BREAKER and s.taken_this_turn == 0:
                start_threats = {e for q in br.clique_masks if not q & s.breaker
                                 for e in [q & ~s.maker] if e & (e - 1) == 0}
            mover = mk if s.turn is Player.MAKER else br
            before = s.turn
            s.claim(game, mover.choose(s, rng))
            if before is Player.BREAKER and s.turn is Player.MAKER and start_threats is not None:
                left = [q for q in br.clique_masks if not q & s.breaker and (q & ~s.maker).bit_count() == 1]
                if len(start_threats) <= br.threat_budget:
                    assert not left
                start_threats = None


def test_composite_falls_back_over_cap(caplog):
    g = complete_graph(7)
    game = BiasedGame(g.edge_list, cliques(g, 4), 1, 3)
    br = CliqueBreakerComposite(k=4, cap=5)
    with caplog.at_level("WARNING"):
        br.reset(game, Player.BREAKER)
    assert br.engine is None and "cap" in caplog.text
    assert play(game, RandomMaker(), br, seed=1).winner in (Player.MAKER, Player.BREAKER)


@pytest.mark.slow
def test_composite_breaker_monte_carlo():
    n = 25
    p = min(1.0, 4 * n ** -0.4)
    b = math.ceil(4 * p * n ** 0.4)
    wins = 0
    for i in range(200):
        g = gnp(n, p, derive_seed(15, i))
        game = BiasedGame(g.edge_list, cliques(g, 4), 1, b, Player.MAKER)
        br = CliqueBreakerComposite(k=4, log_fans=False)
        wins += play(game, RandomMaker(), br, seed=i).winner is Player.BREAKER
    assert wins / 200 >= 0.8


# ---------------------------------------------------------------------------
# pairing Breakers


def test_degeneracy_pairing_rejects_k5():
    g = complete_graph(5)
    with pytest.raises(ValueError, match="degenerate"):
        DegeneracyPairingBreaker(3).reset(BiasedGame(g.edge_list, cliques(g, 3)), Player.BREAKER)


@pytest.mark.parametrize("g", [cycle_graph(5), Graph(5, frozenset([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])), Graph(5, frozenset([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4)]))])
def test_degeneracy_pairing_beats_optimal_maker(g):
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1, Player.MAKER)
    assert verify_strategy(DegeneracyPairingBreaker(3), game, "breaker").ok


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_degeneracy_pairing_back_edge_audit_on_paths(n):
    # Every Maker line on a path: Maker never holds two back-edges of a vertex.
    g = path_graph(n)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1, Player.MAKER)

    def walk(state, br):
        assert br.max_maker_back_edges(state.maker) <= 1
        if not state.free:
            return
        if state.turn is Player.MAKER:
            for x in state.free_elements():
                nxt = state.copy()
                nxt.claim(game, x)
                walk(nxt, br)
        else:
            nxt = state.copy()
            nxt.claim(game, br.choose(state, None))
            walk(nxt, br)

    br = DegeneracyPairingBreaker(3)
    br.reset(game, Player.BREAKER)
    walk(game.initial_state(), br)


@pytest.mark.parametrize("rim", [4, 5])
def test_wheel_pairing_beats_optimal_maker(rim):
    g = wheel_graph(rim)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1, Player.MAKER)
    assert verify_strategy(WheelPairingBreaker(), game, "breaker").ok


@pytest.mark.parametrize("rim", range(4, 9))
def test_wheel_pairs_cover_every_triangle(rim):
    g = wheel_graph(rim)
    br = WheelPairingBreaker()
    br.reset(BiasedGame(g.edge_list, cliques(g, 3)), Player.BREAKER)
    _, tri = clique_edge_masks(g, 3)
    assert len(tri) == rim
    for t in tri:
        assert any((t >> x & 1) and (t >> y & 1) for x, y in br.pairs)


def test_wheel_pairing_rejects_rim3_and_non_wheels():
    g = wheel_graph(3)
    with pytest.raises(ValueError, match="rim"):
        WheelPairingBreaker().reset(BiasedGame(g.edge_list, cliques(g, 3)), Player.BREAKER)
    h = cycle_graph(6)
    with pytest.raises(ValueError, match="wheel"):
        WheelPairingBreaker().reset(BiasedGame(h.edge_list, cliques(h, 3)), Player.BREAKER)


def test_wheel_rim7_random_makers():
    g = wheel_graph(7)
    game = BiasedGame(g.edge_list, cliques(g, 3), 1, 1, Player.MAKER)
    for seed in range(1000):
        assert play(game, RandomStrategy(), WheelPairingBreaker(), seed=seed).winner is Player.BREAKER


# ---------------------------------------------------------------------------
# registry


def test_registry_names():
    for name in ("es_blocker", "box_maker", "isolation", "conn_maker", "ham_maker", "match_maker",
                 "random_maker", "clique_breaker", "degeneracy_pairing", "wheel_pairing", "random",
                 "solver_optimal"):
        assert name in REGISTRY
    assert make_strategy("box_maker", mode="fewest").mode == "fewest"
    with pytest.raises(UnknownName, match="es_blocker"):
        make_strategy("es_blockr")
