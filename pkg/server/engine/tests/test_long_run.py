'''
Long-run behaviour of good strategies. Every check has a short variant in
the default run and a horizon 10^6 variant marked slow.
'''
import numpy as np
import pytest

from engine.ensemble import replicate
from engine.nash_gap import nash_gap, nash_threshold
from engine.simulation import SimConfig
from games.network import GameGraph, NetworkGame, PairPayoffs
from games.nplayer import free_riding_game
from strategies.payoff_based import PayoffBasedStrategy
from strategies.policies import OpponentPolicy
from strategies.textchoices import PolicyKinds, StrategyKinds

CLASSIC = PairPayoffs(CD=0.0, DD=1.0, CC=3.0, DC=4.0)
LONG = 10 ** 6
WORKERS = 4


def create_free_riding():
    return free_riding_game([0, 1, 2, 3], 1.5, 3)


def create_network(players):
    return NetworkGame.build(GameGraph.topology('path', players), CLASSIC)


def all_good(game, horizon, seed=1000, delta=0.05):
    return SimConfig(
        game=game,
        assignments=tuple(
            PayoffBasedStrategy(i, StrategyKinds.continuous_good, delta=delta)
            for i in range(1, game.players + 1)
        ),
        horizon=horizon,
        seed=seed,
        record_every=max(1, horizon // 100),
    )


def one_good_among_defectors(game, good_player, horizon, seed=2000, delta=0.1):
    assignments = tuple(
        PayoffBasedStrategy(i, StrategyKinds.threshold_good, delta=delta) if i == good_player
        else OpponentPolicy(i, PolicyKinds.always_defect)
        for i in range(1, game.players + 1)
    )
    return SimConfig(game=game, assignments=assignments, horizon=horizon, seed=seed,
                     record_every=max(1, horizon // 100))


def deviations(delta):
    return [
        OpponentPolicy(1, PolicyKinds.always_defect),
        OpponentPolicy(1, PolicyKinds.always_cooperate),
        OpponentPolicy(1, PolicyKinds.exploiter, delta=delta, target=2),
    ]


def check_mutual_cooperation(horizon, replications, workers=1):
    game = create_free_riding()
    ensemble = replicate(all_good(game, horizon), replications, workers)
    hits = sum(np.max(np.abs(trace.final_state - game.v_star)) <= 0.05 for trace in ensemble.traces)
    assert hits >= replications - replications // 20


def check_network_cooperation(players, horizon, replications, workers=1):
    game = create_network(players)
    ensemble = replicate(all_good(game, horizon), replications, workers)
    hits = sum(np.max(np.abs(trace.final_state - CLASSIC.CC)) <= 0.1 for trace in ensemble.traces)
    assert hits >= replications - replications // 20


def check_defense_bounds(horizon, replications, workers=1):
    game = create_free_riding()
    delta = 0.1
    ensemble = replicate(one_good_among_defectors(game, 1, horizon, delta=delta), replications, workers)
    for trace in ensemble.traces:
        low, high = trace.extremes['payoff_1']
        assert low >= game.v_d[0] - delta - 0.05
        assert high <= game.v_c[-1] + 0.05
        gap_low, gap_high = trace.extremes['gap_1']
        assert gap_low >= -0.05
        # delta (N - 1) / (N - |G|) with a single good player
        assert gap_high <= delta + 0.05


def check_group_bounds(horizon, replications, workers=1):
    game = create_free_riding()
    delta = 0.1
    assignments = (
        PayoffBasedStrategy(1, StrategyKinds.threshold_good, delta=delta),
        PayoffBasedStrategy(2, StrategyKinds.threshold_good, delta=delta),
        OpponentPolicy(3, PolicyKinds.always_defect),
    )
    config = SimConfig(game=game, assignments=assignments, horizon=horizon, seed=3000,
                       record_every=max(1, horizon // 100))
    # delta (N - 1) / (N - |G|) with two good players out of three
    upper = delta * 2
    for trace in replicate(config, replications, workers).traces:
        for player in (1, 2):
            low, high = trace.extremes[f'gap_{player}']
            assert low >= -0.05
            assert high <= upper + 0.05


def check_network_bounds(horizon, replications, workers=1):
    game = create_network(3)
    delta = 0.1
    ensemble = replicate(one_good_among_defectors(game, 2, horizon, delta=delta), replications, workers)
    lower = CLASSIC.DD - delta / (2 * game.pi[1]) - 0.05
    for trace in ensemble.traces:
        low, high = trace.extremes['payoff_2']
        assert low >= lower
        assert high <= CLASSIC.CC + 0.05


def check_network_group_bounds(horizon, replications, workers=1):
    game = create_network(3)
    delta = 0.1
    assignments = (
        PayoffBasedStrategy(1, StrategyKinds.threshold_good, delta=delta),
        OpponentPolicy(2, PolicyKinds.always_defect),
        PayoffBasedStrategy(3, StrategyKinds.threshold_good, delta=delta),
    )
    config = SimConfig(game=game, assignments=assignments, horizon=horizon, seed=4000,
                       record_every=max(1, horizon // 100))
    # player 2 is the only one outside G = {1, 3}
    pi_others, good = game.pi[1], 2
    for trace in replicate(config, replications, workers).traces:
        low, high = trace.extremes['weighted_others']
        assert low >= pi_others * CLASSIC.DD - 0.05
        assert high <= pi_others * CLASSIC.CC + good * delta / 2 + 0.05
        low, high = trace.extremes['mu_others']
        assert low >= -0.05
        assert high <= good * delta + 0.05


def check_nash_gap(game, horizon, replications, workers=1, delta=0.05):
    report = nash_gap(all_good(game, horizon, delta=delta), 1, deviations(delta), replications, workers,
                      tolerance=0.05)
    assert report.threshold == nash_threshold(game, delta)
    assert len(report.outcomes) == 3
    assert report.passed, report.as_dict()


class TestShortRuns:

    def test_mutual_cooperation(self):
        check_mutual_cooperation(horizon=5000, replications=3)

    @pytest.mark.parametrize('players', [2, 3])
    def test_network_cooperation(self, players):
        check_network_cooperation(players, horizon=5000, replications=3)

    def test_defense_bounds(self):
        check_defense_bounds(horizon=20_000, replications=2)

    def test_network_bounds(self):
        check_network_bounds(horizon=20_000, replications=2)

    def test_group_bounds(self):
        check_group_bounds(horizon=20_000, replications=2)

    def test_network_group_bounds(self):
        check_network_group_bounds(horizon=20_000, replications=2)

    def test_nash_gap_free_riding(self):
        check_nash_gap(create_free_riding(), horizon=20_000, replications=2)

    def test_nash_gap_two_node_network(self):
        check_nash_gap(create_network(2), horizon=20_000, replications=2)


@pytest.mark.slow
class TestLongRuns:

    def test_mutual_cooperation(self):
        check_mutual_cooperation(horizon=LONG, replications=20, workers=WORKERS)

    @pytest.mark.parametrize('players', [2, 3])
    def test_network_cooperation(self, players):
        check_network_cooperation(players, horizon=LONG, replications=20, workers=WORKERS)

    def test_defense_bounds(self):
        check_defense_bounds(horizon=LONG, replications=20, workers=WORKERS)

    def test_network_bounds(self):
        check_network_bounds(horizon=LONG, replications=20, workers=WORKERS)

    def test_group_bounds(self):
        check_group_bounds(horizon=LONG, replications=20, workers=WORKERS)

    def test_network_group_bounds(self):
        check_network_group_bounds(horizon=LONG, replications=20, workers=WORKERS)

    def test_nash_gap_free_riding(self):
        check_nash_gap(create_free_riding(), horizon=LONG, replications=20, workers=WORKERS)

    def test_nash_gap_two_node_network(self):
        check_nash_gap(create_network(2), horizon=LONG, replications=20, workers=WORKERS)
