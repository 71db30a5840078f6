import numpy as np
import pytest
from django.test import SimpleTestCase

from approachability.bands import sample_state_space
from dynamics.exceptions import SelectionError, StepSizeError
from dynamics.flow import diagonal_limit_check, euler_integrate, exponential_solution
from dynamics.retraction import nearest_point, retract_to_E, retraction_residual
from dynamics.selection import Selection, profile_weights, selection_field
from dynamics.textchoices import NatureKinds
from games.exceptions import GameDefinitionError
from games.network import GameGraph, NetworkGame, PairPayoffs
from games.nplayer import NPlayerPayoffTable, free_riding_game
from games.profiles import state_space
from strategies.payoff_based import PayoffBasedStrategy
from strategies.policies import OpponentPolicy
from strategies.textchoices import PolicyKinds, StrategyKinds

CLASSIC_VERTICES = np.array([[1.0, 1.0], [0.0, 4.0], [4.0, 0.0], [3.0, 3.0]])


def create_free_riding():
    return free_riding_game([0, 1, 2, 3], 1.5, 3)


def continuous(player, delta=0.05):
    return PayoffBasedStrategy(player, StrategyKinds.continuous_good, delta=delta)


def always_cooperating_field():
    '''
    A selection whose field is the affine -u + v*
    '''
    return Selection(PayoffBasedStrategy(1, StrategyKinds.constant, p=1.0), nature=NatureKinds.all_cooperate)


class RetractionTest(SimpleTestCase):

    def test_outside_point_goes_to_the_nearest_vertex(self):
        point = retract_to_E([5.0, 0.0], CLASSIC_VERTICES)

        np.testing.assert_allclose(point, [4.0, 0.0], atol=1e-8)
        self.assertAlmostEqual(retraction_residual([5.0, 0.0], CLASSIC_VERTICES), 1.0, places=8)

    def test_matches_a_boundary_discretization(self):
        x = np.array([4.0, 4.0])
        boundary = np.concatenate([
            np.linspace(a, b, 10_001)
            for a, b in [((4.0, 0.0), (3.0, 3.0)), ((3.0, 3.0), (0.0, 4.0))]
        ])
        oracle = np.min(np.linalg.norm(boundary - x, axis=1))

        self.assertAlmostEqual(retraction_residual(x, CLASSIC_VERTICES), oracle, places=6)

    def test_vertex_and_centroid_stay_put(self):
        for x in (CLASSIC_VERTICES[1], CLASSIC_VERTICES.mean(axis=0)):
            np.testing.assert_allclose(retract_to_E(x, CLASSIC_VERTICES), x, atol=1e-8)

    def test_optimality_gap_is_reported(self):
        retraction = nearest_point([5.0, 5.0], CLASSIC_VERTICES)

        np.testing.assert_allclose(retraction.point, [3.0, 3.0], atol=1e-8)
        self.assertLessEqual(retraction.gap, 1e-10 * 50)
        self.assertGreaterEqual(retraction.iterations, 1)

    def test_duplicated_vertices(self):
        vertices = state_space(create_free_riding()).vertices

        np.testing.assert_allclose(retract_to_E([2.0, 2.0, 2.0], vertices), [1.5, 1.5, 1.5], atol=1e-8)


class SelectionTest(SimpleTestCase):

    def setUp(self):
        self.game = create_free_riding()
        return super().setUp()

    def test_fixed_point_at_mutual_cooperation(self):
        sel = Selection(continuous(1), nature=NatureKinds.all_cooperate)

        np.testing.assert_allclose(selection_field(sel, self.game, self.game.v_star), np.zeros(3), atol=1e-15)

    def test_committed_defection_against_defectors(self):
        sel = Selection(continuous(1), nature=NatureKinds.all_defect)
        u = np.array([0.0, 1.0, 1.0])

        np.testing.assert_allclose(selection_field(sel, self.game, u), -u)

    def test_nature_follows_the_opponents(self):
        sel = Selection(continuous(2), others=(OpponentPolicy(3, PolicyKinds.iid_random, p=0.25), continuous(1)))

        self.assertEqual([agent.player for agent in sel.others], [1, 3])
        np.testing.assert_allclose(sel.cooperation_probabilities(self.game, self.game.v_star), [1.0, 1.0, 0.25])

    def test_invalid_selections(self):
        with self.assertRaises(SelectionError):
            Selection(continuous(1))
        with self.assertRaises(SelectionError):
            Selection(continuous(1), others=(continuous(1), continuous(2)))

    def test_profile_weights_form_a_distribution(self):
        weights = profile_weights(np.array([0.2, 0.7, 0.5]), 3)

        self.assertAlmostEqual(weights.sum(), 1.0, places=15)
        # mask 0b011: players 1 and 2 cooperate
        self.assertAlmostEqual(weights[0b011], 0.2 * 0.7 * 0.5, places=15)


class EulerTest(SimpleTestCase):

    def test_matches_the_exponential_solution(self):
        game = create_free_riding()
        u0 = np.zeros(3)
        h = 0.01
        path = euler_integrate(always_cooperating_field(), game, u0, h=h, T=10.0)
        exact = exponential_solution(u0, game.v_star, path.times)

        self.assertLessEqual(path.max_gap(exact), 5 * h * np.linalg.norm(u0 - game.v_star))
        self.assertLessEqual(np.linalg.norm(path.final - game.v_star), np.linalg.norm(u0 - game.v_star) * np.exp(-10))

    def test_discrete_contraction_is_exact(self):
        game = create_free_riding()
        path = euler_integrate(always_cooperating_field(), game, np.zeros(3), h=0.1, T=1.0)
        ratios = np.linalg.norm(path.states[1:] - game.v_star, axis=1) / np.linalg.norm(
            path.states[:-1] - game.v_star, axis=1)

        np.testing.assert_allclose(ratios, 0.9, atol=1e-12)

    def test_starting_at_the_fixed_point(self):
        game = create_free_riding()
        path = euler_integrate(always_cooperating_field(), game, game.v_star, h=0.05, T=1.0)

        np.testing.assert_allclose(path.states, np.tile(game.v_star, (21, 1)))

    def test_step_size_must_keep_the_contraction(self):
        game = create_free_riding()
        with self.assertRaises(StepSizeError):
            euler_integrate(always_cooperating_field(), game, np.zeros(3), h=1.0, T=2.0)
        with self.assertRaises(StepSizeError):
            euler_integrate(always_cooperating_field(), game, np.zeros(3), h=0.1, T=0.05)


class DiagonalCheckTest(SimpleTestCase):

    def test_free_riding_has_a_unique_tie(self):
        report = diagonal_limit_check(create_free_riding(), continuous(1))

        self.assertTrue(report.unique)
        self.assertEqual(report.offenders, [])

    def test_degenerate_table_is_flagged(self):
        # vC[0] = vD[1] puts U(C, D, D) on the diagonal
        game = NPlayerPayoffTable(3, (1.0, 0.5, 1.5), (0.0, 1.0, 2.0))
        report = diagonal_limit_check(game, continuous(1))

        self.assertFalse(report.unique)
        self.assertEqual(report.as_dict()['offenders'], [{'opponents': 'DD', 'mu': 0.0}])

    def test_network_games_are_refused(self):
        game = NetworkGame.build(GameGraph.topology('path', 2), PairPayoffs(0.0, 1.0, 3.0, 4.0))

        with self.assertRaises(GameDefinitionError):
            diagonal_limit_check(game, continuous(1))

    def test_strategy_must_be_good(self):
        with self.assertRaises(ValueError):
            diagonal_limit_check(create_free_riding(), PayoffBasedStrategy(1, StrategyKinds.constant, p=1.0))

    def test_discontinuous_strategy_is_reported(self):
        strat = PayoffBasedStrategy(1, StrategyKinds.threshold_good, delta=0.05)

        with self.assertLogs('dynamics.flow', level='WARNING'):
            diagonal_limit_check(create_free_riding(), strat, samples=4)


def valid_tables():
    rng = np.random.default_rng(31)
    tables = []
    for _ in range(10):
        players = int(rng.integers(2, 7))
        c = float(rng.uniform(0.5, 2.0))
        increments = rng.uniform(c / players, c, size=players)
        tables.append(free_riding_game(np.concatenate([[0.0], np.cumsum(increments)]), c, players))
    return tables + [NPlayerPayoffTable(2, (0, 3), (1, 4))]


class TestDynamicsProperties:

    @pytest.mark.parametrize('game', valid_tables())
    def test_diagonal_uniqueness_on_valid_tables(self, game):
        for player in range(1, game.players + 1):
            assert diagonal_limit_check(game, continuous(player, 0.1), samples=16).unique

    def test_field_points_lie_in_the_hull(self):
        game = create_free_riding()
        vertices = state_space(game).vertices
        sel = Selection(continuous(1, 0.2), others=(continuous(2, 0.2), OpponentPolicy(3, PolicyKinds.iid_random)))
        for u in sample_state_space(vertices, 50, np.random.default_rng(8)):
            assert retraction_residual(selection_field(sel, game, u) + u, vertices) <= 1e-9

    def test_paths_stay_in_the_hull(self):
        game = create_free_riding()
        vertices = state_space(game).vertices
        sel = Selection(continuous(1, 0.2), nature=NatureKinds.all_defect)
        path = euler_integrate(sel, game, np.array([1.5, 1.5, 1.5]), h=0.05, T=3.0)

        for state in path.states:
            assert retraction_residual(state, vertices) <= 1e-9

    def test_good_players_converge_from_the_diagonal(self):
        game = create_free_riding()
        u0 = np.array([0.5, 0.5, 0.5])
        sel = Selection(continuous(1), others=(continuous(2), continuous(3)))
        path = euler_integrate(sel, game, u0, h=0.01, T=10.0)

        assert np.linalg.norm(path.final - game.v_star) <= np.exp(-10 * 0.99) * np.linalg.norm(u0 - game.v_star)
