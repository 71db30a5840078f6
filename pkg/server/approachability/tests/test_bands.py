import math

import numpy as np
import pytest
import scipy.linalg
from django.test import SimpleTestCase

from approachability.bands import (BandSet, hyperplane_projection, lambda_norm,
                                   network_hyperplane_projection, player_band,
                                   sample_state_space, slab_distance,
                                   slab_projection)
from games.network import GameGraph, NetworkGame, PairPayoffs, mean_payoff
from games.nplayer import NPlayerPayoffTable, free_riding_game
from games.profiles import state_space

CLASSIC = PairPayoffs(CD=0.0, DD=1.0, CC=3.0, DC=4.0)


def create_classic():
    return NPlayerPayoffTable(2, (0, 3), (1, 4))


def create_pair():
    return NetworkGame.build(GameGraph.topology('path', 2), CLASSIC)


class BandSetTest(SimpleTestCase):

    def test_endpoints_are_order_normalized(self):
        band = BandSet([1.0, -1.0], 0.0, -0.5)

        self.assertEqual((band.alpha, band.beta), (-0.5, 0.0))

    def test_zero_functional_is_refused(self):
        with self.assertRaises(ValueError):
            BandSet([0.0, 0.0], -1.0, 0.0)

    def test_contains_and_describe(self):
        band = player_band(create_classic(), 1, 0.1)

        self.assertTrue(band.contains([2.0, 2.05]))
        self.assertFalse(band.contains([2.0, 2.2]))
        self.assertEqual(band.describe()['distance'], 'slab_distance')

    def test_negative_delta_is_refused(self):
        with self.assertRaises(ValueError):
            player_band(create_classic(), 1, -0.1)


class SlabDistanceTest(SimpleTestCase):

    def test_inside_band_is_zero(self):
        band = player_band(create_classic(), 1, 0.1)

        self.assertEqual(slab_distance(band, [3.0, 3.0]), 0.0)

    def test_network_example(self):
        band = player_band(create_pair(), 1, 0.1)

        self.assertAlmostEqual(slab_distance(band, [0.0, 4.0]), 1.9 / math.sqrt(0.5), places=12)
        self.assertAlmostEqual(slab_distance(band, [0.0, 4.0]), 2.6870, places=4)

    def test_classic_example(self):
        band = player_band(create_classic(), 1, 0.0)

        self.assertAlmostEqual(slab_distance(band, [4.0, 0.0]), 2.8284, places=4)

    def test_row_wise(self):
        band = player_band(create_classic(), 1, 0.0)
        distances = slab_distance(band, np.array([[4.0, 0.0], [3.0, 3.0], [0.0, 4.0]]))

        np.testing.assert_allclose(distances, [4 / math.sqrt(2), 0.0, 4 / math.sqrt(2)])

    def test_projection_lands_on_the_nearest_endpoint(self):
        band = player_band(create_classic(), 1, 0.5)
        projected = slab_projection(band, [4.0, 0.0])

        self.assertAlmostEqual(float(band.value(projected)), 0.0, places=12)
        self.assertAlmostEqual(np.linalg.norm(projected - [4.0, 0.0]), slab_distance(band, [4.0, 0.0]), places=12)
        np.testing.assert_array_equal(slab_projection(band, [3.0, 3.2]), [3.0, 3.2])

    def test_hyperplane_projection(self):
        band = BandSet([1.0, 0.0], -1.0, 1.0)

        np.testing.assert_allclose(hyperplane_projection(band, [5.0, 2.0], 0.5), [0.5, 2.0])

    def test_network_hyperplane_projection(self):
        game = NetworkGame.build(GameGraph.topology('path', 3), CLASSIC)
        u = game.payoff([a for a in 'CDC'])
        moved = network_hyperplane_projection(game, 2, u, -0.05)

        self.assertAlmostEqual(game.mu(2, moved), -0.05, places=12)
        # the coordinates of other edges stay put
        self.assertEqual(moved.shape, u.shape)


class LambdaNormTest(SimpleTestCase):

    def test_diagonal_of_the_classic_game(self):
        vertices = state_space(create_classic()).vertices

        self.assertAlmostEqual(lambda_norm(player_band(create_classic(), 1, 0.0), vertices), 3 * math.sqrt(2))
        self.assertAlmostEqual(lambda_norm(player_band(create_classic(), 1, 0.1), vertices), 3 * math.sqrt(2))

    def test_segment_crossings_are_included(self):
        vertices = state_space(create_classic()).vertices
        band = BandSet([1.0, 0.0], 2.0, 2.0)

        # the slab u_1 = 2 meets E at (2, 10/3)
        self.assertAlmostEqual(lambda_norm(band, vertices), math.sqrt(136) / 3, places=12)

    def test_pair_cap_falls_back_to_vertices(self):
        vertices = state_space(create_classic()).vertices
        band = BandSet([1.0, 0.0], 2.0, 2.0)

        with self.assertLogs('approachability.bands', level='WARNING'):
            self.assertEqual(lambda_norm(band, vertices, pair_cap=1), 0.0)


class TestBandProperties:

    def test_samples_lie_in_the_hull(self):
        game = free_riding_game([0, 1, 2, 3], 1.5, 3)
        vertices = state_space(game).vertices
        points = sample_state_space(vertices, 1000, np.random.default_rng(1))

        assert points.shape == (1000, 3)
        assert np.all(points.min(axis=0) >= vertices.min(axis=0) - 1e-12)
        assert np.all(points.max(axis=0) <= vertices.max(axis=0) + 1e-12)

    @pytest.mark.parametrize('players', [2, 3, 5])
    def test_intersection_of_neutral_bands_is_the_diagonal(self, players):
        game = free_riding_game(list(range(players + 1)), 1.5, players)
        basis = scipy.linalg.null_space(game.mu_matrix)
        points = sample_state_space(state_space(game).vertices, 200, np.random.default_rng(players))
        # orthogonal projection on {mu^i = 0 for every i}
        projected = points @ basis @ basis.T

        assert np.max(np.ptp(projected, axis=1)) <= 1e-9

    @pytest.mark.parametrize('k', [1, 2])
    def test_payoff_bounds_inside_good_bands(self, k):
        players, delta = 3, 0.5
        game = free_riding_game([0, 1, 2, 3], 1.5, players)
        points = sample_state_space(state_space(game).vertices, 100_000, np.random.default_rng(10 + k))
        mu = points @ game.mu_matrix.T
        inside = np.all((mu[:, :k] >= -delta) & (mu[:, :k] <= 0), axis=1)
        selected = points[inside]
        assert selected.shape[0] > 100

        rest = selected[:, k:].mean(axis=1)
        for i in range(k):
            gap = rest - selected[:, i]
            assert np.all(gap >= -1e-12)
            assert np.all(gap <= delta * (players - 1) / (players - k) + 1e-12)
            assert np.all(selected[:, i] <= game.v_c[-1] + 1e-12)
            assert np.all(selected[:, i] >= game.v_d[0] - delta * (players - 1) / players - 1e-12)

    @pytest.mark.parametrize('topology,players', [('path', 3), ('cycle', 4), ('star', 4)])
    def test_network_mean_payoff_inside_good_band(self, topology, players):
        delta = 0.3
        game = NetworkGame.build(GameGraph.topology(topology, players), CLASSIC)
        points = sample_state_space(state_space(game).vertices, 100_000, np.random.default_rng(players))
        for i in range(1, players + 1):
            band = player_band(game, i, delta)
            selected = points[(band.value(points) >= -delta) & (band.value(points) <= 0)]
            means = np.array([mean_payoff(game, u, i) for u in selected[:2000]])
            assert means.size
            assert np.all(means >= CLASSIC.DD - delta / (2 * game.pi[i - 1]) - 1e-12)
            assert np.all(means <= CLASSIC.CC + 1e-12)
