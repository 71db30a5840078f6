'''
Band sets {u in E : alpha <= mu(u) <= beta} for a linear functional mu.

Distances to a band are slab distances: the Euclidean distance to the
slab {alpha <= mu <= beta} in payoff space. This is a lower bound for the
distance to slab & E and is exact whenever the slab projection of u
stays in E.
'''
import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

SURROGATE = 'slab_distance'
PAIR_REFINEMENT_CAP = 4096


@dataclass(frozen=True, eq=False)
class BandSet:
    mu: np.ndarray
    alpha: float
    beta: float

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float)
        if not np.linalg.norm(mu) > 0:
            raise ValueError('a band needs a nonzero functional')
        mu.setflags(write=False)
        low, high = sorted((float(self.alpha), float(self.beta)))
        object.__setattr__(self, 'mu', mu)
        object.__setattr__(self, 'alpha', low)
        object.__setattr__(self, 'beta', high)

    @property
    def norm(self):
        return float(np.linalg.norm(self.mu))

    def value(self, u):
        return np.asarray(u, dtype=float) @ self.mu

    def clamp(self, value):
        return min(self.beta, max(self.alpha, float(value)))

    def contains(self, u, tol=0.0):
        value = float(self.value(u))
        return self.alpha - tol <= value <= self.beta + tol

    def describe(self):
        return {
            'mu': self.mu.tolist(),
            'alpha': self.alpha,
            'beta': self.beta,
            'distance': SURROGATE,
        }


def player_band(game, player, delta) -> BandSet:
    '''
    Lambda^i(delta) = {u in E : -delta <= mu^i(u) <= 0}
    '''
    if delta < 0:
        raise ValueError(f'delta must be nonnegative, got {delta}')
    return BandSet(game.mu_matrix[player - 1], -float(delta), 0.0)


def slab_distance(band: BandSet, u):
    '''
    max(0, mu(u) - beta, alpha - mu(u)) / ||mu||, row-wise for a matrix of states
    '''
    values = band.value(u)
    excess = np.maximum(0.0, np.maximum(values - band.beta, band.alpha - values))
    distance = excess / band.norm
    return float(distance) if np.ndim(distance) == 0 else distance


def hyperplane_projection(band: BandSet, u, eta) -> np.ndarray:
    '''
    Orthogonal projection of u on the hyperplane {mu = eta}
    '''
    u = np.asarray(u, dtype=float)
    return u - (float(band.value(u)) - eta) / band.norm ** 2 * band.mu


def slab_projection(band: BandSet, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return hyperplane_projection(band, u, band.clamp(band.value(u)))


def network_hyperplane_projection(game, player, u, eta) -> np.ndarray:
    '''
    Moves u along the edge vector v (+1 on (i, j), -1 on (j, i) for every
    neighbor j) until mu^i = eta. mu^i(v) = 2 pi_i, so this is
    u - (mu^i(u) - eta) / (2 pi_i) v.
    '''
    u = np.asarray(u, dtype=float)
    direction = np.zeros(game.dimension)
    for j in game.graph.neighbors(player):
        direction[game.edge_index[(player, j)]] = 1.0
        direction[game.edge_index[(j, player)]] = -1.0
    return u - (game.mu(player, u) - eta) / (2.0 * game.pi[player - 1]) * direction


def sample_state_space(vertices, count, rng) -> np.ndarray:
    '''
    Uniform Dirichlet mixtures of the vertices: normalized exponential weights
    '''
    vertices = np.asarray(vertices, dtype=float)
    weights = rng.standard_exponential((count, vertices.shape[0]))
    weights /= weights.sum(axis=1, keepdims=True)
    return weights @ vertices


def lambda_norm(band: BandSet, vertices, tol=1e-12, pair_cap=PAIR_REFINEMENT_CAP) -> float:
    '''
    |Lambda| = sup{||u|| : u in slab & E}.

    Every vertex of slab & E is a vertex of E inside the slab or a point
    where a segment between two vertices of E crosses alpha or beta, so
    the maximum over those points is exact. Above `pair_cap` distinct
    vertices only in-slab vertices are used, which under-approximates.
    '''
    vertices = np.unique(np.asarray(vertices, dtype=float), axis=0)
    values = vertices @ band.mu
    norms = np.linalg.norm(vertices, axis=1)
    inside = (values >= band.alpha - tol) & (values <= band.beta + tol)
    best = float(norms[inside].max()) if inside.any() else 0.0
    if vertices.shape[0] > pair_cap:
        logger.warning('|Lambda| from in-slab vertices only: %d distinct vertices', vertices.shape[0])
        return best
    for level in sorted({band.alpha, band.beta}):
        above = np.flatnonzero(values > level)
        if not above.size:
            continue
        for i in np.flatnonzero(values < level):
            t = (level - values[i]) / (values[above] - values[i])
            points = vertices[i] + t[:, None] * (vertices[above] - vertices[i])
            best = max(best, float(np.linalg.norm(points, axis=1).max()))
    return best
