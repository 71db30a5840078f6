'''
Projected Euler integration of selection fields and the diagonal check
behind convergence to mutual cooperation.
'''
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from approachability.certify import opponent_label
from games.exceptions import GameDefinitionError
from games.profiles import DEFAULT_ENUMERATION_CAP, opponent_masks, state_space
from games.textchoices import GameTypes

from .exceptions import StepSizeError
from .retraction import MEMBERSHIP_TOL, RETRACTION_TOL, nearest_point
from .selection import selection_field

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-2
DEFAULT_DURATION = 20.0


@dataclass(frozen=True, eq=False)
class FlowPath:
    times: np.ndarray
    states: np.ndarray

    @property
    def final(self):
        return self.states[-1]

    def max_gap(self, reference) -> float:
        '''
        Largest Euclidean gap to reference states sampled at the same times
        '''
        return float(np.max(np.linalg.norm(self.states - reference, axis=1)))


def exponential_solution(u0, target, times) -> np.ndarray:
    '''
    e^{-t}(u0 - c) + c, the flow of the affine field -u + c
    '''
    u0 = np.asarray(u0, dtype=float)
    target = np.asarray(target, dtype=float)
    return np.exp(-np.asarray(times))[:, None] * (u0 - target) + target


def euler_integrate(sel, game, u0, h=DEFAULT_STEP, T=DEFAULT_DURATION, tol=RETRACTION_TOL,
                    cap=DEFAULT_ENUMERATION_CAP) -> FlowPath:
    '''
    eta_{k+1} = r(eta_k + h f(eta_k)). The Euler point is kept as is when it
    lies within MEMBERSHIP_TOL of E, which it does whenever eta_k is in E.
    '''
    if not 0 < h < 1:
        raise StepSizeError(f'step size must lie in (0, 1), got {h}')
    if T < h:
        raise StepSizeError(f'T = {T} is shorter than one step of {h}')
    vertices = state_space(game, cap).distinct_vertices()
    steps = int(round(T / h))
    states = np.empty((steps + 1, game.dimension))
    states[0] = u0
    for k in range(steps):
        candidate = states[k] + h * selection_field(sel, game, states[k], cap)
        retraction = nearest_point(candidate, vertices, tol)
        if np.linalg.norm(retraction.point - candidate) > MEMBERSHIP_TOL:
            candidate = retraction.point
        states[k + 1] = candidate
    return FlowPath(times=h * np.arange(steps + 1), states=states)


@dataclass
class DiagonalReport:
    player: int
    samples: int
    unique: bool
    offenders: List[Tuple[str, float]] = field(default_factory=list)

    def as_dict(self):
        return {
            'player': self.player,
            'samples': self.samples,
            'unique': self.unique,
            'offenders': [{'opponents': label, 'mu': value} for label, value in self.offenders],
        }


def diagonal_limit_check(game, strat, samples=64, rng=None, tol=1e-12,
                         cap=DEFAULT_ENUMERATION_CAP) -> DiagonalReport:
    '''
    For states u != v* on the diagonal of E, checks that v* is the only
    vertex of C^i(u) with mu^i = 0; every other vertex must have mu^i < 0.
    An offender is a non all-cooperate opponent profile with mu^i within
    tol of 0 (non-uniqueness) or above it.
    '''
    if game.game_type == GameTypes.network:
        raise GameDefinitionError('the diagonal check applies to N-player games')
    if not strat.is_good:
        raise ValueError('the diagonal check needs a good strategy')
    if not strat.is_continuous:
        logger.warning('player %d: diagonal check with a discontinuous strategy', strat.player)
    rng = np.random.default_rng(0) if rng is None else rng

    player = strat.player
    table = game.payoff_table(cap)
    masks = np.array(opponent_masks(player, game.players, cap))
    everyone = (1 << game.players) - 1
    mu = game.mu_matrix[player - 1]

    # the diagonal of E runs from U(D, ..., D) to v*
    low, high = float(table[0][0]), float(game.v_star[0])
    offenders = {}
    for t in rng.uniform(min(low, high), max(low, high), samples):
        u = np.full(game.dimension, t)
        if np.allclose(u, game.v_star):
            continue
        q = strat.cooperation_probability(game.mu(player, u))
        vertices = q * table[masks | 1 << (player - 1)] + (1.0 - q) * table[masks]
        for mask, value in zip(masks, vertices @ mu):
            if (mask | 1 << (player - 1)) != everyone and value >= -tol:
                offenders[opponent_label(mask, player, game.players)] = float(value)
    report = DiagonalReport(
        player=player,
        samples=samples,
        unique=not offenders,
        offenders=sorted(offenders.items()),
    )
    if not report.unique:
        logger.info('player %d: %d opponent profiles tie v* on the diagonal', player, len(offenders))
    return report
