'''
Per-row metric series of a trace.
'''
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from approachability.bands import slab_distance
from games.textchoices import GameTypes


@dataclass(frozen=True, eq=False)
class MetricSeries:
    '''
    Rows follow the trace. `running_min` / `running_max` are the extremes
    of each player's payoff over recorded rows past burn-in (nan before).
    Network games also carry mean payoffs and, for a group of good
    players, the weighted payoff and the mu sum of the other players;
    N-player games carry the group gap of each good player instead.
    '''
    steps: np.ndarray
    mu: np.ndarray
    dist_lambda: Dict[int, np.ndarray]
    dist_diag: np.ndarray
    dist_vstar: np.ndarray
    running_min: np.ndarray
    running_max: np.ndarray
    mean_payoffs: Optional[np.ndarray] = None
    weighted_others: Optional[np.ndarray] = None
    mu_others: Optional[np.ndarray] = None
    group_gaps: Optional[Dict[int, np.ndarray]] = None


def diagonal_distance(game, states) -> np.ndarray:
    '''
    N-player: max_i |u_i - mean(u)|. Network: max_i |mu^i(u)|, the spread
    from the set where every mu^i vanishes.
    '''
    states = np.atleast_2d(np.asarray(states, dtype=float))
    if game.game_type == GameTypes.network:
        return np.max(np.abs(states @ game.mu_matrix.T), axis=1)
    return np.max(np.abs(states - states.mean(axis=1, keepdims=True)), axis=1)


def vstar_distance(game, states) -> np.ndarray:
    '''
    Sup-norm distance to v* = U(C, ..., C)
    '''
    states = np.atleast_2d(np.asarray(states, dtype=float))
    return np.max(np.abs(states - game.v_star), axis=1)


def _running(values, active, accumulate, fill):
    masked = np.where(active[:, None], values, fill)
    running = accumulate(masked, axis=0)
    return np.where(np.isinf(running), np.nan, running)


def metrics(trace, game, bands, burn_in=0, group=()) -> MetricSeries:
    if not len(trace.steps):
        raise ValueError('metrics need a nonempty trace')
    states = trace.states
    steps = trace.steps
    payoffs = states @ game.player_payoff_matrix.T
    active = steps > burn_in

    group = set(group)
    others = np.array([j - 1 for j in range(1, game.players + 1) if j not in group], dtype=np.intp)
    network = game.game_type == GameTypes.network
    mu = states @ game.mu_matrix.T

    extra = {}
    if network:
        extra['mean_payoffs'] = payoffs
        if group and others.size:
            extra['weighted_others'] = payoffs[:, others] @ game.pi[others]
            extra['mu_others'] = mu[:, others].sum(axis=1)
    elif group and others.size:
        mean_others = states[:, others].mean(axis=1)
        extra['group_gaps'] = {i: mean_others - states[:, i - 1] for i in sorted(group)}

    return MetricSeries(
        steps=steps,
        mu=mu,
        dist_lambda={player: slab_distance(band, states) for player, band in sorted(bands.items())},
        dist_diag=diagonal_distance(game, states),
        dist_vstar=vstar_distance(game, states),
        running_min=_running(payoffs, active, np.minimum.accumulate, np.inf),
        running_max=_running(payoffs, active, np.maximum.accumulate, -np.inf),
        **extra,
    )
