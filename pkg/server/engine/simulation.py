'''
Repeated play: every player samples its action independently from its
strategy or policy given the history, the running average payoff u_n is
updated incrementally, and rows are captured into a trace.
'''
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Optional, Tuple

import numpy as np

from approachability.bands import player_band
from games.exceptions import EnumerationCapExceeded
from games.profiles import DEFAULT_ENUMERATION_CAP, profile_from_mask, profile_label
from games.textchoices import GameTypes
from strategies.history import History

from .exceptions import SimulationConfigError
from .metrics import metrics

logger = logging.getLogger(__name__)

SEED_LIMIT = 2 ** 64


def make_generator(seed) -> np.random.Generator:
    '''
    PCG64 stream keyed by SeedSequence(seed); consecutive seeds give
    independent streams
    '''
    if not 0 <= seed < SEED_LIMIT:
        raise SimulationConfigError(f'seed must be an unsigned 64-bit integer, got {seed}')
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def describe_game(game):
    return {
        'type': game.game_type.value,
        'players': game.players,
        'dimension': game.dimension,
        'coordinates': game.coordinate_names,
    }


@dataclass(frozen=True, eq=False)
class SimConfig:
    '''
    One strategy or policy per player. Players with good strategies are
    tracked against Lambda^i(delta); when nobody plays a good strategy
    every player is tracked against Lambda^i(band_delta).
    '''
    game: object
    assignments: Tuple
    horizon: int
    seed: int
    record_every: int = 1
    burn_in: Optional[int] = None
    band_delta: float = 0.0
    cap: int = DEFAULT_ENUMERATION_CAP

    def __post_init__(self):
        assignments = tuple(sorted(self.assignments, key=lambda agent: agent.player))
        players = [agent.player for agent in assignments]
        expected = list(range(1, self.game.players + 1))
        if players != expected:
            counts = Counter(players)
            duplicated = sorted(p for p, c in counts.items() if c > 1)
            missing = sorted(set(expected) - set(players))
            extra = sorted(set(players) - set(expected))
            raise SimulationConfigError(
                f'every player needs exactly one assignment: duplicated {duplicated}, '
                f'missing {missing}, unknown {extra}'
            )
        object.__setattr__(self, 'assignments', assignments)
        if self.horizon < 1:
            raise SimulationConfigError(f'horizon must be at least 1, got {self.horizon}')
        if self.record_every < 1:
            raise SimulationConfigError(f'recordEvery must be at least 1, got {self.record_every}')
        if self.burn_in is None:
            object.__setattr__(self, 'burn_in', self.horizon // 10)
        if not 0 <= self.burn_in < self.horizon:
            raise SimulationConfigError(f'burnIn must lie in [0, {self.horizon}), got {self.burn_in}')
        if not 0 <= self.seed < SEED_LIMIT:
            raise SimulationConfigError(f'seed must be an unsigned 64-bit integer, got {self.seed}')

    @property
    def players(self):
        return self.game.players

    @property
    def good_players(self) -> Tuple[int, ...]:
        return tuple(agent.player for agent in self.assignments if agent.is_good)

    @property
    def tracked_players(self) -> Tuple[int, ...]:
        return self.good_players or tuple(range(1, self.players + 1))

    def bands(self):
        deltas = {agent.player: agent.delta for agent in self.assignments if agent.is_good}
        return {
            player: player_band(self.game, player, deltas.get(player, self.band_delta))
            for player in self.tracked_players
        }

    @cached_property
    def payoff_table(self) -> Optional[np.ndarray]:
        try:
            return self.game.payoff_table(self.cap)
        except EnumerationCapExceeded:
            logger.info('%d players: payoffs are computed per step', self.players)
            return None

    @cached_property
    def functionals(self) -> Tuple[Tuple[str, ...], np.ndarray]:
        '''
        Linear functionals of u whose extremes are tracked every step after
        burn-in: each player's payoff and, for a group G of good players,
        the group bounds (mean payoff of the others minus u_i on N-player
        games; sum of pi_j times mean payoff and sum of mu^j over the
        others on networks).
        '''
        game = self.game
        names = [f'payoff_{i}' for i in range(1, self.players + 1)]
        rows = list(game.player_payoff_matrix)
        group = set(self.good_players)
        others = [j for j in range(1, self.players + 1) if j not in group]
        if group and others:
            if game.game_type == GameTypes.network:
                index = np.array(others) - 1
                names += ['weighted_others', 'mu_others']
                rows.append(game.pi[index] @ game.player_payoff_matrix[index])
                rows.append(game.mu_matrix[index].sum(axis=0))
            else:
                for i in sorted(group):
                    row = np.zeros(game.dimension)
                    row[np.array(others) - 1] = 1.0 / len(others)
                    row[i - 1] -= 1.0
                    names.append(f'gap_{i}')
                    rows.append(row)
        return tuple(names), np.array(rows)

    def describe(self):
        return {
            'game': describe_game(self.game),
            'assignments': [agent.describe() for agent in self.assignments],
            'horizon': self.horizon,
            'seed': self.seed,
            'recordEvery': self.record_every,
            'burnIn': self.burn_in,
            'bandDelta': self.band_delta,
        }


@dataclass(eq=False)
class SimulationState:
    config: SimConfig
    n: int
    u: np.ndarray
    compensation: np.ndarray
    history: History
    profile_counts: Counter = field(default_factory=Counter)
    minima: np.ndarray = None
    maxima: np.ndarray = None

    @classmethod
    def initial(cls, config: SimConfig):
        names, _ = config.functionals
        return cls(
            config=config,
            n=0,
            u=np.zeros(config.game.dimension),
            compensation=np.zeros(config.game.dimension),
            history=History.empty(config.players),
            minima=np.full(len(names), np.inf),
            maxima=np.full(len(names), -np.inf),
        )


def step(state: SimulationState, rng) -> SimulationState:
    '''
    Plays step n + 1 in place and returns the state
    '''
    config = state.config
    game = config.game
    history = state.history
    draws = rng.random(config.players)
    mask = 0
    for index, agent in enumerate(config.assignments):
        if draws[index] < agent.distribution(history).cooperate:
            mask |= 1 << index

    table = config.payoff_table
    payoff = table[mask] if table is not None else game.payoff(profile_from_mask(mask, config.players))

    # Kahan-compensated u_{n+1} = u_n + (U(s_{n+1}) - u_n) / (n + 1)
    n = state.n + 1
    increment = (payoff - state.u) / n - state.compensation
    updated = state.u + increment
    state.compensation = (updated - state.u) - increment
    state.u = updated
    state.n = n
    state.profile_counts[mask] += 1
    state.history = History(
        n=n,
        u=updated,
        mu=game.mu_matrix @ updated,
        payoffs=game.player_payoff_matrix @ updated,
        last_mask=mask,
    )
    if n > config.burn_in:
        values = config.functionals[1] @ updated
        np.minimum(state.minima, values, out=state.minima)
        np.maximum(state.maxima, values, out=state.maxima)
    return state


@dataclass(eq=False)
class Trace:
    '''
    Rows at n = 1, every multiple of recordEvery and the final step.
    `masks` holds the profile played at each recorded step and `extremes`
    the post burn-in range of every tracked functional over all steps.
    '''
    config: SimConfig
    steps: np.ndarray
    masks: np.ndarray
    states: np.ndarray
    extremes: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    profile_counts: Dict[int, int] = field(default_factory=dict)

    @property
    def seed(self):
        return self.config.seed

    @property
    def final_state(self):
        return self.states[-1]

    @property
    def profiles(self):
        return [profile_label(profile_from_mask(int(mask), self.config.players)) for mask in self.masks]

    def __len__(self):
        return len(self.steps)

    @cached_property
    def series(self):
        return metrics(self, self.config.game, self.config.bands(),
                       burn_in=self.config.burn_in, group=self.config.good_players)

    def from_scratch_average(self) -> np.ndarray:
        '''
        (1/n) sum_k U(s_k), accumulated exactly per coordinate from the profile counts
        '''
        game = self.config.game
        table = self.config.payoff_table
        n = sum(self.profile_counts.values())
        terms = []
        for mask, count in sorted(self.profile_counts.items()):
            payoff = table[mask] if table is not None else game.payoff(profile_from_mask(mask, game.players))
            terms.append(count * payoff)
        return np.array([math.fsum(column) for column in zip(*terms)]) / n


def run(config: SimConfig, rng=None) -> Trace:
    rng = make_generator(config.seed) if rng is None else rng
    state = SimulationState.initial(config)
    steps, masks, states = [], [], []
    for n in range(1, config.horizon + 1):
        step(state, rng)
        if n == 1 or n % config.record_every == 0 or n == config.horizon:
            steps.append(n)
            masks.append(state.history.last_mask)
            states.append(state.u.copy())

    names, _ = config.functionals
    trace = Trace(
        config=config,
        steps=np.array(steps, dtype=np.int64),
        masks=np.array(masks, dtype=np.int64),
        states=np.array(states),
        extremes={name: (float(low), float(high)) for name, low, high in zip(names, state.minima, state.maxima)},
        profile_counts=dict(state.profile_counts),
    )
    logger.debug('seed %d: %d steps, %d rows recorded', config.seed, config.horizon, len(trace))
    return trace


def sample_profiles(config: SimConfig, u, count, rng, n=None) -> np.ndarray:
    '''
    Frozen-state sampling: `count` independent profiles drawn at the fixed
    state u. Row k, column i tells whether player i + 1 cooperates.
    '''
    history = History.at_state(config.game, u, n=n)
    p = np.array([agent.distribution(history).cooperate for agent in config.assignments])
    return rng.random((count, config.players)) < p
