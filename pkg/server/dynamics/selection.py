'''
Selections of the limit dynamics du/dt in -u + C(u): the tracked player
mixes with Q_u, Nature picks a mixture over opponent profiles.
'''
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from games.profiles import DEFAULT_ENUMERATION_CAP, cooperation_bits
from strategies.history import History

from .exceptions import SelectionError
from .textchoices import NatureKinds


@dataclass(frozen=True, eq=False)
class Selection:
    '''
    `others` holds one strategy or policy per opponent when Nature plays
    the opponents' own assignments; their mixtures are independent.
    '''
    strategy: object
    nature: NatureKinds = NatureKinds.others
    others: Tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'nature', NatureKinds(self.nature))
        object.__setattr__(self, 'others', tuple(sorted(self.others, key=lambda agent: agent.player)))
        if self.nature == NatureKinds.others and not self.others:
            raise SelectionError('Nature follows the opponents but none were given')
        if any(agent.player == self.strategy.player for agent in self.others):
            raise SelectionError(f'player {self.strategy.player} is both tracked and an opponent')

    def cooperation_probabilities(self, game, u) -> np.ndarray:
        history = History.at_state(game, u)
        p = np.empty(game.players)
        if self.nature == NatureKinds.all_cooperate:
            p[:] = 1.0
        elif self.nature == NatureKinds.all_defect:
            p[:] = 0.0
        else:
            if len(self.others) != game.players - 1:
                raise SelectionError(f'{game.players - 1} opponents expected, got {len(self.others)}')
            for agent in self.others:
                p[agent.player - 1] = agent.distribution(history).cooperate
        p[self.strategy.player - 1] = self.strategy.distribution(history).cooperate
        return p


def profile_weights(p, players, cap=DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    '''
    Probability of every profile mask under independent cooperation probabilities p
    '''
    bits = cooperation_bits(players, cap)
    return np.prod(np.where(bits, p, 1.0 - p), axis=1)


def selection_field(sel: Selection, game, u, cap=DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    '''
    -u + sum_b nu_u(b) sum_a Q_u(a) U(a, b)
    '''
    u = np.asarray(u, dtype=float)
    weights = profile_weights(sel.cooperation_probabilities(game, u), game.players, cap)
    return weights @ game.payoff_table(cap) - u
