from dataclasses import dataclass
from typing import Optional

import numpy as np

from games.textchoices import Action


@dataclass(frozen=True)
class ActionDistribution:
    '''
    A distribution over {C, D}; P(D) is always the complement of P(C)
    '''
    cooperate: float

    def __post_init__(self):
        if not 0.0 <= self.cooperate <= 1.0:
            raise ValueError(f'P(C) = {self.cooperate} is not a probability')

    @property
    def defect(self):
        return 1.0 - self.cooperate

    def __getitem__(self, action):
        return self.cooperate if action == Action.cooperate else self.defect

    def as_dict(self):
        return {Action.cooperate.value: self.cooperate, Action.defect.value: self.defect}


@dataclass(frozen=True, eq=False)
class History:
    '''
    What a player may condition on before step n + 1.

    `mu` and `payoffs` are indexed by player - 1; `payoffs` holds each
    player's own running payoff (u_i, or the mean payoff on a network).
    Before the first step no payoff exists, `u` is None and both vectors
    are zero.
    '''
    n: int
    u: Optional[np.ndarray]
    mu: np.ndarray
    payoffs: np.ndarray
    last_mask: Optional[int] = None

    @classmethod
    def empty(cls, players):
        return cls(n=0, u=None, mu=np.zeros(players), payoffs=np.zeros(players))

    @classmethod
    def at_state(cls, game, u, n=None):
        '''
        History frozen at the state u, for sampling and selection fields
        '''
        u = np.asarray(u, dtype=float)
        return cls(n=n, u=u, mu=game.mu_matrix @ u, payoffs=game.player_payoff_matrix @ u)
