'''
Payoff-based strategies: the mixed action depends on the running average
payoff only, through the player's mu^i functional.
'''
import logging
from dataclasses import dataclass
from typing import Callable, Optional

from .exceptions import StrategyDefinitionError
from .history import ActionDistribution
from .textchoices import GOOD_KINDS, StrategyKinds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PayoffBasedStrategy:
    '''
    threshold_good cooperates when mu >= 0, defects when mu < -delta and
    cooperates with probability `band_p` in between. continuous_good ramps
    P(C) linearly from 0 at mu = -delta to 1 at mu = 0.
    '''
    player: int
    kind: StrategyKinds = StrategyKinds.threshold_good
    delta: float = 0.0
    band_p: float = 1.0
    p: float = 1.0
    rule: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', StrategyKinds(self.kind))
        if self.player < 1:
            raise StrategyDefinitionError('players are numbered from 1')
        if self.delta < 0:
            raise StrategyDefinitionError(f'delta must be nonnegative, got {self.delta}')
        if not 0.0 <= self.band_p <= 1.0:
            raise StrategyDefinitionError(f'band_p must lie in [0, 1], got {self.band_p}')
        if not 0.0 <= self.p <= 1.0:
            raise StrategyDefinitionError(f'p must lie in [0, 1], got {self.p}')
        if self.kind == StrategyKinds.custom and self.rule is None:
            raise StrategyDefinitionError('a custom strategy needs a rule mapping mu to P(C)')
        if self.kind == StrategyKinds.continuous_good and self.delta == 0:
            logger.warning(
                'player %d: no continuous good strategy exists at delta = 0, using the threshold rule',
                self.player,
            )

    @property
    def is_good(self):
        return self.kind in GOOD_KINDS

    @property
    def is_continuous(self):
        return self.kind == StrategyKinds.continuous_good and self.delta > 0

    def cooperation_probability(self, mu: float) -> float:
        if self.kind == StrategyKinds.constant:
            return self.p
        if self.kind == StrategyKinds.custom:
            value = float(self.rule(mu))
            if not 0.0 <= value <= 1.0:
                raise StrategyDefinitionError(f'custom rule returned {value} at mu = {mu}')
            return value
        if mu >= 0:
            return 1.0
        if mu < -self.delta:
            return 0.0
        if self.kind == StrategyKinds.continuous_good and self.delta > 0:
            return min(1.0, max(0.0, (mu + self.delta) / self.delta))
        return self.band_p

    def distribution(self, history) -> ActionDistribution:
        return ActionDistribution(self.cooperation_probability(history.mu[self.player - 1]))

    def describe(self):
        return {
            'player': self.player,
            'kind': self.kind.value,
            'delta': self.delta,
            'band_p': self.band_p,
            'p': self.p,
        }


def strategy_distribution(strat: PayoffBasedStrategy, game, u) -> ActionDistribution:
    '''
    Q_u for the strategy's player; before any payoff exists mu is taken as 0
    '''
    mu = 0.0 if u is None else game.mu(strat.player, u)
    return ActionDistribution(strat.cooperation_probability(mu))
