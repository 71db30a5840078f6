'''
Unilateral deviation experiment: every player plays a good strategy, then
one of them switches to an opponent policy. The deviator's gain is the
post burn-in maximum of its payoff under deviation less the post burn-in
minimum of its payoff without it, seed by seed.
'''
import logging
from dataclasses import dataclass, field, replace
from typing import List, Sequence

from games.textchoices import GameTypes

from .ensemble import replicate
from .exceptions import SimulationConfigError
from .simulation import SimConfig

logger = logging.getLogger(__name__)


def nash_threshold(game, delta) -> float:
    '''
    delta (N - 1) on N-player games, (M - 1) delta / 2 on networks
    '''
    if game.game_type == GameTypes.network:
        return (game.players - 1) * delta / 2.0
    return delta * (game.players - 1)


@dataclass(frozen=True)
class DeviationOutcome:
    policy: dict
    seeds: tuple
    gains: tuple

    @property
    def worst(self):
        return max(self.gains)

    def as_dict(self):
        return {'policy': self.policy, 'seeds': list(self.seeds), 'gains': list(self.gains), 'worst': self.worst}


@dataclass
class NashGapReport:
    deviator: int
    threshold: float
    tolerance: float
    outcomes: List[DeviationOutcome] = field(default_factory=list)

    @property
    def passed(self):
        return all(outcome.worst <= self.threshold + self.tolerance for outcome in self.outcomes)

    def as_dict(self):
        return {
            'deviator': self.deviator,
            'threshold': self.threshold,
            'tolerance': self.tolerance,
            'passed': self.passed,
            'outcomes': [outcome.as_dict() for outcome in self.outcomes],
        }


def deviate(config: SimConfig, policy) -> SimConfig:
    assignments = tuple(policy if agent.player == policy.player else agent for agent in config.assignments)
    return replace(config, assignments=assignments)


def nash_gap(config: SimConfig, deviator, policies: Sequence, replications=1, workers=1,
             tolerance=0.0) -> NashGapReport:
    if not 1 <= deviator <= config.players:
        raise SimulationConfigError(f'no player {deviator} in a game of {config.players}')
    if len(config.good_players) != config.players:
        raise SimulationConfigError('the baseline needs every player on a good strategy')

    delta = max(agent.delta for agent in config.assignments)
    report = NashGapReport(deviator=deviator, threshold=nash_threshold(config.game, delta), tolerance=tolerance)
    key = f'payoff_{deviator}'
    baseline = replicate(config, replications, workers)
    for policy in policies:
        if policy.player != deviator:
            policy = replace(policy, player=deviator)
        deviated = replicate(deviate(config, policy), replications, workers)
        gains = tuple(
            moved.extremes[key][1] - stayed.extremes[key][0]
            for moved, stayed in zip(deviated.traces, baseline.traces)
        )
        report.outcomes.append(DeviationOutcome(policy=policy.describe(), seeds=tuple(deviated.seeds), gains=gains))
        logger.info('player %d deviating to %s: worst gain %g (threshold %g)',
                    deviator, policy.kind.value, max(gains), report.threshold)
    return report
