'''
Opponent (Nature) policies used to stress the good strategies.
'''
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from games.profiles import as_profile
from games.textchoices import Action

from .exceptions import ReplayExhausted, StrategyDefinitionError
from .history import ActionDistribution
from .textchoices import PolicyKinds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OpponentPolicy:
    player: int
    kind: PolicyKinds
    p: float = 0.5
    delta: float = 0.0
    target: int = 1
    script: Tuple[Action, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'kind', PolicyKinds(self.kind))
        object.__setattr__(self, 'script', as_profile(self.script))
        if self.player < 1:
            raise StrategyDefinitionError('players are numbered from 1')
        if not 0.0 <= self.p <= 1.0:
            raise StrategyDefinitionError(f'p must lie in [0, 1], got {self.p}')
        if self.kind == PolicyKinds.exploiter and self.target == self.player:
            raise StrategyDefinitionError('an exploiter cannot target itself')
        if self.kind == PolicyKinds.replay and not self.script:
            raise StrategyDefinitionError(f'player {self.player}: replay policy without a script')

    is_good = False
    is_continuous = False

    def distribution(self, history) -> ActionDistribution:
        return policy_distribution(self, history)

    def describe(self):
        described = {'player': self.player, 'kind': self.kind.value}
        if self.kind == PolicyKinds.iid_random:
            described['p'] = self.p
        elif self.kind == PolicyKinds.exploiter:
            described.update(delta=self.delta, target=self.target)
        elif self.kind == PolicyKinds.replay:
            described['script'] = ''.join(a.value for a in self.script)
        return described


def policy_distribution(pol: OpponentPolicy, history) -> ActionDistribution:
    if pol.kind == PolicyKinds.always_defect:
        return ActionDistribution(0.0)
    if pol.kind == PolicyKinds.always_cooperate:
        return ActionDistribution(1.0)
    if pol.kind == PolicyKinds.iid_random:
        return ActionDistribution(pol.p)
    if pol.kind == PolicyKinds.exploiter:
        lead = history.payoffs[pol.player - 1] - history.payoffs[pol.target - 1]
        return ActionDistribution(0.0 if lead < pol.delta else 1.0)
    # replay: the action for step n + 1 is script[n]
    if history.n is None or history.n >= len(pol.script):
        raise ReplayExhausted(pol.player, len(pol.script))
    return ActionDistribution(1.0 if pol.script[history.n] == Action.cooperate else 0.0)


def load_replay_script(path) -> Tuple[Action, ...]:
    '''
    Reads C/D actions, optionally separated by whitespace or commas
    '''
    text = Path(path).read_text()
    tokens = [token for token in re.split(r'[\s,]+', text) if token]
    script = as_profile(''.join(tokens))
    logger.debug('loaded %d scripted actions from %s', len(script), path)
    return script
