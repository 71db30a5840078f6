'''
N-player prisoner's dilemma: payoff tables, structural conditions,
payoffs and the mu^i functionals.
'''
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np

from .exceptions import GameDefinitionError
from .profiles import (DEFAULT_ENUMERATION_CAP, as_profile, cooperation_bits,
                       state_space, validate_profile_length)
from .reports import ValidationReport
from .textchoices import Action, Conditions, GameTypes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NPlayerPayoffTable:
    '''
    v_c[k] (resp. v_d[k]) is the payoff to a cooperator (resp. defector)
    facing k cooperating opponents, k = 0..N-1.

    Construction only checks dimensions; the prisoner's dilemma conditions
    are checked by `validate_npd` so that broken tables can be studied.
    '''
    player_count: int
    v_c: Tuple[float, ...]
    v_d: Tuple[float, ...]

    game_type = GameTypes.nplayer

    def __post_init__(self):
        if self.player_count < 2:
            raise GameDefinitionError('an N-player game needs N >= 2')
        object.__setattr__(self, 'v_c', tuple(float(v) for v in self.v_c))
        object.__setattr__(self, 'v_d', tuple(float(v) for v in self.v_d))
        if len(self.v_c) != self.player_count or len(self.v_d) != self.player_count:
            raise GameDefinitionError(
                f'N={self.player_count} needs {self.player_count} values in vC and vD, '
                f'got {len(self.v_c)} and {len(self.v_d)}'
            )

    @property
    def players(self):
        return self.player_count

    @property
    def dimension(self):
        return self.player_count

    @property
    def coordinate_names(self):
        return [f'u_{i}' for i in range(1, self.player_count + 1)]

    @cached_property
    def v_star(self):
        return np.full(self.player_count, self.v_c[-1])

    def payoff(self, profile) -> np.ndarray:
        return npd_payoff(self, profile)

    def payoff_table(self, cap=DEFAULT_ENUMERATION_CAP) -> np.ndarray:
        '''
        Row m holds U(s) for the profile encoded by mask m
        '''
        if cap in self._tables:
            return self._tables[cap]
        bits = cooperation_bits(self.player_count, cap)
        cooperators = bits.sum(axis=1, keepdims=True)
        # cooperating opponents of each player
        k = cooperators - bits
        table = np.where(bits, np.asarray(self.v_c)[k], np.asarray(self.v_d)[k])
        table.setflags(write=False)
        self._tables[cap] = table
        return table

    @cached_property
    def _tables(self):
        return {}

    @cached_property
    def mu_matrix(self) -> np.ndarray:
        '''
        Row i - 1 holds the coefficients of mu^i
        '''
        n = self.player_count
        matrix = np.full((n, n), -1.0 / (n - 1))
        np.fill_diagonal(matrix, 1.0)
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def player_payoff_matrix(self) -> np.ndarray:
        '''
        Linear map from a state to each player's own payoff
        '''
        matrix = np.eye(self.player_count)
        matrix.setflags(write=False)
        return matrix

    def mu(self, player, u):
        return mu_nplayer(player, u)


def validate_npd(table: NPlayerPayoffTable, tol=0.0) -> ValidationReport:
    '''
    Checks conditions (i)-(iii); condition (iv) is only flagged.

    `tol` widens every inequality by the same amount; with tol = 0 strict
    inequalities are strict and non-strict ones accept ties.
    '''
    n = table.player_count
    v_c, v_d = table.v_c, table.v_d
    if len(v_c) != n or len(v_d) != n:
        raise GameDefinitionError('dimension mismatch between N and the payoff lists')

    report = ValidationReport()
    for k in range(n):
        if not v_c[k] < v_d[k] + tol:
            report.add(Conditions.dominance, (k, ), v_c[k], v_d[k])
    for k in range(n - 1):
        if not v_d[k] <= v_d[k + 1] + tol:
            report.add(Conditions.monotonicity, (k, ), v_d[k], v_d[k + 1])

    inefficient = True
    for k in range(n):
        # the k = 0 term never references v_c[-1]
        lhs = (k * v_c[k - 1] if k > 0 else 0.0) + (n - k) * v_d[k]
        if not lhs <= n * v_c[n - 1] + tol:
            report.add(Conditions.pareto_optimal, (k, ), lhs, n * v_c[n - 1])
        if not lhs + tol >= n * v_d[0]:
            inefficient = False
            report.advise(Conditions.defection_inefficient, (k, ), lhs, n * v_d[0])
    report.flags[Conditions.defection_inefficient.value] = inefficient
    return report


def npd_payoff(table: NPlayerPayoffTable, s) -> np.ndarray:
    profile = as_profile(s)
    validate_profile_length(table, profile)
    cooperators = sum(a == Action.cooperate for a in profile)
    payoff = np.empty(table.player_count)
    for index, action in enumerate(profile):
        if action == Action.cooperate:
            payoff[index] = table.v_c[cooperators - 1]
        else:
            payoff[index] = table.v_d[cooperators]
    return payoff


def free_riding_game(f: Sequence[float], c: float, n: int) -> NPlayerPayoffTable:
    '''
    Public good with contribution cost c: v(C,k) = f(k+1) - c, v(D,k) = f(k)
    '''
    f = [float(value) for value in f]
    if len(f) != n + 1:
        raise GameDefinitionError(f'f must have N+1={n + 1} values, got {len(f)}')
    if not c > 0:
        raise GameDefinitionError('the contribution cost c must be positive')
    for k, value in enumerate(f):
        if value < 0:
            raise GameDefinitionError(f'f({k}) = {value} is negative')
    for k in range(n):
        increment = f[k + 1] - f[k]
        if not c / n <= increment < c:
            raise GameDefinitionError(
                f'increment f({k + 1}) - f({k}) = {increment} is outside [c/N, c) = [{c / n}, {c})'
            )
    return NPlayerPayoffTable(
        player_count=n,
        v_c=tuple(f[k + 1] - c for k in range(n)),
        v_d=tuple(f[k] for k in range(n)),
    )


def mu_nplayer(i: int, u) -> float:
    '''
    mu^i(u) = u_i - (1/(N-1)) sum_{j != i} u_j
    '''
    u = np.asarray(u, dtype=float)
    n = u.shape[0]
    if n < 2:
        raise GameDefinitionError('mu^i needs at least two players')
    if not 1 <= i <= n:
        raise GameDefinitionError(f'player {i} is outside 1..{n}')
    own = u[i - 1]
    return float(own - (u.sum() - own) / (n - 1))


def state_space_vertices(table, cap=DEFAULT_ENUMERATION_CAP):
    return state_space(table, cap)
