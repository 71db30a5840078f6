'''
Action profiles and exact enumeration of {C,D}^M.

A profile is encoded as an integer mask whose bit (i - 1) is set when
player i cooperates. Mask order is the order of every enumerated table.
'''
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .exceptions import EnumerationCapExceeded, GameDefinitionError
from .textchoices import Action

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 16


def as_action(value):
    if isinstance(value, Action):
        return value
    try:
        return Action(str(value).upper())
    except ValueError:
        raise GameDefinitionError(f'{value!r} is not an action, expected C or D')


def as_profile(actions) -> Tuple[Action, ...]:
    '''
    Accepts a string such as "CCD" or any sequence of actions
    '''
    return tuple(as_action(a) for a in actions)


def profile_label(profile):
    return ''.join(as_action(a).value for a in profile)


def mask_from_profile(profile) -> int:
    mask = 0
    for index, action in enumerate(as_profile(profile)):
        if action == Action.cooperate:
            mask |= 1 << index
    return mask


def profile_from_mask(mask, players) -> Tuple[Action, ...]:
    return tuple(
        Action.cooperate if mask >> index & 1 else Action.defect
        for index in range(players)
    )


def check_enumerable(players, cap=DEFAULT_ENUMERATION_CAP):
    if players > cap:
        logger.warning('refusing to enumerate 2^%d profiles (cap %d)', players, cap)
        raise EnumerationCapExceeded(players, cap)


def cooperation_bits(players, cap=DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    '''
    Boolean matrix of shape (2^M, M); row m tells who cooperates in mask m
    '''
    check_enumerable(players, cap)
    masks = np.arange(2 ** players, dtype=np.int64)
    return (masks[:, None] >> np.arange(players, dtype=np.int64)) & 1 == 1


def opponent_masks(player, players, cap=DEFAULT_ENUMERATION_CAP) -> List[int]:
    '''
    Masks of all profiles in which `player` defects, i.e. every opponent
    profile b with the tracked player's bit cleared
    '''
    check_enumerable(players - 1, cap)
    bit = 1 << (player - 1)
    return [mask for mask in range(2 ** players) if not mask & bit]


@dataclass(frozen=True, eq=False)
class StateSpace:
    '''
    Vertex description of E = conv{U(s)}: one row per profile, duplicates
    kept alongside the mask of the profile that produced them.
    '''
    vertices: np.ndarray
    masks: Tuple[int, ...]
    players: int

    @property
    def norm(self):
        # |E| = sup{||v|| : v in E} is attained at a vertex
        return float(np.max(np.linalg.norm(self.vertices, axis=1)))

    @property
    def profiles(self):
        return [profile_from_mask(mask, self.players) for mask in self.masks]

    def distinct_vertices(self):
        return np.unique(self.vertices, axis=0)


def state_space(game, cap=DEFAULT_ENUMERATION_CAP) -> StateSpace:
    table = game.payoff_table(cap)
    return StateSpace(
        vertices=table,
        masks=tuple(range(table.shape[0])),
        players=game.players,
    )


def validate_profile_length(game, profile: Sequence):
    if len(profile) != game.players:
        raise GameDefinitionError(
            f'profile of length {len(profile)} for a game of {game.players} players'
        )
