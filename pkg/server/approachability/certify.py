'''
B-set certification of band sets.

A band [alpha, beta] around mu is a B-set for the tracked player when the
player commits to C above the band and to D below it, and

    mu(U(C, b)) <= beta  and  mu(U(D, b)) >= alpha

for every opponent profile b. Here a1 = C with the upper endpoint and
a2 = D with the lower endpoint, so for Lambda^i(delta) the thresholds are
0 and -delta.
'''
import logging
from dataclasses import asdict, dataclass, field
from typing import List

import numpy as np

from games.profiles import DEFAULT_ENUMERATION_CAP, opponent_masks, profile_from_mask, profile_label
from games.textchoices import Action

from .bands import BandSet, hyperplane_projection, player_band, slab_distance

logger = logging.getLogger(__name__)

COMMITMENT_GRID = 201
CERTIFY_TOL = 1e-9
SEPARATION_TOL = 1e-10


@dataclass(frozen=True)
class Witness:
    opponents: str
    action: str
    value: float
    bound: float
    kind: str = 'payoff'

    def as_dict(self):
        return asdict(self)


@dataclass
class Certificate:
    '''
    `alpha` is the threshold paired with a1 = C (the upper endpoint) and
    `beta` the one paired with a2 = D (the lower endpoint)
    '''
    player: int
    certified: bool
    alpha: float
    beta: float
    profiles_checked: int
    sign_lemma: bool
    witnesses: List[Witness] = field(default_factory=list)
    a1: str = Action.cooperate.value
    a2: str = Action.defect.value

    def as_dict(self):
        return {
            'player': self.player,
            'certified': self.certified,
            'a1': self.a1,
            'a2': self.a2,
            'alpha': self.alpha,
            'beta': self.beta,
            'witnesses': [w.as_dict() for w in self.witnesses],
            'profilesChecked': self.profiles_checked,
            'signLemma': self.sign_lemma,
        }


def opponent_label(mask, player, players):
    profile = profile_from_mask(mask, players)
    return profile_label(profile[:player - 1] + profile[player:])


def _check_band_matches(game, player, band):
    if not np.allclose(band.mu, game.mu_matrix[player - 1]):
        raise ValueError(f'the band is not built on mu^{player}')


def vertex_values(game, player, band, cap=DEFAULT_ENUMERATION_CAP):
    '''
    mu(U(C, b)) and mu(U(D, b)) over every opponent profile b, with the masks of b
    '''
    table = game.payoff_table(cap)
    masks = np.array(opponent_masks(player, game.players, cap))
    bit = 1 << (player - 1)
    return masks, table[masks | bit] @ band.mu, table[masks] @ band.mu


def commitment_probes(band, values):
    low = min(float(values.min()), band.alpha) - 1.0
    high = max(float(values.max()), band.beta) + 1.0
    edges = [
        band.beta, np.nextafter(band.beta, np.inf), band.beta + 1e-9,
        band.alpha, np.nextafter(band.alpha, -np.inf), band.alpha - 1e-9,
    ]
    return np.unique(np.concatenate([np.linspace(low, high, COMMITMENT_GRID), edges]))


def bcor_certify(game, strat, band: BandSet = None, cap=DEFAULT_ENUMERATION_CAP,
                 require_sign_lemma=True, tol=CERTIFY_TOL) -> Certificate:
    '''
    Exhaustive check over opponent profiles plus a probe of the strategy's
    commitments on a grid of mu values.

    With `require_sign_lemma` the defect side must also satisfy
    mu(U(D, b)) >= 0, the sign every prisoner's dilemma has. `tol` absorbs
    rounding in the edge weights of network games.
    '''
    player = strat.player
    if band is None:
        band = player_band(game, player, strat.delta)
    _check_band_matches(game, player, band)

    masks, cooperate, defect = vertex_values(game, player, band, cap)
    witnesses = []
    for mask, value in zip(masks, cooperate):
        if value > band.beta + tol:
            witnesses.append(Witness(opponent_label(mask, player, game.players), Action.cooperate.value,
                                     float(value), band.beta))
    for mask, value in zip(masks, defect):
        if value < band.alpha - tol:
            witnesses.append(Witness(opponent_label(mask, player, game.players), Action.defect.value,
                                     float(value), band.alpha))

    sign_lemma = bool(np.all(cooperate <= tol) and np.all(defect >= -tol))
    if require_sign_lemma and not sign_lemma:
        for mask, value in zip(masks, cooperate):
            if tol < value <= band.beta + tol:
                witnesses.append(Witness(opponent_label(mask, player, game.players), Action.cooperate.value,
                                         float(value), 0.0, kind='sign'))
        for mask, value in zip(masks, defect):
            if band.alpha - tol <= value < -tol:
                witnesses.append(Witness(opponent_label(mask, player, game.players), Action.defect.value,
                                         float(value), 0.0, kind='sign'))

    for mu in commitment_probes(band, np.concatenate([cooperate, defect])):
        p = strat.cooperation_probability(float(mu))
        if mu >= band.beta and p != 1.0:
            witnesses.append(Witness('', Action.cooperate.value, float(mu), p, kind='commitment'))
        elif mu < band.alpha and p != 0.0:
            witnesses.append(Witness('', Action.defect.value, float(mu), p, kind='commitment'))

    certificate = Certificate(
        player=player,
        certified=not witnesses and (sign_lemma or not require_sign_lemma),
        alpha=band.beta,
        beta=band.alpha,
        profiles_checked=int(masks.size),
        sign_lemma=sign_lemma,
        witnesses=witnesses,
    )
    logger.debug('player %d: certified=%s over %d opponent profiles', player, certificate.certified, masks.size)
    return certificate


@dataclass(frozen=True, eq=False)
class SeparationReport:
    x: np.ndarray
    y: np.ndarray
    distance: float
    max_inner: float
    witness: str
    passed: bool

    def as_dict(self):
        return {
            'x': self.x.tolist(),
            'y': self.y.tolist(),
            'distance': self.distance,
            'maxInner': self.max_inner,
            'witness': self.witness,
            'passed': self.passed,
        }


def separation_check(game, strat, band: BandSet, x, radius=None, cap=DEFAULT_ENUMERATION_CAP,
                     tol=SEPARATION_TOL) -> SeparationReport:
    '''
    max_b <x - y, w_b - y> over the vertices w_b = sum_a Q_x(a) U(a, b) of
    C(x), with y the slab projection of x. A local B-set needs it <= 0.
    '''
    x = np.asarray(x, dtype=float)
    value = float(band.value(x))
    level = band.clamp(value)
    if radius is not None and abs(value - level) > radius:
        raise ValueError(f'x is {abs(value - level)} away from the band in mu, beyond r = {radius}')
    y = x if value == level else hyperplane_projection(band, x, level)

    player = strat.player
    table = game.payoff_table(cap)
    masks = np.array(opponent_masks(player, game.players, cap))
    q = strat.cooperation_probability(game.mu(player, x))
    w = q * table[masks | 1 << (player - 1)] + (1.0 - q) * table[masks]
    inner = (w - y) @ (x - y)
    worst = int(np.argmax(inner))
    scale = max(1.0, float(np.linalg.norm(x - y) * np.linalg.norm(w - y, axis=1).max()))
    return SeparationReport(
        x=x,
        y=y,
        distance=slab_distance(band, x),
        max_inner=float(inner[worst]),
        witness=opponent_label(masks[worst], player, game.players),
        passed=bool(inner[worst] <= tol * scale),
    )
