'''
Tail bounds on the distance of the running average to an approachable
band, and the empirical frequencies they are compared with.
'''
import logging
import math

import numpy as np

from .bands import BandSet, slab_distance
from .exceptions import BoundParameterError, NoRowsPastHorizon

logger = logging.getLogger(__name__)


def _check(eta, n):
    if not eta > 0:
        raise BoundParameterError(f'eta must be positive, got {eta}')
    if n < 1:
        raise BoundParameterError(f'n must be at least 1, got {n}')


def blackwell_bound_i(e_norm, l_norm, eta, n) -> float:
    '''
    min(1, 2 (|E| + |Lambda|)^2 / (eta^2 n))
    '''
    _check(eta, n)
    return min(1.0, 2.0 * (e_norm + l_norm) ** 2 / (eta ** 2 * n))


def blackwell_bound_ii(e_norm, eta, n) -> float:
    '''
    min(1, 4 exp(-eta^2 n / (32 |E|^2))), for the corrected event
    '''
    _check(eta, n)
    if not e_norm > 0:
        raise BoundParameterError('|E| must be positive')
    return min(1.0, 4.0 * math.exp(-eta ** 2 * n / (32.0 * e_norm ** 2)))


def tail_supremum(trace, band: BandSet, n, corrected=False, e_norm=None) -> float:
    '''
    sup over recorded m >= n of d(u_m), less 2|E|/sqrt(m) when corrected
    '''
    rows = trace.steps >= n
    if not rows.any():
        raise NoRowsPastHorizon(trace.seed, n)
    distances = slab_distance(band, trace.states[rows])
    if corrected:
        if e_norm is None:
            raise ValueError('the corrected event needs |E|')
        distances = distances - 2.0 * e_norm / np.sqrt(trace.steps[rows])
    return float(np.max(distances))


def tail_frequency(ensemble, band: BandSet, n, eta, corrected=False, e_norm=None) -> float:
    '''
    Fraction of traces whose tail supremum strictly exceeds eta
    '''
    if eta < 0:
        raise BoundParameterError(f'eta must be nonnegative, got {eta}')
    events = [tail_supremum(trace, band, n, corrected, e_norm) > eta for trace in ensemble.traces]
    frequency = sum(events) / len(events)
    logger.debug('tail frequency %g over %d traces (n=%d, eta=%g, corrected=%s)',
                 frequency, len(events), n, eta, corrected)
    return frequency


def binomial_standard_error(p, replications) -> float:
    return math.sqrt(p * (1.0 - p) / replications)
