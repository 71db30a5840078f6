'''
Retraction r onto E = conv(vertices): Wolfe's minimum norm point method
run on the vertices shifted by x.
'''
import logging
from typing import NamedTuple

import numpy as np

from .exceptions import RetractionDidNotConverge

logger = logging.getLogger(__name__)

RETRACTION_TOL = 1e-10
RETRACTION_MAX_ITER = 10 ** 5
WEIGHT_EPS = 1e-14
MEMBERSHIP_TOL = 1e-9


class Retraction(NamedTuple):
    point: np.ndarray
    gap: float
    iterations: int


def _affine_minimizer(points):
    '''
    Weights alpha, summing to 1, of the point of aff(points) nearest 0
    '''
    k = points.shape[0]
    system = np.zeros((k + 1, k + 1))
    system[0, 1:] = 1.0
    system[1:, 0] = 1.0
    system[1:, 1:] = points @ points.T
    rhs = np.zeros(k + 1)
    rhs[0] = 1.0
    return np.linalg.lstsq(system, rhs, rcond=None)[0][1:]


def nearest_point(x, vertices, tol=RETRACTION_TOL, max_iter=RETRACTION_MAX_ITER) -> Retraction:
    '''
    Stops once the support-function gap ||w||^2 - min_v <v, w> is at most
    tol (scaled by the squared vertex radius), w being the current point
    of the shifted polytope.
    '''
    x = np.asarray(x, dtype=float)
    shifted = np.unique(np.asarray(vertices, dtype=float), axis=0) - x
    scale = max(1.0, float(np.max(np.sum(shifted ** 2, axis=1))))

    corral = [int(np.argmin(np.sum(shifted ** 2, axis=1)))]
    weights = np.array([1.0])
    w = shifted[corral[0]]
    iterations = 0
    gap = np.inf
    while iterations < max_iter:
        iterations += 1
        support = shifted @ w
        j = int(np.argmin(support))
        gap = float(w @ w - support[j])
        if gap <= tol * scale or j in corral:
            return Retraction(point=x + w, gap=max(gap, 0.0), iterations=iterations)

        corral.append(j)
        weights = np.append(weights, 0.0)
        while iterations < max_iter:
            iterations += 1
            alpha = _affine_minimizer(shifted[corral])
            if np.all(alpha > WEIGHT_EPS):
                weights = alpha
                break
            # move from weights toward alpha until a weight hits zero
            falling = (alpha <= WEIGHT_EPS) & (weights - alpha > 0)
            theta = float(np.min(weights[falling] / (weights[falling] - alpha[falling]))) if falling.any() else 0.0
            weights = theta * alpha + (1.0 - theta) * weights
            keep = weights > WEIGHT_EPS
            if keep.all():
                keep[int(np.argmin(weights))] = False
            corral = [index for index, kept in zip(corral, keep) if kept]
            weights = weights[keep] / weights[keep].sum()
        w = shifted[corral].T @ weights

    logger.error('nearest point search stopped at gap %g after %d iterations', gap, iterations)
    raise RetractionDidNotConverge(gap, iterations)


def retract_to_E(x, vertices, tol=RETRACTION_TOL, max_iter=RETRACTION_MAX_ITER) -> np.ndarray:
    return nearest_point(x, vertices, tol, max_iter).point


def retraction_residual(x, vertices, tol=RETRACTION_TOL) -> float:
    '''
    ||x - r(x)||, zero up to tol for x in E
    '''
    x = np.asarray(x, dtype=float)
    return float(np.linalg.norm(x - retract_to_E(x, vertices, tol)))
