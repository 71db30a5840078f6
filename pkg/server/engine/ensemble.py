'''
Replicated runs. Replication r uses seed + r, turned into an independent
PCG64 stream by SeedSequence, so an ensemble is reproducible from its
master seed and the replications share no randomness.
'''
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import cached_property
from typing import List

import django

from approachability.bounds import tail_frequency
from games.profiles import state_space

from .simulation import SimConfig, Trace, run

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Ensemble:
    config: SimConfig
    traces: List[Trace]

    @property
    def master_seed(self):
        return self.config.seed

    @property
    def seeds(self):
        return [trace.seed for trace in self.traces]

    def __len__(self):
        return len(self.traces)

    @cached_property
    def e_norm(self):
        return state_space(self.config.game, self.config.cap).norm

    def tail_table(self, ns, etas, corrected=False):
        rows = []
        for player, band in sorted(self.config.bands().items()):
            for n in ns:
                for eta in etas:
                    rows.append({
                        'player': player,
                        'n': n,
                        'eta': eta,
                        'corrected': corrected,
                        'frequency': tail_frequency(self, band, n, eta, corrected,
                                                    self.e_norm if corrected else None),
                    })
        return rows

    def summary(self, ns=(), etas=()):
        final = [trace.final_state.tolist() for trace in self.traces]
        return {
            'config': self.config.describe(),
            'masterSeed': self.master_seed,
            'seeds': self.seeds,
            'finalStates': final,
            'tails': (self.tail_table(ns, etas) + self.tail_table(ns, etas, corrected=True)) if ns and etas else [],
        }


def replication_configs(config: SimConfig, replications) -> List[SimConfig]:
    return [replace(config, seed=config.seed + r) for r in range(1, replications + 1)]


def replicate(config: SimConfig, replications, workers=1) -> Ensemble:
    '''
    Runs seeds seed+1..seed+R, in worker processes when `workers` > 1.
    Results come back in seed order whatever the worker count.
    '''
    if replications < 1:
        raise ValueError(f'need at least one replication, got {replications}')
    configs = replication_configs(config, replications)
    workers = max(1, min(workers, replications))
    logger.info('%d replications of seed %d over %d worker(s)', replications, config.seed, workers)
    if workers == 1:
        traces = [run(c) for c in configs]
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=django.setup) as executor:
            traces = list(executor.map(run, configs))
    return Ensemble(config=config, traces=traces)
