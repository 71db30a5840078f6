from django.conf import settings

from approachability.bands import lambda_norm
from approachability.bounds import (binomial_standard_error, blackwell_bound_i,
                                    blackwell_bound_ii, tail_frequency)
from engine.ensemble import replicate
from games.profiles import state_space
from lab.commands import LabCommand, tail_start

SIGMAS = 3


class Command(LabCommand):
    help = 'Compares empirical tail frequencies with the closed-form approachability bounds'

    def run(self, config, options, emitter):
        sim = config.sim_config(options['seed'], delta=options['delta'])
        replications = config.document['simulation']['replications']
        ensemble = replicate(sim, replications, workers=settings.SMALE_LAB_THREADS)
        eta = config.document['bounds']['eta']
        n = tail_start(config.document['bounds'], sim)

        space = state_space(sim.game, sim.cap)
        e_norm = space.norm
        rows = []
        for player, band in sorted(sim.bands().items()):
            l_norm = lambda_norm(band, space.vertices)
            frequency = tail_frequency(ensemble, band, n, eta)
            corrected = tail_frequency(ensemble, band, n, eta, corrected=True, e_norm=e_norm)
            bound_i = blackwell_bound_i(e_norm, l_norm, eta, n)
            bound_ii = blackwell_bound_ii(e_norm, eta, n)
            slack_i = SIGMAS * binomial_standard_error(frequency, replications)
            slack_ii = SIGMAS * binomial_standard_error(corrected, replications)
            rows.append({
                'player': player,
                'band': band.describe(),
                'lambdaNorm': l_norm,
                'frequency': frequency,
                'boundI': bound_i,
                'withinI': frequency <= bound_i + slack_i,
                'correctedFrequency': corrected,
                'boundII': bound_ii,
                'withinII': corrected <= bound_ii + slack_ii,
            })
        report = {
            'config': sim.describe(),
            'eNorm': e_norm,
            'eta': eta,
            'n': n,
            'replications': replications,
            'seeds': ensemble.seeds,
            'players': rows,
        }
        if emitter is not None:
            emitter.json(report, 'bounds.json')
        return report, all(row['withinI'] and row['withinII'] for row in rows)

    def failure_message(self, report):
        players = [row['player'] for row in report['players'] if not (row['withinI'] and row['withinII'])]
        return f'empirical tail frequency above the bound for players {players}'
