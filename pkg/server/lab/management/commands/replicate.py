from django.conf import settings

from engine.ensemble import replicate
from lab.commands import LabCommand, tail_start


class Command(LabCommand):
    help = 'Runs seeds seed+1..seed+R and summarizes the tail frequencies'

    def run(self, config, options, emitter):
        sim = config.sim_config(options['seed'], delta=options['delta'])
        replications = config.document['simulation']['replications']
        ensemble = replicate(sim, replications, workers=settings.SMALE_LAB_THREADS)
        bounds = config.document['bounds']
        summary = ensemble.summary(ns=[tail_start(bounds, sim)], etas=[bounds['eta']])
        if emitter is not None:
            emitter.ensemble(ensemble, summary)
        return summary, True
