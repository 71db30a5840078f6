from django.conf import settings

from engine.nash_gap import nash_gap
from lab.commands import LabCommand
from strategies.policies import OpponentPolicy


class Command(LabCommand):
    help = 'Measures what a single deviator gains against good strategies'

    def run(self, config, options, emitter):
        sim = config.sim_config(options['seed'], delta=options['delta'])
        experiment = config.document['nash_gap']
        deviator = experiment['deviator']
        delta = max((agent.delta for agent in sim.assignments if agent.is_good), default=0.0)
        policies = [
            OpponentPolicy(
                player=deviator,
                kind=kind,
                p=experiment['p'],
                delta=delta,
                target=experiment.get('target', deviator % sim.players + 1),
            )
            for kind in experiment['deviations']
        ]
        report = nash_gap(
            sim,
            deviator,
            policies,
            replications=config.document['simulation']['replications'],
            workers=settings.SMALE_LAB_THREADS,
            tolerance=experiment['tolerance'],
        ).as_dict()
        report['config'] = sim.describe()
        if emitter is not None:
            emitter.json(report, 'nash_gap.json')
        return report, report['passed']

    def failure_message(self, report):
        worst = max(outcome['worst'] for outcome in report['outcomes'])
        return f"deviation gain {worst!r} exceeds {report['threshold'] + report['tolerance']!r}"
