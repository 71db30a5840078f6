from engine.simulation import run
from lab.commands import LabCommand


class Command(LabCommand):
    help = 'Runs one seeded simulation and writes its trace'

    def run(self, config, options, emitter):
        sim = config.sim_config(options['seed'], delta=options['delta'])
        trace = run(sim)
        series = trace.series
        summary = {
            'config': sim.describe(),
            'rows': len(trace),
            'finalState': trace.final_state,
            'finalProfile': trace.profiles[-1],
            'extremes': trace.extremes,
            'distLambda': {player: distances[-1] for player, distances in series.dist_lambda.items()},
            'distDiag': series.dist_diag[-1],
            'distVstar': series.dist_vstar[-1],
        }
        if emitter is not None:
            emitter.trace(trace)
            emitter.json(summary, 'summary.json')
        return summary, True
