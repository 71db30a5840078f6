import numpy as np
from django.conf import settings

from dynamics.flow import diagonal_limit_check, euler_integrate
from dynamics.selection import Selection
from dynamics.textchoices import NatureKinds
from engine.metrics import vstar_distance
from engine.simulation import make_generator
from games.textchoices import GameTypes
from lab.commands import LabCommand
from lab.exceptions import ConfigError


class Command(LabCommand):
    help = 'Integrates a selection of the limit dynamics and runs the diagonal check'

    def run(self, config, options, emitter):
        game = config.game
        cap = settings.SMALE_LAB_ENUMERATION_CAP
        flow_settings = config.document['dynamics']
        agents = config.assignments(options['delta'])
        strat = agents[flow_settings['player'] - 1]
        if not strat.is_good:
            raise ConfigError(f'player {strat.player} does not play a good strategy')

        nature = NatureKinds(flow_settings['nature'])
        others = [agent for agent in agents if agent.player != strat.player] if nature == NatureKinds.others else ()
        selection = Selection(strategy=strat, nature=nature, others=others)

        u0 = np.asarray(flow_settings.get('u0') or game.payoff_table(cap)[0], dtype=float)
        if u0.shape != (game.dimension, ):
            raise ConfigError(f'u0 needs {game.dimension} coordinates, got {u0.size}')
        flow = euler_integrate(selection, game, u0, flow_settings['h'], flow_settings['T'], cap=cap)

        diagonal = []
        if game.game_type != GameTypes.network:
            rng = make_generator(options['seed'])
            diagonal = [
                diagonal_limit_check(game, agent, flow_settings['samples'], rng, cap=cap).as_dict()
                for agent in agents if agent.is_good
            ]
        report = {
            'game': config.game_type.value,
            'player': strat.player,
            'nature': nature.value,
            'h': flow_settings['h'],
            'T': flow_settings['T'],
            'u0': u0,
            'finalState': flow.final,
            'distVstar': float(vstar_distance(game, flow.final)[0]),
            'diagonal': diagonal,
        }
        if emitter is not None:
            emitter.flow_path(flow, game)
            emitter.json(report, 'dynamics.json')
        return report, all(check['unique'] for check in diagonal)

    def failure_message(self, report):
        offenders = [check['offenders'] for check in report['diagonal'] if not check['unique']]
        return f'v* is not the only zero of mu on the diagonal: {offenders}'
