from django.conf import settings

from approachability.bands import player_band, sample_state_space
from approachability.certify import bcor_certify, separation_check
from engine.simulation import make_generator
from games.profiles import state_space
from lab.commands import LabCommand
from lab.exceptions import ConfigError


class Command(LabCommand):
    help = 'Certifies the band of every good strategy and probes the separation inequality'

    def run(self, config, options, emitter):
        game = config.game
        cap = settings.SMALE_LAB_ENUMERATION_CAP
        good = [agent for agent in config.assignments(options['delta']) if agent.is_good]
        if not good:
            raise ConfigError('certification needs at least one player on a good strategy')

        sampling = config.document['certify']
        rng = make_generator(options['seed'])
        points = sample_state_space(state_space(game, cap).vertices, sampling['samples'], rng)
        radius = sampling['radius']

        results = []
        for strat in good:
            certificate = bcor_certify(game, strat, cap=cap)
            band = player_band(game, strat.player, strat.delta)
            near = [x for x in points
                    if radius is None or abs(band.value(x) - band.clamp(band.value(x))) <= radius]
            checks = [separation_check(game, strat, band, x, cap=cap) for x in near]
            worst = max(checks, key=lambda check: check.max_inner) if checks else None
            results.append({
                'certificate': certificate.as_dict(),
                'separation': {
                    'checked': len(checks),
                    'failures': sum(not check.passed for check in checks),
                    'maxInner': worst.max_inner if worst else None,
                    'witness': worst.witness if worst else None,
                    'x': worst.x if worst else None,
                },
            })
        report = {'game': config.game_type.value, 'players': results}
        if emitter is not None:
            emitter.json(report, 'certify.json')
        passed = all(r['certificate']['certified'] and not r['separation']['failures'] for r in results)
        return report, passed

    def failure_message(self, report):
        for result in report['players']:
            certificate = result['certificate']
            if certificate['witnesses']:
                witness = certificate['witnesses'][0]
                return (f"player {certificate['player']} not certified: opponents {witness['opponents']}, "
                        f"action {witness['action']}, mu = {witness['value']!r} against {witness['bound']!r}")
            if result['separation']['failures']:
                return f"player {certificate['player']}: separation fails at opponents {result['separation']['witness']}"
        return 'certification failed'
