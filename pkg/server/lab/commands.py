'''
Shared plumbing of the lab management commands: common flags, config
loading and the mapping of outcomes to exit codes (0 success, 1 failed
check, 2 configuration error).
'''
import logging

from django.core.management.base import BaseCommand, CommandError

from approachability.exceptions import BoundParameterError, NoRowsPastHorizon
from dynamics.exceptions import SelectionError, StepSizeError
from engine.exceptions import SimulationConfigError
from games.exceptions import EnumerationCapExceeded, GameDefinitionError
from strategies.exceptions import ReplayExhausted, StrategyDefinitionError

from .config import load_config
from .emit import Emitter, RunManifest, dumps
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

CHECK_FAILED = 1
CONFIG_ERROR = 2

CONFIG_ERRORS = (
    ConfigError, GameDefinitionError, EnumerationCapExceeded, StrategyDefinitionError, ReplayExhausted,
    SimulationConfigError, NoRowsPastHorizon, BoundParameterError, StepSizeError, SelectionError,
    FileNotFoundError,
)


class LabCommand(BaseCommand):
    requires_system_checks = []
    needs_seed = True

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='TOML run configuration')
        parser.add_argument('--seed', type=int, help='master seed, required by every randomized command')
        parser.add_argument('--out', help='directory receiving outputs and manifest.json')
        parser.add_argument('--horizon', type=int)
        parser.add_argument('--replications', type=int)
        parser.add_argument('--delta', type=float, help='delta of every good strategy')
        parser.add_argument('--eta', type=float)
        parser.add_argument('--tail-n', type=int, dest='tail_n')

    def handle(self, *args, **options):
        if self.needs_seed and options['seed'] is None:
            raise CommandError('--seed is required: runs never draw entropy on their own', returncode=CONFIG_ERROR)
        if options['seed'] is not None and options['seed'] < 0:
            raise CommandError('--seed must be nonnegative', returncode=CONFIG_ERROR)
        try:
            config = load_config(options['config']).with_overrides(
                simulation={'horizon': options['horizon'], 'replications': options['replications']},
                bounds={'eta': options['eta'], 'tail_n': options['tail_n']},
            )
            emitter = None
            if options['out']:
                emitter = Emitter(options['out'], RunManifest(
                    command=self.command_name,
                    config=config.document,
                    master_seed=options['seed'],
                    overrides={'delta': options['delta']} if options['delta'] is not None else {},
                ))
            report, passed = self.run(config, options, emitter)
        except CONFIG_ERRORS as error:
            logger.error('%s: %s', self.command_name, error)
            raise CommandError(str(error), returncode=CONFIG_ERROR)

        if emitter is not None:
            emitter.finish()
        self.stdout.write(dumps(report), ending='')
        if not passed:
            raise CommandError(self.failure_message(report), returncode=CHECK_FAILED)

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def run(self, config, options, emitter):
        '''
        Returns the report printed to standard output and whether the checks passed
        '''
        raise NotImplementedError

    def failure_message(self, report):
        return f'{self.command_name} failed'


def tail_start(bounds, sim):
    '''
    The configured tail start, moved back to the horizon when it lies beyond it
    '''
    if bounds['tail_n'] > sim.horizon:
        logger.warning('tail start %d is past the horizon, using n = %d', bounds['tail_n'], sim.horizon)
        return sim.horizon
    return bounds['tail_n']
