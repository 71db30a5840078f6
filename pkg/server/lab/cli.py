'''
Subcommand dispatch returning exit codes, so the lab can be driven as
`manage.py <subcommand>` or programmatically.
'''
import logging
import sys

from django.core.management import load_command_class
from django.core.management.base import CommandError

logger = logging.getLogger(__name__)

SUBCOMMANDS = {
    'validate': 'validate',
    'simulate': 'simulate',
    'replicate': 'replicate',
    'certify': 'certify',
    'bounds': 'bounds',
    'dynamics': 'dynamics',
    'nash-gap': 'nash_gap',
    'nash_gap': 'nash_gap',
}

USAGE_ERROR = 2


def dispatch(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in SUBCOMMANDS:
        known = ', '.join(sorted(name for name in SUBCOMMANDS if name != 'nash_gap'))
        stderr.write(f'unknown subcommand {argv[0] if argv else ""!r}, expected one of: {known}\n')
        return USAGE_ERROR

    name = SUBCOMMANDS[argv[0]]
    command = load_command_class('lab', name)
    parser = command.create_parser('manage.py', name)
    try:
        options = vars(parser.parse_args(argv[1:]))
    except CommandError as error:
        stderr.write(f'{error}\n')
        return USAGE_ERROR

    args = options.pop('args', ())
    options.update(stdout=stdout, stderr=stderr)
    try:
        command.execute(*args, **options)
    except CommandError as error:
        stderr.write(f'{error}\n')
        return error.returncode
    return 0
