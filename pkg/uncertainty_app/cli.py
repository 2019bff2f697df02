"""``run(argv)``: the hyphenated command line on top of the management commands.

Exit codes: 0 success, 1 usage error, 2 runtime or data error. Messages go
to the diagnostic stream.
"""

import os
import sys

import django
from django.apps import apps
from django.core.management import call_command
from django.core.management.base import CommandError

from uncertainty_app.error_messages import UNKNOWN_COMMAND_ERROR

USAGE_ERROR_CODE = 1

COMMANDS = {
    'gen-data': 'gen_data',
    'train-sketch': 'train_sketch',
    'train-shape': 'train_shape',
    'embed': 'embed',
    'eval': 'eval',
    'report-uncertainty': 'report_uncertainty',
    'gradcheck': 'gradcheck',
    'ablate': 'ablate',
}


def setup():
    if not apps.ready:
        os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
        django.setup()


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in COMMANDS:
        found = argv[0] if argv else ''
        stderr.write(UNKNOWN_COMMAND_ERROR.format(command=found, choices=', '.join(COMMANDS)) + '\n')
        return USAGE_ERROR_CODE
    setup()
    try:
        call_command(COMMANDS[argv[0]], *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as exc:
        message = str(exc)
        stderr.write((message if message.startswith('Error') else f'Error: {message}') + '\n')
        return exc.returncode
    except SystemExit as exc:
        # argparse exits after --help
        return exc.code or 0
    return 0
