#!/usr/bin/env python
"""Django's command-line utility for the retrieval pipeline.

Pipeline commands may be given hyphenated (``gen-data``) or with underscores
(``gen_data``); ``test`` and the other Django commands work as usual.
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install requirements.txt into the active environment."
        ) from exc
    from uncertainty_app.cli import COMMANDS

    argv = list(sys.argv)
    if len(argv) > 1:
        argv[1] = COMMANDS.get(argv[1], argv[1])
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
