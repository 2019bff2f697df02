from pathlib import Path

from uncertainty_app.error_messages import KEY_VALUE_LINE_ERROR, MISSING_FILE_ERROR
from uncertainty_app.exceptions import DataFormatError


def parse_key_values(lines, path='<config>', first_line=1):
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    values = {}
    for number, raw in enumerate(lines, start=first_line):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        if not sep or not key.strip():
            raise DataFormatError(KEY_VALUE_LINE_ERROR.format(path=path, line=number), path=path, line=number)
        values[key.strip()] = value.strip()
    return values


def read_key_values(path):
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(MISSING_FILE_ERROR.format(path=path), path=path)
    with path.open(encoding='utf-8') as handle:
        return parse_key_values(handle.read().splitlines(), path=str(path))


def format_key_values(pairs):
    return ''.join(f'{key}={value}\n' for key, value in pairs)


def write_key_values(path, pairs):
    Path(path).write_text(format_key_values(pairs), encoding='utf-8')
