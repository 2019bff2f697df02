"""Feature/embedding CSV shared by datasets, ``embed`` and ``eval``.

Header: ``id,label,split,modality,dim=<d>,views=<v>``. Each following row is
``id,label,split,modality`` plus ``v*d`` values, view-major, written with 17
significant digits so a save/load round trip is lossless.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from uncertainty_app.data.dataset import MODALITIES, SPLITS
from uncertainty_app.error_messages import (BAD_FIELD_ERROR, BAD_NUMBER_ERROR, DUPLICATE_ID_ERROR,
                                            MALFORMED_HEADER_ERROR, MALFORMED_ROW_ERROR,
                                            MISSING_FILE_ERROR, VALUE_COUNT_ERROR)
from uncertainty_app.exceptions import DataFormatError

META_COLUMNS = ('id', 'label', 'split', 'modality')


@dataclass
class FeatureRow:
    id: str
    label: int
    split: str
    modality: str
    values: np.ndarray  # views x dim
    line: int = 0


@dataclass
class FeatureTable:
    dim: int
    views: int
    rows: list

    def matrix(self):
        return np.array([row.values.reshape(-1) for row in self.rows]).reshape(len(self.rows), self.views * self.dim)

    def labels(self):
        return np.array([row.label for row in self.rows], dtype=np.int64)


def format_value(value):
    return format(float(value), '.17g')


def write_feature_csv(path, rows, dim, views=1):
    with Path(path).open('w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow([*META_COLUMNS, f'dim={dim}', f'views={views}'])
        for row in rows:
            writer.writerow([row.id, row.label, row.split, row.modality,
                             *(format_value(v) for v in np.asarray(row.values).reshape(-1))])


def _header_int(cell, name, path):
    key, _, value = cell.partition('=')
    if key != name or not value.isdigit() or int(value) < 1:
        raise DataFormatError(MALFORMED_HEADER_ERROR.format(path=path, reason=f'bad {name} cell {cell!r}'), path=path, line=1)
    return int(value)


def read_feature_header(path):
    """Validate just the header, so commands can fail before heavy work."""
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(MISSING_FILE_ERROR.format(path=path), path=path)
    with path.open(encoding='utf-8', newline='') as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader, None)
        except csv.Error as exc:
            raise _row_error(path, reader.line_num, str(exc)) from None
    if header is None or len(header) != 6 or tuple(header[:4]) != META_COLUMNS:
        raise DataFormatError(MALFORMED_HEADER_ERROR.format(path=path, reason='expected id,label,split,modality,dim=,views='),
                              path=path, line=1)
    return _header_int(header[4], 'dim', path), _header_int(header[5], 'views', path)


def _row_error(path, line, reason):
    return DataFormatError(MALFORMED_ROW_ERROR.format(path=path, line=line, reason=reason), path=path, line=line)


def _parse_row(cells, path, line, dim, views, seen):
    expected = dim * views
    if len(cells) != len(META_COLUMNS) + expected:
        raise _row_error(path, line, VALUE_COUNT_ERROR.format(expected=expected, got=max(len(cells) - len(META_COLUMNS), 0)))
    sample_id, label, split, modality = cells[:4]
    if sample_id in seen:
        raise _row_error(path, line, DUPLICATE_ID_ERROR.format(sample_id=sample_id))
    if not label.isdigit():
        raise _row_error(path, line, BAD_FIELD_ERROR.format(field='label', value=label))
    if split not in SPLITS:
        raise _row_error(path, line, BAD_FIELD_ERROR.format(field='split', value=split))
    if modality not in MODALITIES:
        raise _row_error(path, line, BAD_FIELD_ERROR.format(field='modality', value=modality))
    values = np.empty(expected)
    for k, cell in enumerate(cells[4:]):
        try:
            values[k] = float(cell)
        except ValueError:
            raise _row_error(path, line, BAD_NUMBER_ERROR.format(value=cell)) from None
    if not np.all(np.isfinite(values)):
        raise _row_error(path, line, BAD_NUMBER_ERROR.format(value='non-finite'))
    seen.add(sample_id)
    return FeatureRow(id=sample_id, label=int(label), split=split, modality=modality,
                      values=values.reshape(views, dim), line=line)


def read_feature_csv(path):
    dim, views = read_feature_header(path)
    rows, seen = [], set()
    with Path(path).open(encoding='utf-8', newline='') as handle:
        reader = csv.reader(handle)
        try:
            next(reader)
            for cells in reader:
                if not cells:
                    continue
                rows.append(_parse_row(cells, path, reader.line_num, dim, views, seen))
        except csv.Error as exc:
            raise _row_error(path, reader.line_num, str(exc)) from None
    return FeatureTable(dim=dim, views=views, rows=rows)
