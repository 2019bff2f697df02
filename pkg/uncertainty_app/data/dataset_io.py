import csv
import logging
from pathlib import Path

from uncertainty_app.data.dataset import SHAPE, SKETCH, Dataset, SampleRecord
from uncertainty_app.data.feature_csv import (FeatureRow, read_feature_csv, read_feature_header,
                                              write_feature_csv)
from uncertainty_app.data.key_value_io import read_key_values, write_key_values
from uncertainty_app.error_messages import (BAD_FIELD_ERROR, MALFORMED_HEADER_ERROR,
                                            MALFORMED_ROW_ERROR, VALUE_COUNT_ERROR)
from uncertainty_app.exceptions import DataFormatError
from uncertainty_app.serializers.manifest_serializer import load_manifest

logger = logging.getLogger(__name__)

MANIFEST_FILE = 'manifest.txt'
SKETCH_FILE = 'sketches.csv'
SHAPE_FILE = 'shapes.csv'
NOISY_FILE = 'noisy.csv'


def save_dataset(dataset, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = dataset.manifest
    write_key_values(directory / MANIFEST_FILE, manifest.to_key_values())
    for modality, name, views in ((SKETCH, SKETCH_FILE, 1), (SHAPE, SHAPE_FILE, manifest.views)):
        rows = [FeatureRow(r.id, r.label, r.split, r.modality, r.payload) for r in dataset.select(modality)]
        write_feature_csv(directory / name, rows, manifest.dim, views)
    # Kept apart from the features so evaluation never sees the flags.
    with (directory / NOISY_FILE).open('w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['id', 'noisy'])
        for record in dataset.select(SKETCH):
            writer.writerow([record.id, int(record.noisy)])
    logger.info("Saved dataset with %d records to %s", len(dataset.records), directory)


def read_noisy_flags(path):
    path = Path(path)
    if not path.is_file():
        return {}
    flags = {}
    with path.open(encoding='utf-8', newline='') as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader, None)
            rows = [(reader.line_num, cells) for cells in reader if cells]
        except csv.Error as exc:
            raise DataFormatError(MALFORMED_ROW_ERROR.format(path=path, line=reader.line_num, reason=exc),
                                  path=path, line=reader.line_num) from None
    if header != ['id', 'noisy']:
        raise DataFormatError(MALFORMED_HEADER_ERROR.format(path=path, reason='expected id,noisy'), path=path, line=1)
    for line, cells in rows:
        if len(cells) != 2 or cells[1] not in ('0', '1'):
            raise DataFormatError(MALFORMED_ROW_ERROR.format(
                path=path, line=line, reason=BAD_FIELD_ERROR.format(field='noisy row', value=cells)),
                path=path, line=line)
        flags[cells[0]] = cells[1] == '1'
    return flags


def _check_header(path, manifest, views):
    dim, found_views = read_feature_header(path)
    if (dim, found_views) != (manifest.dim, views):
        raise DataFormatError(MALFORMED_HEADER_ERROR.format(
            path=path, reason=f'dim={dim}, views={found_views} but the manifest says dim={manifest.dim}, views={views}'),
            path=path, line=1)


def load_dataset(directory):
    directory = Path(directory)
    manifest = load_manifest(read_key_values(directory / MANIFEST_FILE))
    _check_header(directory / SKETCH_FILE, manifest, 1)
    _check_header(directory / SHAPE_FILE, manifest, manifest.views)
    flags = read_noisy_flags(directory / NOISY_FILE)

    records = []
    for name, modality in ((SKETCH_FILE, SKETCH), (SHAPE_FILE, SHAPE)):
        table = read_feature_csv(directory / name)
        for row in table.rows:
            if row.modality != modality or row.label >= manifest.classes:
                raise DataFormatError(MALFORMED_ROW_ERROR.format(
                    path=directory / name, line=row.line, reason=BAD_FIELD_ERROR.format(field='row', value=row.id)),
                    path=directory / name, line=row.line)
            records.append(SampleRecord(id=row.id, label=row.label, split=row.split, modality=row.modality,
                                        payload=row.values, noisy=flags.get(row.id, False)))

    dataset = Dataset(manifest=manifest, records=records)
    for modality in (SKETCH, SHAPE):
        for split in ('train', 'test'):
            expected = manifest.expected_count(modality, split)
            found = len(dataset.select(modality, split))
            if found != expected:
                raise DataFormatError(MALFORMED_HEADER_ERROR.format(
                    path=directory, reason=VALUE_COUNT_ERROR.format(expected=f'{expected} {split} {modality} rows', got=found)),
                    path=directory)
    logger.debug("Loaded %d records from %s", len(records), directory)
    return dataset
