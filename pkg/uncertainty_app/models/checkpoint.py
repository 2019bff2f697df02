"""Text checkpoints.

Layout::

    UACKPT 1
    kind=sketch|shape
    <TrainConfig as key=value lines>
    params <count>
    <name> <rows> <cols>
    <rows lines of cols values, 17 significant digits>
    ...

Biases are stored as 1 x d matrices. Sketch checkpoints also carry the frozen
class centers as ``classifier.weight``.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from uncertainty_app.data.feature_csv import format_value
from uncertainty_app.data.key_value_io import parse_key_values
from uncertainty_app.error_messages import (CHECKPOINT_FORMAT_ERROR, CHECKPOINT_KIND_ERROR,
                                            CHECKPOINT_MAGIC_ERROR, MISSING_FILE_ERROR)
from uncertainty_app.exceptions import DataFormatError
from uncertainty_app.models.backbone_model import Linear, MlpBackbone
from uncertainty_app.models.classifier_model import Classifier
from uncertainty_app.models.shape_model import ShapeEncoder
from uncertainty_app.models.sketch_model import GaussianHead, SketchEncoder
from uncertainty_app.serializers.train_config_serializer import load_train_config

logger = logging.getLogger(__name__)

MAGIC = 'UACKPT 1'
SKETCH_KIND = 'sketch'
SHAPE_KIND = 'shape'


@dataclass
class Checkpoint:
    kind: str
    config: object
    model: object
    classifier: Classifier = None


def _named_layers(prefix, backbone):
    for index, layer in enumerate(backbone.layers):
        yield f'{prefix}.{index}.weight', layer.weight
        yield f'{prefix}.{index}.bias', layer.bias.reshape(1, -1)


def named_parameters(model, classifier=None):
    if isinstance(model, SketchEncoder):
        named = [*_named_layers('backbone', model.backbone), *_named_layers('mu', model.head.mu_proj),
                 *_named_layers('logvar', model.head.logvar_proj)]
    else:
        named = [*_named_layers('views', model.view_backbone), *_named_layers('proj', model.proj)]
    if classifier is not None:
        named.append(('classifier.weight', classifier.weight))
    return named


def save_checkpoint(path, model, cfg, classifier=None):
    kind = SKETCH_KIND if isinstance(model, SketchEncoder) else SHAPE_KIND
    named = named_parameters(model, classifier)
    lines = [MAGIC, f'kind={kind}', *(f'{key}={value}' for key, value in cfg.to_key_values()), f'params {len(named)}']
    for name, matrix in named:
        matrix = np.atleast_2d(matrix)
        lines.append(f'{name} {matrix.shape[0]} {matrix.shape[1]}')
        lines.extend(' '.join(format_value(v) for v in row) for row in matrix)
    Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')
    logger.info("Saved %s checkpoint with %d parameter matrices to %s", kind, len(named), path)


def _format_error(path, line, reason):
    return DataFormatError(CHECKPOINT_FORMAT_ERROR.format(path=path, line=line, reason=reason), path=path, line=line)


def _read_matrices(lines, start, count, path):
    matrices, cursor = {}, start
    for _ in range(count):
        if cursor >= len(lines):
            raise _format_error(path, cursor + 1, 'unexpected end of file')
        parts = lines[cursor].split()
        if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
            raise _format_error(path, cursor + 1, 'expected "<name> <rows> <cols>"')
        name, rows, cols = parts[0], int(parts[1]), int(parts[2])
        body = lines[cursor + 1:cursor + 1 + rows]
        if len(body) != rows:
            raise _format_error(path, cursor + 1, f'{name} is truncated')
        try:
            matrix = np.array([[float(v) for v in row.split()] for row in body]).reshape(rows, cols)
        except ValueError:
            raise _format_error(path, cursor + 1, f'{name} has malformed values') from None
        matrices[name] = matrix
        cursor += 1 + rows
    return matrices


def _backbone(matrices, prefix):
    layers, index = [], 0
    while f'{prefix}.{index}.weight' in matrices:
        layers.append(Linear(weight=matrices[f'{prefix}.{index}.weight'],
                             bias=matrices[f'{prefix}.{index}.bias'].reshape(-1)))
        index += 1
    return MlpBackbone(layers)


def _require(matrices, path, *prefixes):
    for prefix in prefixes:
        if f'{prefix}.0.weight' not in matrices or f'{prefix}.0.bias' not in matrices:
            raise _format_error(path, 1, f'missing parameters for {prefix}')


def load_checkpoint(path, kind=None):
    path = Path(path)
    if not path.is_file():
        raise DataFormatError(MISSING_FILE_ERROR.format(path=path), path=path)
    lines = path.read_text(encoding='utf-8').splitlines()
    if not lines or lines[0] != MAGIC:
        raise DataFormatError(CHECKPOINT_MAGIC_ERROR.format(path=path, magic=MAGIC), path=path, line=1)
    params_at = next((k for k, line in enumerate(lines) if line.startswith('params ')), None)
    if params_at is None or not lines[params_at].split()[1].isdigit():
        raise _format_error(path, len(lines), 'missing "params <count>" line')
    header = parse_key_values(lines[1:params_at], path=str(path), first_line=2)
    found = header.pop('kind', None)
    if found not in (SKETCH_KIND, SHAPE_KIND) or (kind is not None and found != kind):
        raise DataFormatError(CHECKPOINT_KIND_ERROR.format(path=path, found=found, expected=kind or 'sketch|shape'),
                              path=path)
    cfg = load_train_config(header)
    matrices = _read_matrices(lines, params_at + 1, int(lines[params_at].split()[1]), path)

    if found == SKETCH_KIND:
        _require(matrices, path, 'backbone', 'mu', 'logvar')
        model = SketchEncoder(_backbone(matrices, 'backbone'),
                              GaussianHead(_backbone(matrices, 'mu'), _backbone(matrices, 'logvar')))
        classifier = Classifier(matrices['classifier.weight'], frozen=True) if 'classifier.weight' in matrices else None
    else:
        _require(matrices, path, 'views', 'proj')
        model = ShapeEncoder(_backbone(matrices, 'views'), _backbone(matrices, 'proj'))
        classifier = None
    logger.debug("Loaded %s checkpoint from %s", found, path)
    return Checkpoint(kind=found, config=cfg, model=model, classifier=classifier)
