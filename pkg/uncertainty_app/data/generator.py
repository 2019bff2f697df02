"""Synthetic sketch/shape benchmark with ground-truth noisy sketches.

Each class gets a random unit prototype; prototypes are rejection sampled so
that every pair has cosine below ``PROTOTYPE_MAX_COSINE``. Clean sketches are
the prototype plus isotropic noise. Noisy sketches follow ``noise_mode``:

* ``ambiguous`` - midpoint of the own and another random prototype, stronger noise;
* ``label`` - drawn around another class's prototype but keeping the own label.

Shapes are ``views`` noisy copies of their class prototype.
"""

import logging
import math

import numpy as np

from uncertainty_app.data.dataset import SHAPE, SKETCH, SPLITS, TRAIN, Dataset, SampleRecord
from uncertainty_app.error_messages import INFEASIBLE_PROTOTYPES_ERROR
from uncertainty_app.exceptions import InfeasibleDataError
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.serializers.manifest_serializer import load_manifest

logger = logging.getLogger(__name__)

PROTOTYPE_MAX_COSINE = 0.5
PROTOTYPE_ATTEMPTS = 1000
CLEAN_STD = 0.1
AMBIGUOUS_STD = 0.3
VIEW_STD = 0.1


def draw_prototypes(classes, dim, rng):
    prototypes = np.zeros((classes, dim))
    for c in range(classes):
        for _ in range(PROTOTYPE_ATTEMPTS):
            candidate = rng.normal(dim)
            candidate /= np.linalg.norm(candidate)
            if c == 0 or np.max(prototypes[:c] @ candidate) < PROTOTYPE_MAX_COSINE:
                prototypes[c] = candidate
                break
        else:
            raise InfeasibleDataError(INFEASIBLE_PROTOTYPES_ERROR.format(
                classes=classes, limit=PROTOTYPE_MAX_COSINE, dim=dim))
    return prototypes


def _other_class(label, classes, rng):
    other = int(rng.integers(0, classes - 1))
    return other + 1 if other >= label else other


def _sketch_feature(prototypes, label, noisy, noise_mode, rng):
    dim = prototypes.shape[1]
    if not noisy:
        return prototypes[label] + CLEAN_STD * rng.normal(dim)
    other = _other_class(label, prototypes.shape[0], rng)
    if noise_mode == 'ambiguous':
        return 0.5 * (prototypes[label] + prototypes[other]) + AMBIGUOUS_STD * rng.normal(dim)
    return prototypes[other] + CLEAN_STD * rng.normal(dim)


def generate(classes, n_train, n_test, dim, views, noise_frac, noise_mode='ambiguous', rng=None,
             n_shape_train=10, n_shape_test=5):
    """Build a synthetic two-modality dataset.

    Per class and split, ``ceil(noise_frac * n)`` sketches are noisy. Records
    come in canonical order: sketches (train, test) then shapes (train, test),
    class-major inside each block.
    """
    rng = rng if rng is not None else Rng(0)
    manifest = load_manifest({
        'classes': classes, 'dim': dim, 'views': views, 'n_train': n_train, 'n_test': n_test,
        'n_shape_train': n_shape_train, 'n_shape_test': n_shape_test,
        'noise_frac': noise_frac, 'noise_mode': noise_mode, 'seed': rng.seed,
    })
    prototypes = draw_prototypes(classes, dim, rng)

    records = []
    for split in SPLITS:
        per_class = manifest.n_train if split == TRAIN else manifest.n_test
        noisy_count = math.ceil(noise_frac * per_class)
        for label in range(classes):
            noisy_slots = set(int(k) for k in rng.permutation(per_class)[:noisy_count])
            for k in range(per_class):
                noisy = k in noisy_slots
                feature = _sketch_feature(prototypes, label, noisy, noise_mode, rng)
                records.append(SampleRecord(
                    id=f'{SKETCH}-{split}-{label:03d}-{k:04d}', label=label, split=split,
                    modality=SKETCH, payload=feature.reshape(1, dim), noisy=noisy))

    for split in SPLITS:
        per_class = manifest.n_shape_train if split == TRAIN else manifest.n_shape_test
        for label in range(classes):
            for k in range(per_class):
                payload = prototypes[label] + VIEW_STD * rng.normal((views, dim))
                records.append(SampleRecord(
                    id=f'{SHAPE}-{split}-{label:03d}-{k:04d}', label=label, split=split,
                    modality=SHAPE, payload=payload))

    logger.info("Generated %d sketches and %d shapes over %d classes (noise %.2f, %s)",
                sum(r.modality == SKETCH for r in records), sum(r.modality == SHAPE for r in records),
                classes, noise_frac, noise_mode)
    return Dataset(manifest=manifest, records=records)

