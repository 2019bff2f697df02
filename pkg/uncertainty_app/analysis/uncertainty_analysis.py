"""Scalar uncertainty of a sketch and its low/mid/high bucket.

The score of a sketch is the harmonic mean of its per-dimension variances
sigma^2. Scores are min-max normalized over the analysed set and cut into
three equal-width intervals by default.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sklearn.metrics import roc_auc_score

from uncertainty_app.error_messages import (BUCKET_BOUNDS_ERROR, CONSTANT_SCORES_ERROR,
                                            NON_POSITIVE_VARIANCE_ERROR)

logger = logging.getLogger(__name__)

BUCKETS = ('low', 'mid', 'high')
LOW_BOUNDARY = 1.0 / 3.0
HIGH_BOUNDARY = 2.0 / 3.0


@dataclass
class UncertaintyRecord:
    sample_id: object
    sigma2: np.ndarray
    score: float
    normalized: float
    bucket: str


def harmonic_mean(sigma2):
    sigma2 = np.asarray(sigma2, dtype=np.float64).reshape(-1)
    if np.any(sigma2 <= 0):
        raise ValueError(NON_POSITIVE_VARIANCE_ERROR.format(value=float(sigma2[sigma2 <= 0][0])))
    return float(sigma2.size / np.sum(1.0 / sigma2))


def predict_uncertainty(model, features):
    """sigma^2 of every sketch row, from the log-variance head."""
    return model.forward(features)[0].sigma2


def uncertainty_scores(sigma2_rows):
    return np.array([harmonic_mean(row) for row in sigma2_rows])


def bucket_of(normalized, low=LOW_BOUNDARY, high=HIGH_BOUNDARY):
    if normalized < low:
        return 'low'
    if normalized < high:
        return 'mid'
    return 'high'


def normalize_and_bucket(scores, sample_ids=None, sigma2_rows=None, low=LOW_BOUNDARY, high=HIGH_BOUNDARY):
    if not 0.0 < low < high < 1.0:
        raise ValueError(BUCKET_BOUNDS_ERROR.format(low=low, high=high))
    scores = np.asarray(scores, dtype=np.float64).reshape(-1)
    smallest, largest = float(scores.min(initial=np.inf)), float(scores.max(initial=-np.inf))
    if scores.size < 2 or smallest == largest:
        raise ValueError(CONSTANT_SCORES_ERROR)
    sample_ids = list(range(scores.size)) if sample_ids is None else list(sample_ids)
    normalized = (scores - smallest) / (largest - smallest)
    records = []
    for k, (score, value) in enumerate(zip(scores, normalized)):
        records.append(UncertaintyRecord(
            sample_id=sample_ids[k],
            sigma2=None if sigma2_rows is None else np.asarray(sigma2_rows[k]),
            score=float(score),
            normalized=float(value),
            bucket=bucket_of(value, low, high),
        ))
    return records


def bucket_summary(records):
    """Count and percentage of records per bucket, in low/mid/high order."""
    total = len(records)
    summary = {}
    for bucket in BUCKETS:
        count = sum(record.bucket == bucket for record in records)
        summary[bucket] = (count, 100.0 * count / total if total else 0.0)
    return summary


def noise_detection_auc(scores, noisy_flags):
    """ROC AUC of the uncertainty score as a detector of flagged noisy samples."""
    return float(roc_auc_score(np.asarray(noisy_flags, dtype=int), np.asarray(scores, dtype=np.float64)))


def write_uncertainty_report(path, records, auc=None):
    summary = bucket_summary(records)
    with Path(path).open('w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['id', 'score', 'normalized', 'bucket'])
        for record in records:
            writer.writerow([record.sample_id, repr(record.score), repr(record.normalized), record.bucket])
        for bucket, (count, percent) in summary.items():
            handle.write(f'# {bucket} {count} {percent:.2f}%\n')
        if auc is not None:
            handle.write(f'# noisy_auc {auc!r}\n')
    logger.info("Uncertainty buckets: %s",
                ' '.join(f'{bucket}={percent:.1f}%' for bucket, (_, percent) in summary.items()))
    return summary
