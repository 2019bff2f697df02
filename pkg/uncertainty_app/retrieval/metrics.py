"""Per-query retrieval metrics in the usual SHREC-track form.

R is the number of relevant gallery items and G the gallery size.

* NN  - relevance of the top result;
* FT  - relevant items in the top R, divided by R;
* ST  - relevant items in the top min(2R, G), divided by R;
* E   - F-measure of precision and recall over the top min(32, G);
* DCG - rel_1 + sum_{i>=2} rel_i / log2(i), divided by the same sum for the ideal list;
* AP  - mean of precision@k over the ranks k of relevant items.

Reductions use ``math.fsum`` so that results do not depend on summation order.
"""

import math

import numpy as np

from uncertainty_app.error_messages import NO_RELEVANT_ERROR
from uncertainty_app.exceptions import NoRelevantItemsError

E_MEASURE_CUTOFF = 32
RECALL_LEVELS = tuple(k / 10 for k in range(11))


def _relevant(r):
    relevant = r.relevant_count
    if relevant == 0:
        raise NoRelevantItemsError(NO_RELEVANT_ERROR.format(query=r.query_id))
    return relevant, np.cumsum(r.relevance)


def average_precision(r):
    relevant, hits = _relevant(r)
    positions = np.flatnonzero(r.relevance)
    return math.fsum(hits[positions] / (positions + 1)) / relevant


def tier_metrics(r):
    relevant, hits = _relevant(r)
    nn = float(r.relevance[0])
    first_tier = hits[relevant - 1] / relevant
    second_tier = hits[min(2 * relevant, len(r)) - 1] / relevant
    return nn, float(first_tier), float(second_tier)


def e_measure(r, cutoff=E_MEASURE_CUTOFF):
    relevant, hits = _relevant(r)
    k = min(cutoff, len(r))
    precision = hits[k - 1] / k
    recall = hits[k - 1] / relevant
    if precision + recall == 0:
        return 0.0
    return float(2 * precision * recall / (precision + recall))


def _discounted(relevance):
    return math.fsum(rel / math.log2(i) if i > 1 else float(rel)
                     for i, rel in enumerate(relevance, start=1) if rel)


def dcg(r):
    relevant, _ = _relevant(r)
    return _discounted(r.relevance.tolist()) / _discounted([1] * relevant)


def interpolated_precision(r, levels=RECALL_LEVELS):
    """Precision at each recall level: the best precision reached at that recall or beyond."""
    relevant, hits = _relevant(r)
    positions = np.flatnonzero(r.relevance)
    precision = hits[positions] / (positions + 1)
    recall = hits[positions] / relevant
    curve = []
    for level in levels:
        reached = precision[recall >= level]
        curve.append(float(reached.max()) if reached.size else 0.0)
    return curve
