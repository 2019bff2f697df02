import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from uncertainty_app.data.key_value_io import write_key_values
from uncertainty_app.error_messages import NO_EVALUABLE_QUERY_ERROR
from uncertainty_app.exceptions import NoRelevantItemsError
from uncertainty_app.retrieval.metrics import (E_MEASURE_CUTOFF, RECALL_LEVELS, average_precision,
                                               dcg, e_measure, interpolated_precision, tier_metrics)
from uncertainty_app.retrieval.ranking import rank

logger = logging.getLogger(__name__)

METRICS_FILE = 'metrics.txt'
PER_QUERY_FILE = 'per_query.csv'
PR_CURVE_FILE = 'pr_curve.txt'


@dataclass
class QueryMetrics:
    query_id: object
    nn: float
    ft: float
    st: float
    e: float
    dcg: float
    ap: float


@dataclass
class MetricReport:
    nn: float
    ft: float
    st: float
    e: float
    dcg: float
    map: float
    per_query: list = field(default_factory=list)
    pr_curve: list = field(default_factory=list)  # (recall, precision) pairs
    excluded: list = field(default_factory=list)

    @property
    def per_query_ap(self):
        return [q.ap for q in self.per_query]

    def summary(self):
        return {'NN': self.nn, 'FT': self.ft, 'ST': self.st, 'E': self.e, 'DCG': self.dcg, 'mAP': self.map}


def query_metrics(r, cutoff=E_MEASURE_CUTOFF):
    nn, ft, st = tier_metrics(r)
    return QueryMetrics(query_id=r.query_id, nn=nn, ft=ft, st=st, e=e_measure(r, cutoff), dcg=dcg(r),
                        ap=average_precision(r))


def _mean(values):
    return math.fsum(values) / len(values)


def evaluate(queries, gallery, qlabels, glabels, query_ids=None, gallery_ids=None, cutoff=E_MEASURE_CUTOFF):
    """Rank the gallery for every query and average the six metrics and the PR curve.

    Queries without any relevant gallery item are left out of every average and
    listed in ``excluded``.
    """
    per_query, curves, excluded = [], [], []
    for ranked in rank(queries, gallery, qlabels, glabels, query_ids, gallery_ids):
        try:
            per_query.append(query_metrics(ranked, cutoff))
            curves.append(interpolated_precision(ranked))
        except NoRelevantItemsError:
            excluded.append(ranked.query_id)
    if excluded:
        logger.warning("%d queries have no relevant gallery item and were excluded", len(excluded))
    if not per_query:
        raise NoRelevantItemsError(NO_EVALUABLE_QUERY_ERROR)

    pr_curve = [(level, _mean([curve[k] for curve in curves])) for k, level in enumerate(RECALL_LEVELS)]
    report = MetricReport(
        nn=_mean([q.nn for q in per_query]),
        ft=_mean([q.ft for q in per_query]),
        st=_mean([q.st for q in per_query]),
        e=_mean([q.e for q in per_query]),
        dcg=_mean([q.dcg for q in per_query]),
        map=_mean([q.ap for q in per_query]),
        per_query=per_query,
        pr_curve=pr_curve,
        excluded=excluded,
    )
    logger.info("Evaluated %d queries: %s", len(per_query),
                ' '.join(f'{name}={value:.4f}' for name, value in report.summary().items()))
    return report


def write_metric_report(directory, report):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    pairs = [(name, repr(float(value))) for name, value in report.summary().items()]
    pairs += [('queries', len(report.per_query)), ('excluded', len(report.excluded))]
    write_key_values(directory / METRICS_FILE, pairs)
    with (directory / PER_QUERY_FILE).open('w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['query', 'nn', 'ft', 'st', 'e', 'dcg', 'ap'])
        for q in report.per_query:
            writer.writerow([q.query_id, *(repr(float(v)) for v in (q.nn, q.ft, q.st, q.e, q.dcg, q.ap))])
    (directory / PR_CURVE_FILE).write_text(
        ''.join(f'{float(recall)!r} {float(precision)!r}\n' for recall, precision in report.pr_curve), encoding='utf-8')
    return directory / METRICS_FILE
