import math
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from uncertainty_app.data.key_value_io import read_key_values
from uncertainty_app.exceptions import NoRelevantItemsError, ShapeMismatchError
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.retrieval.evaluation import (METRICS_FILE, PER_QUERY_FILE, PR_CURVE_FILE, evaluate,
                                                  write_metric_report)
from uncertainty_app.retrieval.metrics import (average_precision, dcg, e_measure, interpolated_precision,
                                               tier_metrics)
from uncertainty_app.retrieval.ranking import RankedList, rank


def ranked(relevance):
    return RankedList(query_id='q', gallery_ids=list(range(len(relevance))), relevance=np.array(relevance))


def oracle_cosine(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(y * y for y in b))
    return dot / (norm_a * norm_b)


def oracle_query(query, qlabel, gallery, glabels):
    """Straight-line metrics of one query; None when nothing in the gallery is relevant."""
    order = sorted(range(len(gallery)), key=lambda g: (-oracle_cosine(query, gallery[g]), g))
    relevance = [1 if glabels[g] == qlabel else 0 for g in order]
    total = sum(relevance)
    if total == 0:
        return None
    size = len(relevance)
    hits_at = [sum(relevance[:k]) for k in range(size + 1)]
    precisions = [hits_at[k] / k for k in range(1, size + 1) if relevance[k - 1]]
    cutoff = min(32, size)
    precision, recall = hits_at[cutoff] / cutoff, hits_at[cutoff] / total
    e = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)

    def discounted(values):
        return math.fsum(float(rel) if i == 1 else rel / math.log2(i) for i, rel in enumerate(values, start=1) if rel)

    return {
        'nn': float(relevance[0]),
        'ft': hits_at[total] / total,
        'st': hits_at[min(2 * total, size)] / total,
        'e': e,
        'dcg': discounted(relevance) / discounted([1] * total),
        'ap': math.fsum(precisions) / total,
    }


class RankTests(SimpleTestCase):
    def test_query_itself_ranks_first(self):
        gallery = Rng(0).normal((6, 4))
        result = rank(gallery[3:4], gallery, [1], [0, 0, 0, 1, 0, 0])
        self.assertEqual(result[0].gallery_ids[0], 3)

    def test_ties_go_to_the_smaller_gallery_id(self):
        gallery = np.array([[0.0, 1.0], [1.0, 0.0], [2.0, 0.0]])
        result = rank(np.array([[1.0, 0.0]]), gallery, [0], [0, 1, 0], gallery_ids=['a', 'b', 'c'])
        self.assertEqual(result[0].gallery_ids, ['b', 'c', 'a'])

    def test_ties_ignore_gallery_position(self):
        gallery = np.array([[1.0, 0.0], [0.0, 1.0], [3.0, 0.0], [2.0, 0.0]])
        result = rank(np.array([[1.0, 0.0]]), gallery, [0], [0, 1, 0, 1], gallery_ids=['s9', 's5', 's2', 's7'])
        self.assertEqual(result[0].gallery_ids, ['s2', 's7', 's9', 's5'])
        np.testing.assert_array_equal(result[0].relevance, [1, 0, 1, 0])

    def test_matches_sort_oracle(self):
        rng = Rng(1)
        queries, gallery = rng.normal((5, 8)), rng.normal((5, 8))
        result = rank(queries, gallery, [0] * 5, [0] * 5)
        for q, ranked_list in enumerate(result):
            expected = sorted(range(5), key=lambda g: (-oracle_cosine(queries[q], gallery[g]), g))
            self.assertEqual(ranked_list.gallery_ids, expected)

    def test_dimension_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            rank(np.ones((1, 3)), np.ones((2, 4)), [0], [0, 0])

    def test_empty_gallery(self):
        with self.assertRaises(ValueError):
            rank(np.ones((1, 3)), np.zeros((0, 3)), [0], [])


class MetricTests(SimpleTestCase):
    def test_average_precision_examples(self):
        self.assertAlmostEqual(average_precision(ranked([1, 0, 1, 0])), 5 / 6, delta=1e-15)
        self.assertEqual(average_precision(ranked([1, 1, 0, 0])), 1.0)
        self.assertEqual(average_precision(ranked([0, 0, 0, 0, 1])), 1 / 5)

    def test_tier_examples(self):
        self.assertEqual(tier_metrics(ranked([0, 1, 0, 1, 0])), (0.0, 0.5, 1.0))
        self.assertEqual(tier_metrics(ranked([1, 1, 1, 0])), (1.0, 1.0, 1.0))

    def test_first_tier_never_exceeds_second_tier(self):
        rng = Rng(2)
        for _ in range(50):
            relevance = (rng.uniform(20) < 0.3).astype(int)
            relevance[int(rng.integers(0, 20))] = 1
            nn, ft, st = tier_metrics(ranked(relevance))
            self.assertLessEqual(ft, st)
            self.assertLessEqual(nn, 1.0)

    def test_e_measure_examples(self):
        self.assertEqual(e_measure(ranked([1] * 16 + [0] * 24)), 2 / 3)
        self.assertEqual(e_measure(ranked([0] * 32 + [1] * 4)), 0.0)
        self.assertEqual(e_measure(ranked([1] * 10)), 1.0)

    def test_dcg_examples(self):
        self.assertEqual(dcg(ranked([1, 1, 0, 0])), 1.0)
        self.assertEqual(dcg(ranked([0, 1, 0, 0])), 1.0)
        self.assertEqual(dcg(ranked([0, 0, 0, 1])), 0.5)

    def test_no_relevant_item(self):
        with self.assertRaises(NoRelevantItemsError):
            average_precision(ranked([0, 0, 0]))

    def test_interpolated_precision(self):
        curve = interpolated_precision(ranked([1, 0, 1, 0]))
        self.assertEqual(len(curve), 11)
        self.assertEqual(curve[0], 1.0)
        self.assertEqual(curve[5], 1.0)
        self.assertEqual(curve[6], 2 / 3)
        self.assertEqual(curve[10], 2 / 3)


class EvaluateTests(SimpleTestCase):
    def test_perfect_retrieval(self):
        # 32 copies per class so the E cutoff of 32 sees exactly the relevant items
        eye = np.eye(3)
        report = evaluate(eye, np.tile(eye, (32, 1)), [0, 1, 2], np.tile([0, 1, 2], 32))
        self.assertEqual(report.summary(), {'NN': 1.0, 'FT': 1.0, 'ST': 1.0, 'E': 1.0, 'DCG': 1.0, 'mAP': 1.0})

    def test_map_is_mean_of_per_query_ap(self):
        rng = Rng(3)
        report = evaluate(rng.normal((7, 4)), rng.normal((30, 4)), rng.integers(0, 3, 7), rng.integers(0, 3, 30))
        self.assertEqual(report.map, math.fsum(report.per_query_ap) / len(report.per_query_ap))

    def test_matches_brute_force_oracle_bitwise(self):
        rng = Rng(4)
        for instance in range(200):
            n_queries, n_gallery = int(rng.integers(1, 11)), int(rng.integers(1, 101))
            classes = int(rng.integers(2, 5))
            queries, gallery = rng.normal((n_queries, 6)), rng.normal((n_gallery, 6))
            qlabels, glabels = rng.integers(0, classes, n_queries), rng.integers(0, classes, n_gallery)
            expected = [oracle_query(queries[q].tolist(), qlabels[q], gallery.tolist(), glabels.tolist())
                        for q in range(n_queries)]
            expected = [metrics for metrics in expected if metrics is not None]
            if not expected:
                with self.assertRaises(NoRelevantItemsError):
                    evaluate(queries, gallery, qlabels, glabels)
                continue
            report = evaluate(queries, gallery, qlabels, glabels)
            with self.subTest(instance=instance):
                self.assertEqual(len(report.per_query), len(expected))
                for name, field in (('nn', 'nn'), ('ft', 'ft'), ('st', 'st'), ('e', 'e'), ('dcg', 'dcg'),
                                    ('ap', 'map')):
                    values = [metrics[name] for metrics in expected]
                    self.assertEqual([getattr(q, name) for q in report.per_query], values)
                    self.assertEqual(getattr(report, field), math.fsum(values) / len(values))

    def test_scale_invariance(self):
        rng = Rng(5)
        queries, gallery = rng.normal((6, 5)), rng.normal((40, 5))
        qlabels, glabels = rng.integers(0, 3, 6), rng.integers(0, 3, 40)
        base = evaluate(queries, gallery, qlabels, glabels).summary()
        for c in (0.5, 3.0, 100.0):
            with self.subTest(c=c):
                self.assertEqual(evaluate(c * queries, gallery, qlabels, glabels).summary(), base)
                self.assertEqual(evaluate(queries, c * gallery, qlabels, glabels).summary(), base)

    def test_random_embeddings_give_chance_level_map(self):
        rng = Rng(6)
        gallery_labels = np.repeat([0, 1], 500)
        report = evaluate(rng.normal((40, 8)), rng.normal((1000, 8)), rng.integers(0, 2, 40), gallery_labels)
        self.assertAlmostEqual(report.map, 0.5, delta=0.05)

    def test_queries_without_relevant_items_are_excluded(self):
        report = evaluate(np.eye(2), np.eye(2), [0, 5], [0, 1], query_ids=['hit', 'orphan'])
        self.assertEqual(report.excluded, ['orphan'])
        self.assertEqual(len(report.per_query), 1)
        self.assertEqual(report.map, 1.0)

    def test_all_queries_excluded(self):
        with self.assertRaises(NoRelevantItemsError):
            evaluate(np.eye(2), np.eye(2), [3, 4], [0, 1])

    def test_report_files(self):
        eye = np.eye(3)
        report = evaluate(eye, eye, [0, 1, 2], [0, 1, 2], query_ids=['a', 'b', 'c'])
        with tempfile.TemporaryDirectory() as directory:
            write_metric_report(directory, report)
            metrics = read_key_values(Path(directory) / METRICS_FILE)
            self.assertEqual(metrics['mAP'], '1.0')
            self.assertEqual(metrics['queries'], '3')
            self.assertEqual(metrics['excluded'], '0')
            per_query = (Path(directory) / PER_QUERY_FILE).read_text(encoding='utf-8').splitlines()
            self.assertEqual(per_query[0], 'query,nn,ft,st,e,dcg,ap')
            self.assertEqual(len(per_query), 4)
            curve = (Path(directory) / PR_CURVE_FILE).read_text(encoding='utf-8').splitlines()
            self.assertEqual(len(curve), 11)
            self.assertEqual(curve[0], '0.0 1.0')
