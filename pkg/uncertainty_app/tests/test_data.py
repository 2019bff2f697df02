import tempfile
from pathlib import Path

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError

from uncertainty_app.data.dataset import SHAPE, SKETCH, TEST, TRAIN
from uncertainty_app.data.dataset_io import (MANIFEST_FILE, NOISY_FILE, SHAPE_FILE, SKETCH_FILE, load_dataset,
                                             save_dataset)
from uncertainty_app.data.feature_csv import FeatureRow, read_feature_csv, read_feature_header, write_feature_csv
from uncertainty_app.data.generator import draw_prototypes, generate
from uncertainty_app.data.key_value_io import parse_key_values, read_key_values
from uncertainty_app.exceptions import DataFormatError, InfeasibleDataError
from uncertainty_app.models.train_config_model import TrainConfig
from uncertainty_app.numeric.matrix_ops import cosine_matrix
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.serializers.manifest_serializer import load_manifest
from uncertainty_app.serializers.train_config_serializer import load_train_config


def small_dataset(seed=0, noise_frac=0.2, noise_mode='ambiguous'):
    return generate(3, 5, 2, 4, 3, noise_frac, noise_mode, Rng(seed), n_shape_train=2, n_shape_test=1)


class KeyValueTests(SimpleTestCase):
    def test_comments_and_blank_lines(self):
        values = parse_key_values(['# comment', '', 'embed_dim = 16', 'hidden_dims=8,8'])
        self.assertEqual(values, {'embed_dim': '16', 'hidden_dims': '8,8'})

    def test_malformed_line_reports_its_number(self):
        with self.assertRaises(DataFormatError) as caught:
            parse_key_values(['embed_dim=16', 'oops'], path='cfg')
        self.assertEqual(caught.exception.line, 2)
        self.assertIn('line 2', str(caught.exception))


class TrainConfigSerializerTests(SimpleTestCase):
    def test_overrides_defaults(self):
        cfg = load_train_config({'embed_dim': '16', 'hidden_dims': '32,16', 'lambda': '0.01', 'momentum': '0.9'})
        self.assertEqual(cfg.embed_dim, 16)
        self.assertEqual(cfg.hidden_dims, (32, 16))
        self.assertEqual(cfg.lam, 0.01)
        self.assertEqual(cfg.momentum, 0.9)
        self.assertEqual(cfg.batch_size, TrainConfig().batch_size)

    def test_keeps_base_values(self):
        base = TrainConfig(max_epochs=7)
        self.assertEqual(load_train_config({'seed': '3'}, base=base), TrainConfig(max_epochs=7, seed=3))

    def test_round_trip_through_key_values(self):
        cfg = TrainConfig(embed_dim=8, hidden_dims=(5,), head_hidden_dims=(4, 3), lr0=0.01, lam=0.0)
        self.assertEqual(load_train_config(dict(cfg.to_key_values())), cfg)

    def test_invalid_values(self):
        for values in ({'m_s': '1.0'}, {'m_v': '-0.1'}, {'lambda': '-1'}, {'batch_size': '0'},
                       {'hidden_dims': ''}, {'hidden_dims': '8,x'}, {'s_sketch': '0'}, {'unknown': '1'}):
            with self.subTest(values=values):
                with self.assertRaises(ValidationError):
                    load_train_config(values)

    def test_desk_config_file(self):
        cfg = load_train_config(read_key_values(Path(settings.BASE_DIR) / 'config' / 'desk.cfg'))
        self.assertEqual((cfg.embed_dim, cfg.hidden_dims, cfg.batch_size, cfg.max_epochs), (32, (64, 64), 64, 60))
        self.assertEqual((cfg.lr0, cfg.momentum), (0.01, 0.9))

    def test_uncertainty_config_file(self):
        cfg = load_train_config(read_key_values(Path(settings.BASE_DIR) / 'config' / 'uncertainty.cfg'))
        desk = load_train_config(read_key_values(Path(settings.BASE_DIR) / 'config' / 'desk.cfg'))
        self.assertEqual(cfg.lam, 2.56)
        self.assertEqual(cfg.with_overrides(lam=desk.lam), desk)


class ManifestSerializerTests(SimpleTestCase):
    def test_rejects_bad_manifest(self):
        valid = {'classes': 3, 'dim': 4, 'views': 2, 'n_train': 5, 'n_test': 2, 'n_shape_train': 2,
                 'n_shape_test': 1, 'noise_frac': 0.1, 'noise_mode': 'ambiguous', 'seed': 0}
        self.assertEqual(load_manifest(valid).classes, 3)
        for key, value in (('classes', 1), ('noise_frac', 1.5), ('noise_mode', 'other'), ('n_train', 0)):
            with self.subTest(key=key):
                with self.assertRaises(ValidationError):
                    load_manifest({**valid, key: value})


class GeneratorTests(SimpleTestCase):
    def test_counts_and_order(self):
        dataset = small_dataset()
        manifest = dataset.manifest
        for modality in (SKETCH, SHAPE):
            for split in (TRAIN, TEST):
                self.assertEqual(len(dataset.select(modality, split)), manifest.expected_count(modality, split))
        self.assertEqual(dataset.records[0].id, 'sketch-train-000-0000')
        self.assertEqual(dataset.shapes(TRAIN).views.shape, (6, 3, 4))

    def test_noisy_count_per_class(self):
        sketches = small_dataset(noise_frac=0.2).sketches(TRAIN)
        for label in range(3):
            self.assertEqual(int(sketches.noisy[sketches.labels == label].sum()), 1)

    def test_no_noise(self):
        self.assertFalse(small_dataset(noise_frac=0.0).sketches().noisy.any())

    def test_same_seed_same_dataset(self):
        self.assertEqual(small_dataset(5), small_dataset(5))
        self.assertNotEqual(small_dataset(5), small_dataset(6))

    def test_prototypes_are_separated(self):
        prototypes = draw_prototypes(10, 16, Rng(0))
        cos = cosine_matrix(prototypes, prototypes)
        np.fill_diagonal(cos, 0.0)
        self.assertLess(cos.max(), 0.5)

    def test_clean_sketches_cluster_by_class(self):
        sketches = generate(10, 50, 30, 16, 12, 0.0, rng=Rng(0)).sketches(TRAIN)
        cos = cosine_matrix(sketches.features, sketches.features)
        labels = np.asarray(sketches.labels)
        same = labels[:, None] == labels[None, :]
        np.fill_diagonal(same, False)
        different = labels[:, None] != labels[None, :]
        self.assertGreater(cos[same].mean(), cos[different].mean() + 0.2)

    def test_infeasible_prototypes(self):
        with self.assertRaises(InfeasibleDataError):
            draw_prototypes(10, 1, Rng(0))

    def test_label_noise_keeps_the_label(self):
        dataset = small_dataset(noise_mode='label', noise_frac=0.4)
        noisy = [r for r in dataset.select(SKETCH) if r.noisy]
        self.assertTrue(noisy)
        self.assertTrue(all(0 <= r.label < 3 for r in noisy))

    def test_invalid_parameters(self):
        with self.assertRaises(ValidationError):
            generate(1, 5, 2, 4, 3, 0.0)


class DatasetFileTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.path = Path(self.directory.name)

    def test_round_trip_is_exact(self):
        dataset = small_dataset()
        save_dataset(dataset, self.path)
        self.assertEqual(load_dataset(self.path), dataset)

    def test_layout(self):
        save_dataset(small_dataset(), self.path)
        for name in (MANIFEST_FILE, SKETCH_FILE, SHAPE_FILE, NOISY_FILE):
            self.assertTrue((self.path / name).is_file())
        header = (self.path / SHAPE_FILE).read_text(encoding='utf-8').splitlines()[0]
        self.assertEqual(header, 'id,label,split,modality,dim=4,views=3')

    def test_bad_number_reports_line(self):
        save_dataset(small_dataset(), self.path)
        lines = (self.path / SKETCH_FILE).read_text(encoding='utf-8').splitlines()
        cells = lines[3].split(',')
        cells[5] = 'abc'
        lines[3] = ','.join(cells)
        (self.path / SKETCH_FILE).write_text('\n'.join(lines) + '\n', encoding='utf-8')
        with self.assertRaises(DataFormatError) as caught:
            load_dataset(self.path)
        self.assertEqual(caught.exception.line, 4)

    def test_missing_row_is_detected(self):
        save_dataset(small_dataset(), self.path)
        lines = (self.path / SHAPE_FILE).read_text(encoding='utf-8').splitlines()
        (self.path / SHAPE_FILE).write_text('\n'.join(lines[:-1]) + '\n', encoding='utf-8')
        with self.assertRaises(DataFormatError):
            load_dataset(self.path)

    def test_header_mismatch(self):
        save_dataset(small_dataset(), self.path)
        text = (self.path / SKETCH_FILE).read_text(encoding='utf-8')
        (self.path / SKETCH_FILE).write_text(text.replace('dim=4', 'dim=5', 1), encoding='utf-8')
        with self.assertRaises(DataFormatError):
            load_dataset(self.path)

    def test_unreadable_noisy_flags(self):
        save_dataset(small_dataset(), self.path)
        (self.path / NOISY_FILE).write_text('id,noisy\n' + 'a' * 200_000 + ',1\n', encoding='utf-8')
        with self.assertRaises(DataFormatError) as caught:
            load_dataset(self.path)
        self.assertEqual(caught.exception.line, 2)

    def test_missing_manifest(self):
        with self.assertRaises(DataFormatError):
            load_dataset(self.path)


class FeatureCsvTests(SimpleTestCase):
    def test_duplicate_id(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'e.csv'
            rows = [FeatureRow('x', 0, TEST, SKETCH, np.zeros(2)), FeatureRow('x', 1, TEST, SKETCH, np.ones(2))]
            write_feature_csv(path, rows, 2)
            with self.assertRaises(DataFormatError) as caught:
                read_feature_csv(path)
        self.assertEqual(caught.exception.line, 3)

    def test_values_survive_exactly(self):
        values = Rng(0).normal((1, 3)) / 7
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'e.csv'
            write_feature_csv(path, [FeatureRow('x', 0, TEST, SHAPE, values)], 3)
            table = read_feature_csv(path)
        np.testing.assert_array_equal(table.matrix(), values)
        np.testing.assert_array_equal(table.labels(), [0])

    def test_oversized_field_reports_line(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'e.csv'
            path.write_text('id,label,split,modality,dim=2,views=1\n'
                            f'x,0,test,sketch,1.0,{"9" * 200_000}\n', encoding='utf-8')
            with self.assertRaises(DataFormatError) as caught:
                read_feature_csv(path)
        self.assertEqual(caught.exception.line, 2)

    def test_oversized_header(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'e.csv'
            path.write_text('id,' + 'x' * 200_000 + '\n', encoding='utf-8')
            with self.assertRaises(DataFormatError) as caught:
                read_feature_header(path)
        self.assertEqual(caught.exception.line, 1)
