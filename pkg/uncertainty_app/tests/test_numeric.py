import numpy as np
from django.test import SimpleTestCase

from uncertainty_app.exceptions import NonFiniteError, ShapeMismatchError
from uncertainty_app.numeric import matrix_ops
from uncertainty_app.numeric.grad_check import grad_check
from uncertainty_app.numeric.rng import Rng


class MatrixOpsTests(SimpleTestCase):
    def setUp(self):
        self.rng = Rng(3)

    def test_matmul_rejects_incompatible_shapes(self):
        with self.assertRaises(ShapeMismatchError):
            matrix_ops.matmul(np.ones((2, 3)), np.ones((2, 3)))

    def test_matmul_examples(self):
        m = np.array([[5.0, 6.0], [7.0, 8.0]])
        np.testing.assert_array_equal(matrix_ops.matmul(np.eye(2), m), m)
        np.testing.assert_array_equal(matrix_ops.matmul([[1.0, 2.0], [3.0, 4.0]], [[1.0], [1.0]]), [[3.0], [7.0]])
        with self.assertRaises(ShapeMismatchError):
            matrix_ops.matmul(np.ones((2, 3)), np.ones((2, 2)))

    def test_one_dimensional_input_is_a_row(self):
        self.assertEqual(matrix_ops.as_matrix([1.0, 2.0, 3.0]).shape, (1, 3))

    def test_elementwise_ops_reject_shape_mismatch(self):
        for op in (matrix_ops.add, matrix_ops.sub, matrix_ops.mul):
            with self.assertRaises(ShapeMismatchError):
                op(np.ones((2, 2)), np.ones((2, 3)))

    def test_exp_overflow_is_reported(self):
        with self.assertRaises(NonFiniteError):
            matrix_ops.exp(np.array([[1000.0]]))

    def test_log_of_zero_is_reported(self):
        with self.assertRaises(NonFiniteError):
            matrix_ops.log(np.array([[0.0]]))

    def test_matmul_backward_matches_finite_differences(self):
        a, b = self.rng.normal((3, 4)), self.rng.normal((4, 2))
        upstream = self.rng.normal((3, 2))

        def objective(params):
            out = matrix_ops.matmul(params[0], params[1])
            return float(np.sum(out * upstream)), list(matrix_ops.matmul_backward(params[0], params[1], upstream))

        self.assertLess(grad_check(objective, [a, b], step=1e-6, floor=1e-4), 1e-4)

    def test_elementwise_backward_matches_finite_differences(self):
        a, b = self.rng.normal((3, 4)), self.rng.uniform((3, 4), 0.5, 2.0)
        upstream = self.rng.normal((3, 4))
        cases = {
            'add': lambda p: (matrix_ops.add(p[0], p[1]), list(matrix_ops.add_backward(upstream))),
            'sub': lambda p: (matrix_ops.sub(p[0], p[1]), list(matrix_ops.sub_backward(upstream))),
            'mul': lambda p: (matrix_ops.mul(p[0], p[1]), list(matrix_ops.mul_backward(p[0], p[1], upstream))),
            'exp': lambda p: (matrix_ops.exp(p[0]), [matrix_ops.exp_backward(matrix_ops.exp(p[0]), upstream),
                                                     np.zeros_like(p[1])]),
            'log': lambda p: (matrix_ops.log(p[1]), [np.zeros_like(p[0]), matrix_ops.log_backward(p[1], upstream)]),
        }
        for name, forward in cases.items():
            def objective(params, forward=forward):
                out, grads = forward(params)
                return float(np.sum(out * upstream)), grads

            with self.subTest(op=name):
                self.assertLess(grad_check(objective, [a, b], step=1e-6, floor=1e-4), 1e-4)

    def test_relu_backward_masks_negative_inputs(self):
        a = np.array([[-1.0, 2.0, 0.0]])
        np.testing.assert_array_equal(matrix_ops.relu(a), [[0.0, 2.0, 0.0]])
        np.testing.assert_array_equal(matrix_ops.relu_backward(a, np.ones((1, 3))), [[0.0, 1.0, 0.0]])

    def test_normalized_rows_have_unit_norm(self):
        m = self.rng.normal((5, 7))
        np.testing.assert_allclose(matrix_ops.row_norms(matrix_ops.l2_normalize_rows(m)), 1.0, rtol=1e-12)

    def test_normalization_is_idempotent(self):
        once = matrix_ops.l2_normalize_rows(self.rng.normal((6, 4)))
        np.testing.assert_allclose(matrix_ops.l2_normalize_rows(once), once, rtol=0, atol=1e-12)

    def test_zero_row_survives_normalization(self):
        m = np.array([[0.0, 0.0], [3.0, 4.0]])
        out = matrix_ops.l2_normalize_rows(m)
        np.testing.assert_array_equal(out[0], [0.0, 0.0])
        np.testing.assert_allclose(out[1], [0.6, 0.8])

    def test_normalize_backward_matches_finite_differences(self):
        m = self.rng.normal((4, 5))
        upstream = self.rng.normal((4, 5))

        def objective(params):
            out = matrix_ops.l2_normalize_rows(params[0])
            return float(np.sum(out * upstream)), [matrix_ops.l2_normalize_rows_backward(params[0], upstream)]

        self.assertLess(grad_check(objective, [m], step=1e-6, floor=1e-4), 1e-4)

    def test_cosine_matrix_is_bounded_and_checks_columns(self):
        cos = matrix_ops.cosine_matrix(self.rng.normal((6, 3)), self.rng.normal((4, 3)))
        self.assertEqual(cos.shape, (6, 4))
        self.assertTrue(np.all(np.abs(cos) <= 1.0))
        with self.assertRaises(ShapeMismatchError):
            matrix_ops.cosine_matrix(np.ones((2, 3)), np.ones((2, 4)))

    def test_cosine_example(self):
        cos = matrix_ops.cosine_matrix([[1.0, 1.0]], [[1.0, 0.0]])
        self.assertAlmostEqual(float(cos[0, 0]), 1 / np.sqrt(2.0), places=12)

    def test_cosine_of_parallel_rows_is_one(self):
        a = np.array([[1.0, 2.0, 2.0]])
        self.assertAlmostEqual(float(matrix_ops.cosine_matrix(a, 5 * a)[0, 0]), 1.0, places=12)


class RngTests(SimpleTestCase):
    def test_same_seed_gives_identical_streams(self):
        first, second = Rng(11), Rng(11)
        np.testing.assert_array_equal(first.normal((3, 5)), second.normal((3, 5)))
        np.testing.assert_array_equal(first.uniform(4), second.uniform(4))
        np.testing.assert_array_equal(first.permutation(9), second.permutation(9))

    def test_different_seeds_differ(self):
        self.assertFalse(np.array_equal(Rng(1).uniform(8), Rng(2).uniform(8)))

    def test_normal_draws_have_requested_shape_and_moments(self):
        draws = Rng(0).normal((200, 50))
        self.assertEqual(draws.shape, (200, 50))
        self.assertTrue(np.all(np.isfinite(draws)))
        self.assertAlmostEqual(float(draws.mean()), 0.0, delta=0.03)
        self.assertAlmostEqual(float(draws.std()), 1.0, delta=0.03)

    def test_million_draw_moments(self):
        draws = Rng(2024).normal((1000, 1000))
        self.assertAlmostEqual(float(draws.mean()), 0.0, delta=0.02)
        self.assertAlmostEqual(float(draws.var()), 1.0, delta=0.05)

    def test_odd_normal_request(self):
        self.assertEqual(Rng(0).normal(7).shape, (7,))

    def test_uniform_range(self):
        draws = Rng(5).uniform(1000, -2.0, 3.0)
        self.assertTrue(np.all((draws >= -2.0) & (draws < 3.0)))


class GradCheckTests(SimpleTestCase):
    def test_correct_gradient_passes(self):
        x = np.array([[0.5, -1.2, 2.0], [1.5, -0.7, 0.9]])

        def objective(params):
            return float(np.sum(params[0] ** 3)), [3 * params[0] ** 2]

        self.assertLess(grad_check(objective, [x], step=1e-6), 1e-6)

    def test_wrong_gradient_is_detected(self):
        x = Rng(1).normal((2, 2))

        def objective(params):
            return float(np.sum(params[0] ** 2)), [params[0]]

        self.assertGreater(grad_check(objective, [x]), 0.1)

    def test_step_must_be_positive(self):
        with self.assertRaises(ValueError):
            grad_check(lambda params: (0.0, [np.zeros(1)]), [np.zeros(1)], step=0.0)

    def test_non_finite_objective_is_reported(self):
        def objective(params):
            value = float(np.log(params[0][0])) if params[0][0] > 0 else float('nan')
            return value, [1.0 / params[0]]

        with self.assertRaises(NonFiniteError):
            grad_check(objective, [np.array([1e-7])], step=1e-6)

    def test_inputs_are_not_modified(self):
        x = np.array([[1.0, 2.0]])
        grad_check(lambda params: (float(np.sum(params[0] ** 2)), [2 * params[0]]), [x])
        np.testing.assert_array_equal(x, [[1.0, 2.0]])
