"""Dense float64 matrix helpers with hand-written backward passes.

A "matrix" here is a 2-D ``numpy.ndarray`` of dtype float64. Every public
function returns finite values or raises ``NonFiniteError``. Backward helpers
take the upstream gradient ``dout`` and return the gradient with respect to
each input, in argument order.
"""

import numpy as np

from uncertainty_app.error_messages import (COLUMN_MISMATCH_ERROR,
                                            ELEMENTWISE_SHAPE_ERROR,
                                            MATMUL_SHAPE_ERROR,
                                            NON_FINITE_VALUE_ERROR,
                                            NOT_A_MATRIX_ERROR)
from uncertainty_app.exceptions import NonFiniteError, ShapeMismatchError

NORM_EPS = 1e-12


def as_matrix(values):
    m = np.asarray(values, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise ShapeMismatchError(NOT_A_MATRIX_ERROR.format(ndim=m.ndim))
    return m


def ensure_finite(m, where):
    if not np.all(np.isfinite(m)):
        raise NonFiniteError(NON_FINITE_VALUE_ERROR.format(where=where))
    return m


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeMismatchError(ELEMENTWISE_SHAPE_ERROR.format(left=a.shape, right=b.shape))


def matmul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatchError(MATMUL_SHAPE_ERROR.format(left=a.shape, right=b.shape))
    return ensure_finite(a @ b, 'matmul')


def matmul_backward(a, b, dout):
    return dout @ b.T, a.T @ dout


def add(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b)
    return ensure_finite(a + b, 'add')


def add_backward(dout):
    return dout, dout


def sub(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b)
    return ensure_finite(a - b, 'sub')


def sub_backward(dout):
    return dout, -dout


def mul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b)
    return ensure_finite(a * b, 'mul')


def mul_backward(a, b, dout):
    return dout * b, dout * a


def exp(a):
    with np.errstate(over='ignore'):
        return ensure_finite(np.exp(as_matrix(a)), 'exp')


def exp_backward(out, dout):
    # d/dx exp(x) is the forward output itself.
    return dout * out


def log(a):
    a = as_matrix(a)
    with np.errstate(divide='ignore', invalid='ignore'):
        return ensure_finite(np.log(a), 'log')


def log_backward(a, dout):
    return dout / a


def relu(a):
    return np.maximum(as_matrix(a), 0.0)


def relu_backward(a, dout):
    return dout * (a > 0)


def row_norms(m):
    return np.sqrt(np.sum(m * m, axis=1, keepdims=True))


def l2_normalize_rows(m, eps=NORM_EPS):
    """Divide every row by ``max(||row||, eps)``; zero rows come back unchanged."""
    m = as_matrix(m)
    return ensure_finite(m / np.maximum(row_norms(m), eps), 'l2_normalize_rows')


def l2_normalize_rows_backward(m, dout, eps=NORM_EPS):
    norms = row_norms(m)
    guarded = np.maximum(norms, eps)
    unit = m / guarded
    projected = dout - unit * np.sum(dout * unit, axis=1, keepdims=True)
    # Rows below eps were divided by the constant eps, so no projection term.
    return np.where(norms >= eps, projected, dout) / guarded


def cosine_matrix(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[1]:
        raise ShapeMismatchError(COLUMN_MISMATCH_ERROR.format(left=a.shape, right=b.shape))
    cos = l2_normalize_rows(a) @ l2_normalize_rows(b).T
    return ensure_finite(np.clip(cos, -1.0, 1.0), 'cosine_matrix')
