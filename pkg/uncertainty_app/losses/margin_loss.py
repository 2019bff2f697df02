"""Large margin cosine loss and its frozen-center variant used for shape transfer.

For normalized embeddings x_i and class centers w_j the loss is

    -1/N sum_i log( e^{s(cos_{i,y_i} - m)} / (e^{s(cos_{i,y_i} - m)} + sum_{j != y_i} e^{s cos_{i,j}}) )

evaluated with a row-max shift (log-sum-exp) because s * cos reaches 30.
"""

from dataclasses import dataclass, field

import numpy as np

from uncertainty_app.error_messages import (EMBEDDING_DIM_ERROR, EMPTY_BATCH_ERROR,
                                            LABEL_RANGE_ERROR, MARGIN_RANGE_ERROR,
                                            SCALE_RANGE_ERROR, UNFROZEN_CLASSIFIER_ERROR)
from uncertainty_app.exceptions import ProtocolError, ShapeMismatchError
from uncertainty_app.numeric.matrix_ops import (as_matrix, ensure_finite, l2_normalize_rows,
                                                l2_normalize_rows_backward)


@dataclass(frozen=True)
class MarginParams:
    s: float
    m: float

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError(SCALE_RANGE_ERROR.format(scale=self.s))
        if not 0.0 <= self.m < 1.0:
            raise ValueError(MARGIN_RANGE_ERROR.format(margin=self.m))


SKETCH_MARGIN = MarginParams(s=30.0, m=0.5)
SHAPE_MARGIN = MarginParams(s=15.0, m=0.8)


@dataclass
class LossResult:
    loss: float
    grads: dict = field(default_factory=dict)


def check_labels(labels, n_samples, classes):
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    if n_samples == 0:
        raise ValueError(EMPTY_BATCH_ERROR)
    if labels.size != n_samples:
        raise ShapeMismatchError(EMBEDDING_DIM_ERROR.format(left=n_samples, right=labels.size))
    bad = labels[(labels < 0) | (labels >= classes)]
    if bad.size:
        raise ValueError(LABEL_RANGE_ERROR.format(label=int(bad[0]), classes=classes))
    return labels


def margin_cosine_loss(X, weight, labels, params):
    """Loss value plus gradients with respect to ``X`` (N x D) and ``weight`` (C x D)."""
    X = as_matrix(X)
    n_samples = X.shape[0]
    labels = check_labels(labels, n_samples, weight.shape[0])
    if X.shape[1] != weight.shape[1]:
        raise ShapeMismatchError(EMBEDDING_DIM_ERROR.format(left=X.shape[1], right=weight.shape[1]))

    x_unit = l2_normalize_rows(X)
    w_unit = l2_normalize_rows(weight)
    rows = np.arange(n_samples)
    logits = params.s * (x_unit @ w_unit.T)
    logits[rows, labels] -= params.s * params.m

    shifted = logits - logits.max(axis=1, keepdims=True)
    exp_shifted = np.exp(shifted)
    denom = exp_shifted.sum(axis=1)
    loss = float(np.mean(np.log(denom) - shifted[rows, labels]))

    dlogits = exp_shifted / denom[:, None]
    dlogits[rows, labels] -= 1.0
    dcos = dlogits * (params.s / n_samples)
    dX = l2_normalize_rows_backward(X, dcos @ w_unit)
    dW = l2_normalize_rows_backward(weight, dcos.T @ x_unit)
    ensure_finite(np.array([[loss]]), 'margin cosine loss')
    return loss, dX, dW


def lmcl(Z, classifier, labels, params=SKETCH_MARGIN):
    loss, dZ, dW = margin_cosine_loss(Z, classifier.weight, labels, params)
    return LossResult(loss=loss, grads={'Z': dZ, 'W': dW})


def transfer_loss(F, classifier, labels, params=SHAPE_MARGIN):
    """Same formula as ``lmcl`` on shape embeddings against frozen sketch centers.

    The centers never receive a gradient: ``grads['W']`` is an exact zero matrix.
    """
    if not classifier.frozen:
        raise ProtocolError(UNFROZEN_CLASSIFIER_ERROR)
    loss, dF, _ = margin_cosine_loss(F, classifier.weight, labels, params)
    return LossResult(loss=loss, grads={'F': dF, 'W': np.zeros_like(classifier.weight)})
