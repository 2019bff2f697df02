"""Two decoupled training stages.

Stage 1 learns the probabilistic sketch encoder and the class centers with
the uncertainty loss. Stage 2 freezes those centers and trains the shape
encoder with the transfer loss, so shapes land in the sketch embedding space.
Both stages shuffle with the run ``Rng``, keep the last partial batch and
anneal the learning rate once per epoch.
"""

import logging
import time

import numpy as np

from uncertainty_app.error_messages import (CLASS_WITHOUT_SAMPLES_ERROR, EMBEDDING_DIM_ERROR,
                                            EMPTY_DATASET_ERROR, NON_FINITE_LOSS_ERROR,
                                            SHAPE_CLASS_MISMATCH_ERROR, UNFROZEN_CLASSIFIER_ERROR)
from uncertainty_app.exceptions import NonFiniteError, ProtocolError, ShapeMismatchError
from uncertainty_app.losses.margin_loss import MarginParams, transfer_loss
from uncertainty_app.losses.uncertainty_loss import uncertainty_loss
from uncertainty_app.models.model_factory import init_sketch_params
from uncertainty_app.models.shape_model import ShapeEncoder
from uncertainty_app.models.sketch_model import reparameterize
from uncertainty_app.numeric.matrix_ops import cosine_matrix
from uncertainty_app.training.optimizer import sgd_step, zero_velocity
from uncertainty_app.training.report import TrainReport
from uncertainty_app.training.schedule import cosine_lr

logger = logging.getLogger(__name__)

SKETCH_STAGE = 'sketch'
SHAPE_STAGE = 'shape'


def sketch_margin(cfg):
    return MarginParams(s=cfg.s_sketch, m=cfg.m_s)


def shape_margin(cfg):
    return MarginParams(s=cfg.s_shape, m=cfg.m_v)


def sketch_objective(model, classifier, x, labels, eps, margin, lam):
    """Uncertainty loss of one batch for a fixed noise draw ``eps``.

    Returns ``(loss, grads)`` with grads ordered as ``model.parameters() + [W]``.
    """
    embedding, cache = model.forward(x)
    z = reparameterize(embedding, eps)
    result = uncertainty_loss(z, embedding.mu, embedding.logvar, classifier, labels, margin, lam)
    grads = model.backward(cache, result.grads['mu'], result.grads['logvar'])
    return result.loss, grads + [result.grads['W']]


def shape_objective(encoder, classifier, views, labels, margin):
    """Transfer loss of one batch; grads ordered as ``encoder.parameters()``."""
    features, cache = encoder.forward(views)
    result = transfer_loss(features, classifier, labels, margin)
    return result.loss, encoder.backward(cache, result.grads['F'])


def _batches(rng, n_samples, batch_size):
    order = rng.permutation(n_samples)
    for start in range(0, n_samples, batch_size):
        yield order[start:start + batch_size]


def _checked_loss(stage, epoch, batch, compute):
    try:
        loss, grads = compute()
    except NonFiniteError as exc:
        raise NonFiniteError(NON_FINITE_LOSS_ERROR.format(stage=stage, epoch=epoch, batch=batch)) from exc
    if not np.isfinite(loss):
        raise NonFiniteError(NON_FINITE_LOSS_ERROR.format(stage=stage, epoch=epoch, batch=batch))
    return loss, grads


def _run_epochs(stage, n_samples, cfg, rng, params, apply_params, batch_step):
    report = TrainReport(stage=stage, seed=rng.seed)
    velocity = zero_velocity(params)
    started = time.perf_counter()
    for epoch in range(cfg.max_epochs):
        lr = cosine_lr(epoch, cfg.max_epochs, cfg.lr0)
        total = 0.0
        for batch, index in enumerate(_batches(rng, n_samples, cfg.batch_size)):
            loss, grads = _checked_loss(stage, epoch, batch, lambda: batch_step(index))
            params, velocity = sgd_step(params, grads, lr, cfg.momentum, velocity)
            apply_params(params)
            total += loss * len(index)
        report.losses.append(total / n_samples)
        report.lrs.append(lr)
        logger.info("%s epoch %d/%d loss %.6f lr %.3e", stage, epoch + 1, cfg.max_epochs, report.losses[-1], lr)
    report.wall_time = time.perf_counter() - started
    report.parameters = params
    logger.info("%s stage finished in %.2fs", stage, report.wall_time)
    return report


def train_stage1(data, cfg, rng, classes=None):
    """Train the sketch encoder and class centers; return (model, frozen classifier, report)."""
    if len(data) == 0:
        raise ValueError(EMPTY_DATASET_ERROR.format(stage=SKETCH_STAGE))
    labels = np.asarray(data.labels, dtype=np.int64)
    classes = classes or int(labels.max()) + 1
    missing = np.flatnonzero(np.bincount(labels, minlength=classes) == 0)
    if missing.size:
        raise ValueError(CLASS_WITHOUT_SAMPLES_ERROR.format(classes=missing.tolist()))

    model, classifier = init_sketch_params(cfg, rng, data.features.shape[1], classes)
    margin = sketch_margin(cfg)
    split = len(model.parameters())

    def apply_params(params):
        model.set_parameters(params[:split])
        classifier.weight = params[split]

    def batch_step(index):
        eps = rng.normal((len(index), cfg.embed_dim))
        return sketch_objective(model, classifier, data.features[index], labels[index], eps, margin, cfg.lam)

    report = _run_epochs(SKETCH_STAGE, len(data), cfg, rng, model.parameters() + [classifier.weight],
                         apply_params, batch_step)
    frozen = classifier.freeze()
    report.classifier = frozen
    return model, frozen, report


def train_stage2(data, classifier, cfg, rng):
    """Train the shape encoder against the frozen sketch centers; return (encoder, report)."""
    if not classifier.frozen:
        raise ProtocolError(UNFROZEN_CLASSIFIER_ERROR)
    if len(data) == 0:
        raise ValueError(EMPTY_DATASET_ERROR.format(stage=SHAPE_STAGE))
    labels = np.asarray(data.labels, dtype=np.int64)
    unknown = sorted(set(labels.tolist()) - set(range(classifier.classes)))
    if unknown:
        raise ValueError(SHAPE_CLASS_MISMATCH_ERROR.format(labels=unknown, classes=classifier.classes))
    if cfg.embed_dim != classifier.embed_dim:
        raise ShapeMismatchError(EMBEDDING_DIM_ERROR.format(left=cfg.embed_dim, right=classifier.embed_dim))

    encoder = ShapeEncoder.initialise(data.views.shape[2], cfg, rng)
    margin = shape_margin(cfg)

    def batch_step(index):
        return shape_objective(encoder, classifier, data.views[index], labels[index], margin)

    report = _run_epochs(SHAPE_STAGE, len(data), cfg, rng, encoder.parameters(), encoder.set_parameters, batch_step)
    report.classifier = classifier
    return encoder, report


def sketch_accuracy(model, classifier, features, labels):
    """Share of sketches whose mu is closest (cosine) to their own class center."""
    predicted = np.argmax(cosine_matrix(model.embed(features), classifier.weight), axis=1)
    return float(np.mean(predicted == np.asarray(labels)))


def shape_accuracy(encoder, classifier, views, labels):
    predicted = np.argmax(cosine_matrix(encoder.embed(views), classifier.weight), axis=1)
    return float(np.mean(predicted == np.asarray(labels)))
