import logging
from dataclasses import dataclass

from uncertainty_app.data.dataset import TEST, TRAIN
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.retrieval.evaluation import evaluate
from uncertainty_app.training.trainer import train_stage1, train_stage2

logger = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    sketch_model: object
    classifier: object
    shape_encoder: object
    sketch_report: object
    shape_report: object
    metrics: object


def run_pipeline(dataset, cfg):
    """Both stages, then test sketches as queries against the test shapes.

    Each stage gets its own ``Rng(cfg.seed)``, as the separate
    ``train-sketch`` and ``train-shape`` commands do.
    """
    sketches = dataset.sketches(TRAIN)
    model, classifier, sketch_report = train_stage1(sketches, cfg, Rng(cfg.seed), classes=dataset.manifest.classes)
    encoder, shape_report = train_stage2(dataset.shapes(TRAIN), classifier, cfg, Rng(cfg.seed))
    queries, gallery = dataset.sketches(TEST), dataset.shapes(TEST)
    metrics = evaluate(model.embed(queries.features), encoder.embed(gallery.views), queries.labels, gallery.labels,
                       queries.ids, gallery.ids)
    return PipelineResult(model, classifier, encoder, sketch_report, shape_report, metrics)


@dataclass
class AblationRow:
    seed: int
    map_with_uncertainty: float
    map_without_uncertainty: float


def run_ablation(dataset, cfg, seeds):
    """Cross-modal test mAP with the uncertainty loss (cfg.lam) and with lambda = 0, per seed."""
    rows = []
    for seed in seeds:
        with_uncertainty = run_pipeline(dataset, cfg.with_overrides(seed=seed)).metrics.map
        plain = run_pipeline(dataset, cfg.with_overrides(seed=seed, lam=0.0)).metrics.map
        logger.info("seed %d: mAP %.4f with uncertainty, %.4f without", seed, with_uncertainty, plain)
        rows.append(AblationRow(seed, with_uncertainty, plain))
    return rows
