from dataclasses import dataclass

from uncertainty_app.models.classifier_model import Classifier
from uncertainty_app.models.shape_model import ShapeEncoder
from uncertainty_app.models.sketch_model import SketchEncoder


@dataclass
class ModelParams:
    sketch: SketchEncoder
    classifier: Classifier
    shape: ShapeEncoder


def init_sketch_params(cfg, rng, input_dim, classes):
    sketch = SketchEncoder.initialise(input_dim, cfg, rng)
    return sketch, Classifier.initialise(classes, cfg.embed_dim, rng)


def init_params(cfg, rng, input_dim, classes):
    """Initialise every parameter of both stages, always in the same draw order."""
    sketch, classifier = init_sketch_params(cfg, rng, input_dim, classes)
    return ModelParams(sketch=sketch, classifier=classifier, shape=ShapeEncoder.initialise(input_dim, cfg, rng))
