from dataclasses import dataclass

import numpy as np

from uncertainty_app.error_messages import CLASSIFIER_SIZE_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.models.backbone_model import Linear


@dataclass
class Classifier:
    """Class centers w_1..w_C as the rows of ``weight``; unnormalized, normalized inside the losses."""
    weight: np.ndarray
    frozen: bool = False

    def __post_init__(self):
        self.weight = np.array(self.weight, dtype=np.float64, copy=self.frozen)
        if self.weight.ndim != 2 or self.weight.shape[0] < 2:
            raise ShapeMismatchError(CLASSIFIER_SIZE_ERROR.format(classes=self.weight.shape[0]))
        if self.frozen:
            self.weight.setflags(write=False)

    @classmethod
    def initialise(cls, classes, embed_dim, rng):
        return cls(weight=Linear.initialise(embed_dim, classes, rng).weight)

    @property
    def classes(self):
        return self.weight.shape[0]

    @property
    def embed_dim(self):
        return self.weight.shape[1]

    def freeze(self):
        """Read-only copy: the centers cannot change for the rest of the pipeline."""
        return Classifier(weight=self.weight.copy(), frozen=True)
