from dataclasses import dataclass, field, fields

import numpy as np

SKETCH = 'sketch'
SHAPE = 'shape'
TRAIN = 'train'
TEST = 'test'
SPLITS = (TRAIN, TEST)
MODALITIES = (SKETCH, SHAPE)
NOISE_MODES = ('ambiguous', 'label')


@dataclass(frozen=True)
class Manifest:
    classes: int
    dim: int
    views: int
    n_train: int
    n_test: int
    n_shape_train: int
    n_shape_test: int
    noise_frac: float
    noise_mode: str
    seed: int

    def to_key_values(self):
        pairs = []
        for f in fields(self):
            value = getattr(self, f.name)
            pairs.append((f.name, repr(value) if isinstance(value, float) else str(value)))
        return pairs

    def expected_count(self, modality, split):
        per_class = {
            (SKETCH, TRAIN): self.n_train,
            (SKETCH, TEST): self.n_test,
            (SHAPE, TRAIN): self.n_shape_train,
            (SHAPE, TEST): self.n_shape_test,
        }[(modality, split)]
        return per_class * self.classes


@dataclass(frozen=True, eq=False)
class SampleRecord:
    """One labelled sample; ``payload`` is ``(views, dim)``, a single row for sketches."""
    id: str
    label: int
    split: str
    modality: str
    payload: np.ndarray
    noisy: bool = False

    def __eq__(self, other):
        if not isinstance(other, SampleRecord):
            return NotImplemented
        return ((self.id, self.label, self.split, self.modality, self.noisy)
                == (other.id, other.label, other.split, other.modality, other.noisy)
                and self.payload.shape == other.payload.shape
                and np.array_equal(self.payload, other.payload))

    __hash__ = None


@dataclass
class SketchSet:
    ids: list
    features: np.ndarray  # N x dim
    labels: np.ndarray
    noisy: np.ndarray

    def __len__(self):
        return len(self.ids)


@dataclass
class ShapeSet:
    ids: list
    views: np.ndarray  # N x V x dim
    labels: np.ndarray

    def __len__(self):
        return len(self.ids)


@dataclass
class Dataset:
    manifest: Manifest
    records: list = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.manifest == other.manifest and self.records == other.records

    def select(self, modality, split=None):
        return [r for r in self.records if r.modality == modality and (split is None or r.split == split)]

    def sketches(self, split=None):
        records = self.select(SKETCH, split)
        dim = self.manifest.dim
        return SketchSet(
            ids=[r.id for r in records],
            features=np.array([r.payload[0] for r in records]).reshape(len(records), dim),
            labels=np.array([r.label for r in records], dtype=np.int64),
            noisy=np.array([r.noisy for r in records], dtype=bool),
        )

    def shapes(self, split=None):
        records = self.select(SHAPE, split)
        return ShapeSet(
            ids=[r.id for r in records],
            views=np.array([r.payload for r in records]).reshape(len(records), self.manifest.views, self.manifest.dim),
            labels=np.array([r.label for r in records], dtype=np.int64),
        )
