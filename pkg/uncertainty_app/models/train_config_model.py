from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of both training stages.

    Defaults are the published ones (batch 64, lr 4e-4 with cosine annealing,
    200 epochs, s=30/m_s=0.5 for sketches, s=15/m_v=0.8 for shapes,
    lambda=0.005) at the desk-scale embedding size D=32.
    """
    embed_dim: int = 32
    hidden_dims: tuple = (64, 64)
    head_hidden_dims: tuple = ()
    batch_size: int = 64
    lr0: float = 4e-4
    max_epochs: int = 200
    s_sketch: float = 30.0
    m_s: float = 0.5
    s_shape: float = 15.0
    m_v: float = 0.8
    lam: float = 0.005
    momentum: float = 0.0
    seed: int = 0
    views: int = 12

    # Config files spell ``lam`` as ``lambda``.
    FILE_KEYS = {'lam': 'lambda'}

    def with_overrides(self, **changes):
        return replace(self, **{key: value for key, value in changes.items() if value is not None})

    def to_key_values(self):
        pairs = []
        for field in fields(self):
            value = getattr(self, field.name)
            if isinstance(value, tuple):
                text = ','.join(str(v) for v in value)
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            pairs.append((self.FILE_KEYS.get(field.name, field.name), text))
        return pairs

    def __str__(self):
        return ' '.join(f'{key}={value}' for key, value in self.to_key_values())
