import math

from uncertainty_app.error_messages import EPOCH_RANGE_ERROR


def cosine_lr(t, T, lr0):
    """Epoch-level cosine annealing from ``lr0`` at t=0 down to 0 at t=T."""
    if not 0 <= t <= T:
        raise ValueError(EPOCH_RANGE_ERROR.format(epoch=t, total=T))
    return lr0 * 0.5 * (1.0 + math.cos(math.pi * t / T))
