import numpy as np

from uncertainty_app.error_messages import ELEMENTWISE_SHAPE_ERROR, NEGATIVE_LR_ERROR, PARAM_COUNT_ERROR
from uncertainty_app.exceptions import ShapeMismatchError


# Plain SGD with optional momentum over lists of numpy arrays. The trainer keeps
# the velocity between steps and passes it back in.
def zero_velocity(params):
    return [np.zeros_like(p) for p in params]


def sgd_step(params, grads, lr, momentum=0.0, velocity=None):
    """One SGD update: v <- momentum * v + g, p <- p - lr * v.

    Returns new parameter and velocity lists; the inputs are left untouched.
    """
    if lr < 0:
        raise ValueError(NEGATIVE_LR_ERROR.format(lr=lr))
    if len(params) != len(grads):
        raise ShapeMismatchError(PARAM_COUNT_ERROR.format(params=len(params), grads=len(grads)))
    velocity = zero_velocity(params) if velocity is None else velocity
    new_params, new_velocity = [], []
    for p, g, v in zip(params, grads, velocity):
        if np.shape(p) != np.shape(g) or np.shape(p) != np.shape(v):
            raise ShapeMismatchError(ELEMENTWISE_SHAPE_ERROR.format(left=np.shape(p), right=np.shape(g)))
        v = momentum * v + g
        new_velocity.append(v)
        new_params.append(p - lr * v)
    return new_params, new_velocity
