import logging

import numpy as np

from uncertainty_app.error_messages import GRADCHECK_STEP_ERROR, NON_FINITE_VALUE_ERROR
from uncertainty_app.exceptions import NonFiniteError

logger = logging.getLogger(__name__)


def _value(f, params):
    value, _ = f(params)
    value = float(value)
    if not np.isfinite(value):
        raise NonFiniteError(NON_FINITE_VALUE_ERROR.format(where='grad_check objective'))
    return value


def grad_check(f, params, step=1e-5, floor=1e-12):
    """Compare the analytic gradient of ``f`` with central differences.

    ``f(params)`` must return ``(value, grads)`` where ``grads`` lists one array
    per parameter, shaped like it. Returns the largest entrywise
    ``|d| / (|g| + |d| + floor)`` with ``d`` the difference between the
    numerical and the analytic gradient ``g``.
    """
    if step <= 0:
        raise ValueError(GRADCHECK_STEP_ERROR.format(step=step))
    params = [np.array(p, dtype=np.float64) for p in params]
    _, analytic = f(params)
    worst = 0.0
    for index, param in enumerate(params):
        flat = param.reshape(-1)
        grad = np.asarray(analytic[index], dtype=np.float64).reshape(-1)
        for k in range(flat.size):
            original = flat[k]
            flat[k] = original + step
            upper = _value(f, params)
            flat[k] = original - step
            lower = _value(f, params)
            flat[k] = original
            numeric = (upper - lower) / (2.0 * step)
            diff = abs(numeric - grad[k])
            worst = max(worst, diff / (abs(grad[k]) + diff + floor))
    logger.debug("grad_check over %d parameter arrays: max relative error %.3e", len(params), worst)
    return worst
