import numpy as np

from uncertainty_app.error_messages import ELEMENTWISE_SHAPE_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.losses.margin_loss import LossResult
from uncertainty_app.numeric.matrix_ops import as_matrix, ensure_finite


def kl_gaussian(mu, logvar):
    """KL(N(mu, sigma^2 I) || N(0, I)), averaged over dimensions and then over samples.

    Per entry: -1/2 (1 + log sigma^2 - mu^2 - sigma^2).
    """
    mu, logvar = as_matrix(mu), as_matrix(logvar)
    if mu.shape != logvar.shape:
        raise ShapeMismatchError(ELEMENTWISE_SHAPE_ERROR.format(left=mu.shape, right=logvar.shape))
    var = np.exp(logvar)
    terms = -0.5 * (1.0 + logvar - mu * mu - var)
    loss = float(np.mean(np.mean(terms, axis=1)))
    count = mu.size
    grads = {
        'mu': mu / count,
        'logvar': -0.5 * (1.0 - var) / count,
    }
    ensure_finite(terms, 'kl_gaussian')
    return LossResult(loss=loss, grads=grads)
