from uncertainty_app.error_messages import NEGATIVE_LAMBDA_ERROR
from uncertainty_app.losses.kl_loss import kl_gaussian
from uncertainty_app.losses.margin_loss import SKETCH_MARGIN, LossResult, lmcl
from uncertainty_app.numeric.matrix_ops import as_matrix

DEFAULT_LAMBDA = 0.005


def uncertainty_loss(Z, mu, logvar, classifier, labels, params=SKETCH_MARGIN, lam=DEFAULT_LAMBDA):
    """L_lmc(Z) + lam * L_kl(mu, logvar) for Z = mu + eps * exp(logvar / 2).

    ``grads['mu']`` and ``grads['logvar']`` are total derivatives: they include
    the path through Z (dZ/dmu = 1, dZ/dlogvar = (Z - mu) / 2) as well as the
    KL term. ``grads['Z']`` is the LMCL part alone.
    """
    if lam < 0:
        raise ValueError(NEGATIVE_LAMBDA_ERROR.format(value=lam))
    Z, mu, logvar = as_matrix(Z), as_matrix(mu), as_matrix(logvar)
    margin = lmcl(Z, classifier, labels, params)
    kl = kl_gaussian(mu, logvar)
    dZ = margin.grads['Z']
    return LossResult(
        loss=margin.loss + lam * kl.loss,
        grads={
            'Z': dZ,
            'mu': dZ + lam * kl.grads['mu'],
            'logvar': 0.5 * dZ * (Z - mu) + lam * kl.grads['logvar'],
            'W': margin.grads['W'],
        },
    )
