from dataclasses import dataclass

import numpy as np

from uncertainty_app.error_messages import EMBEDDING_DIM_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.models.backbone_model import MlpBackbone
from uncertainty_app.numeric.matrix_ops import as_matrix, ensure_finite

# Initial log-variance weights are shrunk so that sigma starts close to 1.
LOGVAR_INIT_SCALE = 0.1


@dataclass
class GaussianEmbedding:
    mu: np.ndarray
    logvar: np.ndarray

    @property
    def sigma(self):
        return np.exp(0.5 * self.logvar)

    @property
    def sigma2(self):
        return np.exp(self.logvar)


class GaussianHead:
    """Two separate projections of the backbone feature: one to mu, one to log sigma^2."""

    def __init__(self, mu_proj, logvar_proj):
        if mu_proj.d_out != logvar_proj.d_out:
            raise ShapeMismatchError(EMBEDDING_DIM_ERROR.format(left=mu_proj.d_out, right=logvar_proj.d_out))
        self.mu_proj = mu_proj
        self.logvar_proj = logvar_proj

    @classmethod
    def initialise(cls, d_in, cfg, rng):
        dims = [d_in, *cfg.head_hidden_dims, cfg.embed_dim]
        mu_proj = MlpBackbone.initialise(dims, rng)
        logvar_proj = MlpBackbone.initialise(dims, rng, last_scale=LOGVAR_INIT_SCALE)
        return cls(mu_proj, logvar_proj)

    @property
    def embed_dim(self):
        return self.mu_proj.d_out

    def parameters(self):
        return self.mu_proj.parameters() + self.logvar_proj.parameters()

    def set_parameters(self, params):
        split = len(self.mu_proj.parameters())
        self.mu_proj.set_parameters(params[:split])
        self.logvar_proj.set_parameters(params[split:])


class SketchEncoder:
    def __init__(self, backbone, head):
        if backbone.d_out != head.mu_proj.d_in:
            raise ShapeMismatchError(EMBEDDING_DIM_ERROR.format(left=backbone.d_out, right=head.mu_proj.d_in))
        self.backbone = backbone
        self.head = head

    @classmethod
    def initialise(cls, input_dim, cfg, rng):
        backbone = MlpBackbone.initialise([input_dim, *cfg.hidden_dims], rng)
        return cls(backbone, GaussianHead.initialise(backbone.d_out, cfg, rng))

    @property
    def input_dim(self):
        return self.backbone.d_in

    @property
    def embed_dim(self):
        return self.head.embed_dim

    def forward(self, x):
        features, backbone_cache = self.backbone.forward(x)
        mu, mu_cache = self.head.mu_proj.forward(features)
        logvar, logvar_cache = self.head.logvar_proj.forward(features)
        return GaussianEmbedding(mu, logvar), (backbone_cache, mu_cache, logvar_cache)

    def backward(self, cache, dmu, dlogvar):
        backbone_cache, mu_cache, logvar_cache = cache
        dfeat_mu, mu_grads = self.head.mu_proj.backward(mu_cache, dmu)
        dfeat_logvar, logvar_grads = self.head.logvar_proj.backward(logvar_cache, dlogvar)
        _, backbone_grads = self.backbone.backward(backbone_cache, dfeat_mu + dfeat_logvar)
        return backbone_grads + mu_grads + logvar_grads

    def parameters(self):
        return self.backbone.parameters() + self.head.parameters()

    def set_parameters(self, params):
        split = len(self.backbone.parameters())
        self.backbone.set_parameters(params[:split])
        self.head.set_parameters(params[split:])

    def embed(self, x):
        """Retrieval embedding: mu, no sampling."""
        return self.forward(x)[0].mu


def encode_sketch(backbone, head, x):
    """Deterministic (mu, logvar) of one feature vector or a batch of rows."""
    single = np.ndim(x) == 1
    embedding, _ = SketchEncoder(backbone, head).forward(as_matrix(x))
    if single:
        return GaussianEmbedding(embedding.mu[0], embedding.logvar[0])
    return embedding


def reparameterize(embedding, eps):
    """z = mu + eps * sigma with sigma = exp(logvar / 2)."""
    eps = np.asarray(eps, dtype=np.float64)
    if eps.shape != np.shape(embedding.mu):
        raise ShapeMismatchError(EMBEDDING_DIM_ERROR.format(left=np.shape(embedding.mu), right=eps.shape))
    return ensure_finite(embedding.mu + eps * embedding.sigma, 'reparameterize')
