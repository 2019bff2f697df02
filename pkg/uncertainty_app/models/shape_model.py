import numpy as np

from uncertainty_app.error_messages import EMPTY_VIEWS_ERROR, INPUT_DIM_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.models.backbone_model import Linear, MlpBackbone
from uncertainty_app.numeric.matrix_ops import ensure_finite


def canonical_view_order(views):
    """Sort the views of each shape lexicographically by their feature values.

    ``views`` is ``(B, V, d)``. Summing in this order makes view pooling
    bitwise independent of the order the views were supplied in.
    """
    order = np.stack([np.lexsort(shape_views.T[::-1]) for shape_views in views])
    return np.take_along_axis(views, order[:, :, None], axis=1)


class ShapeEncoder:
    """One backbone shared by every view, mean pooling, then a projection to D."""

    def __init__(self, view_backbone, proj):
        self.view_backbone = view_backbone
        self.proj = proj

    @classmethod
    def initialise(cls, input_dim, cfg, rng):
        view_backbone = MlpBackbone.initialise([input_dim, *cfg.hidden_dims], rng)
        proj = MlpBackbone([Linear.initialise(view_backbone.d_out, cfg.embed_dim, rng)])
        return cls(view_backbone, proj)

    @property
    def input_dim(self):
        return self.view_backbone.d_in

    @property
    def embed_dim(self):
        return self.proj.d_out

    def forward(self, views):
        views = np.asarray(views, dtype=np.float64)
        if views.ndim != 3 or views.shape[1] == 0:
            raise ShapeMismatchError(EMPTY_VIEWS_ERROR)
        if views.shape[2] != self.input_dim:
            raise ShapeMismatchError(INPUT_DIM_ERROR.format(got=views.shape[2], expected=self.input_dim))
        batch, n_views, dim = views.shape
        ordered = canonical_view_order(views)
        view_features, backbone_cache = self.view_backbone.forward(ordered.reshape(batch * n_views, dim))
        pooled = view_features.reshape(batch, n_views, -1).mean(axis=1)
        out, proj_cache = self.proj.forward(pooled)
        return ensure_finite(out, 'shape forward'), (backbone_cache, proj_cache, batch, n_views)

    def backward(self, cache, dout):
        backbone_cache, proj_cache, batch, n_views = cache
        dpooled, proj_grads = self.proj.backward(proj_cache, dout)
        dviews = np.repeat(dpooled[:, None, :] / n_views, n_views, axis=1)
        _, backbone_grads = self.view_backbone.backward(backbone_cache, dviews.reshape(batch * n_views, -1))
        return backbone_grads + proj_grads

    def parameters(self):
        return self.view_backbone.parameters() + self.proj.parameters()

    def set_parameters(self, params):
        split = len(self.view_backbone.parameters())
        self.view_backbone.set_parameters(params[:split])
        self.proj.set_parameters(params[split:])

    def embed(self, views):
        return self.forward(views)[0]


def encode_shape(encoder, views):
    """Fuse the V view vectors of one shape into its D-dim embedding f."""
    views = np.asarray(views, dtype=np.float64)
    if views.ndim != 2 or views.shape[0] == 0:
        raise ShapeMismatchError(EMPTY_VIEWS_ERROR)
    return encoder.forward(views[None, :, :])[0][0]
