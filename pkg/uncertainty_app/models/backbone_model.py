import math
from dataclasses import dataclass

import numpy as np

from uncertainty_app.error_messages import INPUT_DIM_ERROR, LAYER_CHAIN_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.numeric.matrix_ops import as_matrix, ensure_finite, relu, relu_backward


@dataclass
class Linear:
    weight: np.ndarray  # d_out x d_in
    bias: np.ndarray  # d_out

    @classmethod
    def initialise(cls, d_in, d_out, rng, scale=1.0):
        # Glorot-uniform weights, zero bias.
        bound = math.sqrt(6.0 / (d_in + d_out))
        weight = rng.uniform((d_out, d_in), -bound, bound) * scale
        return cls(weight=weight, bias=np.zeros(d_out))

    @property
    def d_in(self):
        return self.weight.shape[1]

    @property
    def d_out(self):
        return self.weight.shape[0]

    def forward(self, x):
        return x @ self.weight.T + self.bias

    def backward(self, x, dout):
        return dout @ self.weight, dout.T @ x, dout.sum(axis=0)

    def parameters(self):
        return [self.weight, self.bias]


class MlpBackbone:
    """Stack of linear layers with relu between them (none after the last)."""

    def __init__(self, layers):
        for index in range(1, len(layers)):
            if layers[index].d_in != layers[index - 1].d_out:
                raise ShapeMismatchError(LAYER_CHAIN_ERROR.format(
                    index=index, expected=layers[index].d_in, got=layers[index - 1].d_out))
        self.layers = list(layers)

    @classmethod
    def initialise(cls, dims, rng, last_scale=1.0):
        layers = []
        for index, (d_in, d_out) in enumerate(zip(dims[:-1], dims[1:])):
            scale = last_scale if index == len(dims) - 2 else 1.0
            layers.append(Linear.initialise(d_in, d_out, rng, scale=scale))
        return cls(layers)

    @property
    def d_in(self):
        return self.layers[0].d_in

    @property
    def d_out(self):
        return self.layers[-1].d_out

    def forward(self, x):
        """Return the output and the per-layer inputs/pre-activations needed by ``backward``."""
        x = as_matrix(x)
        if x.shape[1] != self.d_in:
            raise ShapeMismatchError(INPUT_DIM_ERROR.format(got=x.shape[1], expected=self.d_in))
        cache = []
        out = x
        for index, layer in enumerate(self.layers):
            pre = layer.forward(out)
            cache.append((out, pre))
            out = pre if index == len(self.layers) - 1 else relu(pre)
        return ensure_finite(out, 'backbone forward'), cache

    def backward(self, cache, dout):
        grads = []
        for index in range(len(self.layers) - 1, -1, -1):
            layer_in, pre = cache[index]
            if index != len(self.layers) - 1:
                dout = relu_backward(pre, dout)
            dout, dweight, dbias = self.layers[index].backward(layer_in, dout)
            grads[:0] = [dweight, dbias]
        return dout, grads

    def parameters(self):
        return [p for layer in self.layers for p in layer.parameters()]

    def set_parameters(self, params):
        for index, layer in enumerate(self.layers):
            layer.weight, layer.bias = params[2 * index], params[2 * index + 1]

    def copy(self):
        return MlpBackbone([Linear(layer.weight.copy(), layer.bias.copy()) for layer in self.layers])
