"""Seeded random stream shared by data generation, initialisation and training.

Uniform draws come from numpy's PCG64 bit generator (``Generator.random``
turns the top 53 bits of each 64-bit output into a double in [0, 1)), so the
uniform stream is reproducible bit for bit from the seed. Standard normals are
derived from consecutive uniform pairs with the Box-Muller transform:

    r = sqrt(-2 ln(1 - u1)),  n0 = r cos(2 pi u2),  n1 = r sin(2 pi u2)

An odd request discards the last sine draw. An ``Rng`` has a single owner;
hand it to the next stage instead of sharing it.
"""

import math

import numpy as np


class Rng:
    def __init__(self, seed):
        self.seed = int(seed)
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, size, low=0.0, high=1.0):
        return low + (high - low) * self._generator.random(size)

    def normal(self, size):
        shape = (size,) if isinstance(size, int) else tuple(size)
        count = math.prod(shape)
        pairs = (count + 1) // 2
        u = self._generator.random((pairs, 2))
        radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        angle = 2.0 * math.pi * u[:, 1]
        draws = np.empty((pairs, 2))
        draws[:, 0] = radius * np.cos(angle)
        draws[:, 1] = radius * np.sin(angle)
        return draws.reshape(-1)[:count].reshape(shape)

    def permutation(self, n):
        return self._generator.permutation(n)

    def integers(self, low, high, size=None):
        return self._generator.integers(low, high, size=size)

    def choice(self, population, size, replace=False):
        return self._generator.choice(population, size=size, replace=replace)
