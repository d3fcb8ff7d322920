import math

import numpy as np


def cauchy_derivative(fn, z, order=1, radius=0.02, n=64):
    """Derivative of ``fn`` at ``z`` from the trapezoidal Cauchy integral."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = np.exp(2j * np.pi * np.arange(n) / n)
    pts = z[:, None] + radius * w[None, :]
    vals = fn(pts.ravel()).reshape(pts.shape)
    return math.factorial(order) * np.mean(vals * w ** (-order), axis=1) / radius ** order


def disc_points(n, r_max, seed=0):
    rng = np.random.default_rng(seed)
    r = r_max * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))
