"""Composite Gauss-Legendre rules along the radial segment [0, z].

Points on the segment are written ``t = sigma * z`` with ``sigma`` in
[0, 1].  Panels are at most ``PANEL_LENGTH`` long in ``|t|`` and shrink
geometrically toward the endpoint so that each panel is no longer than its
distance to the unit circle, where every catalog profile has its branch
points.  Within a panel the 16-node rule also yields the indefinite integral
at the nodes through a spectral integration matrix, which is what nested
integrals (f from f') need.
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as L

NODES_PER_PANEL = 16
PANEL_LENGTH = 0.05


def _reference_rule(n):
    x, w = L.leggauss(n)
    # S[i, j] = integral_{-1}^{x_i} ell_j(x) dx for the Lagrange basis ell_j on x.
    coef = np.linalg.inv(L.legvander(x, n - 1))
    prim = L.legint(coef, lbnd=-1, axis=0)
    S = L.legvander(x, n) @ prim
    return x, w, S


_X, _W, _S = _reference_rule(NODES_PER_PANEL)


def breakpoints(r):
    """Panel edges in ``sigma`` for a segment of length ``r < 1``."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"radial rule needs 0 < r < 1, got {r}")
    edges = [r]
    b = r
    while b > 0.0:
        step = min(PANEL_LENGTH, 1.0 - b)
        b = max(0.0, b - step)
        # avoid a sliver panel at the origin
        if 0.0 < b < 0.25 * step:
            b = 0.0
        edges.append(b)
    return np.array(edges[::-1]) / r


@lru_cache(maxsize=4096)
def radial_rule(r_key):
    """Nodes, weights and cumulative-integration data on [0, 1] for ``|z| ~ r_key``."""
    edges = breakpoints(r_key)
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    sigma = (a[:, None] + half[:, None] * (_X[None, :] + 1.0))
    weights = half[:, None] * _W[None, :]
    return sigma, weights, half


def radius_key(r):
    return float(np.round(r, 10))


def integrate_along(z, integrand):
    """``integral_0^z integrand(t) dt`` for points sharing one radius key.

    ``integrand`` maps an array of ``t`` to values of the same shape.
    Returns the endpoint integral, shape ``z.shape``.
    """
    sigma, weights, _ = radial_rule(radius_key(np.abs(z).max()))
    t = z[:, None, None] * sigma[None]
    vals = integrand(t)
    return z * np.einsum("npj,pj->n", vals, weights)


def cumulative_along(z, integrand):
    """Like :func:`integrate_along` but also returns the running integral.

    Returns ``(t, running, total, weights)`` where ``running[n, p, j]`` is
    the integral from 0 to ``t[n, p, j]``.
    """
    sigma, weights, half = radial_rule(radius_key(np.abs(z).max()))
    t = z[:, None, None] * sigma[None]
    vals = integrand(t) * z[:, None, None]
    local = np.einsum("ij,npj->npi", _S, vals) * half[None, :, None]
    totals = np.einsum("npj,pj->np", vals, weights)
    offsets = np.cumsum(totals, axis=1) - totals
    running = offsets[:, :, None] + local
    return t, running, totals.sum(axis=1), weights


def group_by_radius(z):
    """Yield index arrays of points in ``z`` (1-d) sharing a radius key."""
    keys = np.round(np.abs(z), 10)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    cuts = np.flatnonzero(np.diff(sorted_keys)) + 1
    for idx in np.split(order, cuts):
        yield idx
