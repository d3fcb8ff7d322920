"""Golden-section search, scalar and batched."""

import math

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2        # 1/phi
INV_PHI2 = (3 - math.sqrt(5)) / 2       # 1/phi^2


def golden_max_batch(func, lo, hi, iters, seed_x=None, seed_y=None):
    """Maximize ``func`` independently on each bracket ``[lo[i], hi[i]]``.

    ``func`` takes an array of abscissae and returns an array of values.
    Returns the best point seen per bracket (including the optional seeds),
    so more iterations never give a smaller maximum.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    if seed_x is None:
        best_x = 0.5 * (a + b)
        best_y = func(best_x)
    else:
        best_x = np.array(seed_x, dtype=float)
        best_y = np.array(seed_y, dtype=float)
    if iters <= 0:
        return best_x, best_y

    def keep(x, y):
        better = y > best_y
        best_x[better] = x[better]
        best_y[better] = y[better]

    c = a + INV_PHI2 * (b - a)
    d = a + INV_PHI * (b - a)
    yc = func(c)
    yd = func(d)
    keep(c, yc)
    keep(d, yd)
    for _ in range(iters - 1):
        left = yc > yd
        # maximum in [a, d]: shrink from the right
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, a + INV_PHI2 * (b - a), d)
        new_d = np.where(left, c, a + INV_PHI * (b - a))
        probe = np.where(left, new_c, new_d)
        yp = func(probe)
        keep(probe, yp)
        yc, yd = np.where(left, yp, yd), np.where(left, yc, yp)
        c, d = new_c, new_d
    return best_x, best_y


def golden_min(func, a, b, iters=200, tol=0.0):
    """Scalar golden-section minimization on [a, b]; returns ``(x, f(x), (a, b))``."""
    c = a + INV_PHI2 * (b - a)
    d = a + INV_PHI * (b - a)
    yc, yd = func(c), func(d)
    for _ in range(iters):
        if b - a <= tol:
            break
        if yc < yd:
            b, d, yd = d, c, yc
            c = a + INV_PHI2 * (b - a)
            yc = func(c)
        else:
            a, c, yc = c, d, yd
            d = a + INV_PHI * (b - a)
            yd = func(d)
    x, y = (c, yc) if yc < yd else (d, yd)
    return x, y, (a, b)


def golden_max(func, a, b, iters=200, tol=0.0):
    x, y, bracket = golden_min(lambda t: -func(t), a, b, iters, tol)
    return x, -y, bracket
