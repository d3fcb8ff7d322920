"""Scalar and planar facts behind the modulus corollaries.

A disc centred on the positive real axis lies in the closed sector
``|arg w| <= tau`` exactly when its radius is at most ``center * sin(tau)``.
Applied to the sector of each theorem this gives the radius functions
``phi_alpha``, ``psi_beta`` and ``rho_gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAngle, ParameterOutOfRange
from .optimize import golden_max, golden_min

SQRT3 = math.sqrt(3.0)
# relative slack for tangency (c sin(tau) is rounded)
TANGENT_RTOL = 1e-12


@dataclass(frozen=True)
class Sector:
    half_angle: float

    def __post_init__(self):
        if not 0 < self.half_angle <= math.pi / 2:
            raise ValueError(f"sector half-angle must lie in (0, pi/2], got {self.half_angle}")


@dataclass(frozen=True)
class Disc:
    center: float
    radius: float

    def __post_init__(self):
        if not self.center > 0:
            raise ValueError("disc center must be positive")
        if self.radius < 0:
            raise ValueError("disc radius must be non-negative")


def disc_in_sector(d, s):
    """Closed disc inside the closed sector: ``radius <= center * sin(tau)``."""
    return d.radius <= d.center * math.sin(s.half_angle) * (1 + TANGENT_RTOL)


def disc_in_sector_sampled(d, s, n=360, refine_iters=60):
    """Boundary-sampling counterpart of :func:`disc_in_sector`.

    Evaluates ``|arg w|`` at ``n`` points of the boundary circle, then
    polishes the largest sample by golden-section search.
    """
    phi = 2 * math.pi * np.arange(n) / n
    w = d.center + d.radius * np.exp(1j * phi)
    if np.any(np.abs(w) == 0):
        return False
    vals = np.abs(np.angle(w))
    j = int(np.argmax(vals))
    if refine_iters:
        step = 2 * math.pi / n
        _, best, _ = golden_max(
            lambda t: abs(math.atan2(d.radius * math.sin(t), d.center + d.radius * math.cos(t))),
            phi[j] - step, phi[j] + step, iters=refine_iters)
        vals_max = max(vals[j], best)
    else:
        vals_max = vals[j]
    return bool(vals_max <= s.half_angle * (1 + TANGENT_RTOL))


def phi_alpha(alpha):
    """Radius of the disc about ``alpha`` inscribed in the T1 sector."""
    if not alpha >= 1:
        raise ParameterOutOfRange(f"phi_alpha needs alpha >= 1, got {alpha}")
    return alpha * SQRT3 / math.sqrt(3 + (alpha - 1) ** 2)


def psi_beta(beta):
    """Radius of the disc about ``(3-2beta)/2`` inscribed in the T2 sector."""
    if not beta <= 1:
        raise ParameterOutOfRange(f"psi_beta needs beta <= 1, got {beta}")
    return (3 - 2 * beta) * SQRT3 / math.sqrt(12 + (5 - 2 * beta) ** 2)


def rho_gamma(gamma):
    """Radius of the disc about ``1+gamma`` inscribed in the T3 sector."""
    if not gamma >= 0:
        raise ParameterOutOfRange(f"rho_gamma needs gamma >= 0, got {gamma}")
    return (1 + gamma) / math.sqrt(1 + (1 + gamma) ** 2)


def sector_disc_T1(alpha):
    return Disc(alpha, phi_alpha(alpha)), Sector(math.atan2(SQRT3, alpha - 1))


def sector_disc_T2(beta):
    return Disc((3 - 2 * beta) / 2, psi_beta(beta)), Sector(math.atan(2 * SQRT3 / (5 - 2 * beta)))


def sector_disc_T3(gamma):
    return Disc(1 + gamma, rho_gamma(gamma)), Sector(math.atan(1 / (1 + gamma)))


@dataclass(frozen=True)
class ScalarMin:
    argmin: float
    min: float
    numeric_argmin: float
    numeric_min: float


def varphi_scalar_min(upper=10.0):
    """Minimum of ``3a + 1/a`` on (0, upper].

    The value comes from golden-section search; the location is then
    pinned by bisection on the derivative ``3 - 1/a**2`` inside the final
    bracket, since a flat minimum cannot be located to better than
    ~sqrt(eps) from function values alone.
    """
    f = lambda a: 3 * a + 1 / a
    x, y, (lo, hi) = golden_min(f, 1e-12, upper, iters=200)
    dfun = lambda a: 3 - 1 / (a * a)
    lo, hi = min(lo, x) * 0.999, max(hi, x) * 1.001
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if dfun(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 0:
            break
    a_star = 0.5 * (lo + hi)
    return ScalarMin(argmin=1 / SQRT3, min=2 * SQRT3,
                     numeric_argmin=a_star, numeric_min=min(y, f(a_star)))


def phi_alpha_max(lo=1.0, hi=100.0):
    """Golden-section maximum of :func:`phi_alpha` on [lo, hi]; returns ``(alpha, value)``."""
    x, y, _ = golden_max(phi_alpha, lo, hi, iters=200)
    return x, y


@dataclass(frozen=True)
class LemmaAWitness:
    rho: float
    theta: float
    z0: complex
    p_z0: complex
    a: float
    k: float
    bound: float
    equality_gap: float


def lemma_a_witness(rho, theta):
    """Equality case of the boundary-argument lemma for ``p(z) = (rho + z)/(rho - z)``.

    ``p(0) = 1`` and ``Re p > 0`` on ``|z| < rho``; on ``|z| = rho`` the real
    part vanishes.  At ``z0 = rho e^{i theta}`` we read off ``a = Im p(z0)``
    and ``k = Im(z0 p'(z0)/p(z0))`` from the function itself and compare ``k``
    with the lemma's bound.
    """
    if not 0 < rho < 1:
        raise ParameterOutOfRange(f"rho must lie in (0, 1), got {rho}")
    t = math.remainder(theta, 2 * math.pi)
    if abs(t) < 1e-12 or abs(abs(t) - math.pi) < 1e-12:
        raise DegenerateAngle(f"theta = {theta} gives a = 0 or a = infinity")
    z0 = rho * complex(math.cos(theta), math.sin(theta))
    p = (rho + z0) / (rho - z0)
    dp = 2 * rho / (rho - z0) ** 2
    logd = z0 * dp / p
    a, k = p.imag, logd.imag
    if a > 0:
        bound = 0.5 * (a + 1 / a)
    else:
        bound = -0.5 * (abs(a) + 1 / abs(a))
    return LemmaAWitness(rho, theta, z0, p, a, k, bound, k - bound)


def lemma_a_p(rho):
    """The extremal family member as a callable, for spot checks."""
    return lambda z: (rho + np.asarray(z)) / (rho - np.asarray(z))
