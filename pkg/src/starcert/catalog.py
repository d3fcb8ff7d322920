"""Normalized analytic functions on the unit disc.

An :class:`AnalyticFunction` carries a closed-form evaluator for
``(f, f', f'')`` and/or a Taylor series of ``f``.  Closed forms are preferred
wherever they exist; near the boundary they are the only trustworthy
representation, since every catalog function has a branch point or pole on
the unit circle.

Functions defined only through a differential profile (the convexity
quotient ``1 + z f''/f'`` or the starlike quotient ``z f'/f``) are rebuilt
by radial Gauss-Legendre integration of the profile, see
:mod:`starcert.quadrature`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from . import quadrature, series
from .errors import NotNormalized, PoleSuspected, ProfileNotNormalized
from .series import DEFAULT_R_MAX, TaylorSeries, default_order

SQRT3 = math.sqrt(3.0)
PROFILE_TOL = 1e-10
POLE_TOL = 1e-12


# -- profiles -----------------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    """An analytic function on D with value 1 at the origin.

    ``value`` and ``deriv`` act elementwise on complex arrays; ``series``
    builds the Taylor series at a requested order.
    """

    name: str
    value: Callable
    series: Callable[[int], TaylorSeries]
    deriv: Optional[Callable] = None
    formula: str = ""

    def affine(self, scale, shift, name=None, formula=None):
        """``scale * self + shift``."""
        value, deriv, ser = self.value, self.deriv, self.series
        return Profile(
            name=name or f"{scale:g}*{self.name}{shift:+g}",
            value=lambda z: scale * value(z) + shift,
            deriv=None if deriv is None else (lambda z: scale * deriv(z)),
            series=lambda n: ser(n) * scale + shift,
            formula=formula or f"{scale:g}*({self.formula}) {shift:+g}",
        )


def mobius_power(p):
    """``M_p(z) = ((1+z)/(1-z))**p`` on the principal branch.

    ``(1+z)/(1-z)`` maps D onto the right half-plane, so the principal log
    never crosses its cut there.
    """
    p = float(p)
    if abs(p) > 2:
        raise ValueError(f"mobius_power needs |p| <= 2, got {p}")

    def value(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(p * np.log((1 + z) / (1 - z)))

    def deriv(z):
        z = np.asarray(z, dtype=complex)
        return 2 * p * value(z) / (1 - z * z)

    return Profile(
        name=f"M_{p:g}",
        value=value,
        deriv=deriv,
        series=lambda n: series.pow_series(series.mobius_ratio(n), p),
        formula=f"((1+z)/(1-z))^{p:g}",
    )


def _check_profile(profile):
    h0 = complex(profile.value(np.array([0j]))[0])
    if abs(h0 - 1) > PROFILE_TOL:
        raise ProfileNotNormalized(f"profile {profile.name} has value {h0} at 0, expected 1")


def _quotient(profile):
    """``(h(t) - 1)/t`` as an elementwise callable."""
    value = profile.value
    return lambda t: (value(t) - 1.0) / t


# -- the function type ----------------------------------------------------------

class AnalyticFunction:
    """A member (candidate) of class A.

    ``evaluator(z)`` returns ``(f, f', f'')`` on a 1-d array of nonzero
    points; any entry may be None if that derivative has no closed form.
    """

    def __init__(self, name, *, evaluator=None, series_factory=None,
                 params=None, formula="", order=None):
        if evaluator is None and series_factory is None:
            raise ValueError("an AnalyticFunction needs a closed form or a series")
        self.name = name
        self.params = dict(params or {})
        self.formula = formula
        self.evaluator = evaluator
        self._series_factory = series_factory
        self._order = order

    def __repr__(self):
        return f"AnalyticFunction({self.name!r}, params={self.params})"

    @property
    def has_closed_form(self):
        return self.evaluator is not None

    @property
    def has_series(self):
        return self._series_factory is not None

    @cached_property
    def series_f(self) -> Optional[TaylorSeries]:
        if self._series_factory is None:
            return None
        return self._series_factory(self._order or default_order())

    @cached_property
    def _series_derivs(self):
        s0 = self.series_f
        s1 = series.derivative(s0)
        return s0, s1, series.derivative(s1)

    def series_values(self, z, r_max=DEFAULT_R_MAX):
        s0, s1, s2 = self._series_derivs
        return (series.evaluate(s0, z, r_max), series.evaluate(s1, z, r_max),
                series.evaluate(s2, z, r_max))

    def values(self, z, r_max=DEFAULT_R_MAX):
        """``(f, f', f'')`` at ``z``; closed forms first, series for the gaps."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        series._check_radius(z, r_max)
        out = [np.zeros_like(z) for _ in range(3)]
        zero = z == 0
        nz = ~zero
        missing = [True, True, True]
        if self.evaluator is not None and nz.any():
            got = self.evaluator(z[nz])
            for i, v in enumerate(got):
                if v is not None:
                    out[i][nz] = v
                    missing[i] = False
        need_series = [i for i in range(3) if missing[i]] if nz.any() else []
        if zero.any() or need_series:
            if not self.has_series:
                raise ValueError(f"{self.name}: no series to fall back on")
            sv = self.series_values(z, r_max=None)
            for i in range(3):
                if i in need_series:
                    out[i][nz] = sv[i][nz]
                out[i][zero] = sv[i][zero]
        return tuple(out)

    def eval_f(self, z):
        return self.values(z)[0]

    def eval_fp(self, z):
        return self.values(z)[1]

    def eval_fpp(self, z):
        return self.values(z)[2]

    def describe(self):
        return {"name": self.name, "params": self.params, "formula": self.formula}


def check_normalized(f, tol=1e-4):
    """Class-A normalization f(0) = 0, f'(0) = 1, checked numerically.

    Raises :class:`NotNormalized` on failure.
    """
    if f.has_series and not f.has_closed_form:
        c = f.series_f.coeffs
        if abs(c[0]) > PROFILE_TOL or len(c) < 2 or abs(c[1] - 1) > PROFILE_TOL:
            raise NotNormalized(f"{f.name}: series starts {c[:2]}, expected 0 + 1*z")
        return
    z = 1e-6 * np.exp(2j * np.pi * np.arange(3) / 3)
    fv, fpv, _ = f.values(z)
    if np.max(np.abs(fv / z - 1)) > tol or np.max(np.abs(fpv - 1)) > tol:
        raise NotNormalized(f"{f.name}: f(z)/z and f'(z) do not tend to 1 at the origin")


# -- quantities ------------------------------------------------------------------

@dataclass(frozen=True)
class Quantities:
    star_quot: np.ndarray   # z f'/f
    convexity: np.ndarray   # 1 + z f''/f'
    half_quot: np.ndarray   # f/z


def compute_quantities(f, z, r_max=DEFAULT_R_MAX):
    """Derived quotients at ``z`` (scalar or array).  At ``z = 0`` all equal 1."""
    z_in = np.asarray(z, dtype=complex)
    z = np.atleast_1d(z_in).ravel()
    fv, fpv, fppv = f.values(z, r_max=r_max)
    nz = z != 0
    half = np.ones_like(z)
    star = np.ones_like(z)
    conv = np.ones_like(z)
    half[nz] = fv[nz] / z[nz]
    bad = nz & ((np.abs(half) < POLE_TOL) | ~np.isfinite(half))
    bad |= (np.abs(fpv) < POLE_TOL) | ~np.isfinite(fpv)
    if bad.any():
        zb = complex(z[np.flatnonzero(bad)[0]])
        raise PoleSuspected(f"{f.name}: f or f' vanishes near z = {zb:.6g}", z=zb)
    star[nz] = z[nz] * fpv[nz] / fv[nz]
    conv[nz] = 1 + z[nz] * fppv[nz] / fpv[nz]
    shape = z_in.shape
    return Quantities(star.reshape(shape), conv.reshape(shape), half.reshape(shape))


# -- constructions from profiles -------------------------------------------------

def from_convexity_profile(h, name, params=None, formula=None, order=None):
    """The f in A with ``1 + z f''/f' = h``.

    ``f' = exp(integral_0^z (h(t)-1)/t dt)`` and ``f = integral_0^z f'``.
    """
    _check_profile(h)
    q = _quotient(h)

    def evaluator(z):
        f = np.empty_like(z)
        fp = np.empty_like(z)
        for idx in quadrature.group_by_radius(z):
            zz = z[idx]
            t, running, total, w = quadrature.cumulative_along(zz, q)
            fp[idx] = np.exp(total)
            # f(z) = z * sum_j w_j f'(sigma_j z)
            f[idx] = zz * np.einsum("npj,pj->n", np.exp(running), w)
        fpp = fp * (h.value(z) - 1.0) / z
        return f, fp, fpp

    def build(n):
        hs = h.series(n)
        fp = series.exp_series(series.integrate_g_over_t(hs - 1.0))
        return series.antiderivative(fp).truncate(n)

    return AnalyticFunction(
        name, evaluator=evaluator, series_factory=build, params=params,
        formula=formula or f"1 + z f''/f' = {h.formula}", order=order,
    )


def from_starlike_profile(g, name, params=None, formula=None, order=None):
    """The f in A with ``z f'/f = g``: ``f = z exp(integral_0^z (g(t)-1)/t dt)``."""
    _check_profile(g)
    q = _quotient(g)

    def evaluator(z):
        f = np.empty_like(z)
        for idx in quadrature.group_by_radius(z):
            zz = z[idx]
            f[idx] = zz * np.exp(quadrature.integrate_along(zz, q))
        gz = g.value(z)
        fp = f * gz / z
        fpp = None
        if g.deriv is not None:
            fpp = (fp * (gz - 1.0) + f * g.deriv(z)) / z
        return f, fp, fpp

    def build(n):
        gs = g.series(n)
        e = series.exp_series(series.integrate_g_over_t(gs - 1.0))
        return series.TaylorSeries(np.concatenate([[0.0], e.coeffs[:-1]]))

    return AnalyticFunction(
        name, evaluator=evaluator, series_factory=build, params=params,
        formula=formula or f"z f'/f = {g.formula}", order=order,
    )


def from_coefficients(s, name="coeffs"):
    """Series-only function, e.g. loaded from a JSON coefficient file."""
    s = s if isinstance(s, TaylorSeries) else TaylorSeries(s)
    return AnalyticFunction(name, series_factory=lambda n: s, order=s.order,
                            formula=f"Taylor polynomial of order {s.order}")


# -- catalog entries ----------------------------------------------------------------

def identity():
    def evaluator(z):
        return z.copy(), np.ones_like(z), np.zeros_like(z)
    return AnalyticFunction("identity", evaluator=evaluator,
                            series_factory=lambda n: series.variable(n), formula="z")


def koebe():
    def evaluator(z):
        w = 1 - z
        return z / w**2, (1 + z) / w**3, 2 * (2 + z) / w**4

    def build(n):
        return series.TaylorSeries(np.arange(n + 1, dtype=float))

    return AnalyticFunction("koebe", evaluator=evaluator, series_factory=build,
                            formula="z/(1-z)^2")


def half_plane():
    """Convex map of D onto the half-plane Re w > -1/2."""
    def evaluator(z):
        w = 1 - z
        return z / w, 1 / w**2, 2 / w**3

    def build(n):
        c = np.ones(n + 1)
        c[0] = 0.0
        return series.TaylorSeries(c)

    return AnalyticFunction("half_plane", evaluator=evaluator, series_factory=build,
                            formula="z/(1-z)")


def ozaki_quadratic():
    """z - z^2/4, a member of Ozaki's class G."""
    def evaluator(z):
        return z - z * z / 4, 1 - z / 2, np.full_like(z, -0.5)

    return AnalyticFunction("ozaki_quadratic", evaluator=evaluator,
                            series_factory=lambda n: series.TaylorSeries([0, 1, -0.25], order=n),
                            formula="z - z^2/4")


def exp_minus_one():
    """Built from the profile 1 + z f''/f' = 1 + z, i.e. f = e^z - 1."""
    h = Profile(
        name="1+z",
        value=lambda z: 1 + np.asarray(z, dtype=complex),
        deriv=lambda z: np.ones_like(np.asarray(z, dtype=complex)),
        series=lambda n: series.TaylorSeries([1, 1], order=n),
        formula="1 + z",
    )
    return from_convexity_profile(h, "exp_minus_one", formula="1 + z f''/f' = 1 + z")


def example_1_profile():
    return mobius_power(0.5).affine(
        SQRT3 + 1, -SQRT3, name="h1",
        formula="(sqrt3+1)((1+z)/(1-z))^(1/2) - sqrt3")


def example_2_profile():
    return mobius_power(1.0 / 3.0).affine(
        SQRT3, 1 - SQRT3, name="g2",
        formula="sqrt3((1+z)/(1-z))^(1/3) + 1 - sqrt3")


def paper_example_1():
    """Not convex (h < 0 near z = -1) but starlike."""
    h = example_1_profile()
    return from_convexity_profile(h, "paper_example_1", params={"alpha": SQRT3 + 1},
                                  formula=f"1 + z f''/f' = {h.formula}")


def paper_example_2():
    """Not starlike (z f'/f < 0 near z = -1) but Re f(z)/z > 0."""
    g = example_2_profile()
    return from_starlike_profile(g, "paper_example_2", params={"gamma": SQRT3 - 1},
                                 formula=f"z f'/f = {g.formula}")


CATALOG = {
    "identity": identity,
    "koebe": koebe,
    "half_plane": half_plane,
    "ozaki_quadratic": ozaki_quadratic,
    "exp_minus_one": exp_minus_one,
    "paper_example_1": paper_example_1,
    "paper_example_2": paper_example_2,
}

_instances: dict = {}


def get(name):
    """Catalog function by name (instances are shared; they are immutable)."""
    if name not in CATALOG:
        raise KeyError(f"unknown function {name!r}; choose from {sorted(CATALOG)}")
    if name not in _instances:
        _instances[name] = CATALOG[name]()
    return _instances[name]


def listing():
    return [get(name).describe() for name in CATALOG]
