"""Truncated complex Taylor series.

A ``TaylorSeries`` of order ``N`` stores the coefficients of ``z**0 .. z**N``
densely; coefficients beyond ``N`` are unknown (not zero).  Binary operations
truncate to the smaller operand order, so results never claim more accuracy
than their inputs carry.

    >>> s = geometric(4)
    >>> s.coeffs.real
    array([1., 1., 1., 1., 1.])
    >>> evaluate(s, 0.5)
    (1.9375+0j)
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .errors import (
    BranchPointAtOrigin,
    DivisionByZeroConstantTerm,
    NonvanishingConstantTerm,
    RadiusOutOfRange,
)

# Constant-term tolerance for the "== 0" / "== 1" preconditions.
CONST_TOL = 1e-14
DEFAULT_R_MAX = 0.999
_DEFAULT_ORDER = 512


def default_order():
    """Truncation order used by catalog constructions (``STARCERT_ORDER`` overrides)."""
    value = os.environ.get("STARCERT_ORDER")
    if value is None:
        return _DEFAULT_ORDER
    order = int(value)
    if order < 1:
        raise ValueError(f"STARCERT_ORDER must be a positive integer, got {value!r}")
    return order


class TaylorSeries:
    __slots__ = ("_c",)

    def __init__(self, coeffs, order=None):
        c = np.array(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            if len(c) < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - len(c), dtype=complex)])
            c = c[: order + 1]
        if len(c) == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @property
    def coeffs(self):
        return self._c

    @property
    def order(self):
        return len(self._c) - 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k):
        return self._c[k]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self._c[:6])
        more = ", ..." if len(self._c) > 6 else ""
        return f"TaylorSeries([{head}{more}], order={self.order})"

    def truncate(self, order):
        return TaylorSeries(self._c[: order + 1], order=order)

    # Operators delegate to the module-level functions below.
    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(-self._c)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.order))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), -self)

    def __mul__(self, other):
        if np.isscalar(other):
            return TaylorSeries(self._c * other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return TaylorSeries(self._c / other)
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_coerce(other, self.order), self)

    def __call__(self, z, r_max=DEFAULT_R_MAX):
        return evaluate(self, z, r_max=r_max)

    def allclose(self, other, atol=1e-12, rtol=0.0):
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self._c[:n], other.coeffs[:n], atol=atol, rtol=rtol))


def _coerce(x, order):
    if isinstance(x, TaylorSeries):
        return x
    return constant(x, order)


# -- constructors -------------------------------------------------------------

def constant(value, order):
    c = np.zeros(order + 1, dtype=complex)
    c[0] = value
    return TaylorSeries(c)


def variable(order):
    """The series of ``z`` itself."""
    c = np.zeros(order + 1, dtype=complex)
    if order >= 1:
        c[1] = 1.0
    return TaylorSeries(c)


def geometric(order):
    """1/(1-z)."""
    return TaylorSeries(np.ones(order + 1))


def mobius_ratio(order):
    """(1+z)/(1-z) = 1 + 2z + 2z^2 + ..."""
    c = np.full(order + 1, 2.0, dtype=complex)
    c[0] = 1.0
    return TaylorSeries(c)


# -- arithmetic ---------------------------------------------------------------

def add(s, t):
    n = min(s.order, t.order) + 1
    return TaylorSeries(s.coeffs[:n] + t.coeffs[:n])


def mul(s, t):
    n = min(s.order, t.order) + 1
    return TaylorSeries(np.convolve(s.coeffs[:n], t.coeffs[:n])[:n])


def div(s, t):
    """Recursive quotient ``s/t``; requires ``t.coeffs[0] != 0``."""
    n = min(s.order, t.order) + 1
    a = s.coeffs[:n]
    b = t.coeffs[:n]
    if abs(b[0]) <= CONST_TOL:
        raise DivisionByZeroConstantTerm("divisor has a vanishing constant term")
    q = np.zeros(n, dtype=complex)
    for k in range(n):
        # b[1:k+1] reversed against q[0:k]
        acc = np.dot(b[k:0:-1], q[:k]) if k else 0.0
        q[k] = (a[k] - acc) / b[0]
    return TaylorSeries(q)


def derivative(s):
    if s.order < 1:
        return TaylorSeries([0.0])
    k = np.arange(1, s.order + 1)
    return TaylorSeries(k * s.coeffs[1:])


def antiderivative(s):
    """Primitive vanishing at the origin.  Exact, so the order grows by one."""
    c = np.zeros(s.order + 2, dtype=complex)
    c[1:] = s.coeffs / np.arange(1, s.order + 2)
    return TaylorSeries(c)


def z_log_derivative(s):
    """``z s'(z) / s(z)``.

    The numerator ``z s'`` is known through ``z**N`` so no order is lost.
    """
    if abs(s.coeffs[0]) <= CONST_TOL:
        raise DivisionByZeroConstantTerm("z s'/s needs s(0) != 0")
    zs = TaylorSeries(np.arange(s.order + 1) * s.coeffs)
    return div(zs, s)


def integrate_g_over_t(s):
    """``integral_0^z s(t)/t dt`` for ``s(0) == 0``."""
    if abs(s.coeffs[0]) > CONST_TOL:
        raise NonvanishingConstantTerm(
            f"s(0) = {s.coeffs[0]:.3g}; s(t)/t is singular at the origin"
        )
    c = np.zeros(s.order + 1, dtype=complex)
    c[1:] = s.coeffs[1:] / np.arange(1, s.order + 1)
    return TaylorSeries(c)


def exp_series(s):
    c0 = s.coeffs[0]
    a = s.coeffs.copy()
    a[0] = 0.0
    n = len(a)
    ka = np.arange(n) * a
    b = np.zeros(n, dtype=complex)
    b[0] = 1.0
    # n b_n = sum_{k=1}^n k a_k b_{n-k}
    for m in range(1, n):
        b[m] = np.dot(ka[1 : m + 1], b[m - 1 :: -1][:m]) / m
    return TaylorSeries(np.exp(c0) * b)


def log_series(s):
    """Principal log, normalized so that ``log_series(s)(0) == 0``."""
    a = s.coeffs
    if abs(a[0] - 1.0) > CONST_TOL:
        raise BranchPointAtOrigin(f"log needs s(0) == 1, got {a[0]:.6g}")
    n = len(a)
    b = np.zeros(n, dtype=complex)
    kb = np.zeros(n, dtype=complex)
    # a_n = b_n + (1/n) sum_{k=1}^{n-1} k b_k a_{n-k}
    for m in range(1, n):
        acc = np.dot(kb[1:m], a[m - 1 : 0 : -1]) if m > 1 else 0.0
        b[m] = a[m] - acc / m
        kb[m] = m * b[m]
    return TaylorSeries(b)


def pow_series(s, p):
    if abs(s.coeffs[0] - 1.0) > CONST_TOL:
        raise BranchPointAtOrigin(f"s**p needs s(0) == 1, got {s.coeffs[0]:.6g}")
    return exp_series(float(p) * log_series(s))


# -- evaluation ---------------------------------------------------------------

def _check_radius(z, r_max):
    # relative slack absorbs round-off in points built as r * exp(i theta)
    if r_max is not None and np.any(np.abs(z) > r_max * (1 + 1e-12)):
        worst = np.max(np.abs(z))
        raise RadiusOutOfRange(f"|z| = {worst:.6g} exceeds r_max = {r_max}")


def evaluate(s, z, r_max=DEFAULT_R_MAX):
    """Horner evaluation of the truncated polynomial (scalar or array ``z``)."""
    z = np.asarray(z, dtype=complex)
    _check_radius(z, r_max)
    acc = np.zeros_like(z)
    for c in s.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def tail_bound(s, z):
    """Crude truncation diagnostic ``|c_N| |z|^N / (1 - |z|)``."""
    r = np.abs(np.asarray(z, dtype=complex))
    return abs(s.coeffs[-1]) * r ** s.order / (1.0 - r)


# -- JSON interchange -----------------------------------------------------------

def to_json_pairs(s):
    return [[float(c.real), float(c.imag)] for c in s.coeffs]


def from_json_pairs(pairs):
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a JSON array of [re, im] pairs")
    return TaylorSeries(arr[:, 0] + 1j * arr[:, 1])


def load_coeffs(path):
    return from_json_pairs(json.loads(Path(path).read_text()))


def save_coeffs(s, path):
    Path(path).write_text(json.dumps(to_json_pairs(s)))
