"""Extremes of real functionals of f over the disc.

Each circle ``|z| = r`` of the grid is sampled at equally spaced angles;
the best few local extrema of the samples are then polished by
golden-section search in theta.  The disc extremum is the best per-circle
value.  Nothing is extrapolated to ``r = 1``; instead ``tail_flag`` marks
scans whose per-radius extremum is still moving at the outermost circle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .catalog import compute_quantities
from .errors import ArgOfZero
from .optimize import golden_max_batch

TWO_PI = 2 * math.pi
DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999)
DEFAULT_THETAS = 2048
DEFAULT_REFINE = 40
DEFAULT_R_MAX = 0.999
# Local extrema per circle that get polished.
CANDIDATES = 3


def principal_arg(w):
    """Argument in (-pi, pi]; the negative real axis maps to +pi."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) < 1e-300):
        raise ArgOfZero("argument of zero is undefined")
    a = np.arctan2(w.imag, w.real)
    a = np.where(a <= -math.pi, math.pi, a)
    return a[()] if a.ndim == 0 else a


class Kind(enum.Enum):
    ARG_SHIFTED_CONVEX = "ARG_SHIFTED_CONVEX"
    ARG_BETA = "ARG_BETA"
    ARG_GAMMA = "ARG_GAMMA"
    RE_STAR = "RE_STAR"
    RE_CONVEX = "RE_CONVEX"
    RE_HALF = "RE_HALF"
    MOD_PRE_SCHWARZ = "MOD_PRE_SCHWARZ"
    MOD_STAR_DEV = "MOD_STAR_DEV"


_PARAMETRIC = {Kind.ARG_SHIFTED_CONVEX: "alpha", Kind.ARG_BETA: "beta", Kind.ARG_GAMMA: "gamma"}


@dataclass(frozen=True)
class Functional:
    kind: Kind
    param: float | None = None

    def __post_init__(self):
        if (self.kind in _PARAMETRIC) != (self.param is not None):
            raise ValueError(f"{self.kind.value} parameter mismatch: {self.param!r}")

    @property
    def name(self):
        if self.param is None:
            return self.kind.value
        return f"{self.kind.value}({self.param:.12g})"

    @property
    def is_arg(self):
        return self.kind in _PARAMETRIC

    def shifted(self, q):
        """The complex quantity whose |arg| an ARG functional measures."""
        k, p = self.kind, self.param
        if k is Kind.ARG_SHIFTED_CONVEX:
            return p - 1 + q.convexity               # alpha + z f''/f'
        if k is Kind.ARG_BETA:
            return (3 - 2 * p) / 2 - (q.convexity - 1)
        if k is Kind.ARG_GAMMA:
            return q.star_quot + p
        raise ValueError(f"{k.value} is not an arg functional")

    def from_quantities(self, q):
        k = self.kind
        if self.is_arg:
            w = np.asarray(self.shifted(q))
            # a zero of the shifted quantity lies outside every sector: score it pi
            w = np.where(np.abs(w) < 1e-300, -1.0 + 0j, w)
            return np.abs(principal_arg(w))
        if k is Kind.RE_STAR:
            return q.star_quot.real
        if k is Kind.RE_CONVEX:
            return q.convexity.real
        if k is Kind.RE_HALF:
            return q.half_quot.real
        if k is Kind.MOD_PRE_SCHWARZ:
            return np.abs(q.convexity - 1)
        if k is Kind.MOD_STAR_DEV:
            return np.abs(q.star_quot - 1)
        raise AssertionError(k)

    def __call__(self, f, z, r_max=DEFAULT_R_MAX):
        return self.from_quantities(compute_quantities(f, z, r_max=r_max))


def ARG_SHIFTED_CONVEX(alpha):
    return Functional(Kind.ARG_SHIFTED_CONVEX, float(alpha))


def ARG_BETA(beta):
    return Functional(Kind.ARG_BETA, float(beta))


def ARG_GAMMA(gamma):
    return Functional(Kind.ARG_GAMMA, float(gamma))


RE_STAR = Functional(Kind.RE_STAR)
RE_CONVEX = Functional(Kind.RE_CONVEX)
RE_HALF = Functional(Kind.RE_HALF)
MOD_PRE_SCHWARZ = Functional(Kind.MOD_PRE_SCHWARZ)
MOD_STAR_DEV = Functional(Kind.MOD_STAR_DEV)


def functional_from_name(name, param=None):
    kind = Kind[name.upper()]
    return Functional(kind, None if kind not in _PARAMETRIC else float(param))


@dataclass(frozen=True)
class ScanGrid:
    radii: tuple = DEFAULT_RADII
    thetas_per_circle: int = DEFAULT_THETAS
    refine_iters: int = DEFAULT_REFINE
    r_max: float = DEFAULT_R_MAX
    upper_half: bool = False

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii:
            raise ValueError("grid needs at least one radius")
        if list(radii) != sorted(set(radii)):
            raise ValueError("radii must be strictly ascending")
        if not 0 < self.r_max < 1:
            raise ValueError("r_max must lie in (0, 1)")
        if radii[0] <= 0 or radii[-1] > self.r_max:
            raise ValueError(f"radii must lie in (0, r_max={self.r_max}]")
        if self.thetas_per_circle < 4:
            raise ValueError("need at least 4 angles per circle")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be non-negative")

    @classmethod
    def default(cls, r_max=DEFAULT_R_MAX, **kw):
        """Default radii clipped to ``r_max``."""
        radii = tuple(r for r in DEFAULT_RADII if r <= r_max)
        return cls(radii=radii, r_max=r_max, **kw)

    def thetas(self):
        n = self.thetas_per_circle
        if self.upper_half:
            return math.pi * np.arange(n // 2 + 1) / (n // 2)
        return TWO_PI * np.arange(n) / n

    @property
    def step(self):
        return TWO_PI / self.thetas_per_circle


@dataclass(frozen=True)
class ScanResult:
    extremum: float
    witness: complex
    per_radius: tuple
    refined: bool
    tail_flag: bool
    mode: str = "sup"
    # Some shifted quantity of an arg functional left Re > 0 somewhere.
    region_exit: bool = False
    functional: str = ""

    def to_json(self):
        return {
            "extremum": self.extremum,
            "witness": [self.witness.real, self.witness.imag],
            "per_radius": [[r, v] for r, v in self.per_radius],
            "refined": self.refined,
            "tail_flag": self.tail_flag,
        }

    @property
    def outer_radius(self):
        return self.per_radius[-1][0]

    def tail_allowance(self):
        """Last per-radius increment in the extremal direction (0 if none).

        If the per-radius extremum approaches its boundary limit like
        ``(1-r)**q`` and the outer radii are 0.99, 0.999 (a 10x step toward
        the circle), the remaining change is below this increment whenever
        ``q >= log10(2)``.
        """
        if len(self.per_radius) < 2:
            return 0.0
        d = self.per_radius[-1][1] - self.per_radius[-2][1]
        return max(0.0, d if self.mode == "sup" else -d)


@lru_cache(maxsize=512)
def _circle_quantities(f, r, n, upper_half, r_max):
    grid_thetas = (math.pi * np.arange(n // 2 + 1) / (n // 2) if upper_half
                   else TWO_PI * np.arange(n) / n)
    z = r * np.exp(1j * grid_thetas)
    return grid_thetas, z, compute_quantities(f, z, r_max=r_max)


def _local_peaks(v, circular):
    """Indices of the best local maxima of ``v`` (ties -> smaller index)."""
    if circular:
        left, right = np.roll(v, 1), np.roll(v, -1)
    else:
        left = np.concatenate([[-np.inf], v[:-1]])
        right = np.concatenate([v[1:], [-np.inf]])
    peaks = np.flatnonzero((v >= left) & (v >= right))
    if len(peaks) == 0:
        peaks = np.array([int(np.argmax(v))])
    order = np.lexsort((peaks, -v[peaks]))
    return peaks[order[:CANDIDATES]]


def _scan(f, F, grid, sign):
    per_radius = []
    best_val, best_z = -np.inf, None
    region_exit = False
    circular = not grid.upper_half
    h = grid.step

    for r in grid.radii:
        thetas, z, q = _circle_quantities(f, r, grid.thetas_per_circle, grid.upper_half, grid.r_max)
        if F.is_arg and np.any(F.shifted(q).real <= 0):
            region_exit = True
        v = sign * F.from_quantities(q)
        peaks = _local_peaks(v, circular)
        th0 = thetas[peaks]
        v0 = v[peaks]
        if grid.refine_iters > 0:
            lo, hi = th0 - h, th0 + h
            if grid.upper_half:
                lo, hi = np.clip(lo, 0, math.pi), np.clip(hi, 0, math.pi)

            def objective(t, r=r):
                return sign * F(f, r * np.exp(1j * t), r_max=grid.r_max)

            th1, v1 = golden_max_batch(objective, lo, hi, grid.refine_iters, th0, v0)
        else:
            th1, v1 = th0, v0
        th1 = np.mod(th1, TWO_PI)
        # ties -> smaller theta
        k = np.lexsort((th1, -v1))[0]
        val, theta = float(v1[k]), float(th1[k])
        per_radius.append((r, sign * val))
        if val > best_val:             # ties -> smaller radius
            best_val, best_z = val, complex(r * np.exp(1j * theta))

    # tail: still strictly improving over the outer three circles
    vals = [v * sign for _, v in per_radius]
    last = vals[-3:]
    tail = (len(last) >= 2 and all(b > a for a, b in zip(last, last[1:]))
            and vals[-1] == max(vals))
    return ScanResult(
        extremum=sign * best_val,
        witness=best_z,
        per_radius=tuple(per_radius),
        refined=grid.refine_iters > 0,
        tail_flag=bool(tail),
        mode="sup" if sign > 0 else "inf",
        region_exit=region_exit,
        functional=F.name,
    )


@lru_cache(maxsize=1024)
def scan_sup(f, F, grid=ScanGrid()):
    """Supremum of ``F(f, .)`` over the grid, with witness and per-radius maxima."""
    return _scan(f, F, grid, +1.0)


@lru_cache(maxsize=1024)
def scan_inf(f, F, grid=ScanGrid()):
    """Infimum counterpart of :func:`scan_sup`."""
    return _scan(f, F, grid, -1.0)


def clear_caches():
    _circle_quantities.cache_clear()
    scan_sup.cache_clear()
    scan_inf.cache_clear()
