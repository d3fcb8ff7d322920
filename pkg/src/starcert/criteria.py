"""Hypothesis -> conclusion certification for the starlikeness criteria.

Every criterion bounds a functional of f from above on D (the hypothesis)
and concludes that Re zf'/f > 0 or Re f(z)/z > 0 on D.  ``certify``
estimates both sides on a scan grid and records whether the run is
consistent with the implication.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import scan
from .catalog import check_normalized
from .errors import ParameterOutOfRange
from .scan import ScanGrid, scan_inf, scan_sup

SQRT3 = math.sqrt(3.0)
DEFAULT_MARGIN = 1e-9
# Conclusion Re(...) > 0 is accepted down to this value.
CONCLUSION_TOL = 1e-6
CLASS_G_BOUND = 1.5


class CriterionKind(enum.Enum):
    T1 = "T1"
    T1_COR_LIMIT = "T1_COR_LIMIT"
    T1_COR_MOD2 = "T1_COR_MOD2"
    T2 = "T2"
    T2_COR_LIMIT = "T2_COR_LIMIT"
    T2_COR_MOD_SQRT3 = "T2_COR_MOD_SQRT3"
    T3 = "T3"
    T3_COR_PI4 = "T3_COR_PI4"
    T3_COR_DEV1 = "T3_COR_DEV1"


PARAM_NAME = {CriterionKind.T1: "alpha", CriterionKind.T2: "beta", CriterionKind.T3: "gamma"}


@dataclass(frozen=True)
class Criterion:
    kind: CriterionKind
    param: float | None = None

    def __post_init__(self):
        k, p = self.kind, self.param
        if k in PARAM_NAME:
            if p is None or not math.isfinite(p):
                raise ParameterOutOfRange(f"{k.value} needs a finite {PARAM_NAME[k]}")
            object.__setattr__(self, "param", float(p))
            if k is CriterionKind.T1 and not p > 1:
                raise ParameterOutOfRange(f"T1 needs alpha > 1, got {p}")
            # beta = 1 is admitted as the limit case (equals T2_COR_LIMIT)
            if k is CriterionKind.T2 and not p <= 1:
                raise ParameterOutOfRange(f"T2 needs beta < 1, got {p}")
            if k is CriterionKind.T3 and not p >= 0:
                raise ParameterOutOfRange(f"T3 needs gamma >= 0, got {p}")
        elif p is not None:
            raise ParameterOutOfRange(f"{k.value} takes no parameter")

    @property
    def params(self):
        return {} if self.param is None else {PARAM_NAME[self.kind]: self.param}

    def __str__(self):
        if self.param is None:
            return self.kind.value
        return f"{self.kind.value}({PARAM_NAME[self.kind]}={self.param:.12g})"


def T1(alpha):
    return Criterion(CriterionKind.T1, alpha)


def T2(beta):
    return Criterion(CriterionKind.T2, beta)


def T3(gamma):
    return Criterion(CriterionKind.T3, gamma)


T1_COR_LIMIT = Criterion(CriterionKind.T1_COR_LIMIT)
T1_COR_MOD2 = Criterion(CriterionKind.T1_COR_MOD2)
T2_COR_LIMIT = Criterion(CriterionKind.T2_COR_LIMIT)
T2_COR_MOD_SQRT3 = Criterion(CriterionKind.T2_COR_MOD_SQRT3)
T3_COR_PI4 = Criterion(CriterionKind.T3_COR_PI4)
T3_COR_DEV1 = Criterion(CriterionKind.T3_COR_DEV1)

COROLLARIES = (T1_COR_LIMIT, T1_COR_MOD2, T2_COR_LIMIT, T2_COR_MOD_SQRT3, T3_COR_PI4, T3_COR_DEV1)


def criterion_from_name(name, param=None):
    kind = CriterionKind[name.upper()]
    if kind in PARAM_NAME:
        if param is None:
            raise ParameterOutOfRange(f"{kind.value} needs --{PARAM_NAME[kind]}")
        return Criterion(kind, param)
    return Criterion(kind)


def threshold_of(c):
    k, p = c.kind, c.param
    K = CriterionKind
    if k is K.T1:
        return math.atan(SQRT3 / (p - 1))
    if k is K.T2:
        return math.atan(2 * SQRT3 / (5 - 2 * p))
    if k is K.T3:
        return math.atan(1 / (1 + p))
    return {
        K.T1_COR_LIMIT: math.pi / 2,
        K.T1_COR_MOD2: 2.0,
        K.T2_COR_LIMIT: math.atan(2 / SQRT3),
        K.T2_COR_MOD_SQRT3: SQRT3,
        K.T3_COR_PI4: math.pi / 4,
        K.T3_COR_DEV1: 1.0,
    }[k]


def hypothesis_functional(c):
    K = CriterionKind
    k, p = c.kind, c.param
    if k is K.T1:
        return scan.ARG_SHIFTED_CONVEX(p)
    if k is K.T2:
        return scan.ARG_BETA(p)
    if k is K.T3:
        return scan.ARG_GAMMA(p)
    return {
        K.T1_COR_LIMIT: scan.ARG_SHIFTED_CONVEX(1.0),
        K.T1_COR_MOD2: scan.MOD_PRE_SCHWARZ,
        K.T2_COR_LIMIT: scan.ARG_BETA(1.0),
        K.T2_COR_MOD_SQRT3: scan.MOD_PRE_SCHWARZ,
        K.T3_COR_PI4: scan.ARG_GAMMA(0.0),
        K.T3_COR_DEV1: scan.MOD_STAR_DEV,
    }[k]


def conclusion_functional(c):
    if c.kind.value.startswith("T3"):
        return scan.RE_HALF
    return scan.RE_STAR


class HypothesisStatus(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    BOUNDARY_LIMIT = "BOUNDARY_LIMIT"


class ConclusionStatus(enum.Enum):
    OBSERVED = "OBSERVED"
    VIOLATED = "VIOLATED"


def bound_status(result, threshold, margin=DEFAULT_MARGIN):
    """Verdict for ``sup F < threshold`` on the open disc.

    FAILS when some scanned point reaches the threshold.  HOLDS needs the
    sup to sit at least ``margin`` below it, and, if the scan is still
    climbing at the outer circle, a further allowance for the unscanned
    annulus (see :meth:`ScanResult.tail_allowance`).  Anything in between is
    BOUNDARY_LIMIT.
    """
    sup = result.extremum
    if sup >= threshold:
        return HypothesisStatus.FAILS
    allowance = result.tail_allowance() if result.tail_flag else 0.0
    if sup + allowance <= threshold - margin:
        return HypothesisStatus.HOLDS
    return HypothesisStatus.BOUNDARY_LIMIT


@dataclass(frozen=True)
class CriterionReport:
    criterion: Criterion
    threshold: float
    hypothesis_scan: scan.ScanResult
    hypothesis_status: HypothesisStatus
    conclusion_scan: scan.ScanResult
    conclusion_status: ConclusionStatus
    function: str = ""

    @property
    def implication_consistent(self):
        return not (self.hypothesis_status is HypothesisStatus.HOLDS
                    and self.conclusion_status is ConclusionStatus.VIOLATED)

    def to_json(self):
        h, c = self.hypothesis_scan, self.conclusion_scan
        return {
            "function": self.function,
            "criterion": self.criterion.kind.value,
            "params": self.criterion.params,
            "threshold": self.threshold,
            "hypothesis": {
                "functional": h.functional,
                "status": self.hypothesis_status.value,
                "extremum": h.extremum,
                "witness": [h.witness.real, h.witness.imag],
                "tail_flag": h.tail_flag,
                "region_exit": h.region_exit,
            },
            "conclusion": {
                "functional": c.functional,
                "status": self.conclusion_status.value,
                "extremum": c.extremum,
                "witness": [c.witness.real, c.witness.imag],
            },
            "implication_consistent": self.implication_consistent,
        }


def certify(f, c, grid=ScanGrid(), margin=DEFAULT_MARGIN, conclusion_tol=CONCLUSION_TOL):
    check_normalized(f)
    threshold = threshold_of(c)
    hyp = scan_sup(f, hypothesis_functional(c), grid)
    con = scan_inf(f, conclusion_functional(c), grid)
    con_status = (ConclusionStatus.VIOLATED if con.extremum < -conclusion_tol
                  else ConclusionStatus.OBSERVED)
    return CriterionReport(
        criterion=c,
        threshold=threshold,
        hypothesis_scan=hyp,
        hypothesis_status=bound_status(hyp, threshold, margin),
        conclusion_scan=con,
        conclusion_status=con_status,
        function=f.name,
    )


@dataclass(frozen=True)
class ClassGReport:
    status: HypothesisStatus
    scan: scan.ScanResult
    bound: float = CLASS_G_BOUND

    def to_json(self):
        return {
            "class": "G",
            "bound": self.bound,
            "status": self.status.value,
            "extremum": self.scan.extremum,
            "witness": [self.scan.witness.real, self.scan.witness.imag],
            "tail_flag": self.scan.tail_flag,
        }


def class_g_membership(f, grid=ScanGrid(), margin=DEFAULT_MARGIN):
    """Ozaki's class G: Re(1 + z f''/f') < 3/2 on D."""
    check_normalized(f)
    res = scan_sup(f, scan.RE_CONVEX, grid)
    return ClassGReport(bound_status(res, CLASS_G_BOUND, margin), res)
