"""End-to-end acceptance criteria, one test each, at the stated tolerances.

Each test registers itself through the ``acceptance`` fixture so that the
terminal summary prints one PASS/FAIL line per criterion.
"""

import math

import numpy as np

from starcert import catalog as C
from starcert import criteria as CR
from starcert import geometry as G
from starcert import scan as SC
from starcert.criteria import T1, T2, T3, threshold_of
from starcert.scan import ScanGrid, scan_inf, scan_sup

from .helpers import cauchy_derivative, disc_points

SQRT3 = math.sqrt(3)
GRID = ScanGrid()


def test_01_thresholds_exact(acceptance):
    cases = [
        (threshold_of(T1(SQRT3 + 1)), math.pi / 4),
        (threshold_of(T3(SQRT3 - 1)), math.pi / 6),
        (threshold_of(T3(0)), math.pi / 4),
        (threshold_of(T2(1)), math.atan(2 / SQRT3)),
    ]
    err = max(abs(a - b) for a, b in cases)
    deg = math.degrees(threshold_of(T2(1)))
    acceptance(1, "thresholds exact", f"max err {err:.1e}; T2(1) = {deg:.2f} deg")
    assert err <= 1e-12
    assert round(deg, 1) == 49.1


def test_02_radius_functions(acceptance):
    a_star, phi_max = G.phi_alpha_max(1.0, 100.0)
    beta = np.linspace(-100, 1, 2001)
    psi = np.array([G.psi_beta(b) for b in beta])
    psi_lim, rho_lim = G.psi_beta(-1e6), G.rho_gamma(1e6)
    acceptance(2, "phi max / psi limit / rho limit",
               f"phi max {phi_max:.9f} at {a_star:.7f}; psi(-1e6) {psi_lim:.6f}; rho(1e6) {rho_lim:.7f}")
    assert abs(phi_max - 2) <= 1e-6 and abs(a_star - 4) <= 1e-6
    assert np.all(np.diff(psi) < 0)
    assert abs(psi_lim - SQRT3) <= 1e-3
    assert abs(rho_lim - 1) <= 1e-3


def test_03_scalar_minimum(acceptance):
    m = G.varphi_scalar_min()
    acceptance(3, "min of 3a + 1/a", f"{m.numeric_min:.12f} at {m.numeric_argmin:.12f}")
    assert abs(m.numeric_min - 2 * SQRT3) <= 1e-9
    assert abs(m.numeric_argmin - 1 / SQRT3) <= 1e-9


def _per_radius_checks(res, thr):
    vals = [v for _, v in res.per_radius]
    return (all(v <= thr for v in vals),
            all(b > a for a, b in zip(vals, vals[1:])),
            thr - vals[-1])


def test_04_example_1(acceptance):
    f = C.get("paper_example_1")
    thr = math.pi / 4
    hyp = scan_sup(f, SC.ARG_SHIFTED_CONVEX(SQRT3 + 1), GRID)
    below, increasing, gap = _per_radius_checks(hyp, thr)
    conv = SC.RE_CONVEX(f, np.array([-0.99]))[0]
    conv_scan = scan_inf(f, SC.RE_CONVEX, GRID).extremum
    star = scan_inf(f, SC.RE_STAR, GRID).extremum
    acceptance(4, "paper_example_1 (alpha = sqrt3+1)",
               f"gap at r=0.999 {gap:.2e}; Re(1+zf''/f')(-0.99) {conv:.6f}; inf Re zf'/f {star:.4f}")
    assert below and increasing and gap <= 1e-3
    assert conv <= -1.5 and abs(conv - (-1.538381)) <= 1e-4
    assert conv_scan < 0
    assert star >= -1e-6


def test_05_example_2(acceptance):
    f = C.get("paper_example_2")
    thr = math.pi / 6
    hyp = scan_sup(f, SC.ARG_GAMMA(SQRT3 - 1), GRID)
    below, increasing, gap = _per_radius_checks(hyp, thr)
    star = SC.RE_STAR(f, np.array([-0.99]))[0]
    half = scan_inf(f, SC.RE_HALF, GRID).extremum
    acceptance(5, "paper_example_2 (gamma = sqrt3-1)",
               f"gap at r=0.999 {gap:.2e}; Re zf'/f(-0.99) {star:.6f}; inf Re f/z {half:.4f}")
    assert below and increasing and gap <= 1e-3
    assert star <= -0.43 and abs(star - (-0.435389)) <= 1e-4
    assert half >= -1e-6


def test_06_koebe(acceptance):
    z = 0.999 * np.exp(1j * math.pi / 4)
    val = SC.RE_HALF(C.get("koebe"), np.array([z]))[0]
    expected = -(1 + math.sqrt(2)) / 2
    acceptance(6, "Koebe Re k(z)/z near e^{i pi/4}",
               f"{val:.6f} vs {expected:.6f}; commonly quoted -(sqrt2+1) is off by a factor 2")
    assert val < 0
    assert abs(val - expected) <= 2e-3


def test_07_lemma_a(acceptance):
    rng = np.random.default_rng(2024)
    worst_gap = worst_re = 0.0
    branches = positive = True
    count = 0
    while count < 1000:
        rho = float(rng.uniform(0.01, 0.99))
        theta = float(rng.uniform(0, 2 * math.pi))
        if abs(math.sin(theta)) < 1e-6:
            continue
        count += 1
        w = G.lemma_a_witness(rho, theta)
        # closed forms of the family, independent of the implementation
        a, k = 1 / math.tan(theta / 2), 1 / math.sin(theta)
        worst_gap = max(worst_gap, abs(w.equality_gap), abs(w.k - k) / max(1, abs(k)))
        worst_re = max(worst_re, abs(w.p_z0.real), abs(w.a - a) / max(1, abs(a)))
        if a > 0:
            branches &= w.k >= 0.5 * (a + 1 / a) - 1e-10
        else:
            branches &= w.k <= -0.5 * (abs(a) + 1 / abs(a)) + 1e-10
        zs = rho * np.sqrt(rng.random(8)) * 0.999 * np.exp(2j * np.pi * rng.random(8))
        positive &= bool(np.all(((rho + zs) / (rho - zs)).real > 0))
    acceptance(7, "boundary lemma equality family (1000 samples)",
               f"max gap {worst_gap:.1e}; max |Re p(z0)| {worst_re:.1e}")
    assert worst_gap <= 1e-10 and worst_re <= 1e-10
    assert branches and positive


SWEEP = {
    T1: (1.1, 1.5, 2.0, SQRT3 + 1, 4.0),
    T2: (-10.0, -2.0, 0.0, 0.5, 0.9),
    T3: (0.0, 0.5, SQRT3 - 1, 1.0, 5.0),
}


def test_08_implication_consistency(acceptance):
    crits = [mk(p) for mk, ps in SWEEP.items() for p in ps] + list(CR.COROLLARIES)
    bad, total, holds = [], 0, 0
    for name in C.CATALOG:
        f = C.get(name)
        for c in crits:
            rep = CR.certify(f, c, GRID)
            total += 1
            holds += rep.hypothesis_status is CR.HypothesisStatus.HOLDS
            if (rep.hypothesis_status is CR.HypothesisStatus.HOLDS
                    and rep.conclusion_status is CR.ConclusionStatus.VIOLATED):
                bad.append((name, c))
    acceptance(8, "implication consistency sweep",
               f"{total} reports, {holds} HOLDS, {len(bad)} inconsistent")
    assert not bad


def test_09_series_agreement(acceptance):
    z = disc_points(100, 0.9, seed=9)
    worst = 0.0
    for name in C.CATALOG:
        f = C.get(name)
        for a, b in zip(f.values(z), f.series_values(z)):
            worst = max(worst, float(np.max(np.abs(a - b))))
    f1, f2 = C.get("paper_example_1"), C.get("paper_example_2")
    # profiles rebuilt from f by Cauchy-integral differentiation of the closed form
    g = z * cauchy_derivative(f2.eval_f, z) / f2.eval_f(z)
    star_rt = float(np.max(np.abs(g - C.example_2_profile().value(z))))
    h = 1 + z * cauchy_derivative(f1.eval_f, z, 2) / cauchy_derivative(f1.eval_f, z, 1)
    conv_rt = float(np.max(np.abs(h - C.example_1_profile().value(z))))
    acceptance(9, "series vs closed form; profile round trips",
               f"series {worst:.1e}; starlike {star_rt:.1e}; convexity {conv_rt:.1e}")
    assert worst < 1e-8
    assert star_rt < 1e-8 and conv_rt < 1e-8


def test_10_geometry_identities(acceptance):
    rng = np.random.default_rng(10)
    errs = []
    for alpha in np.r_[1.1, 2, 4, 10, rng.uniform(1.01, 50, 3)]:
        errs.append(abs(G.phi_alpha(alpha) - alpha * math.sin(math.atan(SQRT3 / (alpha - 1)))))
    for beta in np.r_[1, 0, -1, -10, rng.uniform(-50, 1, 3)]:
        c = (3 - 2 * beta) / 2
        errs.append(abs(G.psi_beta(beta) - c * math.sin(math.atan(2 * SQRT3 / (5 - 2 * beta)))))
    for gamma in np.r_[0, 1, 5, rng.uniform(0, 50, 3)]:
        errs.append(abs(G.rho_gamma(gamma) - (1 + gamma) * math.sin(math.atan(1 / (1 + gamma)))))
    disagree = 0
    for _ in range(1000):
        c = float(rng.uniform(0.1, 10))
        d = G.Disc(c, float(rng.uniform(0, 1.2) * c))
        s = G.Sector(float(rng.uniform(1e-3, math.pi / 2)))
        disagree += G.disc_in_sector(d, s) != G.disc_in_sector_sampled(d, s)
    acceptance(10, "geometry cross-identities",
               f"{len(errs)} identities, max err {max(errs):.1e}; {disagree}/1000 disagreements")
    assert len(errs) == 20
    assert max(errs) <= 1e-12
    assert disagree == 0
