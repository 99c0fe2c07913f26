"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import cmath
import math
import os
import sys
import warnings

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import grid_minima, m22_roots, transfer_by_product  # noqa: E402
from specsing.coalescence import critical_epsilons, k_pair, sweep  # noqa: E402
from specsing.gain_sphere import (  # noqa: E402
    GainMedium,
    SphericalResonator,
    enumerate_modes,
    min_radius,
    mode_gain_pert,
    mode_wavelength_pert,
    reflection_coefficient,
    refractive_index,
    scan_reflection,
    solve_mode_exact,
)
from specsing.point_core import MatchingMatrix, SpectralKind, m22, spectrum, transfer_matrix  # noqa: E402
from specsing.specfun import sph_bessel  # noqa: E402
from specsing.symmetries import PTParameters, build_PT, build_PT_ss_family  # noqa: E402

NM = 1e-9
NU = math.sqrt(5) / 2
SEED = 7

DIODE = GainMedium(3.4, 1500 * NM, 0.02)
DIODE_RES = SphericalResonator(150e-6)
DYE = GainMedium(1.479, 549 * NM, 0.062)
DYE_RES = SphericalResonator(3.3e-3)

# (row, g0 in cm^-1, m, lambda_pert nm, lambda_exact nm)
CRITICAL_MODES = [
    (1, 4.981546, 17779, 549.00830142, 549.00829751),
    (2, 4.981554, 17780, 548.97742540, 548.97743614),
    (3, 4.981572, 17778, 549.03918091, 549.03916235),
    (4, 4.981594, 17781, 548.94655285, 548.94657824),
    (5, 4.981630, 17777, 549.07006387, 549.07003065),
    (6, 4.981668, 17782, 548.91568378, 548.91572380),
    (7, 4.981720, 17776, 549.10095031, 549.10090243),
]


def _line(n, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}"


@pytest.fixture
def report(capsys):
    def emit(n, checks, detail):
        ok = all(checks)
        with capsys.disabled():
            print("\n" + _line(n, ok, detail))
        assert ok, detail

    return emit


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def criterion_1():
    ss = spectrum(MatchingMatrix.delta(2j))
    bs = spectrum(MatchingMatrix.delta(-2))
    r1 = abs(m22(MatchingMatrix.delta(2j), ss[0].k))
    r2 = abs(m22(MatchingMatrix.delta(-2), bs[0].k))
    checks = [
        len(ss) == 1 and ss[0].kind is SpectralKind.SPECTRAL_SINGULARITY and abs(ss[0].k - 1) <= 1e-12,
        len(bs) == 1 and bs[0].kind is SpectralKind.BOUND_STATE and abs(bs[0].k - 1j) <= 1e-12,
        r1 <= 1e-12,
        r2 <= 1e-12,
    ]
    return checks, f"delta 2i -> SS k={ss[0].k:.3g}, delta -2 -> BS k={bs[0].k:.3g}, |M22| {max(r1, r2):.1e}"


def criterion_2():
    rng = np.random.default_rng(SEED)
    n = 10_000
    arrs = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    ks = rng.uniform(0.2, 5, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    det_err = form_err = t_err = 0.0
    for arr, k in zip(arrs, ks):
        B = MatchingMatrix.from_array(arr)
        M = transfer_matrix(B, k)
        det_err = max(det_err, abs(M.det - B.det) / (1 + abs(B.det)))
        form_err = max(form_err, np.abs(M.to_array() - transfer_by_product(arr, k)).max())
        real = MatchingMatrix.from_array(arr.real)
        roots = [p.k for p in spectrum(real) if p.k is not None]
        for r in roots:
            t_err = max(t_err, min(abs(-r.conjugate() - q) for q in roots) / (1 + abs(r)))
    checks = [det_err <= 1e-12, form_err <= 1e-12, t_err <= 1e-10]
    return checks, f"10^4 matrices: det {det_err:.1e}, closed form {form_err:.1e}, k->-k* {t_err:.1e}"


def criterion_3():
    rng = np.random.default_rng(SEED)
    s3 = np.diag([1.0, -1.0])
    pt_err = det_err = 0.0
    for _ in range(1000):
        eps1 = int(rng.choice([-1, 1]))
        b, c = rng.uniform(0, 2, 2)
        if eps1 == -1 and b * c >= 1:
            c = 0.99 / b
        p = PTParameters(rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi), b, c, eps1, int(rng.choice([-1, 1])))
        arr = build_PT(p).to_array()
        pt_err = max(pt_err, np.abs(arr.conj() @ s3 @ arr - s3).max())
        det_err = max(det_err, abs(np.linalg.det(arr) - cmath.exp(1j * (p.alpha + p.delta))))
    mu_err = ss_err = 0.0
    for _ in range(1000):
        b, c = rng.uniform(0.05, 3, 2)
        B = build_PT_ss_family(rng.uniform(0, 2 * np.pi), b, c, int(rng.choice([-1, 1])))
        mu_err = max(mu_err, abs(B.trace / (2 * B.b)))
        ss = [q.k for q in spectrum(B) if q.kind is SpectralKind.SPECTRAL_SINGULARITY]
        ss_err = max(ss_err, min(abs(k - math.sqrt(c / b)) for k in ss) if ss else math.inf)
    checks = [pt_err <= 1e-12, det_err <= 1e-12, mu_err <= 1e-12, ss_err <= 1e-12]
    return checks, f"PT defect {pt_err:.1e}, det {det_err:.1e}, SS family |mu| {mu_err:.1e}, k-sqrt(c/b) {ss_err:.1e}"


def criterion_4():
    mu = -1 + 4j
    eps = [e for e, _ in critical_epsilons(mu)]
    c_ok = len(eps) == 2 and abs(eps[0]) <= 1e-12 and abs(eps[1] - 0.25) <= 1e-12
    scan0 = sweep(mu, [0.0])
    kp0, km0 = k_pair(mu, 0.0)
    double = spectrum(MatchingMatrix(mu, 1, mu * mu, mu))
    ep_ok = (
        abs(kp0 - (4 + 1j)) <= 1e-12 and abs(km0 - (4 + 1j)) <= 1e-12
        and len(double) == 1 and double[0].order == 2 and double[0].kind is SpectralKind.BOUND_STATE
        and scan0.rows[0].plus.kind is SpectralKind.BOUND_STATE
    )
    row = sweep(mu, [0.25]).rows[0]
    kinds = [row.plus.kind, row.minus.kind]
    t_ok = (
        abs(row.plus.k - (3.75 + 2j)) <= 1e-12 and abs(row.minus.k - 4.25) <= 1e-12
        and kinds.count(SpectralKind.SPECTRAL_SINGULARITY) == 1
    )
    r2 = sweep(2j, [-1.0]).rows[0]
    pair_ok = sorted([r2.plus.k.real, r2.minus.k.real]) == pytest.approx([1, 3], abs=1e-12) and all(
        p.kind is SpectralKind.SPECTRAL_SINGULARITY for p in (r2.plus, r2.minus)
    )
    d2 = spectrum(MatchingMatrix(2j, 1, (2j) ** 2, 2j))
    double_ok = len(d2) == 1 and d2[0].order == 2 and abs(d2[0].k - 2) <= 1e-12 and d2[0].kind is SpectralKind.SPECTRAL_SINGULARITY
    return [c_ok, ep_ok, t_ok, pair_ok, double_ok], (
        f"critical eps {eps}, EP at {kp0}, eps=1/4 -> {row.plus.k}, {row.minus.k}; mu=2i SS pair and double SS at 2"
    )


def _bessel_grid():
    pts = []
    for r in np.geomspace(0.5, 1e5, 40):
        for t in (0.0, 1.0, -2.5, 5.0):
            if abs(t) < r:
                pts.append(complex(math.sqrt(r * r - t * t), t))
    return pts


def criterion_5():
    from oracles import scipy_sph

    w_err = rec_err = 0.0
    for z in _bessel_grid():
        ev = sph_bessel(NU, z)
        w = ev.j * ev.h1_prime - ev.j_prime * ev.h1
        w_err = max(w_err, abs(w - 1j / z**2) * abs(z) ** 2)
        ref = scipy_sph(NU, z)
        rec_err = max(
            rec_err,
            abs(ev.j_prime - ref[1]) / max(abs(ref[1]), abs(ref[0])),
            abs(ev.h1_prime - ref[3]) / max(abs(ref[3]), abs(ref[2])),
        )
    ov_err = 0.0
    for z in (40.0, 40j, 40 * cmath.exp(0.3j), 40 * cmath.exp(-0.1j)):
        s = sph_bessel(NU, z, regime="Series")
        a = sph_bessel(NU, z, regime="Asymptotic")
        for f in ("j", "j_prime", "h1", "h1_prime", "h2", "h2_prime"):
            scale = max(abs(getattr(a, f)), abs(a.j), abs(a.h1))
            ov_err = max(ov_err, abs(getattr(s, f) - getattr(a, f)) / scale)
    checks = [w_err <= 1e-9, rec_err <= 1e-9, ov_err <= 1e-10]
    return checks, f"Wronskian {w_err:.1e}, recursion vs scipy {rec_err:.1e}, overlap at |z|=40 {ov_err:.1e}"


def criterion_6():
    lam = mode_wavelength_pert(679, DIODE, DIODE_RES) / NM
    g0 = mode_gain_pert(679, DIODE, DIODE_RES) / 100
    modes = enumerate_modes(DIODE, DIODE_RES, 1000e2)
    ms = [s.m for s in modes]
    by_m = sorted(modes, key=lambda s: s.m)
    lam_hi, lam_lo = by_m[0].lambda_pert / NM, by_m[-1].lambda_pert / NM
    checks = [
        abs(lam - 1499.870) <= 1e-3,
        abs(g0 - 40.412) <= 1e-2,
        len(modes) == 66,
        min(ms) == 647 and max(ms) == 712,
        abs(lam_hi - 1573.930) <= 1e-3 and abs(lam_lo - 1430.457) <= 1e-3,
    ]
    return checks, (
        f"m=679: {lam:.5f} nm, {g0:.5f} cm^-1; {len(modes)} modes m {min(ms)}-{max(ms)}, "
        f"{lam_hi:.5f}/{lam_lo:.5f} nm"
    )


def criterion_7():
    a_min = min_radius(DYE, 5e2) * 1e3
    modes = enumerate_modes(DYE, DYE_RES, 5e2)
    ms = [s.m for s in modes]
    g = [s.g0 / 100 for s in modes]
    by_m = sorted(modes, key=lambda s: s.m)
    lam_hi, lam_lo = by_m[0].lambda_pert / NM, by_m[-1].lambda_pert / NM
    checks = [
        abs(a_min - 3.287825) <= 1e-5,
        len(modes) == 67,
        min(ms) == 17746 and max(ms) == 17812,
        abs(min(g) - 4.981546) <= 1e-4 and abs(max(g) - 4.999727) <= 1e-4,
        abs(lam_hi - 550.028673) <= 1e-3 and abs(lam_lo - 547.991700) <= 1e-3,
    ]
    return checks, (
        f"a_min {a_min:.7f} mm; {len(modes)} modes m {min(ms)}-{max(ms)}, g0 {min(g):.6f}-{max(g):.6f}, "
        f"{lam_hi:.6f}/{lam_lo:.6f} nm"
    )


def criterion_8():
    worst_g = worst_p = worst_e = 0.0
    ordered = [s.m for s in enumerate_modes(DYE, DYE_RES, 4.98173e2)]
    for row, g0_ref, m, lp_ref, le_ref in CRITICAL_MODES:
        worst_g = max(worst_g, abs(mode_gain_pert(m, DYE, DYE_RES) / 100 - g0_ref))
        worst_p = max(worst_p, abs(mode_wavelength_pert(m, DYE, DYE_RES) / NM - lp_ref))
        sol = solve_mode_exact(m, DYE, DYE_RES)
        worst_e = max(worst_e, abs(sol.lambda_exact / NM - le_ref))
        worst_g = max(worst_g, abs(sol.g0 / 100 - g0_ref))
    order_ok = ordered == [m for _, _, m, _, _ in CRITICAL_MODES]
    checks = [worst_g <= 1e-5, worst_p <= 1e-5, worst_e <= 1e-4, order_ok]
    return checks, f"7 rows: g0 {worst_g:.1e} cm^-1, lambda_pert {worst_p:.1e} nm, lambda_exact {worst_e:.1e} nm"


def criterion_9():
    sol = solve_mode_exact(17779, DYE, DYE_RES)
    med = DYE.with_g0(sol.g0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r_ss = reflection_coefficient(refractive_index(sol.lambda_exact, med), 2 * math.pi / sol.lambda_exact, DYE_RES.a)
    scan = scan_reflection(med, DYE_RES, (548.7 * NM, 549.3 * NM), 4001)
    peaks = scan.peaks()
    # the tallest peak must be the singularity itself; the runner-up is the next resonance
    top_lam = peaks[0][0]
    second = next(r for lam, r in peaks if abs(lam - top_lam) > 1e-3 * NM)
    flat = scan_reflection(DYE.with_kappa0(0.0), DYE_RES, (548.7 * NM, 549.3 * NM), 4001)
    flat_err = float(np.max(np.abs(flat.R - 1)))
    checks = [
        r_ss >= 1e12,
        abs(top_lam - sol.lambda_exact) <= 1e-4 * NM,
        r_ss >= 100 * second,
        flat_err <= 1e-9,
    ]
    return checks, (
        f"R(lambda1) {r_ss:.2e} at {sol.lambda_exact / NM:.6f} nm, second peak {second:.2e}, "
        f"kappa0=0 max|R-1| {flat_err:.1e}"
    )


def criterion_10():
    rng = np.random.default_rng(SEED)
    n_ok = 0
    worst = 0.0
    trials = 0
    while trials < 100:
        arr = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if abs(arr[0, 1]) < 0.2:
            continue
        trials += 1
        B = MatchingMatrix.from_array(arr)
        roots = [p.k for p in spectrum(B)]
        span = max(abs(r) for r in roots)
        half = 1.25 * span + 0.5
        centre = np.mean(roots)
        box = (centre.real - half, centre.real + half, centre.imag - half, centre.imag + half)
        minima, h = grid_minima(arr, box)
        # roots closer to k = 0 or to each other than a few cells cannot be resolved
        resolvable = [r for r in roots if abs(r) > 3 * h]
        if len(roots) == 2 and abs(roots[0] - roots[1]) < 3 * h:
            resolvable = resolvable[:1]
        # every grid minimum is a root, and every resolvable root is a grid minimum
        cell = math.sqrt(2) * h
        matched = all(min(abs(q - r) for r in roots) <= cell for q in minima) and all(
            minima.size and min(abs(r - q) for q in minima) <= cell for r in resolvable
        )
        ref = m22_roots(arr)
        agree = all(min(abs(r - q) for q in ref) <= 1e-9 * (1 + abs(r)) for r in roots)
        if matched and agree:
            n_ok += 1
        if minima.size:
            worst = max(worst, max(min(abs(r - q) for q in minima) / h for r in resolvable))
    return [n_ok == 100], f"{n_ok}/100 matrices: roots at grid minima, worst offset {worst:.2f} cells"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, report):
    checks, detail = CRITERIA[n - 1]()
    report(n, checks, detail)


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, start=1):
        checks, detail = fn()
        failed += not all(checks)
        print(_line(i, all(checks), detail))
    sys.exit(1 if failed else 0)
