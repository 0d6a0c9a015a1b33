"""
Acceptance suite: one test per criterion, at the stated tolerance.

Each test prints a ``criterion k: PASS|FAIL`` line with the measured
quantities; the terminal summary repeats the verdicts.
"""

import math
import sys

import numpy as np
import pytest

from hardyapprox import bounds, decay, disk, oracle, symbols
from hardyapprox.errors import DegenerateSequenceError


def _report(k, ok, detail):
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def test_criterion_01_lobo_sandwich():
    syms = [symbols.lens(0.3), symbols.lens(0.5), symbols.lens(0.7),
            symbols.automorphism(0.5), symbols.dilation(0.5)]
    bad = []
    worst = 0.0
    for phi in syms:
        s = oracle.approximation_numbers(oracle.build_matrix(phi, 1024), 25, check_convergence=False).values
        for n in range(1, 26):
            _, rep = bounds.optimize_lobo_sequence(phi, n, 2.0)
            lower = rep.value()
            worst = max(worst, lower / s[n - 1])
            if lower > s[n - 1] * (1 + 1e-6):
                bad.append((phi.label, n, lower, s[n - 1]))
    assert _report(1, not bad, f"max lower/oracle = {worst:.3g}, violations {bad}")


def test_criterion_02_eigenvalues():
    ev = oracle.eigenvalues_normalized(symbols.lens(0.5), 0.0, 6, N=512)
    err = np.max(np.abs(np.abs(ev) - 0.5 ** np.arange(6)))
    assert _report(2, err <= 1e-4, f"max |.| error {err:.2e}")


def test_criterion_03_carleson_embedding():
    rng = np.random.default_rng(20240603)
    violations, trials, worst = 0, 0, 0.0
    while trials < 500:
        n = int(rng.integers(1, 11))
        r = np.sqrt(rng.uniform(0, 0.95 ** 2, n))
        pts = r * np.exp(2j * np.pi * rng.uniform(size=n))
        try:
            seq = disk.PointSequence(pts)
        except DegenerateSequenceError:
            continue
        deg = int(rng.integers(0, 21))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        p = float(rng.choice([1.0, 2.0, 4.0]))
        lhs = disk.carleson_sum(seq, lambda z: np.polynomial.polynomial.polyval(z, coeffs), p)
        rhs = disk.carleson_embedding_constant(seq) * disk.hardy_norm(coeffs, p) ** p
        worst = max(worst, lhs / rhs)
        if lhs > rhs * (1 + 1e-8):
            violations += 1
        trials += 1
    assert _report(3, violations == 0, f"{violations} violations, max ratio {worst:.3g}")


def test_criterion_04_geometric_floor(lens_half_table):
    floor = bounds.geometric_decay_floor(symbols.lens(0.5))
    worst = 1.0
    for lo in range(5, 23):
        for hi in range(lo + 3, 26):
            worst = min(worst, decay.fit(lens_half_table, "geometric", (lo, hi)).fitted["r"])
    diag = oracle.approximation_numbers(oracle.build_matrix(symbols.dilation(0.5), 256), 25,
                                        check_convergence=False)
    r_diag = decay.fit(diag, "geometric", (1, 25)).fitted["r"]
    ok = worst >= floor - 0.05 and abs(r_diag - 0.5) <= 1e-9
    assert _report(4, ok, f"floor {floor:.6f}, slowest-allowed {floor - 0.05:.4f}, "
                          f"min fitted r {worst:.4f}, diagonal r {r_diag:.12f}")


def test_criterion_05_separation():
    bad = []
    margin = math.inf
    for sigma in (0.3, 0.5, 0.7, 0.9):
        floor = -(math.pi ** 2 / 2) / (1 - sigma)
        for n in range(1, 201):
            ld = disk.log_uniform_separation(disk.geometric_test_sequence(sigma, n))
            margin = min(margin, ld - floor)
            if ld < floor:
                bad.append((sigma, n))
    assert _report(5, not bad, f"min log-margin {margin:.3f}, violations {bad}")


def test_criterion_06_decay_discrimination(lens_half_table):
    st = decay.fit(lens_half_table, "stretched", (10, 30))
    geo = decay.fit(lens_half_table, "geometric", (10, 30))
    ranked = decay.compare([geo, st])
    cap = 1.1 * bounds.beta_p_theta(0.5, 2.0)
    ok = st.r_squared >= 0.99 and ranked[0].kind == "stretched" and 0 < st.fitted["b"] <= cap
    assert _report(6, ok, f"stretched r2 {st.r_squared:.5f} b {st.fitted['b']:.4f} (cap {cap:.4f}), "
                          f"geometric r2 {geo.r_squared:.5f}")


def test_criterion_07_snumbers():
    rng = np.random.default_rng(7)
    bad, max_gap = [], 0.0
    for trial in range(100):
        m, d = (int(x) for x in rng.integers(1, 9, 2))
        M = rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
        n = int(rng.integers(1, min(m, d) + 1))
        res = oracle.snumber_cross_check(M, n, draws=10_000, seed=trial)
        max_gap = max(max_gap, res.gap)
        if not (res.b_n <= res.a_n + 1e-9 and res.c_n >= res.a_n - res.gap and res.gap <= 0.05):
            bad.append((trial, m, d, n, res))
    assert _report(7, not bad, f"max gap {max_gap:.2e}, failures {len(bad)}")


def test_criterion_08_adjoint_kernel():
    res = oracle.adjoint_kernel_check(symbols.lens(0.5), 0.5, 256)
    assert _report(8, res < 1e-10, f"residual {res:.2e}")


def test_criterion_09_carl_triebel():
    devs = {s: abs(bounds.carl_triebel_root(s, 1.0, 1000) - s ** 2) for s in (0.3, 0.6, 0.9)}
    ok = all(d <= 1e-3 for d in devs.values())
    assert _report(9, ok, ", ".join(f"s={s}: |root - s^2| = {d:.2e}" for s, d in devs.items()))


def test_criterion_10_upper_bound_shapes():
    ks = np.arange(2, 10_001)
    lens_rep = bounds.global_regular_report(symbols.lens_modulus(0.5), ks)
    lens_fit = decay.fit(lens_rep, "stretched", d=0.0)

    cusp_rep = bounds.global_regular_report(symbols.cusp_modulus(), ks)
    # the bound is a step function of k; its shape is read off at the jump indices
    jumps = np.concatenate([[0], np.nonzero(np.diff(cusp_rep.log_values))[0] + 1])
    cusp_steps = bounds.BoundReport("global-regular", ks[jumps], cusp_rep.log_values[jumps],
                                    cusp_rep.constants, False)
    cusp_fit = decay.fit(cusp_steps, "cusp")
    cusp_all = decay.fit(cusp_rep, "cusp")

    ns = np.unique(np.logspace(3, 5, 60).astype(int))
    radial = bounds.radial_lower_bound(symbols.cusp(), 2.0, ns, sigma_grid=[])
    radial_fit = decay.fit(radial, "cusp")
    rel = abs(radial_fit.fitted["b"] - 25.0) / 25.0

    ok = lens_fit.r_squared >= 0.98 and cusp_fit.r_squared >= 0.98 and rel <= 0.2
    assert _report(10, ok, f"lens r2 {lens_fit.r_squared:.5f}; cusp r2 {cusp_fit.r_squared:.5f} at "
                           f"{jumps.size} jumps ({cusp_all.r_squared:.3f} over all k); "
                           f"radial cusp b {radial_fit.fitted['b']:.4f} ({100 * rel:.3f}% from 25)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
