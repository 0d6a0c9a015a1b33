import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hardyapprox import bounds, decay, disk, oracle, symbols

radius = st.floats(0.0, 0.95)
angle = st.floats(0.0, 2 * math.pi)


@st.composite
def points(draw):
    t = draw(angle)
    return draw(radius) * complex(math.cos(t), math.sin(t))


@st.composite
def separated(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pts = [draw(points()) for _ in range(n)]
    for i in range(n):
        for j in range(i):
            assume(abs(pts[i] - pts[j]) > 1e-3)
    return disk.PointSequence(np.array(pts, dtype=complex))


class TestDiskProperties:
    @given(points(), points())
    def test_rho_symmetric_and_bounded(self, z, w):
        a = disk.pseudo_hyperbolic_distance(z, w)
        assert a == np.float64(a) and 0 <= a < 1
        assert math.isclose(a, disk.pseudo_hyperbolic_distance(w, z), abs_tol=1e-12)

    @given(points(), points(), points())
    def test_rho_mobius_invariant(self, z, w, a):
        za, wa = disk.mobius_automorphism(a, z), disk.mobius_automorphism(a, w)
        assume(abs(za) < 0.999 and abs(wa) < 0.999)
        assert math.isclose(disk.pseudo_hyperbolic_distance(z, w),
                            disk.pseudo_hyperbolic_distance(za, wa), abs_tol=1e-9)

    @settings(max_examples=50)
    @given(separated())
    def test_delta_and_kappa(self, seq):
        delta = disk.uniform_separation_constant(seq)
        assert 0 < delta <= 1
        k = disk.interpolation_constant_bounds(seq)
        assert 1 <= k.kappa_lower <= k.kappa_upper * (1 + 1e-12)


class TestSymbolProperties:
    @settings(max_examples=50)
    @given(st.floats(0.05, 1.0), points())
    def test_schwarz_pick_lens(self, theta, z):
        assert symbols.pseudo_hyperbolic_derivative(symbols.lens(theta), z) <= 1 + 1e-9

    @settings(max_examples=50)
    @given(st.floats(0.05, 0.99), st.floats(0.0, 1.0))
    def test_lens_gap_below_modulus(self, theta, t):
        assume(t > 0)
        assert symbols.lens_gap(theta, t) <= symbols.lens_modulus(theta).omega(t) * (1 + 1e-12)


class TestOracleProperties:
    @settings(max_examples=15, deadline=None)
    @given(st.floats(0.1, 0.95), st.sampled_from([32, 64]))
    def test_descending(self, theta, N):
        t = oracle.approximation_numbers(oracle.build_matrix(symbols.lens(theta), N), 10, check_convergence=False)
        assert np.all(np.diff(t.values) <= 1e-12) and t.values[0] <= 1 + 1e-9


class TestDecayProperties:
    @given(st.floats(0.05, 0.95), st.floats(-3, 3))
    def test_geometric_recovery(self, r, c):
        n = np.arange(1, 20)
        m = decay.fit(np.vstack([n, np.exp(c) * r ** n]), "geometric")
        assert math.isclose(m.fitted["r"], r, rel_tol=1e-8)

    @given(st.floats(0.2, 3.0), st.floats(-1.0, 1.0), st.floats(-2, 2))
    def test_stretched_recovery(self, b, d, c):
        n = np.arange(1, 40)
        m = decay.fit(np.vstack([n, np.exp(-b * np.sqrt(n) + d * np.log(n) + c)]), "stretched")
        assert math.isclose(m.fitted["b"], b, abs_tol=1e-6)


class TestBoundProperties:
    @settings(max_examples=20, deadline=None)
    @given(st.floats(0.1, 0.9), st.floats(1.0, 4.0))
    def test_lens_asymptotic_monotone(self, theta, p):
        # the asymptotic form needs eps* < 1
        n0 = math.ceil(3 * bounds.beta_theta(theta) * p / (1 - theta)) + 1
        v = bounds.lens_asymptotic_log_bound(theta, p, np.arange(n0, n0 + 400))
        assert np.all(np.diff(v) <= 1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0.1, 0.9), st.integers(2, 200))
    def test_global_regular_monotone(self, theta, kmax):
        v = bounds.global_regular_report(symbols.lens_modulus(theta), np.arange(1, kmax + 1)).log_values
        assert np.all(np.diff(v) <= 1e-12)
