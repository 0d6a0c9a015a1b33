import math

import numpy as np
import pytest

from hardyapprox import disk, oracle, symbols
from hardyapprox.errors import DomainError


class TestBuildMatrix:
    def test_identity(self):
        M = oracle.build_matrix(symbols.identity(), 64)
        np.testing.assert_allclose(M.entries, np.eye(64), atol=1e-12)

    def test_zero_symbol(self):
        M = oracle.build_matrix(symbols.constant(0.0), 32)
        expected = np.zeros((32, 32))
        expected[0, 0] = 1
        np.testing.assert_allclose(M.entries, expected, atol=1e-14)

    def test_dilation_diagonal(self):
        M = oracle.build_matrix(symbols.dilation(0.5), 32)
        np.testing.assert_allclose(M.entries, np.diag(0.5 ** np.arange(32)), atol=1e-13)

    def test_first_column(self):
        M = oracle.build_matrix(symbols.automorphism(0.3), 64)
        assert M.entries[0, 0] == 1 and np.all(M.entries[1:, 0] == 0)

    def test_column_norms(self):
        M = oracle.build_matrix(symbols.automorphism(0.5), 256)
        assert np.all(np.linalg.norm(M.entries, axis=0) <= M.norm_bound() + 1e-9)

    def test_not_power_of_two(self):
        with pytest.raises(DomainError):
            oracle.build_matrix(symbols.identity(), 100)

    def test_real_symbol_real_matrix(self):
        assert np.isrealobj(oracle.build_matrix(symbols.lens(0.5), 32).entries)


class TestApproximationNumbers:
    def test_diagonal(self):
        t = oracle.approximation_numbers(oracle.build_matrix(symbols.dilation(0.5), 64), 20)
        np.testing.assert_allclose(t.values, 2.0 ** (1 - np.arange(1, 21)), rtol=1e-10)
        assert t.converged_upto == 20 and not t.nonconverged

    def test_identity(self):
        t = oracle.approximation_numbers(oracle.build_matrix(symbols.identity(), 64), 10, check_convergence=False)
        np.testing.assert_allclose(t.values, 1.0, atol=1e-12)

    def test_automorphism_not_compact(self):
        t = oracle.approximation_numbers(oracle.build_matrix(symbols.automorphism(0.5), 1024), 20,
                                         check_convergence=False)
        assert t.values[19] > 0.1

    def test_monotone_in_truncation(self):
        phi = symbols.lens(0.5)
        s1 = oracle.approximation_numbers(oracle.build_matrix(phi, 128), 40, check_convergence=False).values
        s2 = oracle.approximation_numbers(oracle.build_matrix(phi, 256), 40, check_convergence=False).values
        assert np.all(s1 <= s2 + 1e-9)

    def test_max_n_range(self):
        with pytest.raises(DomainError):
            oracle.approximation_numbers(oracle.build_matrix(symbols.identity(), 8), 9)

    def test_csv_round_trip(self):
        t = oracle.approximation_numbers(oracle.build_matrix(symbols.dilation(0.5), 16), 5)
        text = t.to_csv()
        assert text.splitlines()[0] == "n,sigma,truncation,converged"
        back = oracle.SingularValueTable.from_csv(text)
        np.testing.assert_array_equal(back.values, t.values)
        assert back.converged_upto == t.converged_upto


class TestKernelRoute:
    def test_three_kernels_frozen(self):
        # independent extended-precision eigenvalues of B^{-1} A for points 0, +-1/2
        t = oracle.kernel_approximation_numbers(symbols.lens(0.5), 3, anchors=[1, 1, -1], gaps=[1, 0.5, 0.5])
        np.testing.assert_allclose(t.values, [1.0, 0.52022393128597715, 0.2787871645428429], rtol=1e-12)

    def test_lower_bound_of_monomial_limit(self):
        phi = symbols.lens(0.5)
        kt = oracle.kernel_approximation_numbers(phi, 4)
        mono = oracle.approximation_numbers(oracle.build_matrix(phi, 1024), 4, check_convergence=False)
        # both are lower bounds of the same numbers; the leading ones nearly agree
        np.testing.assert_allclose(kt.values[:2], mono.values[:2], rtol=1e-5)

    def test_identity_all_ones(self):
        kt = oracle.kernel_approximation_numbers(symbols.identity(), 5)
        np.testing.assert_allclose(kt.values, 1.0, rtol=1e-12)

    def test_radial_only_rejected(self):
        with pytest.raises(DomainError):
            oracle.kernel_approximation_numbers(symbols.cusp(), 3)


class TestEigenvalues:
    def test_dilation(self):
        ev = oracle.eigenvalues_normalized(symbols.dilation(0.5), 0.0, 5, N=64)
        np.testing.assert_allclose(ev, 0.5 ** np.arange(5), atol=1e-12)

    def test_automorphism_unimodular(self):
        ev = oracle.eigenvalues_normalized(symbols.automorphism(0.4), 0.2, 4, N=64)
        np.testing.assert_allclose(np.abs(ev), 1.0, atol=1e-9)

    def test_ill_conditioning_warning(self):
        with pytest.warns(RuntimeWarning):
            oracle.eigenvalues_normalized(symbols.dilation(0.1), 0.0, 20, N=64)

    def test_spectral_radius(self):
        ev = oracle.eigenvalues_normalized(symbols.lens(0.5), 0.3, 6, N=256)
        assert np.all(np.abs(ev) <= 1 + 1e-9)


class TestSNumbers:
    def test_diagonal(self):
        res = oracle.snumber_cross_check(np.diag([3.0, 2.0, 1.0]), 2, draws=2000)
        assert res.a_n == pytest.approx(2.0)
        assert res.b_n <= 2.0 + 1e-9 and res.c_n >= 2.0 - res.gap

    def test_norm(self):
        M = np.array([[1.0, 2.0], [0.0, 1.0]])
        res = oracle.snumber_cross_check(M, 1, draws=500)
        assert res.a_n == pytest.approx(np.linalg.norm(M, 2))
        assert res.c_n == pytest.approx(res.a_n, rel=1e-12)

    def test_random_5x5(self):
        M = np.random.default_rng(3).standard_normal((5, 5))
        res = oracle.snumber_cross_check(M, 3)
        assert res.b_n <= res.a_n + 1e-9 and res.c_n >= res.a_n - res.gap and res.gap < 0.05

    def test_too_large(self):
        with pytest.raises(DomainError):
            oracle.snumber_cross_check(np.eye(9), 1)


class TestAdjoint:
    def test_origin(self):
        assert oracle.adjoint_kernel_check(symbols.lens(0.5), 0.0, 64) < 1e-14

    def test_identity(self):
        assert oracle.adjoint_kernel_check(symbols.identity(), 0.7, 64) < 1e-12

    def test_tail_bound(self):
        a = 0.8
        res = oracle.adjoint_kernel_check(symbols.automorphism(0.3), a, 128)
        assert res <= a ** 128 / (1 - a ** 2) + 1e-12


class TestGram:
    def test_functional_norm_single(self):
        assert oracle.functional_norm([0.5], [1.0]) == pytest.approx(disk.evaluation_norm(0.5, 2))

    def test_unconditional(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(2, 7))
            pts = 0.9 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
            lam = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            w = np.exp(2j * np.pi * rng.uniform(size=n))
            a = oracle.functional_norm(pts, lam)
            b = oracle.functional_norm(pts, w * lam)
            kappa = disk.interpolation_constant_bounds(disk.PointSequence(pts)).kappa_upper
            assert b <= kappa * a * (1 + 1e-12) and a <= kappa * b * (1 + 1e-12)
