import json
import math

import numpy as np
import pytest

from hardyapprox import bounds, decay, oracle, symbols


def _seq(f, n):
    n = np.arange(1, n + 1, dtype=float)
    return f(n)


class TestFit:
    def test_geometric(self):
        m = decay.fit(_seq(lambda n: 0.5 ** n, 30), "geometric")
        assert m.fitted["r"] == pytest.approx(0.5, rel=1e-12)
        assert m.r_squared == pytest.approx(1.0)

    def test_stretched(self):
        m = decay.fit(_seq(lambda n: np.exp(-2 * np.sqrt(n)), 40), "stretched")
        assert m.fitted["b"] == pytest.approx(2.0, abs=1e-9)
        assert m.fitted["d"] == pytest.approx(0.0, abs=1e-8)
        assert m.r_squared == pytest.approx(1.0)

    def test_fixed_d(self):
        m = decay.fit(_seq(lambda n: n ** -0.25 * np.exp(-1.5 * np.sqrt(n)), 40), "stretched", d=-0.25)
        assert m.fitted["b"] == pytest.approx(1.5, abs=1e-10)

    def test_cusp(self):
        n = np.arange(2, 40)
        m = decay.fit(np.vstack([n, 3 * np.exp(-0.7 * n / np.log(n))]), "cusp")
        assert m.fitted["b"] == pytest.approx(0.7, abs=1e-10)

    def test_range(self):
        m = decay.fit(_seq(lambda n: 0.5 ** n, 30), "geometric", (10, 20))
        assert m.n_range == (10, 20)

    def test_too_short(self):
        with pytest.raises(decay.FitError):
            decay.fit([1.0, 0.5, 0.25], "geometric")

    def test_nonpositive(self):
        with pytest.raises(decay.FitError):
            decay.fit([1.0, 0.5, 0.0, 0.1, 0.05], "geometric")

    def test_unknown_kind(self):
        with pytest.raises(decay.FitError):
            decay.fit([1.0] * 5, "power")

    def test_noise_floor_excluded(self):
        t = oracle.SingularValueTable(np.r_[0.5 ** np.arange(1, 30), np.full(5, 1e-15)], 64)
        m = decay.fit(t, "geometric")
        assert m.n_range == (1, 29)

    def test_bound_report_log_domain(self):
        rep = bounds.global_regular_report(symbols.cusp_modulus(), np.arange(2, 500))
        m = decay.fit(rep, "cusp")
        assert np.isfinite(m.fitted["b"])

    def test_refit_recovers(self):
        m = decay.fit(_seq(lambda n: np.exp(-1.3 * np.sqrt(n) + 0.4 * np.log(n) - 0.2), 50), "stretched")
        again = decay.fit(np.vstack([np.arange(1, 51), m.predict(np.arange(1, 51))]), "stretched")
        for k in ("b", "d", "c"):
            assert again.fitted[k] == pytest.approx(m.fitted[k], abs=1e-8)

    def test_json(self):
        m = decay.fit(_seq(lambda n: 0.5 ** n, 10), "geometric")
        d = json.loads(m.to_json())
        assert d["kind"] == "geometric" and d["n_range"] == [1, 10]


class TestCompare:
    def test_geometric_first(self):
        ranked = decay.fit_all(_seq(lambda n: 0.6 ** n, 30), (2, 30))
        assert ranked[0].kind == "geometric"

    def test_tie_break(self):
        a = decay.DecayModel("stretched", {"b": 1, "d": 0, "c": 0}, 1.0, (1, 5), 3)
        b = decay.DecayModel("geometric", {"r": 0.5, "c": 0}, 1.0, (1, 5), 2)
        assert decay.compare([a, b])[0].kind == "geometric"

    def test_range_mismatch(self):
        a = decay.DecayModel("geometric", {"r": 0.5, "c": 0}, 1.0, (1, 5), 2)
        b = decay.DecayModel("geometric", {"r": 0.5, "c": 0}, 1.0, (1, 6), 2)
        with pytest.raises(decay.FitError):
            decay.compare([a, b])

    def test_lens_oracle(self, lens_half_table):
        ranked = decay.compare([decay.fit(lens_half_table, k, (10, 30)) for k in ("geometric", "stretched")])
        assert ranked[0].kind == "stretched"

    def test_floor_consistency_dilation(self):
        t = oracle.approximation_numbers(oracle.build_matrix(symbols.dilation(0.7), 128), 20,
                                         check_convergence=False)
        floor = bounds.geometric_decay_floor(symbols.dilation(0.7), 2000)
        assert decay.fit(t, "geometric").fitted["r"] >= floor - 0.05
