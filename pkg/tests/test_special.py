import math

import numpy as np
import pytest
from scipy.special import gamma as scipy_gamma

from levyslab import (
    DomainError,
    EvalResult,
    MLParams,
    NonConvergenceError,
    PoleError,
    gamma_fn,
    ml_asymptotic,
    ml_eval_array,
    mittag_leffler,
)
from levyslab.special import REGIME_ASYMPTOTIC, REGIME_SERIES

from oracles import gamma_weierstrass, ml_ref

# frozen with the 50-digit references before the build
GAMMA_HALF = 1.7724538509055160273
GAMMA_2P8 = 1.676490787764436858
INV_GAMMA_1P5 = 1.1283791670955125739
INV_GAMMA_1P3 = 1.1142425085473018466
ML_09_2I = complex(-0.42478976004321821445, 0.68158964839602527582)
LEAD_05_100 = 0.0056418958354775628695  # 0.01 / Gamma(0.5)


class TestGamma:
    def test_known_values(self):
        assert gamma_fn(1.0) == pytest.approx(1.0, abs=1e-14)
        assert gamma_fn(0.5) == pytest.approx(GAMMA_HALF, rel=1e-13)

    def test_product_recurrence_oracle(self):
        # Gamma(2.8) = 1.8 * 0.8 * Gamma(0.8), seeded from the Weierstrass
        # product reference
        ref = float(1.8 * 0.8 * gamma_weierstrass(0.8))
        assert ref == pytest.approx(GAMMA_2P8, rel=1e-14)
        assert gamma_fn(2.8) == pytest.approx(GAMMA_2P8, rel=1e-13)

    def test_relative_error_window(self):
        xs = np.linspace(0.5, 50.0, 497)
        worst = max(
            abs(gamma_fn(float(x)) - float(scipy_gamma(x))) / float(scipy_gamma(x))
            for x in xs
        )
        assert worst <= 1e-12

    def test_reflection_negative(self):
        # Gamma(-0.5) = -2 sqrt(pi)
        assert gamma_fn(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-12)
        assert gamma_fn(-1.5) == pytest.approx(
            float(scipy_gamma(-1.5)), rel=1e-12
        )

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -17.0])
    def test_poles(self, x):
        with pytest.raises(PoleError):
            gamma_fn(x)


class TestMittagLeffler:
    def test_exponential_reduction(self):
        rng = np.random.default_rng(1234)
        p = MLParams(1.0, 1.0)
        checked = 0
        while checked < 500:
            zr, zi = rng.uniform(-3.0, 3.0, size=2)
            if math.hypot(zr, zi) > 3.0:
                continue
            z = complex(zr, zi)
            res = mittag_leffler(p, z)
            assert abs(res.value - np.exp(z)) <= 1e-10
            checked += 1

    def test_cosine_reduction(self):
        p = MLParams(2.0, 1.0)
        for x in np.linspace(0.0, 3.0, 100):
            res = mittag_leffler(p, complex(-x * x, 0.0))
            assert abs(res.value - math.cos(x)) <= 1e-10

    def test_half_pi_zero(self):
        res = mittag_leffler(MLParams(2.0, 1.0), complex(-((math.pi / 2) ** 2), 0.0))
        assert abs(res.value) <= 1e-10

    def test_normalization_at_origin(self):
        for g, d in ((0.5, 1.0), (0.7, 1.3), (0.9, 0.8), (1.0, 1.0), (1.6, 1.95)):
            res = mittag_leffler(MLParams(g, d), 0.0)
            assert abs(res.value - 1.0 / gamma_fn(d)) <= 1e-14
        res = mittag_leffler(MLParams(0.7, 1.3), 0.0)
        assert res.value.real == pytest.approx(INV_GAMMA_1P3, abs=1e-14)

    def test_frozen_complex_value(self):
        res = mittag_leffler(MLParams(0.9, 1.0), 2j)
        assert abs(res.value - ML_09_2I) <= 1e-10
        assert res.regime == REGIME_SERIES

    def test_estimate_is_honest(self):
        rng = np.random.default_rng(77)
        params = [(0.5, 1.0), (0.8, 1.3), (0.95, 1.0), (1.6, 1.0), (1.9, 1.95), (0.6, 1.0)]
        for _ in range(60):
            g, d = params[rng.integers(0, len(params))]
            r = rng.uniform(0.1, 30.0)
            kind = rng.integers(0, 3)
            if kind == 0:
                z = complex(-r, 0.0)
            elif kind == 1:
                z = complex(0.0, r)
            else:
                z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(z) ** (1.0 / g) > 350.0:
                continue
            res = mittag_leffler(MLParams(g, d), z)
            err = abs(res.value - ml_ref(g, d, z))
            assert err <= max(res.est_abs_error, 1e-15), (g, d, z, err, res)

    def test_monotone_decay_on_negative_axis(self):
        for g in (0.3, 0.5, 0.7, 0.9, 1.0):
            p = MLParams(g, 1.0)
            xs = np.linspace(0.0, 50.0, 101)
            vals = [mittag_leffler(p, complex(-x, 0.0)).value.real for x in xs]
            assert all(v > 0.0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_nonconvergence_reports_best_effort(self):
        # growing direction far beyond double range
        with pytest.raises(NonConvergenceError):
            mittag_leffler(MLParams(0.5, 1.0), complex(4.0e6, 0.0))

    def test_params_validated(self):
        with pytest.raises(DomainError):
            MLParams(0.0, 1.0)
        with pytest.raises(DomainError):
            MLParams(0.5, -1.0)


class TestRegimeCrossover:
    @pytest.mark.parametrize("g", [0.5, 0.8, 0.9])
    def test_switch_point_inside_agreement_band(self, g):
        p = MLParams(g, 1.0)
        switch_x = None
        for x in np.linspace(1.05, 40.0, 600):
            res = mittag_leffler(p, complex(-x, 0.0))
            if res.regime == REGIME_ASYMPTOTIC:
                switch_x = float(x)
                break
        assert switch_x is not None, "no asymptotic engagement below x=40"
        ref = ml_ref(g, 1.0, complex(-switch_x, 0.0)).real
        approx = ml_asymptotic(p, switch_x, 4).value.real
        assert abs(approx - ref) / abs(ref) <= 1e-3

    def test_series_and_asymptotic_agree_in_band(self):
        # a band where the extended-precision series matches the 4-term tail
        p = MLParams(0.5, 1.0)
        for x in (8.0, 12.0, 20.0):
            ref = ml_ref(0.5, 1.0, complex(-x, 0.0)).real
            approx = ml_asymptotic(p, x, 4).value.real
            assert abs(approx - ref) / abs(ref) <= 1e-3


class TestMlAsymptotic:
    def test_leading_decay(self):
        res = ml_asymptotic(MLParams(0.5, 1.0), 100.0, 1)
        assert res.value.real == pytest.approx(LEAD_05_100, rel=1e-12)
        assert res.regime == REGIME_ASYMPTOTIC

    def test_exponential_limit_within_estimate(self):
        # at integer order every algebraic term vanishes and the truncation
        # error estimate must still cover the pure exponential
        res = ml_asymptotic(MLParams(1.0, 1.0), 50.0, 3)
        assert res.value == 0.0
        assert abs(res.value.real - math.exp(-50.0)) <= res.est_abs_error

    def test_estimate_covers_truth(self):
        for g, x, n in ((0.8, 15.0, 4), (0.5, 12.0, 2), (0.9, 25.0, 6)):
            res = ml_asymptotic(MLParams(g, 1.0), x, n)
            ref = ml_ref(g, 1.0, complex(-x, 0.0)).real
            assert abs(res.value.real - ref) <= res.est_abs_error

    def test_domain_error(self):
        with pytest.raises(DomainError):
            ml_asymptotic(MLParams(0.5, 1.0), 0.5, 2)
        with pytest.raises(DomainError):
            ml_asymptotic(MLParams(0.5, 1.0), 10.0, 0)


class TestBatchEvaluation:
    def test_matches_scalar_inside_series_range(self):
        p = MLParams(0.7, 1.0)
        z = np.linspace(0.0, 1.0, 64) ** 0.7 * (-1.0) + 0j
        batch = ml_eval_array(p, z)
        for zi, vi in zip(z, batch):
            res = mittag_leffler(p, zi)
            assert abs(vi - res.value) <= res.est_abs_error + 1e-13

    def test_scalar_fallback_for_large_arguments(self):
        p = MLParams(0.8, 1.0)
        z = np.array([-0.5 + 0j, -40.0 + 0j, 30.0j])
        batch = ml_eval_array(p, z)
        for zi, vi in zip(z, batch):
            assert abs(vi - mittag_leffler(p, zi).value) <= 1e-10

    def test_result_type(self):
        res = mittag_leffler(MLParams(0.5, 1.0), 0.3)
        assert isinstance(res, EvalResult)
        assert res.est_abs_error >= 0.0
