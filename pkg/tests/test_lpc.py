"""Levinson recursion against a dense Toeplitz solve, plus model-recovery checks."""

import numpy as np
import pytest

from subband_adpcm import lpc, metrics


def _toeplitz_solve(r, order):
    """Dense normal-equation solve, the independent reference for Levinson."""
    R = np.empty((order, order))
    for i in range(order):
        for j in range(order):
            R[i, j] = r[abs(i - j)]
    return np.linalg.solve(R, r[1 : order + 1])


def _ar1(n, rho, noise_scale, seed):
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(n) * noise_scale
    x = np.zeros(n)
    for i in range(1, n):
        x[i] = rho * x[i - 1] + w[i]
    return x


class TestFitLpc:
    def test_zero_frame_gives_zero_predictor(self):
        pred = lpc.fit_lpc(np.zeros(200), 10)
        assert not pred.coeffs.any()

    def test_order_must_be_below_frame_length(self):
        with pytest.raises(ValueError):
            lpc.fit_lpc(np.ones(10), 10)

    def test_ar1_recovery(self):
        x = _ar1(4000, 0.9, 1.0, seed=42)
        pred = lpc.fit_lpc(x, 10)
        assert 0.85 <= pred.coeffs[0] <= 0.95
        assert np.abs(pred.coeffs[1:]).max() < 0.15

    def test_levinson_matches_dense_solve(self):
        rng = np.random.default_rng(3)
        for trial in range(100):
            order = int(rng.integers(2, 26))
            frame = rng.standard_normal(200) * 10.0 ** rng.uniform(-2, 3)
            r = lpc.autocorrelation(frame, order)
            r[0] *= 1.0 + lpc.WHITE_NOISE_CORRECTION
            a, _ = lpc.levinson(r, order)
            ref = _toeplitz_solve(r, order)
            err = np.linalg.norm(a - ref) / np.linalg.norm(ref)
            assert err <= 1e-8, f"trial {trial}: {err}"

    def test_reflection_coefficients_inside_unit_circle(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            frame = rng.standard_normal(200)
            r = lpc.autocorrelation(frame, 25)
            r[0] *= 1.0 + lpc.WHITE_NOISE_CORRECTION
            _, k = lpc.levinson(r, 25)
            assert np.abs(k).max() < 1.0


class TestPredictLinear:
    def test_zero_coefficients(self):
        pred = lpc.LinearPredictor(order=3, coeffs=np.zeros(3))
        assert lpc.predict_linear(pred, [1.0, 2.0, 3.0]) == 0.0

    def test_identity_predictor(self):
        pred = lpc.LinearPredictor(order=1, coeffs=np.array([1.0]))
        assert lpc.predict_linear(pred, [4.2]) == 4.2

    def test_ar1_prediction_gain_near_theory(self):
        # matched AR(1): gain should approach 10*log10(1/(1-rho^2)) = 7.2 dB
        x = _ar1(20000, 0.9, 1000.0, seed=8)
        pred = lpc.fit_lpc(x[:4000], 10)
        preds = np.array(
            [lpc.predict_linear(pred, x[i - 1 : i - 11 : -1]) for i in range(4000, 20000)]
        )
        d = x[4000:] - preds
        rep = metrics.prediction_gain(x[4000:], d, 200)
        assert abs(rep.mean - 7.2) <= 1.0

    def test_white_noise_gain_near_zero(self):
        rng = np.random.default_rng(9)
        x = rng.standard_normal(20000) * 1000.0
        pred = lpc.fit_lpc(x[:4000], 10)
        preds = np.array(
            [lpc.predict_linear(pred, x[i - 1 : i - 11 : -1]) for i in range(4000, 20000)]
        )
        rep = metrics.prediction_gain(x[4000:], x[4000:] - preds, 200)
        assert abs(rep.mean) < 1.0
