"""Linear predictor estimation by the autocorrelation method.

Coefficients solve the Toeplitz normal equations via Levinson-Durbin with a
small white-noise correction on the zero-lag term, which keeps the synthesis
filter minimum-phase (all reflection coefficients inside the unit circle).
"""

import numpy as np
from dataclasses import dataclass

# Relative boost applied to r[0] before the recursion.
WHITE_NOISE_CORRECTION = 1e-6


@dataclass(frozen=True)
class LinearPredictor:
    order: int
    coeffs: np.ndarray  # a_k, k = 1..order; predicts sum(a_k * x[n-k])


def autocorrelation(frame, max_lag):
    """Biased autocorrelation r[0..max_lag] over a rectangular window."""
    frame = np.asarray(frame, dtype=np.float64)
    n = len(frame)
    r = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        r[k] = np.dot(frame[k:], frame[: n - k]) if k < n else 0.0
    return r


def levinson(r, order):
    """Levinson-Durbin recursion on autocorrelation r[0..order].

    Returns (a, k): prediction coefficients and reflection coefficients.
    Requires r[0] > 0.
    """
    a = np.zeros(order)
    k = np.zeros(order)
    err = r[0]
    for i in range(1, order + 1):
        acc = r[i] - np.dot(a[: i - 1], r[i - 1 : 0 : -1])
        ki = acc / err
        k[i - 1] = ki
        prev = a[: i - 1].copy()
        a[: i - 1] = prev - ki * prev[::-1]
        a[i - 1] = ki
        err *= 1.0 - ki * ki
        if err <= 0.0:
            # numerically exhausted; remaining orders stay zero
            break
    return a, k


def fit_lpc(frame, order) -> LinearPredictor:
    """Estimate an order-`order` predictor from one reconstructed frame."""
    frame = np.asarray(frame, dtype=np.float64)
    if order >= len(frame):
        raise ValueError(f"order {order} must be below frame length {len(frame)}")
    r = autocorrelation(frame, order)
    if r[0] <= 0.0:
        # degenerate (silent) frame: predict zero
        return LinearPredictor(order=order, coeffs=np.zeros(order))
    r[0] *= 1.0 + WHITE_NOISE_CORRECTION
    a, _ = levinson(r, order)
    return LinearPredictor(order=order, coeffs=a)


def predict_linear(pred: LinearPredictor, history):
    """Predicted sample from the last `order` reconstructions, newest first."""
    return float(np.dot(pred.coeffs, history))
