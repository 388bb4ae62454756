"""Segmental SNR and prediction gain.

Both metrics average per-frame log ratios, which keeps quiet passages from
being drowned out by loud ones. Frames whose reference energy falls below a
silence threshold are skipped, and per-frame values are clamped so a single
digitally-silent or bit-exact frame cannot dominate the mean.
"""

import numpy as np
from dataclasses import dataclass

from . import qmf
from .adpcm import BAND_HIGH, BAND_LOW

FULL_SCALE = 32768.0
SILENCE_ENERGY = 1e-8 * FULL_SCALE**2  # per-frame sum of squares
SEGSNR_CLAMP = (-10.0, 80.0)
GAIN_CLAMP = (-20.0, 80.0)


@dataclass
class SegmentalReport:
    per_frame_snr: np.ndarray
    mean: float
    std: float
    frames_counted: int


def _segmental(reference, error, frame_length, clamp):
    reference = np.asarray(reference, dtype=np.float64)
    error = np.asarray(error, dtype=np.float64)
    if len(reference) != len(error):
        raise ValueError(f"length mismatch: {len(reference)} != {len(error)}")
    if frame_length < 1:
        raise ValueError("frame_length must be positive")
    lo, hi = clamp
    values = []
    for start in range(0, len(reference) - frame_length + 1, frame_length):
        x = reference[start : start + frame_length]
        e = error[start : start + frame_length]
        sx = float(x @ x)
        if sx < SILENCE_ENERGY:
            continue
        se = float(e @ e)
        snr = hi if se == 0.0 else 10.0 * np.log10(sx / se)
        values.append(min(hi, max(lo, snr)))
    if not values:
        raise ValueError("no frames above the silence threshold")
    arr = np.asarray(values)
    return SegmentalReport(
        per_frame_snr=arr,
        mean=float(arr.mean()),
        std=float(arr.std()),
        frames_counted=len(arr),
    )


def segsnr(reference, test, frame_length) -> SegmentalReport:
    """Frame-averaged SNR of `test` against `reference` (both already aligned)."""
    reference = np.asarray(reference, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if len(reference) != len(test):
        raise ValueError(f"length mismatch: {len(reference)} != {len(test)}")
    return _segmental(reference, reference - test, frame_length, SEGSNR_CLAMP)


def prediction_gain(x_band, d_residuals, frame_length) -> SegmentalReport:
    """Segmental ratio of band signal power to loop-residual power.

    Negative values are meaningful (a predictor can add energy on
    unpredictable material), hence the wider clamp.
    """
    return _segmental(x_band, d_residuals, frame_length, GAIN_CLAMP)


def band_reference(x, bank, band_id):
    """The analyzer output a band's metrics are measured against."""
    low, high = qmf.analyze(x, bank)
    if band_id == BAND_LOW:
        return low
    if band_id == BAND_HIGH:
        return high
    raise ValueError(f"band_id must be {BAND_LOW!r} or {BAND_HIGH!r}")
