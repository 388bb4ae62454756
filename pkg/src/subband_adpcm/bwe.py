"""Bandwidth extension: synthesize a 4-8 kHz band from narrowband speech.

Squaring the upsampled signal generates harmonics and intermodulation
products of every low-band component; high-pass filtering keeps only the
products that land above 4 kHz, and per-frame gain control places them at a
fixed level below the low band. The low band itself is passed through
untouched, so only the empty upper half of the spectrum is filled in.
"""

import numpy as np
from dataclasses import dataclass

from . import qmf
from .errors import FormatError

NARROWBAND_RATE = 8000
WIDEBAND_RATE = 16000


@dataclass(frozen=True)
class BweConfig:
    gain_db: float = -12.0   # synthetic band level relative to low-band RMS
    frame_length: int = 400  # gain-control frame at 16 kHz

    def __post_init__(self):
        if self.gain_db > 0:
            raise ValueError("gain_db must be <= 0")
        if self.frame_length < 2:
            raise ValueError("frame_length must be > 1")


def _frames(n, frame_length):
    for start in range(0, n, frame_length):
        yield start, min(start + frame_length, n)


def extend_bandwidth(x_nb, bank: qmf.QmfBank, cfg: BweConfig = BweConfig(),
                     sample_rate=NARROWBAND_RATE):
    """Map an 8 kHz signal to 16 kHz with a synthetic high band."""
    if sample_rate != NARROWBAND_RATE:
        raise FormatError(f"expected {NARROWBAND_RATE} Hz input, got {sample_rate}")
    x_nb = np.asarray(x_nb, dtype=np.float64)
    if x_nb.size == 0:
        raise ValueError("cannot extend an empty signal")

    # interpolate through the synthesis low branch (gain 2 offsets zero-stuffing)
    up = np.zeros(2 * len(x_nb))
    up[::2] = x_nb
    u = qmf.fir(bank.g0, up)

    squared = u * u
    for start, stop in _frames(len(squared), cfg.frame_length):
        squared[start:stop] -= squared[start:stop].mean()  # kill the DC of x^2

    high = qmf.fir(bank.h1, squared)

    target = 10.0 ** (cfg.gain_db / 20.0)
    for start, stop in _frames(len(high), cfg.frame_length):
        rms_u = np.sqrt(np.mean(u[start:stop] ** 2))
        rms_h = np.sqrt(np.mean(high[start:stop] ** 2))
        if rms_u <= 0.0 or rms_h <= 0.0:
            high[start:stop] = 0.0
        else:
            high[start:stop] *= target * rms_u / rms_h

    return u + high


def spectrum_dump(x, window_length, sample_rate=WIDEBAND_RATE):
    """Averaged Hann-windowed magnitude spectrum as (frequency_hz, dB) rows."""
    x = np.asarray(x, dtype=np.float64)
    if window_length > len(x):
        raise ValueError("window_length exceeds signal length")
    window = np.hanning(window_length)
    n_windows = len(x) // window_length
    power = np.zeros(window_length // 2 + 1)
    for i in range(n_windows):
        seg = x[i * window_length : (i + 1) * window_length] * window
        power += np.abs(np.fft.rfft(seg)) ** 2
    power /= n_windows
    freqs = np.fft.rfftfreq(window_length, 1.0 / sample_rate)
    db = 10.0 * np.log10(np.maximum(power, 1e-30))
    return np.column_stack([freqs, db])
