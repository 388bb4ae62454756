"""Shared fixtures: deterministic speech-like and noise test signals.

No recorded speech ships with the repository, so trend tests run on a
synthetic surrogate: voiced segments (pitch-drifting glottal-like source,
waveform-shaping saturation, formant resonators), fricative noise bursts and
pauses, concatenated with short fades. Energy is concentrated below 4 kHz
with genuinely noisy high-band content, which is what the codec's trend
criteria rely on. Set SPEECH_WAV to a 16 kHz mono recording to run the
acceptance suite on real speech instead.
"""

import os

import numpy as np
import pytest
from scipy.signal import lfilter

from subband_adpcm import qmf, wavio

RATE = 16000

_VOWELS = (
    (730, 1090, 2440, 3400),
    (270, 2290, 3010, 3700),
    (530, 1840, 2480, 3500),
    (440, 1020, 2240, 3300),
    (300, 870, 2240, 3400),
)


def _resonator(x, freq, bw, rate):
    r = np.exp(-np.pi * bw / rate)
    c = 2 * r * np.cos(2 * np.pi * freq / rate)
    gain = (1 - r) * np.sqrt(1 - 2 * r * np.cos(4 * np.pi * freq / rate) + r * r)
    return lfilter([gain], [1.0, -c, r * r], x)


def speech_like(duration=6.0, rate=RATE, seed=20240, peak=0.35):
    """Deterministic speech-shaped test signal in 16-bit PCM amplitude units."""
    rng = np.random.default_rng(seed)
    n = int(duration * rate)
    out = np.zeros(n + rate)
    pos = 0
    while pos < n:
        kind = rng.choice(("voiced", "fricative", "pause"), p=(0.55, 0.25, 0.20))
        length = int(rng.uniform(0.08, 0.25) * rate)
        if kind == "voiced":
            f0 = rng.uniform(85, 220)
            drift = f0 * (1 + rng.uniform(-0.15, 0.15) * np.linspace(0, 1, length))
            phase = np.cumsum(drift) / rate
            saw = 2.0 * (phase % 1.0) - 1.0
            src = np.tanh(2.5 * saw)  # soft saturation, a mild nonlinearity
            src = np.diff(src, prepend=src[0])
            f1, f2, f3, f4 = _VOWELS[rng.integers(len(_VOWELS))]
            jit = rng.uniform(0.9, 1.1, 4)
            seg = _resonator(src, f1 * jit[0], 90, rate)
            seg = seg + 0.5 * _resonator(src, f2 * jit[1], 110, rate)
            seg = seg + 0.25 * _resonator(src, f3 * jit[2], 150, rate)
            seg = seg + 0.12 * _resonator(src, f4 * jit[3], 200, rate)
            seg = seg + 0.01 * rng.standard_normal(length)
            amp = rng.uniform(0.5, 1.0)
        elif kind == "fricative":
            noise = rng.standard_normal(length)
            seg = _resonator(np.diff(noise, prepend=0.0), rng.uniform(2500, 6000), 1500, rate)
            amp = rng.uniform(0.05, 0.15)
        else:
            seg = 0.002 * rng.standard_normal(length)
            amp = 1.0
        ramp = min(length // 4, int(0.012 * rate))
        win = np.ones(length)
        win[:ramp] = 0.5 - 0.5 * np.cos(np.pi * np.arange(ramp) / ramp)
        win[length - ramp:] = win[:ramp][::-1]
        out[pos : pos + length] += seg / (np.abs(seg).max() + 1e-12) * amp * win
        pos += length
    out = out[:n]
    return out / np.abs(out).max() * peak * 32768.0


@pytest.fixture(scope="session")
def bank():
    return qmf.design_prototype()


@pytest.fixture(scope="session")
def speech6s():
    path = os.environ.get("SPEECH_WAV")
    if path:
        samples, rate = wavio.read_wav(path)
        assert rate == RATE, f"SPEECH_WAV must be {RATE} Hz"
        assert len(samples) >= 5 * RATE, "SPEECH_WAV must be at least 5 s"
        return samples
    return speech_like(6.0)


@pytest.fixture(scope="session")
def speech2s(speech6s):
    return speech6s[: 2 * RATE]


@pytest.fixture(scope="session")
def noise2s():
    rng = np.random.default_rng(99)
    return rng.standard_normal(2 * RATE) * 2000.0


@pytest.fixture()
def speech_wav(tmp_path, speech2s):
    path = tmp_path / "speech.wav"
    wavio.write_wav(str(path), speech2s, RATE)
    return str(path)
