"""WAV file I/O, deliberately narrow: 16-bit PCM mono only.

Samples travel as float64 in raw PCM amplitude units (full scale 32768);
bit-exactness matters more here than format generality, so anything else is
rejected loudly.
"""

import wave

import numpy as np

from .errors import FormatError


def read_wav(path):
    """Read a 16-bit PCM mono WAV; returns (samples as float64, sample_rate)."""
    try:
        with wave.open(path, "rb") as f:
            if f.getcomptype() != "NONE":
                raise FormatError(f"{path}: compressed WAV not supported")
            if f.getnchannels() != 1:
                raise FormatError(f"{path}: expected mono, got {f.getnchannels()} channels")
            if f.getsampwidth() != 2:
                raise FormatError(f"{path}: expected 16-bit PCM, got {8 * f.getsampwidth()}-bit")
            rate = f.getframerate()
            raw = f.readframes(f.getnframes())
    except wave.Error as exc:
        raise FormatError(f"{path}: not a readable WAV file ({exc})") from exc
    samples = np.frombuffer(raw, dtype="<i2").astype(np.float64)
    return samples, rate


def write_wav(path, samples, sample_rate):
    """Write float64 PCM-scale samples as 16-bit mono WAV, clipping to range."""
    clipped = np.clip(np.round(samples), -32768, 32767).astype("<i2")
    with wave.open(path, "wb") as f:
        f.setnchannels(1)
        f.setsampwidth(2)
        f.setframerate(int(sample_rate))
        f.writeframes(clipped.tobytes())
