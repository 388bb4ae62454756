"""Two-band quadrature mirror filter bank.

The bank is built from a single 32-tap linear-phase lowpass prototype h:
the analysis highpass is its frequency mirror, h1[n] = (-1)^n h[n], and the
synthesis filters g0[n] = 2 h[n], g1[n] = -2 (-1)^n h[n] cancel the aliasing
introduced by the 2x decimation regardless of the prototype shape.
"""

import numpy as np

PROTOTYPE_TAPS = 32

# Half of the symmetric prototype (taps 0..15; taps 16..31 mirror them).
# Least-squares design: near-flat power complementarity A^2(w) + A^2(pi-w)
# plus stopband suppression above 0.64*pi. Reconstruction ripple 0.0043 dB,
# stopband below -52 dB, white-noise round-trip SNR ~67 dB.
# Regenerate with tools/design_qmf_prototype.py.
_PROTOTYPE_HALF = (
    0.00034655277597722055,
    -0.0008640417096383443,
    -0.0009239712773334329,
    0.0030814909896769876,
    0.0013397996795879636,
    -0.007712153156703987,
    -0.000647110634842366,
    0.015939724038610655,
    -0.0029053230788688494,
    -0.029400470020144863,
    0.012614588364794656,
    0.051856903756879,
    -0.037105708550755435,
    -0.09980517990833199,
    0.12658506159214264,
    0.46753625033325114,
)


class QmfBank:
    """Prototype plus the four derived filters and the round-trip delay."""

    def __init__(self, h):
        h = np.asarray(h, dtype=np.float64)
        if h.shape != (PROTOTYPE_TAPS,):
            raise ValueError(f"prototype must have {PROTOTYPE_TAPS} taps, got {h.shape}")
        sign = (-1.0) ** np.arange(PROTOTYPE_TAPS)
        self.h = h
        self.h0 = h.copy()
        self.h1 = sign * h
        self.g0 = 2.0 * h
        self.g1 = -2.0 * sign * h
        # group delay of the analysis+synthesis cascade
        self.delay = PROTOTYPE_TAPS - 1


def design_prototype() -> QmfBank:
    """Return the bank built on the canonical 32-tap prototype."""
    half = np.asarray(_PROTOTYPE_HALF, dtype=np.float64)
    return QmfBank(np.concatenate([half, half[::-1]]))


def derive_bank(h) -> QmfBank:
    """Build a bank from an arbitrary 32-tap prototype."""
    return QmfBank(h)


def fir(taps, x):
    """Causal FIR filtering, zero initial state, output length = input length."""
    x = np.asarray(x, dtype=np.float64)
    return np.convolve(taps, x)[: len(x)]


def analyze(x, bank: QmfBank):
    """Split a full-rate signal into half-rate low and high bands."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot analyze an empty signal")
    low = fir(bank.h0, x)[::2]
    high = fir(bank.h1, x)[::2]
    return low, high


def synthesize(low, high, bank: QmfBank):
    """Recombine half-rate bands into a full-rate signal (delayed by bank.delay)."""
    low = np.asarray(low, dtype=np.float64)
    high = np.asarray(high, dtype=np.float64)
    if len(low) != len(high):
        raise ValueError(f"band length mismatch: {len(low)} != {len(high)}")
    up_low = np.zeros(2 * len(low))
    up_high = np.zeros(2 * len(high))
    up_low[::2] = low
    up_high[::2] = high
    return fir(bank.g0, up_low) + fir(bank.g1, up_high)


def export_prototype(path):
    """Write the canonical prototype, one coefficient per line, full precision."""
    bank = design_prototype()
    with open(path, "w") as f:
        for c in bank.h:
            f.write(f"{c!r}\n")
