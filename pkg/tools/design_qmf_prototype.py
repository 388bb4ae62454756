#!/usr/bin/env python3
"""Regenerate the 32-tap QMF prototype shipped in subband_adpcm.qmf.

Least-squares design over the 16 free taps of the symmetric prototype:
minimize the deviation of A^2(w) + A^2(pi - w) from 1 (round-trip flatness)
plus weighted stopband energy above 0.64*pi. The plain windowed half-band
sinc it starts from is amplitude-complementary, not power-complementary,
and only reaches ~18 dB round-trip SNR; the optimized taps reach ~67 dB.

Deterministic: fixed grid, fixed start, fixed optimizer settings.
Requires scipy (design-time only; the package itself ships the constants).

Usage: python tools/design_qmf_prototype.py [--export PATH]
"""

import argparse

import numpy as np
from scipy.optimize import minimize
from scipy.signal import firwin

NTAPS = 32
NHALF = NTAPS // 2
GRID = 2048
STOPBAND_EDGE = 0.64 * np.pi
STOPBAND_WEIGHT = 2.0


def design():
    w = (np.arange(GRID) + 0.5) * np.pi / GRID
    cosines = np.cos(np.outer(w, NHALF - 0.5 - np.arange(NHALF)))
    stop = w >= STOPBAND_EDGE

    def objective(half):
        amp = 2.0 * (cosines @ half)
        flat = amp**2 + amp[::-1] ** 2 - 1.0
        return np.mean(flat**2) + STOPBAND_WEIGHT * np.mean(amp[stop] ** 2)

    start = firwin(NTAPS, 0.5, window="hamming")[:NHALF]
    res = minimize(
        objective,
        start,
        method="L-BFGS-B",
        options={"maxiter": 5000, "ftol": 1e-18, "gtol": 1e-14},
    )
    return res.x, w, cosines


def report(half, w, cosines):
    amp = 2.0 * (cosines @ half)
    flat = amp**2 + amp[::-1] ** 2
    ripple = 10 * np.log10(max(flat.max(), 1 / flat.min()))
    stop = w >= STOPBAND_EDGE
    att = 20 * np.log10(np.abs(amp[stop]).max())
    print(f"# reconstruction ripple: {ripple:.4f} dB")
    print(f"# stopband peak: {att:.1f} dB")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--export", metavar="PATH", help="also write one tap per line here")
    args = parser.parse_args()

    half, w, cosines = design()
    report(half, w, cosines)
    print("_PROTOTYPE_HALF = (")
    for c in half:
        print(f"    {c!r},")
    print(")")
    if args.export:
        full = np.concatenate([half, half[::-1]])
        with open(args.export, "w") as f:
            for c in full:
                f.write(f"{c!r}\n")


if __name__ == "__main__":
    main()
