"""Adaptive scalar quantizer with per-code step-size multipliers.

Midrise rule, 2 to 5 bits per sample. The step size is multiplied after every
sample by a factor selected by the emitted code's magnitude, so small
residuals shrink the step and saturated ones grow it. Encoder and decoder
apply the identical update from the code alone, which keeps both step
trajectories bit-exact without side information.
"""

import math
from dataclasses import dataclass

from .errors import CorruptStreamError

STEP_MIN = 1e-3
STEP_MAX = 32768.0
STEP_INIT = 16.0

# Classical multiplier tables, one per bit depth. Inner codes shrink the
# step, outer codes grow it. Override via CodecConfig or a table file.
DEFAULT_MULTIPLIERS = {
    2: (0.8, 1.6),
    3: (0.9, 0.9, 1.25, 1.75),
    4: (0.9, 0.9, 0.9, 0.9, 1.2, 1.6, 2.0, 2.4),
    5: (0.9,) * 8 + (1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6),
}


@dataclass(frozen=True)
class QuantizerSpec:
    """Static quantizer parameters: bit depth, multipliers, step bounds."""

    nq: int
    multipliers: tuple
    step_min: float = STEP_MIN
    step_max: float = STEP_MAX

    def __post_init__(self):
        if not 2 <= self.nq <= 5:
            raise ValueError(f"nq must be in 2..5, got {self.nq}")
        if len(self.multipliers) != 2 ** (self.nq - 1):
            raise ValueError(
                f"need {2 ** (self.nq - 1)} multipliers for nq={self.nq}, "
                f"got {len(self.multipliers)}"
            )
        if any(m <= 0 for m in self.multipliers):
            raise ValueError("multipliers must be positive")
        if not 0 < self.step_min < self.step_max:
            raise ValueError("require 0 < step_min < step_max")

    @property
    def code_min(self):
        return -(2 ** (self.nq - 1))

    @property
    def code_max(self):
        return 2 ** (self.nq - 1) - 1


@dataclass(frozen=True)
class QuantizerState:
    """Value-typed quantizer state: spec plus the current step size."""

    spec: QuantizerSpec
    step: float = STEP_INIT


def default_spec(nq, multipliers=None) -> QuantizerSpec:
    table = DEFAULT_MULTIPLIERS[nq] if multipliers is None else tuple(multipliers)
    return QuantizerSpec(nq=nq, multipliers=table)


def magnitude_index(code):
    """Map a signed code to its multiplier index; -1 and 0 share index 0."""
    return code if code >= 0 else -code - 1


def quantize_raw(d, step, spec: QuantizerSpec):
    """One midrise quantization step on plain floats; returns (code, d_hat, step')."""
    code = math.floor(d / step)
    if code < spec.code_min:
        code = spec.code_min
    elif code > spec.code_max:
        code = spec.code_max
    d_hat = (code + 0.5) * step
    new_step = step * spec.multipliers[magnitude_index(code)]
    if new_step < spec.step_min:
        new_step = spec.step_min
    elif new_step > spec.step_max:
        new_step = spec.step_max
    return code, d_hat, new_step


def dequantize_raw(code, step, spec: QuantizerSpec):
    """Reconstruction and step update for a received code; mirrors quantize_raw."""
    if not spec.code_min <= code <= spec.code_max:
        raise CorruptStreamError(f"code {code} out of range for nq={spec.nq}")
    d_hat = (code + 0.5) * step
    new_step = step * spec.multipliers[magnitude_index(code)]
    if new_step < spec.step_min:
        new_step = spec.step_min
    elif new_step > spec.step_max:
        new_step = spec.step_max
    return d_hat, new_step


def quantize(d, state: QuantizerState):
    """Quantize one residual sample; returns (code, d_hat, next state)."""
    code, d_hat, step = quantize_raw(d, state.step, state.spec)
    return code, d_hat, QuantizerState(state.spec, step)


def dequantize(code, state: QuantizerState):
    """Invert one code; bit-exact twin of the encoder-side update."""
    d_hat, step = dequantize_raw(code, state.step, state.spec)
    return d_hat, QuantizerState(state.spec, step)


def load_multiplier_tables(path):
    """Read multiplier tables from a text file.

    Format: one table per line, "nq: m0 m1 ...", blank lines and #-comments
    ignored. Returns {nq: tuple_of_multipliers}; entries are validated.
    """
    tables = {}
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                head, body = line.split(":", 1)
                nq = int(head)
                values = tuple(float(v) for v in body.split())
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed table line") from exc
            QuantizerSpec(nq=nq, multipliers=values)  # validates counts/signs
            tables[nq] = values
    return tables
