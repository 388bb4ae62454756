"""Per-band ADPCM loop with backward-adapted prediction.

Each sample is predicted from already-reconstructed history, the residual is
quantized adaptively, and the reconstruction feeds the next prediction. The
predictor is refit at every frame boundary on the previous frame's
reconstruction, so the decoder, which reconstructs the same samples, derives
the same coefficients and no predictor state is ever transmitted.
"""

import numpy as np
from dataclasses import dataclass, field, replace

from . import lpc, mlp
from .quantizer import (
    DEFAULT_MULTIPLIERS,
    STEP_INIT,
    STEP_MAX,
    STEP_MIN,
    QuantizerSpec,
    dequantize_raw,
    quantize_raw,
)

PREDICTOR_KINDS = ("lpc10", "lpc25", "mlp")
_PREDICTOR_ORDER = {"lpc10": 10, "lpc25": 25, "mlp": 10}
DEFAULT_FRAME_LENGTH = 200
BAND_LOW = "L"
BAND_HIGH = "H"


@dataclass(frozen=True)
class CodecConfig:
    """Everything both ends must agree on, besides the code stream itself."""

    predictor_kind: str = "lpc10"
    nq_low: int = 4
    nq_high: int = 2
    frame_length: int = DEFAULT_FRAME_LENGTH
    seed_base: int = 0
    train: mlp.TrainConfig = field(default_factory=mlp.TrainConfig)
    multipliers: dict = field(default_factory=lambda: dict(DEFAULT_MULTIPLIERS))
    step_min: float = STEP_MIN
    step_max: float = STEP_MAX
    step_init: float = STEP_INIT

    def __post_init__(self):
        if self.predictor_kind not in PREDICTOR_KINDS:
            raise ValueError(f"unknown predictor kind {self.predictor_kind!r}")
        for nq in (self.nq_low, self.nq_high):
            if not 2 <= nq <= 5:
                raise ValueError(f"nq must be in 2..5, got {nq}")
        if self.frame_length < 2 * self.predictor_order:
            raise ValueError(
                f"frame_length {self.frame_length} must be at least twice the "
                f"predictor order {self.predictor_order}"
            )

    @property
    def predictor_order(self):
        return _PREDICTOR_ORDER[self.predictor_kind]

    def band_nq(self, band_id):
        if band_id == BAND_LOW:
            return self.nq_low
        if band_id == BAND_HIGH:
            return self.nq_high
        raise ValueError(f"band_id must be {BAND_LOW!r} or {BAND_HIGH!r}")

    def quantizer_spec(self, band_id) -> QuantizerSpec:
        nq = self.band_nq(band_id)
        return QuantizerSpec(
            nq=nq,
            multipliers=tuple(self.multipliers[nq]),
            step_min=self.step_min,
            step_max=self.step_max,
        )


class BandCoder:
    """Sequential state machine for one band; shared by encoder and decoder.

    The encode and decode paths run the identical predict / reconstruct /
    retrain arithmetic in the identical order, which is what makes the
    decoder's output bit-exact against the encoder's local reconstruction.
    """

    def __init__(self, cfg: CodecConfig, band_id):
        self.cfg = cfg
        self.kind = cfg.predictor_kind
        self.order = cfg.predictor_order
        self.spec = cfg.quantizer_spec(band_id)
        self.step = cfg.step_init
        self.history = np.zeros(self.order)  # newest first
        self.predictor = None  # frame 0 runs the zero predictor
        self.frame_buffer = []
        self.frames_trained = 0
        self._train_cfg = replace(cfg.train, seed_base=cfg.seed_base)

    def _predict(self):
        if self.predictor is None:
            return 0.0
        if self.kind == "mlp":
            return mlp.committee_predict(self.predictor, self.history)
        return lpc.predict_linear(self.predictor, self.history)

    def _advance(self, x_hat):
        self.history[1:] = self.history[:-1]
        self.history[0] = x_hat
        buf = self.frame_buffer
        buf.append(x_hat)
        if len(buf) == self.cfg.frame_length:
            frame = np.asarray(buf)
            if self.kind == "mlp":
                self.predictor = mlp.train_committee(
                    frame, self.frames_trained, self._train_cfg
                )
            else:
                self.predictor = lpc.fit_lpc(frame, self.order)
            self.frames_trained += 1
            self.frame_buffer = []

    def encode_sample(self, x):
        p = self._predict()
        d = x - p
        code, d_hat, self.step = quantize_raw(d, self.step, self.spec)
        x_hat = p + d_hat
        self._advance(x_hat)
        return code, x_hat, d

    def decode_sample(self, code):
        p = self._predict()
        d_hat, self.step = dequantize_raw(code, self.step, self.spec)
        x_hat = p + d_hat
        self._advance(x_hat)
        return x_hat


def encode_band(x, cfg: CodecConfig, band_id):
    """Encode one band; returns (codes, local reconstruction, loop residuals)."""
    x = np.asarray(x, dtype=np.float64)
    coder = BandCoder(cfg, band_id)
    n = len(x)
    codes = np.empty(n, dtype=np.int64)
    x_hat = np.empty(n)
    d = np.empty(n)
    for i in range(n):
        codes[i], x_hat[i], d[i] = coder.encode_sample(x[i])
    return codes, x_hat, d


def decode_band(codes, cfg: CodecConfig, band_id):
    """Decode one band's code stream into its reconstruction."""
    coder = BandCoder(cfg, band_id)
    x_hat = np.empty(len(codes))
    for i, code in enumerate(codes):
        x_hat[i] = coder.decode_sample(int(code))
    return x_hat
