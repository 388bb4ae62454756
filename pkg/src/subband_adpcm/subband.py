"""Full two-band codec pipeline: QMF split, per-band ADPCM, bitstream I/O.

Encoding: split the 16 kHz input into half-rate bands, run the ADPCM loop on
each, and serialize header plus packed codes. Decoding mirrors every stage
and compensates the filter-bank delay, so output sample n lines up with
input sample n and the length round-trips exactly.
"""

import numpy as np
from dataclasses import dataclass

from . import qmf
from .adpcm import BAND_HIGH, BAND_LOW, CodecConfig, decode_band, encode_band
from .bitstream import (
    HEADER_SIZE,
    StreamHeader,
    pack_codes,
    pack_header,
    parse_header,
    payload_bits,
    unpack_codes,
)
from .errors import CorruptStreamError, FormatError

SAMPLE_RATE = 16000


@dataclass
class EncodeResult:
    """Encoder outputs plus the loop-internal signals metrics need."""

    bitstream: bytes
    band_refs: dict      # band id -> analyzer output (the per-band reference)
    band_recons: dict    # band id -> encoder-local reconstruction
    band_residuals: dict # band id -> pre-quantization loop residuals
    local_decoded: np.ndarray  # synthesized local reconstruction, delay-trimmed


def bit_rate(nq_low, nq_high):
    """(bits per full-rate sample, kbit/s) for a bit-depth pair."""
    for nq in (nq_low, nq_high):
        if not 2 <= nq <= 5:
            raise ValueError(f"nq must be in 2..5, got {nq}")
    bits_per_sample = (nq_low + nq_high) / 2
    return bits_per_sample, SAMPLE_RATE / 1000.0 * bits_per_sample


def _trim_delay(full_rate, num_samples, delay):
    """Drop the filter-bank delay, zero-pad the tail to the original length."""
    out = np.zeros(num_samples)
    avail = min(num_samples, len(full_rate) - delay)
    out[:avail] = full_rate[delay : delay + avail]
    return out


def encode_internal(x, cfg: CodecConfig, sample_rate=SAMPLE_RATE) -> EncodeResult:
    """Encode and keep the per-band internals for evaluation."""
    if sample_rate != SAMPLE_RATE:
        raise FormatError(f"codec expects {SAMPLE_RATE} Hz input, got {sample_rate}")
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot encode an empty signal")
    num_samples = len(x)
    if num_samples % 2:
        x = np.concatenate([x, [0.0]])  # decimation by 2 needs even length

    bank = qmf.design_prototype()
    low, high = qmf.analyze(x, bank)
    codes_low, recon_low, d_low = encode_band(low, cfg, BAND_LOW)
    codes_high, recon_high, d_high = encode_band(high, cfg, BAND_HIGH)

    header = StreamHeader(
        predictor_kind=cfg.predictor_kind,
        nq_low=cfg.nq_low,
        nq_high=cfg.nq_high,
        frame_length=cfg.frame_length,
        num_input_samples=num_samples,
        seed_base=cfg.seed_base,
    )
    payload = pack_codes(codes_low, codes_high, cfg.nq_low, cfg.nq_high, cfg.frame_length)
    local = qmf.synthesize(recon_low, recon_high, bank)
    return EncodeResult(
        bitstream=pack_header(header) + payload,
        band_refs={BAND_LOW: low, BAND_HIGH: high},
        band_recons={BAND_LOW: recon_low, BAND_HIGH: recon_high},
        band_residuals={BAND_LOW: d_low, BAND_HIGH: d_high},
        local_decoded=_trim_delay(local, num_samples, bank.delay),
    )


def encode(x, cfg: CodecConfig, sample_rate=SAMPLE_RATE) -> bytes:
    """Encode a 16 kHz signal into a serialized bitstream."""
    return encode_internal(x, cfg, sample_rate).bitstream


def decode(data: bytes, multipliers=None, train=None):
    """Decode a serialized bitstream back to 16 kHz samples.

    Output length equals the encoded input length; the filter-bank delay is
    trimmed from the front and the tail is zero-padded. Non-default
    quantizer tables or training budgets are not carried in the stream and
    must be passed here exactly as used at the encoder.
    """
    header = parse_header(data)
    num_samples = header.num_input_samples
    padded = num_samples + (num_samples % 2)
    band_samples = padded // 2
    need = (payload_bits(band_samples, header.nq_low, header.nq_high) + 7) // 8
    payload = data[HEADER_SIZE:]
    if len(payload) < need:
        raise CorruptStreamError(
            f"payload truncated: need {need} bytes, have {len(payload)}"
        )
    codes_low, codes_high = unpack_codes(
        payload, band_samples, header.nq_low, header.nq_high, header.frame_length
    )
    overrides = {}
    if multipliers is not None:
        overrides["multipliers"] = multipliers
    if train is not None:
        overrides["train"] = train
    cfg = CodecConfig(
        predictor_kind=header.predictor_kind,
        nq_low=header.nq_low,
        nq_high=header.nq_high,
        frame_length=header.frame_length,
        seed_base=header.seed_base,
        **overrides,
    )
    recon_low = decode_band(codes_low, cfg, BAND_LOW)
    recon_high = decode_band(codes_high, cfg, BAND_HIGH)
    bank = qmf.design_prototype()
    full = qmf.synthesize(recon_low, recon_high, bank)
    return _trim_delay(full, num_samples, bank.delay)
