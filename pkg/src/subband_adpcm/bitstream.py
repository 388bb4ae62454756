"""Bitstream container: fixed header plus packed per-frame quantizer codes.

The payload carries codes only; predictor coefficients are never transmitted
because both ends rederive them from reconstructed samples. Layout is
documented in BITSTREAM.md at the repository root.
"""

import struct
from dataclasses import dataclass

from .errors import CorruptStreamError

MAGIC = b"SBAC"
VERSION = 1
_HEADER_FMT = "<4sBBBBHIQ"
HEADER_SIZE = struct.calcsize(_HEADER_FMT)  # 22 bytes

_KIND_TO_CODE = {"lpc10": 0, "lpc25": 1, "mlp": 2}
_CODE_TO_KIND = {v: k for k, v in _KIND_TO_CODE.items()}


@dataclass(frozen=True)
class StreamHeader:
    predictor_kind: str
    nq_low: int
    nq_high: int
    frame_length: int
    num_input_samples: int
    seed_base: int


def pack_header(h: StreamHeader) -> bytes:
    return struct.pack(
        _HEADER_FMT,
        MAGIC,
        VERSION,
        _KIND_TO_CODE[h.predictor_kind],
        h.nq_low,
        h.nq_high,
        h.frame_length,
        h.num_input_samples,
        h.seed_base,
    )


def parse_header(data: bytes) -> StreamHeader:
    if len(data) < HEADER_SIZE:
        raise CorruptStreamError("stream shorter than header")
    magic, version, kind, nq_low, nq_high, frame_length, num_samples, seed = (
        struct.unpack_from(_HEADER_FMT, data)
    )
    if magic != MAGIC:
        raise CorruptStreamError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptStreamError(f"unsupported version {version}")
    if kind not in _CODE_TO_KIND:
        raise CorruptStreamError(f"unknown predictor kind code {kind}")
    if not (2 <= nq_low <= 5 and 2 <= nq_high <= 5):
        raise CorruptStreamError(f"nq out of range: {nq_low}, {nq_high}")
    return StreamHeader(
        predictor_kind=_CODE_TO_KIND[kind],
        nq_low=nq_low,
        nq_high=nq_high,
        frame_length=frame_length,
        num_input_samples=num_samples,
        seed_base=seed,
    )


class BitWriter:
    """MSB-first bit packer."""

    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nbits = 0

    def write(self, value, width):
        self._acc = (self._acc << width) | (value & ((1 << width) - 1))
        self._nbits += width
        while self._nbits >= 8:
            self._nbits -= 8
            self._out.append((self._acc >> self._nbits) & 0xFF)
        self._acc &= (1 << self._nbits) - 1

    def getvalue(self) -> bytes:
        if self._nbits:
            return bytes(self._out) + bytes([(self._acc << (8 - self._nbits)) & 0xFF])
        return bytes(self._out)


class BitReader:
    """MSB-first bit unpacker; raises on exhaustion."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0  # bit position

    def read(self, width):
        end = self._pos + width
        if end > 8 * len(self._data):
            raise CorruptStreamError("truncated payload")
        value = 0
        pos = self._pos
        while width > 0:
            byte = self._data[pos >> 3]
            avail = 8 - (pos & 7)
            take = min(avail, width)
            shift = avail - take
            value = (value << take) | ((byte >> shift) & ((1 << take) - 1))
            pos += take
            width -= take
        self._pos = pos
        return value


def payload_bits(num_band_samples, nq_low, nq_high):
    return num_band_samples * (nq_low + nq_high)


def pack_codes(codes_low, codes_high, nq_low, nq_high, frame_length) -> bytes:
    """Pack both bands' codes, interleaved per frame, offset-binary, MSB-first."""
    assert len(codes_low) == len(codes_high)
    off_low = 1 << (nq_low - 1)
    off_high = 1 << (nq_high - 1)
    w = BitWriter()
    n = len(codes_low)
    for start in range(0, n, frame_length):
        stop = min(start + frame_length, n)
        for i in range(start, stop):
            w.write(int(codes_low[i]) + off_low, nq_low)
        for i in range(start, stop):
            w.write(int(codes_high[i]) + off_high, nq_high)
    return w.getvalue()


def unpack_codes(payload, num_band_samples, nq_low, nq_high, frame_length):
    """Inverse of pack_codes; returns (codes_low, codes_high) as int lists."""
    r = BitReader(payload)
    off_low = 1 << (nq_low - 1)
    off_high = 1 << (nq_high - 1)
    codes_low = [0] * num_band_samples
    codes_high = [0] * num_band_samples
    for start in range(0, num_band_samples, frame_length):
        stop = min(start + frame_length, num_band_samples)
        for i in range(start, stop):
            codes_low[i] = r.read(nq_low) - off_low
        for i in range(start, stop):
            codes_high[i] = r.read(nq_high) - off_high
    return codes_low, codes_high
