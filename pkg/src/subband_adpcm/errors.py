"""Exception types shared across the codec."""


class CodecError(Exception):
    """Base class for codec failures."""


class FormatError(CodecError):
    """Unsupported or malformed input format (WAV layout, sample rate)."""


class CorruptStreamError(CodecError):
    """Bitstream cannot be decoded: bad magic, truncation, invalid codes."""
