"""Two-band wideband speech codec with backward-adaptive ADPCM.

A 16 kHz signal is split into half-rate low and high bands by a quadrature
mirror filter bank; each band runs an ADPCM loop whose predictor (linear of
order 10 or 25, or a committee of small neural nets) is refit every frame
from reconstructed samples, so only quantizer codes are transmitted. The
package also ships segmental-SNR / prediction-gain metrics and a
quadratic-nonlinearity bandwidth extender for narrowband input.
"""

from .adpcm import BAND_HIGH, BAND_LOW, CodecConfig, decode_band, encode_band
from .bwe import BweConfig, extend_bandwidth, spectrum_dump
from .errors import CodecError, CorruptStreamError, FormatError
from .lpc import LinearPredictor, fit_lpc, predict_linear
from .metrics import SegmentalReport, band_reference, prediction_gain, segsnr
from .mlp import MlpCommittee, MlpWeights, TrainConfig, committee_predict, train_committee
from .qmf import QmfBank, analyze, derive_bank, design_prototype, synthesize
from .quantizer import QuantizerSpec, QuantizerState, dequantize, quantize
from .subband import bit_rate, decode, encode, encode_internal

__version__ = "0.1.0"

__all__ = [
    "BAND_HIGH",
    "BAND_LOW",
    "BweConfig",
    "CodecConfig",
    "CodecError",
    "CorruptStreamError",
    "FormatError",
    "LinearPredictor",
    "MlpCommittee",
    "MlpWeights",
    "QmfBank",
    "QuantizerSpec",
    "QuantizerState",
    "SegmentalReport",
    "TrainConfig",
    "analyze",
    "band_reference",
    "bit_rate",
    "committee_predict",
    "decode",
    "decode_band",
    "dequantize",
    "derive_bank",
    "design_prototype",
    "encode",
    "encode_band",
    "encode_internal",
    "extend_bandwidth",
    "fit_lpc",
    "predict_linear",
    "prediction_gain",
    "quantize",
    "segsnr",
    "spectrum_dump",
    "synthesize",
    "train_committee",
]
