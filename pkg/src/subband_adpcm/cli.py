"""Command-line front end: encode, decode, eval, sweep, bwe, spectrum.

Exit codes: 0 ok, 2 usage, 3 I/O, 4 bad format, 5 corrupt stream.
Every command is deterministic given its files and flags; all randomness
flows from --seed.
"""

import argparse
import csv
import json
import sys

from . import bwe as bwe_mod
from . import metrics, qmf, subband, wavio
from .adpcm import BAND_HIGH, BAND_LOW, PREDICTOR_KINDS, CodecConfig
from .errors import CorruptStreamError, FormatError
from .mlp import TrainConfig
from .quantizer import load_multiplier_tables

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4
EXIT_CORRUPT = 5

EVAL_FIELDS = ("predictor", "nq_low", "nq_high", "band", "metric", "mean", "std", "frames")
SWEEP_FIELDS = ("predictor", "nq_low", "nq_high", "bits_per_sample", "kbps",
                "seg_mean", "seg_std")


def _add_codec_flags(p):
    p.add_argument("--predictor", choices=PREDICTOR_KINDS, default="lpc10")
    p.add_argument("--nq-low", type=int, default=4, metavar="N", help="low-band bits, 2..5")
    p.add_argument("--nq-high", type=int, default=2, metavar="N", help="high-band bits, 2..5")
    p.add_argument("--frame", type=int, default=200, help="adaptation frame length in band samples")
    p.add_argument("--seed", type=int, default=0, help="seed for predictor initialization")
    p.add_argument("--q-tables", metavar="PATH", help="multiplier table file overriding the defaults")
    p.add_argument("--train-config", metavar="PATH", help="JSON file with training parameters")


def _codec_config(args, predictor=None):
    extra = {}
    if args.q_tables:
        extra["multipliers"] = load_multiplier_tables(args.q_tables)
    train_kwargs = {}
    if getattr(args, "train_config", None):
        with open(args.train_config) as f:
            train_kwargs = json.load(f)
    return CodecConfig(
        predictor_kind=predictor or args.predictor,
        nq_low=args.nq_low,
        nq_high=args.nq_high,
        frame_length=args.frame,
        seed_base=args.seed,
        train=TrainConfig(**train_kwargs),
        **extra,
    )


def _write_rows(path, fields, rows):
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if path:
            out.close()


def _report_row(report, predictor, nq_low, nq_high, band, metric):
    return {
        "predictor": predictor, "nq_low": nq_low, "nq_high": nq_high,
        "band": band, "metric": metric,
        "mean": f"{report.mean:.4f}", "std": f"{report.std:.4f}",
        "frames": report.frames_counted,
    }


def cmd_encode(args):
    samples, rate = wavio.read_wav(args.input)
    cfg = _codec_config(args)
    data = subband.encode(samples, cfg, sample_rate=rate)
    with open(args.output, "wb") as f:
        f.write(data)
    return EXIT_OK


def cmd_decode(args):
    with open(args.input, "rb") as f:
        data = f.read()
    kwargs = {}
    if args.q_tables:
        kwargs["multipliers"] = load_multiplier_tables(args.q_tables)
    if args.train_config:
        with open(args.train_config) as f:
            kwargs["train"] = TrainConfig(**json.load(f))
    samples = subband.decode(data, **kwargs)
    wavio.write_wav(args.output, samples, subband.SAMPLE_RATE)
    return EXIT_OK


def cmd_eval(args):
    original, rate = wavio.read_wav(args.original)
    rows = []
    if args.decoded:
        # file mode: segmental SNR only, full band plus analyzer-split bands
        decoded, rate2 = wavio.read_wav(args.decoded)
        if rate2 != rate:
            raise FormatError(f"sample rates differ: {rate} vs {rate2}")
        n = min(len(original), len(decoded))
        original, decoded = original[:n], decoded[:n]
        bank = qmf.design_prototype()
        for band in (BAND_LOW, BAND_HIGH):
            rep = metrics.segsnr(
                metrics.band_reference(original, bank, band),
                metrics.band_reference(decoded, bank, band),
                args.frame,
            )
            rows.append(_report_row(rep, "-", args.nq_low, args.nq_high, band, "SEG"))
        rep = metrics.segsnr(original, decoded, args.frame)
        rows.append(_report_row(rep, "-", args.nq_low, args.nq_high, "F", "SEG"))
    else:
        # internal mode: run the encoder, report loop residual gain as well
        cfg = _codec_config(args)
        result = subband.encode_internal(original, cfg, sample_rate=rate)
        for band in (BAND_LOW, BAND_HIGH):
            gp = metrics.prediction_gain(
                result.band_refs[band], result.band_residuals[band], args.frame
            )
            rows.append(_report_row(gp, cfg.predictor_kind, cfg.nq_low, cfg.nq_high, band, "Gp"))
            seg = metrics.segsnr(
                result.band_refs[band], result.band_recons[band], args.frame
            )
            rows.append(_report_row(seg, cfg.predictor_kind, cfg.nq_low, cfg.nq_high, band, "SEG"))
        seg = metrics.segsnr(original, result.local_decoded, args.frame)
        rows.append(_report_row(seg, cfg.predictor_kind, cfg.nq_low, cfg.nq_high, "F", "SEG"))
    _write_rows(args.csv, EVAL_FIELDS, rows)
    return EXIT_OK


def cmd_sweep(args):
    samples, rate = wavio.read_wav(args.input)
    predictors = [p.strip() for p in args.predictors.split(",") if p.strip()]
    for p in predictors:
        if p not in PREDICTOR_KINDS:
            raise FormatError(f"unknown predictor {p!r}")
    rows = []
    grids = {}
    for predictor in predictors:
        grid = {}
        for nq_low in range(2, 6):
            for nq_high in range(2, 6):
                cfg = CodecConfig(
                    predictor_kind=predictor, nq_low=nq_low, nq_high=nq_high,
                    frame_length=args.frame, seed_base=args.seed,
                )
                result = subband.encode_internal(samples, cfg, sample_rate=rate)
                rep = metrics.segsnr(samples, result.local_decoded, args.frame)
                bits, kbps = subband.bit_rate(nq_low, nq_high)
                rows.append({
                    "predictor": predictor, "nq_low": nq_low, "nq_high": nq_high,
                    "bits_per_sample": bits, "kbps": kbps,
                    "seg_mean": f"{rep.mean:.4f}", "seg_std": f"{rep.std:.4f}",
                })
                grid[(nq_low, nq_high)] = rep.mean
        grids[predictor] = grid
    _write_rows(args.csv, SWEEP_FIELDS, rows)
    _print_grids(grids)
    return EXIT_OK


def _print_grids(grids):
    header = "L\\H  " + "".join(f"  Nq={nh}" for nh in range(2, 6))
    print("bit rate (bits per sample)", file=sys.stderr)
    print(header, file=sys.stderr)
    for nl in range(2, 6):
        cells = "".join(f"  {subband.bit_rate(nl, nh)[0]:4.1f}" for nh in range(2, 6))
        print(f"Nq={nl}{cells}", file=sys.stderr)
    for predictor, grid in grids.items():
        print(f"full-band segmental SNR (dB), {predictor}", file=sys.stderr)
        print(header, file=sys.stderr)
        for nl in range(2, 6):
            cells = "".join(f"  {grid[(nl, nh)]:4.1f}" for nh in range(2, 6))
            print(f"Nq={nl}{cells}", file=sys.stderr)


def cmd_bwe(args):
    samples, rate = wavio.read_wav(args.input)
    bank = qmf.design_prototype()
    cfg = bwe_mod.BweConfig(gain_db=args.gain_db)
    wide = bwe_mod.extend_bandwidth(samples, bank, cfg, sample_rate=rate)
    wavio.write_wav(args.output, wide, bwe_mod.WIDEBAND_RATE)
    return EXIT_OK


def cmd_spectrum(args):
    samples, rate = wavio.read_wav(args.input)
    table = bwe_mod.spectrum_dump(samples, args.window, sample_rate=rate)
    rows = [{"frequency_hz": f"{f:.2f}", "magnitude_db": f"{m:.3f}"} for f, m in table]
    _write_rows(args.csv, ("frequency_hz", "magnitude_db"), rows)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="subband-adpcm",
        description="Two-band wideband speech codec and evaluation tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a 16 kHz mono WAV into a bitstream")
    p.add_argument("input")
    p.add_argument("output")
    _add_codec_flags(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a bitstream into a 16 kHz WAV")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--q-tables", metavar="PATH")
    p.add_argument("--train-config", metavar="PATH")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("eval", help="segmental SNR / prediction gain report")
    p.add_argument("original")
    p.add_argument("decoded", nargs="?", help="decoded WAV; omit to run the encoder internally")
    _add_codec_flags(p)
    p.add_argument("--csv", metavar="PATH", help="write rows here instead of stdout")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="grid over all 16 bit-depth pairs")
    p.add_argument("input")
    p.add_argument("--predictors", default="lpc10,lpc25,mlp",
                   help="comma-separated subset of lpc10,lpc25,mlp")
    p.add_argument("--frame", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bwe", help="bandwidth-extend an 8 kHz WAV to 16 kHz")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--gain-db", type=float, default=-12.0,
                   help="synthetic band level vs low-band RMS (dB, <= 0)")
    p.set_defaults(func=cmd_bwe)

    p = sub.add_parser("spectrum", help="averaged magnitude spectrum as CSV")
    p.add_argument("input")
    p.add_argument("--window", type=int, default=512)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except CorruptStreamError as exc:
        print(f"error: corrupt stream: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
