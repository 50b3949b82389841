"""Command-line front end.

Subcommands: compress, decompress, metrics, mine (debug pattern dump) and
bench (k/alpha parameter sweeps to CSV).  Exit codes: 0 success, 1 I/O or
parse failure, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from .codec import CodecParams, absolute_support, compress, decompress
from .container import ContainerFormatError, compressed_size_bits, deserialize, serialize
from .entropy import DecodeError
from .metrics import mse, psnr, ssim
from .pixel_io import ImageFormatError, load_image, save_image, split_channels
from .quantizer import quantize
from .seqmine import mine_closed
from .tiling import modified_support

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2


def _parse_min_sup(text: str):
    """< 1 means a fraction of the rows, >= 1 an absolute row count."""
    try:
        value = int(text)
    except ValueError:
        try:
            value = float(text)
        except ValueError:
            raise ValueError(f"--min-sup must be numeric, got {text!r}") from None
    else:
        if value < 1:
            raise ValueError(f"absolute --min-sup must be >= 1, got {value}")
        return value
    if value < 1:
        if value <= 0:
            raise ValueError(f"--min-sup must be positive, got {value}")
        return value
    if value != int(value):
        raise ValueError(f"--min-sup >= 1 must be an integer row count, got {value}")
    return int(value)


def _parse_range(text: str, kind, flag: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"{flag} must look like LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (kind(p) for p in parts)
    except ValueError:
        raise ValueError(f"{flag} has non-numeric parts: {text!r}") from None
    if step <= 0:
        raise ValueError(f"{flag} step must be positive, got {step}")
    if lo > hi:
        raise ValueError(f"{flag} is empty: {lo} > {hi}")
    values = []
    i = 0
    while True:
        v = lo + i * step
        if kind is float:
            v = round(v, 10)  # keep grid points readable, e.g. 0.6 not 0.6000000000000001
        if v > hi + (1e-9 if kind is float else 0):
            break
        values.append(kind(v))
        i += 1
    return values


def _json_metric(value: float):
    return "inf" if math.isinf(value) else value


def cmd_compress(args) -> int:
    overrides = None
    if args.clusters_per_channel:
        try:
            overrides = tuple(int(p) for p in args.clusters_per_channel.split(","))
        except ValueError:
            raise ValueError(
                f"--clusters-per-channel must be comma-separated integers, got {args.clusters_per_channel!r}"
            ) from None
    params = CodecParams(
        clusters=args.clusters,
        min_support=_parse_min_sup(args.min_sup),
        mode=args.clustering,
        seed=args.seed,
        channel_clusters=overrides,
    )
    img = load_image(args.input)
    ci = compress(img, params)
    with open(args.output, "wb") as fh:
        fh.write(serialize(ci))
    bits = compressed_size_bits(ci)
    raw_bits = img.width * img.height * img.channels * 8
    print(json.dumps({"compressed_bits": bits, "cr": raw_bits / bits}))
    return EXIT_OK


def cmd_decompress(args) -> int:
    with open(args.input, "rb") as fh:
        ci = deserialize(fh.read())
    img = decompress(ci)
    save_image(img, args.output, args.format)
    return EXIT_OK


def cmd_metrics(args) -> int:
    original = load_image(args.original)
    candidate = load_image(args.candidate)
    report = {
        "mse": mse(original, candidate),
        "psnr_db": _json_metric(psnr(original, candidate)),
        "ssim": ssim(original, candidate),
    }
    print(json.dumps(report))
    return EXIT_OK


def cmd_mine(args) -> int:
    params = CodecParams(clusters=args.clusters, min_support=_parse_min_sup(args.min_sup))
    img = load_image(args.input)
    channels = split_channels(img)
    if not 0 <= args.channel < len(channels):
        raise ValueError(f"--channel {args.channel} out of range for {len(channels)}-channel image")
    _, labels = quantize(channels[args.channel], params.clusters)
    rows = labels.rows()
    mined = mine_closed(rows, absolute_support(params.min_support, img.height))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.tiling:
        rec = modified_support(rows, mined)
        writer.writerow(["pattern", "support", "s_mod"])
        supports = mined.s
        for pattern in rec.order:
            writer.writerow(["-".join(map(str, pattern)), supports[pattern], rec.counts[pattern]])
    else:
        writer.writerow(["pattern", "length", "support"])
        for pattern, support in sorted(mined.s.items(), key=lambda e: (len(e[0]), e[0])):
            writer.writerow(["-".join(map(str, pattern)), len(pattern), support])
    return EXIT_OK


def cmd_bench(args) -> int:
    ks = _parse_range(args.k_range, int, "--k-range")
    alphas = _parse_range(args.alpha_range, float, "--alpha-range")
    img = load_image(args.input)
    raw_bits = img.width * img.height * img.channels * 8
    rows = []
    for k in ks:
        for alpha in alphas:
            params = CodecParams(clusters=k, min_support=alpha)
            t0 = time.perf_counter()
            ci = compress(img, params)
            t1 = time.perf_counter()
            out = decompress(ci)
            t2 = time.perf_counter()
            bits = compressed_size_bits(ci)
            rows.append(
                [
                    k,
                    alpha,
                    bits,
                    raw_bits / bits,
                    psnr(img, out),
                    ssim(img, out),
                    (t1 - t0) * 1000.0,
                    (t2 - t1) * 1000.0,
                ]
            )
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["k", "alpha", "compressed_bits", "cr", "psnr_db", "ssim", "compress_ms", "decompress_ms"]
        )
        writer.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fpic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress an image to a .fpic container")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--clusters", type=int, required=True)
    p.add_argument("--min-sup", required=True, help="fraction (<1) or absolute row count (>=1)")
    p.add_argument("--clustering", choices=["dp", "lloyd"], default="dp")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--clusters-per-channel",
        default=None,
        help="comma-separated per-channel override, e.g. 8,12,6",
    )
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decode a .fpic container to an image")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=["pgm", "ppm", "bmp"], required=True)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("metrics", help="quality metrics between two images")
    p.add_argument("--original", required=True)
    p.add_argument("--candidate", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("mine", help="dump mined patterns as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--clusters", type=int, required=True)
    p.add_argument("--min-sup", required=True)
    p.add_argument("--tiling", action="store_true", help="include modified supports")
    p.add_argument("--channel", type=int, default=0)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("bench", help="sweep k and alpha, write one CSV row per point")
    p.add_argument("--input", required=True)
    p.add_argument("--k-range", required=True, help="LO:HI:STEP, inclusive")
    p.add_argument("--alpha-range", required=True, help="LO:HI:STEP fractions, inclusive")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ImageFormatError, ContainerFormatError, DecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
