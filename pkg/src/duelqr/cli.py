"""Command-line entry point: ``duelqr <command> [options]``.

Exit status is 0 on success, 1 when a decode or verification fails and 2 for
usage errors (bad flags, unreadable files, messages that do not fit).
"""

import argparse
import sys

from . import raster_io
from .composer import ComposeConfig, compose, render_single
from .errors import DecodeError, DuelQRError, RasterFormatError
from .qr_core import QrMatrix, encode
from .qr_decode import decode
from .scan_sim import (
    OffsetField, SampleGeometry, ambiguity_probe, raster_geometry, sample, verify_dual,
)
from .structure_map import StructureMode, stolen_data_census
from .tables import EcLevel

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read_file(path):
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


def _message(args, name, required=True):
    text = getattr(args, name)
    path = getattr(args, f"{name}_file")
    if text is not None and path is not None:
        raise UsageError(f"--{name} and --{name}-file are mutually exclusive")
    if path is not None:
        return _read_file(path)
    if text is not None:
        return text.encode("utf-8")
    if required:
        raise UsageError(f"one of --{name} or --{name}-file is required")
    return None


def _emit(out, message):
    if hasattr(out, "buffer"):
        out.flush()
        out.buffer.write(message + b"\n")
        out.buffer.flush()
    else:
        out.write(message.decode("utf-8", "replace") + "\n")


def _load_raster(args):
    try:
        raster = raster_io.read(_read_file(args.input))
    except RasterFormatError as exc:
        raise UsageError(f"{args.input}: {type(exc).__name__}: {exc}") from None
    if args.scale is not None or args.quiet_zone is not None:
        scale = args.scale if args.scale is not None else raster.scale
        qz = args.quiet_zone if args.quiet_zone is not None else raster.quiet_zone
        raster = type(raster)(raster.pixels, scale, qz, raster.provenance,
                              raster.orientation, raster.structure_mode)
    try:
        raster_geometry(raster)
    except DuelQRError as exc:
        raise UsageError(f"{args.input}: cannot infer sampling grid ({exc}); "
                         "pass --scale and --quiet-zone") from None
    return raster


def _save(raster, path, fmt):
    try:
        return raster_io.save(raster, path, fmt)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None


# ---- commands ----

def cmd_encode(args, out):
    message = _message(args, "msg")
    matrix = encode(message, args.version, args.ec, args.mask)
    raster = render_single(matrix, args.scale, args.quiet_zone)
    fmt = _save(raster, args.out, args.format)
    if args.matrix_out:
        try:
            with open(args.matrix_out, "w") as f:
                f.write(matrix.to_text())
        except OSError as exc:
            raise UsageError(f"{args.matrix_out}: {exc.strerror or exc}") from None
    print(f"wrote {args.out} ({fmt.value}, {raster.width}x{raster.height}) "
          f"version={matrix.version} ec={matrix.ec.name} mask={matrix.mask}", file=out)
    return EXIT_OK


def cmd_dual(args, out):
    m1 = _message(args, "msg1")
    m2 = _message(args, "msg2")
    config = ComposeConfig(args.scale, args.orient, args.mode, args.quiet_zone)
    raster = compose(m1, m2, args.version, args.ec, config)
    fmt = _save(raster, args.out, args.format)
    print(f"wrote {args.out} ({fmt.value}, {raster.width}x{raster.height})", file=out)
    print(f"mask {raster.provenance.mask}", file=out)
    print(stolen_data_census(args.version, args.ec, args.mode).to_text(), file=out)
    return EXIT_OK


def cmd_sample(args, out):
    raster = _load_raster(args)
    geometry = SampleGeometry.of(raster)
    grid = sample(raster, geometry, OffsetField.uniform(geometry.grid_size, args.dx, args.dy))
    try:
        outcome = decode(grid)
    except DecodeError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=out)
        return EXIT_FAIL
    _emit(out, outcome.message)
    return EXIT_OK


def cmd_decode(args, out):
    text = _read_file(args.matrix).decode("ascii", "replace")
    try:
        matrix = QrMatrix.from_text(text)
    except ValueError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    try:
        outcome = decode(matrix.modules)
    except DecodeError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=out)
        return EXIT_FAIL
    _emit(out, outcome.message)
    return EXIT_OK


def cmd_verify(args, out):
    raster = _load_raster(args)
    m1 = _message(args, "msg1", required=False)
    m2 = _message(args, "msg2", required=False)
    report = verify_dual(raster, m1, m2)
    tally = ambiguity_probe(raster, args.sigma, args.trials, args.seed, report.m1, report.m2)
    out.write(report.to_text())
    print(tally.to_text(), file=out)
    print("PASS" if report.passed else "FAIL", file=out)
    if args.figure:
        from .plotting import plot_scan_report
        try:
            plot_scan_report(report, args.figure, raster, tally)
        except OSError as exc:
            raise UsageError(f"{args.figure}: {exc.strerror or exc}") from None
        print(f"figure {args.figure}", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_census(args, out):
    for mode in StructureMode:
        print(stolen_data_census(args.version, args.ec, mode).to_text(), file=out)
    return EXIT_OK


# ---- parser ----

def _ec(text):
    try:
        return EcLevel.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid EC level {text!r} (choose L, M, Q, H)") from None


def _mask(text):
    value = int(text)
    if not 0 <= value <= 7:
        raise argparse.ArgumentTypeError(f"mask {value} outside 0-7")
    return value


def _common_code(p):
    p.add_argument("--version", type=int, default=7, choices=range(1, 11), metavar="N",
                   help="symbol version 1-10 (default 7)")
    p.add_argument("--ec", type=_ec, default=EcLevel.H, help="error correction level (default H)")


def _add_message(p, name, help_text):
    p.add_argument(f"--{name}", help=help_text)
    p.add_argument(f"--{name}-file", dest=f"{name}_file", metavar="PATH",
                   help="read the message bytes verbatim from a file")


def _output(p):
    p.add_argument("--out", required=True, help="output raster path")
    p.add_argument("--format", choices=[f.value for f in raster_io.RasterFormat],
                   help="raster format (default from the file extension, else pbm)")
    p.add_argument("--scale", type=int, default=9, help="pixels per module (default 9)")
    p.add_argument("--quiet-zone", type=int, default=4, help="light border in modules (default 4)")


def _raster_input(p):
    p.add_argument("--in", dest="input", required=True, help="PBM or PGM raster")
    p.add_argument("--scale", type=int, help="override pixels per module")
    p.add_argument("--quiet-zone", type=int, help="override quiet zone in modules")


def build_parser():
    parser = argparse.ArgumentParser(prog="duelqr", description="Angle-dependent dual-message QR codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="write a single standard QR code")
    _add_message(p, "msg", "message text (UTF-8)")
    _common_code(p)
    p.add_argument("--mask", type=_mask, help="force mask id 0-7")
    p.add_argument("--matrix-out", metavar="PATH", help="also write the module matrix text fixture")
    _output(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("dual", help="write a dual-message composite")
    _add_message(p, "msg1", "message read when tilted left/up")
    _add_message(p, "msg2", "message read when tilted right/down")
    _common_code(p)
    p.add_argument("--orient", choices=["v", "h", "d"], default="v", help="split orientation")
    p.add_argument("--mode", choices=["boxes", "tight"], default="boxes",
                   help="structural classifier (default boxes)")
    _output(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("sample", help="sample a raster at a uniform offset and decode")
    _raster_input(p)
    p.add_argument("--dx", type=float, default=0.0, help="horizontal offset in modules")
    p.add_argument("--dy", type=float, default=0.0, help="vertical offset in modules")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("decode", help="decode a matrix text fixture")
    p.add_argument("--matrix", required=True, help="matrix text file")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="offset sweep plus head-on jitter probe")
    _raster_input(p)
    _add_message(p, "msg1", "expected first message")
    _add_message(p, "msg2", "expected second message")
    p.add_argument("--sigma", type=float, default=0.3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--figure", metavar="PATH", help="render the sweep to an image file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="stolen-module census for both structure modes")
    _common_code(p)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"duelqr {args.command}: error: {exc}", file=err)
    except (DuelQRError, ValueError) as exc:
        print(f"duelqr {args.command}: error: {type(exc).__name__}: {exc}", file=err)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
