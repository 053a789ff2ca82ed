"""Command-line front end for the embed/extract pipeline.

Machine-readable facts go to stdout, one ``key: value`` per line;
diagnostics go to stderr.  Output files are written via a temporary
file and renamed into place, so a failing run never leaves a partial
file behind.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from pathlib import Path

from . import __version__, codec, container, metrics
from .bmp import parse_bmp, write_bmp
from .errors import (
    BadMagic,
    CapacityExceeded,
    CorruptPayload,
    DimensionMismatch,
    ImageTooSmall,
    InvalidKey,
    KeyMismatch,
    MalformedHeader,
    StegError,
    TruncatedStream,
    UnsupportedFormat,
    UnsupportedVersion,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_ROOM = 3
EXIT_KEY_MISMATCH = 4
EXIT_NO_CONTAINER = 5
EXIT_BAD_IMAGE = 6

_EXIT_CODES = [
    ((InvalidKey, DimensionMismatch), EXIT_USAGE),
    ((ImageTooSmall, CapacityExceeded), EXIT_NO_ROOM),
    (KeyMismatch, EXIT_KEY_MISMATCH),
    ((BadMagic, UnsupportedVersion, CorruptPayload, TruncatedStream), EXIT_NO_CONTAINER),
    ((MalformedHeader, UnsupportedFormat), EXIT_BAD_IMAGE),
]

_EPILOG = """\
Capacity is the analytic two-bits-per-pixel limit: floor(width*height/4)
bytes for the whole container, 19 of which are the fixed header.  An
embed succeeds exactly when the compressed message fits that budget,
and the stego BMP is always byte-for-byte the same size as a canonical
cover: pixels are rewritten in place, never added.  The secret key is
stored inside the container and gates extraction, but this is
obfuscation, not encryption; the format makes no attempt to resist
steganalysis (the `inspect` command will happily reveal a container).
"""


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _resolve_key(args: argparse.Namespace) -> bytes:
    key = args.key if args.key is not None else os.environ.get("SIS_KEY")
    if key is None:
        raise InvalidKey("no secret key given: pass --key or set SIS_KEY")
    return container.normalize_key(key)


def _read_file(path: str) -> bytes:
    return Path(path).read_bytes()


def _write_atomic(path: str, data: bytes) -> None:
    target = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=target.name + ".")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        current_umask = os.umask(0)
        os.umask(current_umask)
        os.chmod(tmp_name, 0o666 & ~current_umask)  # mkstemp files are 0600
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def _format_db(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.2f}"


def cmd_embed(args: argparse.Namespace) -> int:
    key = _resolve_key(args)
    cover = parse_bmp(_read_file(args.cover))
    message = _read_file(args.message)

    box = container.encode_payload(message, key)
    stego = codec.embed(cover, key, message)
    report = codec.gross_capacity(cover)
    quality = metrics.psnr(cover, stego)
    _write_atomic(args.out, write_bmp(stego))

    print(f"cover: {cover.width}x{cover.height}")
    print(f"gross_capacity: {report.gross_bytes} bytes")
    print(f"net_capacity: {report.net_bytes} bytes")
    print(f"container_bytes: {len(box)}")
    print(f"pixels_modified: {4 * len(box)}")
    print(f"psnr: {_format_db(quality.psnr_db)} dB")
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    key = _resolve_key(args)
    stego = parse_bmp(_read_file(args.stego))
    message = codec.extract(stego, key)
    header = codec.probe(stego)
    assert header is not None  # extract above already found a container
    _write_atomic(args.out, message)

    print(f"payload: {header.payload_length} bytes")
    print(f"message: {len(message)} bytes")
    print("crc: ok")
    return EXIT_OK


def cmd_capacity(args: argparse.Namespace) -> int:
    img = parse_bmp(_read_file(args.image))
    report = codec.gross_capacity(img)
    print(f"width: {img.width}")
    print(f"height: {img.height}")
    print(f"gross_capacity: {report.gross_bytes} bytes")
    print(f"net_capacity: {report.net_bytes} bytes")
    print(f"plain_text_estimate: {max(report.net_bytes, 0)} characters")
    print(
        "note: the estimate assumes no compression gain; "
        "DEFLATE typically stretches it for real text"
    )
    return EXIT_OK


def cmd_psnr(args: argparse.Namespace) -> int:
    image_a = parse_bmp(_read_file(args.image_a))
    image_b = parse_bmp(_read_file(args.image_b))
    report = metrics.psnr(image_a, image_b)
    print(f"MSE: {report.mse!r}")
    print(f"PSNR: {_format_db(report.psnr_db)}")
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    img = parse_bmp(_read_file(args.image))
    header = codec.probe(img)
    if header is None:
        print("container: absent")
        return EXIT_OK
    print("container: present")
    print(f"version: {header.version}")
    print(f"payload: {header.payload_length} bytes")
    print("key: embedded (value withheld, not verified)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmpsteg",
        description="Hide messages in the low bits of 24-bit BMP images and get them back.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    key_help = "6-character secret key (falls back to the SIS_KEY environment variable)"

    p_embed = sub.add_parser("embed", help="hide a message file inside a cover BMP")
    p_embed.add_argument("--cover", required=True, help="cover BMP to hide the message in")
    p_embed.add_argument("--message", required=True, help="file whose bytes are the message")
    p_embed.add_argument("--out", required=True, help="where to write the stego BMP")
    p_embed.add_argument("--key", help=key_help)
    p_embed.set_defaults(func=cmd_embed)

    p_extract = sub.add_parser("extract", help="recover a message from a stego BMP")
    p_extract.add_argument("--stego", required=True, help="stego BMP to read")
    p_extract.add_argument("--out", required=True, help="where to write the recovered message")
    p_extract.add_argument("--key", help=key_help)
    p_extract.set_defaults(func=cmd_extract)

    p_capacity = sub.add_parser("capacity", help="report how much a BMP can hold")
    p_capacity.add_argument("--image", required=True, help="BMP to measure")
    p_capacity.set_defaults(func=cmd_capacity)

    p_psnr = sub.add_parser("psnr", help="MSE and PSNR between two same-sized BMPs")
    p_psnr.add_argument("image_a", help="first BMP (e.g. the cover)")
    p_psnr.add_argument("image_b", help="second BMP (e.g. the stego image)")
    p_psnr.set_defaults(func=cmd_psnr)

    p_inspect = sub.add_parser("inspect", help="report whether a BMP carries a container")
    p_inspect.add_argument("--image", required=True, help="BMP to inspect")
    p_inspect.set_defaults(func=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StegError as exc:
        _fail(str(exc))
        for types, code in _EXIT_CODES:
            if isinstance(exc, types):
                return code
        return EXIT_USAGE  # unreachable while the table stays total
    except OSError as exc:
        _fail(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
