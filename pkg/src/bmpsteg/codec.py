"""Hide containers in pixels and get them back: 2 bits per pixel.

The stego convention, normative so independent implementations can
interoperate on the same files:

- pixels are visited in logical top-left row-major order;
- each visited pixel stores one 2-bit symbol in the two least
  significant bits of its BLUE channel; red, green, and the high six
  bits of blue are never touched;
- symbols come from ``container.bytes_to_bitpairs`` applied to the
  serialized container (4 symbols per byte, low pair first);
- the 19-byte container header therefore occupies exactly the first
  76 pixels, and a container of N bytes occupies the first 4*N.

Covers must be at least 150x112 pixels; the same minimum is enforced
on extraction, since a smaller image cannot have been produced by this
embedder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import container
from .bmp import Image
from .errors import (
    BadMagic,
    CapacityExceeded,
    DimensionMismatch,
    ImageTooSmall,
    KeyMismatch,
    TruncatedStream,
    UnsupportedVersion,
)

MIN_WIDTH = 150
MIN_HEIGHT = 112

HEADER_PIXELS = 4 * container.HEADER_LENGTH  # 76


@dataclass(frozen=True)
class CapacityReport:
    """How many container bytes an image can hold at 2 bits per pixel."""

    pixels: int
    gross_bytes: int  # floor(pixels / 4): whole container, header included
    net_bytes: int  # gross minus the 19-byte header; compressed body budget


def gross_capacity(img: Image) -> CapacityReport:
    """Capacity of ``img`` under the 2-bits-per-pixel encoding."""
    pixels = img.width * img.height
    gross = pixels * 2 // 8
    return CapacityReport(
        pixels=pixels, gross_bytes=gross, net_bytes=gross - container.HEADER_LENGTH
    )


def _require_min_dimensions(img: Image) -> None:
    if img.width < MIN_WIDTH or img.height < MIN_HEIGHT:
        raise ImageTooSmall(
            f"image is {img.width}x{img.height}; the minimum is {MIN_WIDTH}x{MIN_HEIGHT}"
        )


def _blue_channel(img: Image) -> np.ndarray:
    # read-only view over the flat RGB buffer; blue is every third byte
    return np.frombuffer(img.pixels, dtype=np.uint8)[2::3]


def embed(cover: Image, key: bytes | str, message: bytes) -> Image:
    """Hide ``message``, locked by ``key``, in a copy of ``cover``.

    Only the blue-channel LSB pairs of the first 4*(19 + payload_len)
    pixels change; every other bit of the stego image is identical to
    the cover.  Raises ImageTooSmall or CapacityExceeded when the cover
    cannot take the container.
    """
    _require_min_dimensions(cover)
    box = container.encode_payload(message, key)
    capacity = gross_capacity(cover)
    if len(box) > capacity.gross_bytes:
        raise CapacityExceeded(
            f"container of {len(box)} bytes exceeds the {capacity.gross_bytes}-byte "
            f"capacity of a {cover.width}x{cover.height} cover"
        )
    symbols = np.frombuffer(container.bytes_to_bitpairs(box), dtype=np.uint8)
    pixels = np.frombuffer(cover.pixels, dtype=np.uint8).copy()
    blues = pixels[2::3]
    blues[: symbols.size] = (blues[: symbols.size] & 0xFC) | symbols
    return Image(cover.width, cover.height, pixels.tobytes())


def extract(stego: Image, key: bytes | str) -> bytes:
    """Recover the message hidden in ``stego``; ``key`` must match.

    Reads the 19-byte header from the first 76 pixels, validates magic,
    version and key, then reads exactly the declared payload.  Raises
    TruncatedStream when the declared payload needs more pixels than
    the image has.
    """
    _require_min_dimensions(stego)
    raw_key = container.normalize_key(key)
    blues = _blue_channel(stego)
    header_bytes = container.bitpairs_to_bytes((blues[:HEADER_PIXELS] & 3).tobytes())
    header = container.parse_header(header_bytes)
    if header.version != container.VERSION:
        raise UnsupportedVersion(
            f"container version {header.version}; this library reads version {container.VERSION}"
        )
    if header.key != raw_key:
        raise KeyMismatch("secret key does not match the embedded key")
    needed_pixels = 4 * (container.HEADER_LENGTH + header.payload_length)
    if needed_pixels > blues.size:
        raise TruncatedStream(
            f"header declares {header.payload_length} payload bytes, needing "
            f"{needed_pixels} pixels, but the image has {blues.size}"
        )
    body_bytes = container.bitpairs_to_bytes((blues[HEADER_PIXELS:needed_pixels] & 3).tobytes())
    return container.decode_payload(header_bytes + body_bytes, raw_key)


def probe(img: Image) -> container.ContainerHeader | None:
    """Read the header region only: the container header, or None if absent.

    Never compares keys and never touches the payload; meant for
    diagnostics.  Reports headers of any version.
    """
    _require_min_dimensions(img)
    blues = _blue_channel(img)
    header_bytes = container.bitpairs_to_bytes((blues[:HEADER_PIXELS] & 3).tobytes())
    try:
        return container.parse_header(header_bytes)
    except BadMagic:
        return None


def max_distortion(cover: Image, stego: Image) -> int:
    """Largest absolute per-channel difference between two images.

    An embed changes at most the two low bits of a byte, so for any
    cover/stego pair produced here this is at most 3.
    """
    if (cover.width, cover.height) != (stego.width, stego.height):
        raise DimensionMismatch(
            f"{cover.width}x{cover.height} vs {stego.width}x{stego.height}"
        )
    a = np.frombuffer(cover.pixels, dtype=np.uint8).astype(np.int16)
    b = np.frombuffer(stego.pixels, dtype=np.uint8).astype(np.int16)
    return int(np.abs(a - b).max())
