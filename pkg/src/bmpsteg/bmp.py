"""Bit-exact reader/writer for 24-bit uncompressed BMP files.

Only the classic Windows flavour is accepted: BITMAPFILEHEADER plus a
BITMAPINFOHEADER (or one of its longer V4/V5 descendants), 24 bits per
pixel, BI_RGB compression, no palette.  On disk, pixels are BGR byte
triples and each row is padded with zeros up to a 4-byte stride; rows
run bottom-up unless the stored height is negative.

Parsed images expose one logical layout regardless of the on-disk row
direction: a flat RGB buffer in row-major order starting at the
top-left pixel.  Written files are canonical: pixel data at offset 54,
positive (bottom-up) height, zeroed padding bytes, fixed 72 DPI.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import MalformedHeader, UnsupportedFormat

FILE_HEADER_SIZE = 14
INFO_HEADER_SIZE = 40
PIXEL_DATA_OFFSET = FILE_HEADER_SIZE + INFO_HEADER_SIZE

# 72 DPI; written into the resolution fields of every emitted file.
_CANONICAL_PPM = 2835


def row_stride(width: int) -> int:
    """Bytes per stored row: 3 per pixel, rounded up to a multiple of 4."""
    return (width * 3 + 3) // 4 * 4


@dataclass(frozen=True)
class Image:
    """Decoded 24-bit RGB raster.

    ``pixels`` holds 3 bytes (R, G, B) per pixel, rows top to bottom and
    left to right within a row, so ``len(pixels) == 3 * width * height``.
    Instances are immutable and compare byte-exactly.
    """

    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        object.__setattr__(self, "pixels", bytes(self.pixels))
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if len(self.pixels) != 3 * self.width * self.height:
            raise ValueError(
                f"pixel buffer is {len(self.pixels)} bytes; "
                f"{self.width}x{self.height} needs {3 * self.width * self.height}"
            )

    def pixel(self, x: int, y: int) -> tuple[int, int, int]:
        """(R, G, B) of the pixel at column ``x``, row ``y`` from the top left."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height}")
        i = 3 * (y * self.width + x)
        return self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]


@dataclass(frozen=True)
class BmpHeaderInfo:
    """Bookkeeping pulled from the file and info headers of a BMP."""

    file_size: int
    pixel_data_offset: int
    bits_per_pixel: int
    compression_tag: int
    width: int
    height: int  # always positive; row direction lives in top_down
    row_stride: int
    top_down: bool


def read_header(data: bytes) -> BmpHeaderInfo:
    """Validate the headers of ``data`` and return their key fields.

    Raises MalformedHeader for anything structurally broken and
    UnsupportedFormat for well-formed BMPs outside the 24-bit
    uncompressed subset.
    """
    if len(data) < 2 or data[:2] != b"BM":
        raise MalformedHeader("missing 'BM' signature")
    if len(data) < PIXEL_DATA_OFFSET:
        raise MalformedHeader(f"file is {len(data)} bytes; headers alone need {PIXEL_DATA_OFFSET}")

    file_size, _res1, _res2, data_offset = struct.unpack_from("<IHHI", data, 2)
    info_size = struct.unpack_from("<I", data, FILE_HEADER_SIZE)[0]
    if info_size in (12, 16, 64):
        raise UnsupportedFormat(f"OS/2-style {info_size}-byte info header is not supported")
    if info_size < INFO_HEADER_SIZE:
        raise MalformedHeader(f"declared info header size {info_size} is impossible")

    width, stored_height, planes, bits_per_pixel, compression = struct.unpack_from(
        "<iiHHI", data, FILE_HEADER_SIZE + 4
    )
    colors_used = struct.unpack_from("<I", data, 46)[0]

    if width <= 0:
        raise MalformedHeader(f"width {width} is not positive")
    if stored_height == 0:
        raise MalformedHeader("height is zero")
    if planes != 1:
        raise MalformedHeader(f"color planes must be 1, got {planes}")
    if bits_per_pixel != 24:
        raise UnsupportedFormat(f"{bits_per_pixel} bits per pixel; only 24 is supported")
    if compression != 0:
        raise UnsupportedFormat(f"compression tag {compression}; only uncompressed (0) is supported")
    if colors_used != 0:
        raise UnsupportedFormat("palette present; 24-bit files must not carry one")

    top_down = stored_height < 0
    height = -stored_height if top_down else stored_height
    stride = row_stride(width)

    if data_offset < FILE_HEADER_SIZE + info_size:
        raise MalformedHeader(f"pixel data offset {data_offset} overlaps the headers")
    if data_offset + stride * height > len(data):
        raise MalformedHeader(
            f"pixel array needs {stride * height} bytes at offset {data_offset}; "
            f"file has {len(data)}"
        )

    return BmpHeaderInfo(
        file_size=file_size,
        pixel_data_offset=data_offset,
        bits_per_pixel=bits_per_pixel,
        compression_tag=compression,
        width=width,
        height=height,
        row_stride=stride,
        top_down=top_down,
    )


def parse_bmp(data: bytes) -> Image:
    """Decode a 24-bit uncompressed BMP into a top-left row-major Image."""
    info = read_header(data)
    raw = np.frombuffer(
        data, dtype=np.uint8, count=info.row_stride * info.height, offset=info.pixel_data_offset
    )
    rows = raw.reshape(info.height, info.row_stride)[:, : info.width * 3]
    rows = rows.reshape(info.height, info.width, 3)
    if not info.top_down:
        rows = rows[::-1]  # stored bottom-up: last stored row is the top row
    rgb = rows[:, :, ::-1]  # on-disk BGR -> logical RGB
    return Image(info.width, info.height, rgb.tobytes())


def write_bmp(img: Image) -> bytes:
    """Serialize an Image as a canonical bottom-up 24-bit BMP."""
    stride = row_stride(img.width)
    rgb = np.frombuffer(img.pixels, dtype=np.uint8).reshape(img.height, img.width, 3)
    bgr = rgb[::-1, :, ::-1]
    padded = np.zeros((img.height, stride), dtype=np.uint8)
    padded[:, : img.width * 3] = bgr.reshape(img.height, img.width * 3)
    pixel_array = padded.tobytes()

    file_size = PIXEL_DATA_OFFSET + len(pixel_array)
    file_header = struct.pack("<2sIHHI", b"BM", file_size, 0, 0, PIXEL_DATA_OFFSET)
    info_header = struct.pack(
        "<IiiHHIIiiII",
        INFO_HEADER_SIZE,
        img.width,
        img.height,  # positive: bottom-up
        1,
        24,
        0,
        len(pixel_array),
        _CANONICAL_PPM,
        _CANONICAL_PPM,
        0,
        0,
    )
    return file_header + info_header + pixel_array
