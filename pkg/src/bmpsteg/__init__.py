"""LSB steganography for 24-bit BMP images.

Messages are DEFLATE-compressed, framed in a self-describing container
together with a 6-character secret key, and written into the two least
significant bits of the blue channel, one 2-bit symbol per pixel.  See
the `bmp`, `container`, `codec` and `metrics` modules for the pieces,
and `cli` for the command-line front end.
"""

__version__ = "0.1.0"

from . import errors
from .bmp import BmpHeaderInfo, Image, parse_bmp, read_header, row_stride, write_bmp
from .codec import (
    MIN_HEIGHT,
    MIN_WIDTH,
    CapacityReport,
    embed,
    extract,
    gross_capacity,
    max_distortion,
    probe,
)
from .container import (
    HEADER_LENGTH,
    KEY_LENGTH,
    MAGIC,
    VERSION,
    ContainerHeader,
    bitpairs_to_bytes,
    bytes_to_bitpairs,
    decode_payload,
    encode_payload,
    normalize_key,
)
from .metrics import QualityReport, mse, psnr

__all__ = [
    "__version__",
    "errors",
    "Image",
    "BmpHeaderInfo",
    "parse_bmp",
    "write_bmp",
    "read_header",
    "row_stride",
    "MIN_WIDTH",
    "MIN_HEIGHT",
    "CapacityReport",
    "gross_capacity",
    "embed",
    "extract",
    "probe",
    "max_distortion",
    "MAGIC",
    "VERSION",
    "KEY_LENGTH",
    "HEADER_LENGTH",
    "ContainerHeader",
    "encode_payload",
    "decode_payload",
    "bytes_to_bitpairs",
    "bitpairs_to_bytes",
    "normalize_key",
    "QualityReport",
    "mse",
    "psnr",
]
