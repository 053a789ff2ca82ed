"""Cover-versus-stego quality: mean squared error and PSNR.

MSE averages the squared difference over all 3*W*H channel samples;
PSNR is 10*log10(255^2 / MSE) in decibels.  Identical images get an
MSE of 0 and a PSNR of +infinity rather than an arithmetic error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bmp import Image
from .errors import DimensionMismatch

MAX_VALUE = 255


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float  # math.inf when the images are identical
    max_value: int = MAX_VALUE


def _require_same_dimensions(a: Image, b: Image) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatch(f"{a.width}x{a.height} vs {b.width}x{b.height}")


def mse(cover: Image, stego: Image) -> float:
    """Mean squared per-channel difference.

    The sum is accumulated in integer arithmetic, so the result is the
    exact ratio for any pair of 8-bit images up to one float division.
    """
    _require_same_dimensions(cover, stego)
    a = np.frombuffer(cover.pixels, dtype=np.uint8).astype(np.int64)
    b = np.frombuffer(stego.pixels, dtype=np.uint8).astype(np.int64)
    total = int(((a - b) ** 2).sum())
    return total / (3 * cover.width * cover.height)


def psnr(cover: Image, stego: Image) -> QualityReport:
    """Peak signal-to-noise ratio of ``stego`` against ``cover``, in dB."""
    error = mse(cover, stego)
    if error == 0.0:
        return QualityReport(mse=0.0, psnr_db=math.inf)
    return QualityReport(mse=error, psnr_db=10.0 * math.log10(MAX_VALUE**2 / error))
