"""Exception types shared across the package.

Everything raised on purpose derives from StegError, so callers can
catch one base class; the CLI maps each concrete type to an exit code.
"""


class StegError(Exception):
    """Base class for all errors this package raises deliberately."""


# --- BMP file errors ---------------------------------------------------

class MalformedHeader(StegError):
    """BMP data is truncated or its headers are internally inconsistent."""


class UnsupportedFormat(StegError):
    """Valid BMP, but not the 24-bit uncompressed flavour handled here."""


# --- container errors --------------------------------------------------

class InvalidKey(StegError):
    """Secret key is not exactly 6 printable ASCII characters."""


class BadMagic(StegError):
    """No container signature: the data carries no hidden message."""


class UnsupportedVersion(StegError):
    """Container declares a format version this library does not know."""


class KeyMismatch(StegError):
    """Embedded secret key differs from the key supplied for extraction."""


class CorruptPayload(StegError):
    """Compressed payload fails to inflate or its CRC-32 does not match."""


class LengthNotMultipleOfFour(StegError):
    """Bit-pair stream cannot be regrouped into whole bytes."""


# --- codec errors ------------------------------------------------------

class ImageTooSmall(StegError):
    """Image is below the minimum dimensions the pipeline requires."""


class CapacityExceeded(StegError):
    """Container does not fit in the image at 2 bits per pixel."""


class TruncatedStream(StegError):
    """Container header claims more payload pixels than the image has."""


class DimensionMismatch(StegError):
    """Two images that must have identical dimensions do not."""
