"""The payload container: the byte structure that gets hidden in pixels.

Wire format, all multi-byte integers big-endian:

    offset  size  field
    0       4     magic: the ASCII bytes "SIS1"
    4       1     format version, currently 1
    5       6     secret key, printable ASCII
    11      4     payload_len: byte length of the compressed payload
    15      4     CRC-32 (IEEE) of the uncompressed message
    19      ..    raw DEFLATE (RFC 1951) stream of the message

The header is always exactly 19 bytes, so a whole container is
19 + payload_len bytes.  The key travels in clear inside the container:
it gates extraction but is obfuscation, not cryptography.  Anyone who
can read the raw bits can read the key and, after inflating, the
message.

This module also converts container bytes to and from the stream of
2-bit symbols that the codec writes into pixels.  Within each byte the
least-significant pair is emitted first, and bytes are consumed first
to last; any fixed order would round-trip, this one is the convention.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadMagic,
    CorruptPayload,
    InvalidKey,
    KeyMismatch,
    LengthNotMultipleOfFour,
    UnsupportedVersion,
)

MAGIC = b"SIS1"
VERSION = 1
KEY_LENGTH = 6
HEADER_LENGTH = 19  # 4 magic + 1 version + 6 key + 4 length + 4 crc

# Compression is pinned to one setting so that identical inputs always
# serialize to identical containers.
_DEFLATE_LEVEL = 9


def normalize_key(key: bytes | str) -> bytes:
    """Validate a secret key and return it as exactly 6 ASCII bytes.

    Accepts str or bytes; raises InvalidKey unless the key is 6
    printable ASCII (0x20-0x7E) characters.
    """
    if isinstance(key, str):
        try:
            raw = key.encode("ascii")
        except UnicodeEncodeError:
            raise InvalidKey("secret key must be printable ASCII") from None
    else:
        raw = bytes(key)
    if len(raw) != KEY_LENGTH:
        raise InvalidKey(
            f"secret key must be exactly {KEY_LENGTH} characters, got {len(raw)}"
        )
    if not all(0x20 <= b <= 0x7E for b in raw):
        raise InvalidKey("secret key must be printable ASCII")
    return raw


def deflate(message: bytes) -> bytes:
    """Compress ``message`` as a raw RFC 1951 stream (no zlib/gzip wrapper)."""
    compressor = zlib.compressobj(_DEFLATE_LEVEL, zlib.DEFLATED, -zlib.MAX_WBITS)
    return compressor.compress(message) + compressor.flush()


def inflate(payload: bytes) -> bytes:
    """Decompress a raw DEFLATE stream; raises CorruptPayload on any defect."""
    decompressor = zlib.decompressobj(-zlib.MAX_WBITS)
    try:
        message = decompressor.decompress(payload)
    except zlib.error as exc:
        raise CorruptPayload(f"payload does not inflate: {exc}") from None
    if not decompressor.eof:
        raise CorruptPayload("compressed payload ends mid-stream")
    if decompressor.unused_data:
        raise CorruptPayload("trailing garbage after the compressed payload")
    return message


@dataclass(frozen=True)
class ContainerHeader:
    """The fixed 19-byte header, split into fields."""

    version: int
    key: bytes
    payload_length: int
    message_crc32: int


def parse_header(data: bytes) -> ContainerHeader:
    """Split a container's fixed header; only the magic is checked here."""
    if len(data) < HEADER_LENGTH or data[:4] != MAGIC:
        raise BadMagic("no SIS1 container present")
    version = data[4]
    key = data[5:11]
    payload_length, crc = struct.unpack_from(">II", data, 11)
    return ContainerHeader(version=version, key=key, payload_length=payload_length, message_crc32=crc)


def encode_payload(message: bytes, key: bytes | str) -> bytes:
    """Serialize ``message`` and ``key`` into a container ready for embedding.

    Pure function: the same message and key always produce the same
    bytes.  Any byte sequence is a legal message, including empty.
    """
    raw_key = normalize_key(key)
    message = bytes(message)
    payload = deflate(message)
    header = (
        MAGIC
        + bytes([VERSION])
        + raw_key
        + struct.pack(">II", len(payload), zlib.crc32(message))
    )
    return header + payload


def decode_payload(data: bytes, key: bytes | str) -> bytes:
    """Verify a container against ``key`` and return the original message.

    Checks run in order: magic (BadMagic), version (UnsupportedVersion),
    key (KeyMismatch), then inflation and CRC-32 (CorruptPayload).
    Bytes beyond the declared container length are ignored.
    """
    raw_key = normalize_key(key)
    header = parse_header(data)
    if header.version != VERSION:
        raise UnsupportedVersion(f"container version {header.version}; this library reads version {VERSION}")
    if header.key != raw_key:
        raise KeyMismatch("secret key does not match the embedded key")
    payload = data[HEADER_LENGTH : HEADER_LENGTH + header.payload_length]
    if len(payload) < header.payload_length:
        raise CorruptPayload(
            f"container declares a {header.payload_length}-byte payload but only {len(payload)} bytes follow"
        )
    message = inflate(payload)
    if zlib.crc32(message) != header.message_crc32:
        raise CorruptPayload("CRC-32 mismatch on the recovered message")
    return message


def bytes_to_bitpairs(data: bytes) -> bytes:
    """Explode bytes into 2-bit symbols, least-significant pair first.

    Each input byte yields 4 output bytes, each holding one symbol in
    0..3: 0xB5 (0b10110101) becomes 1, 1, 3, 2.
    """
    values = np.frombuffer(bytes(data), dtype=np.uint8)
    pairs = np.empty((values.size, 4), dtype=np.uint8)
    pairs[:, 0] = values & 3
    pairs[:, 1] = (values >> 2) & 3
    pairs[:, 2] = (values >> 4) & 3
    pairs[:, 3] = values >> 6
    return pairs.tobytes()


def bitpairs_to_bytes(pairs) -> bytes:
    """Regroup a sequence of 2-bit symbols into bytes; inverse of bytes_to_bitpairs.

    Accepts bytes or any iterable of ints in 0..3 whose length is a
    multiple of 4.
    """
    buf = bytes(pairs)
    if len(buf) % 4:
        raise LengthNotMultipleOfFour(f"{len(buf)} symbols cannot form whole bytes")
    symbols = np.frombuffer(buf, dtype=np.uint8)
    if symbols.size and int(symbols.max()) > 3:
        raise ValueError("bit-pair symbols must be in 0..3")
    grouped = symbols.reshape(-1, 4)
    values = grouped[:, 0] | (grouped[:, 1] << 2) | (grouped[:, 2] << 4) | (grouped[:, 3] << 6)
    return values.astype(np.uint8).tobytes()
