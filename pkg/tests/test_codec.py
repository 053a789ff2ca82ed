"""Embed/extract behaviour: capacity, locality, keying, tampering."""

import random
import struct

import numpy as np
import pytest

from bmpsteg import (
    MAGIC,
    Image,
    container,
    embed,
    extract,
    gross_capacity,
    max_distortion,
    probe,
)
from bmpsteg.errors import (
    BadMagic,
    CapacityExceeded,
    DimensionMismatch,
    ImageTooSmall,
    KeyMismatch,
    TruncatedStream,
    UnsupportedVersion,
)

KEY = "ABC123"


def rand_image(rng, width, height):
    return Image(width, height, rng.randbytes(3 * width * height))


def blues(img):
    return np.frombuffer(img.pixels, dtype=np.uint8)[2::3]


# --- capacity ------------------------------------------------------------

def test_capacity_at_minimum_dimensions():
    report = gross_capacity(Image(150, 112, bytes(3 * 150 * 112)))
    assert report.pixels == 16800
    assert report.gross_bytes == 4200
    assert report.net_bytes == 4181


def test_capacity_degenerate():
    assert gross_capacity(Image(1, 1, bytes(3))).gross_bytes == 0
    assert gross_capacity(Image(2, 1, bytes(6))).gross_bytes == 0
    assert gross_capacity(Image(2, 2, bytes(12))).gross_bytes == 1


def test_capacity_megapixel():
    report = gross_capacity(Image(1024, 1024, bytes(3 * 1024 * 1024)))
    assert report.gross_bytes == 262144  # 1048576 pixels / 4


def test_capacity_scales_with_pixel_count():
    small = gross_capacity(Image(150, 112, bytes(3 * 150 * 112)))
    large = gross_capacity(Image(300, 224, bytes(3 * 300 * 224)))
    assert large.gross_bytes == 4 * small.gross_bytes
    assert large.pixels == 4 * small.pixels


# --- embed/extract -------------------------------------------------------

def test_roundtrip_assorted_messages():
    rng = random.Random(42)
    cover = rand_image(rng, 180, 140)
    for message in (b"", b"x", b"hello, world", rng.randbytes(1000), b"\x00" * 5000):
        stego = embed(cover, KEY, message)
        assert extract(stego, KEY) == message


def test_embed_is_pure():
    rng = random.Random(43)
    cover = rand_image(rng, 150, 112)
    a = embed(cover, KEY, b"same inputs")
    b = embed(cover, KEY, b"same inputs")
    assert a == b


def test_embed_blits_symbols_into_zero_cover():
    cover = Image(150, 112, bytes(3 * 150 * 112))
    message = b"msg"
    stego = embed(cover, KEY, message)
    box = container.encode_payload(message, KEY)
    symbols = container.bytes_to_bitpairs(box)

    got = blues(stego)
    assert bytes(got[: len(symbols)]) == symbols
    assert not got[len(symbols):].any()
    # container starts with 'S' = 0x53 = 0b01_01_00_11: pairs 3,0,1,1
    assert list(got[:4]) == [3, 0, 1, 1]
    # red and green stay zero everywhere
    flat = np.frombuffer(stego.pixels, dtype=np.uint8)
    assert not flat[0::3].any()
    assert not flat[1::3].any()


def test_embed_locality_against_random_cover():
    rng = random.Random(44)
    cover = rand_image(rng, 170, 120)
    message = rng.randbytes(513)
    stego = embed(cover, KEY, message)
    box = container.encode_payload(message, KEY)
    window = 4 * len(box)

    before = np.frombuffer(cover.pixels, dtype=np.uint8)
    after = np.frombuffer(stego.pixels, dtype=np.uint8)
    assert np.array_equal(before[0::3], after[0::3])  # red untouched
    assert np.array_equal(before[1::3], after[1::3])  # green untouched
    assert np.array_equal(before[2::3] & 0xFC, after[2::3] & 0xFC)  # blue high bits
    assert np.array_equal(before[2::3][window:], after[2::3][window:])
    assert bytes(after[2::3][:window] & 3) == container.bytes_to_bitpairs(box)
    assert max_distortion(cover, stego) <= 3


def test_minimum_dimensions_enforced():
    rng = random.Random(45)
    for width, height in ((149, 112), (150, 111), (1, 1), (149, 111)):
        img = rand_image(rng, width, height)
        with pytest.raises(ImageTooSmall):
            embed(img, KEY, b"hi")
        with pytest.raises(ImageTooSmall):
            extract(img, KEY)
        with pytest.raises(ImageTooSmall):
            probe(img)
    # boundary case is accepted
    stego = embed(rand_image(rng, 150, 112), KEY, b"hi")
    assert extract(stego, KEY) == b"hi"


def test_capacity_boundary_exact():
    rng = random.Random(9000)
    cover = rand_image(random.Random(1), 150, 112)

    fits = rng.randbytes(4176)  # random bytes deflate to a stored block: n + 5
    assert len(container.deflate(fits)) == 4181
    stego = embed(cover, KEY, fits)  # container is exactly 4200 = floor(16800/4)
    assert extract(stego, KEY) == fits

    overflows = rng.randbytes(4177)
    assert len(container.deflate(overflows)) == 4182
    with pytest.raises(CapacityExceeded):
        embed(cover, KEY, overflows)


def test_wrong_key_rejected():
    rng = random.Random(46)
    stego = embed(rand_image(rng, 150, 112), "ABC123", b"locked")
    with pytest.raises(KeyMismatch):
        extract(stego, "XYZ789")


def test_pristine_image_has_no_container():
    rng = random.Random(47)
    img = rand_image(rng, 150, 112)
    with pytest.raises(BadMagic):
        extract(img, KEY)
    assert probe(img) is None


def _overwrite_header(img, header_bytes):
    """Test-side pixel surgery: write a crafted 19-byte header region."""
    symbols = container.bytes_to_bitpairs(header_bytes)
    pixels = bytearray(img.pixels)
    for i, symbol in enumerate(symbols):
        pixels[3 * i + 2] = (pixels[3 * i + 2] & 0xFC) | symbol
    return Image(img.width, img.height, bytes(pixels))


def test_truncated_stream_detected():
    rng = random.Random(48)
    header = MAGIC + bytes([1]) + b"ABC123" + struct.pack(">II", 1_000_000, 0)
    img = _overwrite_header(rand_image(rng, 150, 112), header)
    with pytest.raises(TruncatedStream):
        extract(img, KEY)


def test_future_version_detected():
    rng = random.Random(49)
    header = MAGIC + bytes([9]) + b"ABC123" + struct.pack(">II", 4, 0)
    img = _overwrite_header(rand_image(rng, 150, 112), header)
    with pytest.raises(UnsupportedVersion):
        extract(img, KEY)
    # probe still reports what is there, without judging the version
    info = probe(img)
    assert info is not None and info.version == 9


def test_probe_reports_header():
    rng = random.Random(50)
    message = b"probe me"
    stego = embed(rand_image(rng, 200, 130), KEY, message)
    info = probe(stego)
    assert info is not None
    assert info.version == container.VERSION
    assert info.payload_length == len(container.deflate(message))
    assert info.key == b"ABC123"


def test_double_embed_last_writer_wins_equal_length():
    rng = random.Random(51)
    cover = rand_image(rng, 160, 120)
    first = random.Random(5).randbytes(64)
    second = random.Random(6).randbytes(64)
    box_first = container.encode_payload(first, KEY)
    box_second = container.encode_payload(second, "ZZZ999")
    assert len(box_first) == len(box_second)  # equal-length case only

    once = embed(cover, KEY, first)
    twice = embed(once, "ZZZ999", second)
    assert extract(twice, "ZZZ999") == second
    with pytest.raises(KeyMismatch):
        extract(twice, KEY)


def test_max_distortion():
    rng = random.Random(52)
    cover = rand_image(rng, 150, 112)
    assert max_distortion(cover, cover) == 0
    inverted = Image(cover.width, cover.height, bytes(b ^ 0xFF for b in cover.pixels))
    assert max_distortion(cover, inverted) == 255
    stego = embed(cover, KEY, b"tiny")
    assert max_distortion(cover, stego) <= 3
    with pytest.raises(DimensionMismatch):
        max_distortion(cover, rand_image(rng, 112, 150))
