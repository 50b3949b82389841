"""Raster image input/output.

Supported formats: PGM (P2/P5) and PPM (P3/P6) with maxval 255, plus
uncompressed 24-bit BMP (BITMAPINFOHEADER, BI_RGB).  Pixel data is kept as a
flat row-major tuple of integers in [0, 255]; RGB samples are interleaved.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

_WHITESPACE = b" \t\r\n\x0b\x0c"


class ImageFormatError(ValueError):
    """An image file could not be parsed; the message names the bad field."""


@dataclass(frozen=True)
class RasterImage:
    """A width x height raster with 1 (grayscale) or 3 (RGB) channels."""

    width: int
    height: int
    channels: int
    data: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "data", tuple(self.data))
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        expected = self.width * self.height * self.channels
        if len(self.data) != expected:
            raise ValueError(f"expected {expected} samples, got {len(self.data)}")
        if any(v < 0 or v > 255 for v in self.data):
            raise ValueError("samples must lie in [0, 255]")


@dataclass(frozen=True)
class Channel:
    """A single color component of an image."""

    width: int
    height: int
    data: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "data", tuple(self.data))
        if self.width < 1 or self.height < 1:
            raise ValueError(f"channel dimensions must be positive, got {self.width}x{self.height}")
        if len(self.data) != self.width * self.height:
            raise ValueError(f"expected {self.width * self.height} samples, got {len(self.data)}")
        if any(v < 0 or v > 255 for v in self.data):
            raise ValueError("samples must lie in [0, 255]")


def load_image(path) -> RasterImage:
    """Parse a PGM/PPM/BMP file into a RasterImage.

    BMP rows are normalized to top-down order.  Raises ImageFormatError for
    unsupported or corrupt files.
    """
    with open(path, "rb") as fh:
        buf = fh.read()
    if len(buf) < 2:
        raise ImageFormatError("truncated file: no magic number")
    magic = buf[:2]
    if magic in (b"P2", b"P3", b"P5", b"P6"):
        return _load_pnm(buf)
    if magic == b"BM":
        return _load_bmp(buf)
    raise ImageFormatError(f"unsupported format: magic {magic!r}")


def save_image(img: RasterImage, path, format: str) -> None:
    """Write img to path as pgm (1 channel), ppm or bmp (3 channels).

    PNM output uses the binary variants (P5/P6).
    """
    if format == "pgm":
        if img.channels != 1:
            raise ValueError(f"pgm requires 1 channel, image has {img.channels}")
        payload = b"P5\n%d %d\n255\n" % (img.width, img.height) + bytes(img.data)
    elif format == "ppm":
        if img.channels != 3:
            raise ValueError(f"ppm requires 3 channels, image has {img.channels}")
        payload = b"P6\n%d %d\n255\n" % (img.width, img.height) + bytes(img.data)
    elif format == "bmp":
        if img.channels != 3:
            raise ValueError(f"bmp requires 3 channels, image has {img.channels}")
        payload = _bmp_bytes(img)
    else:
        raise ValueError(f"unknown format {format!r}, expected pgm, ppm or bmp")
    with open(path, "wb") as fh:
        fh.write(payload)


def split_channels(img: RasterImage) -> list[Channel]:
    """Split an image into its 1 or 3 component channels."""
    if img.channels == 1:
        return [Channel(img.width, img.height, img.data)]
    return [
        Channel(img.width, img.height, img.data[c :: 3])
        for c in range(3)
    ]


def merge_channels(channels: list[Channel]) -> RasterImage:
    """Interleave 1 or 3 equally sized channels back into a RasterImage."""
    if len(channels) not in (1, 3):
        raise ValueError(f"expected 1 or 3 channels, got {len(channels)}")
    first = channels[0]
    for ch in channels[1:]:
        if (ch.width, ch.height) != (first.width, first.height):
            raise ValueError(
                f"channel dimensions differ: {ch.width}x{ch.height} vs {first.width}x{first.height}"
            )
    if len(channels) == 1:
        return RasterImage(first.width, first.height, 1, first.data)
    data = [0] * (first.width * first.height * 3)
    for c, ch in enumerate(channels):
        data[c::3] = ch.data
    return RasterImage(first.width, first.height, 3, data)


# --- PNM ---------------------------------------------------------------


def _skip_pnm_space(buf: bytes, pos: int) -> int:
    n = len(buf)
    while pos < n:
        c = buf[pos]
        if c == 0x23:  # '#' comment runs to end of line
            while pos < n and buf[pos] not in (0x0A, 0x0D):
                pos += 1
        elif c in _WHITESPACE:
            pos += 1
        else:
            break
    return pos


def _pnm_token(buf: bytes, pos: int, field: str) -> tuple[bytes, int]:
    pos = _skip_pnm_space(buf, pos)
    if pos >= len(buf):
        raise ImageFormatError(f"truncated header: missing {field}")
    start = pos
    while pos < len(buf) and buf[pos] not in _WHITESPACE and buf[pos] != 0x23:
        pos += 1
    return buf[start:pos], pos


def _pnm_int(buf: bytes, pos: int, field: str) -> tuple[int, int]:
    token, pos = _pnm_token(buf, pos, field)
    try:
        value = int(token)
    except ValueError:
        raise ImageFormatError(f"invalid {field}: {token!r}") from None
    return value, pos


def _load_pnm(buf: bytes) -> RasterImage:
    magic = buf[:2]
    channels = 3 if magic in (b"P3", b"P6") else 1
    ascii_data = magic in (b"P2", b"P3")
    width, pos = _pnm_int(buf, 2, "width")
    height, pos = _pnm_int(buf, pos, "height")
    maxval, pos = _pnm_int(buf, pos, "maxval")
    if width < 1:
        raise ImageFormatError(f"invalid width: {width}")
    if height < 1:
        raise ImageFormatError(f"invalid height: {height}")
    if maxval != 255:
        raise ImageFormatError(f"unsupported maxval {maxval}, only 255 is accepted")
    count = width * height * channels
    if ascii_data:
        data = []
        for _ in range(count):
            try:
                value, pos = _pnm_int(buf, pos, "pixel data")
            except ImageFormatError:
                raise ImageFormatError(
                    f"truncated pixel data: expected {count} samples, got {len(data)}"
                ) from None
            if value < 0 or value > 255:
                raise ImageFormatError(f"pixel value {value} outside [0, 255]")
            data.append(value)
        if _skip_pnm_space(buf, pos) != len(buf):
            raise ImageFormatError("trailing data after pixel samples")
        return RasterImage(width, height, channels, data)
    # binary variants: exactly one whitespace byte separates header and payload
    if pos >= len(buf) or buf[pos] not in _WHITESPACE:
        raise ImageFormatError("missing whitespace after maxval")
    payload = buf[pos + 1 :]
    if len(payload) < count:
        raise ImageFormatError(
            f"truncated pixel data: expected {count} bytes, got {len(payload)}"
        )
    if len(payload) > count:
        raise ImageFormatError(f"trailing data: {len(payload) - count} bytes after pixels")
    return RasterImage(width, height, channels, payload)


# --- BMP ---------------------------------------------------------------


def _load_bmp(buf: bytes) -> RasterImage:
    if len(buf) < 54:
        raise ImageFormatError(f"truncated file: BMP headers need 54 bytes, got {len(buf)}")
    data_offset = struct.unpack_from("<I", buf, 10)[0]
    header_size, width, height, planes, bpp, compression = struct.unpack_from(
        "<IiiHHI", buf, 14
    )
    if header_size != 40:
        raise ImageFormatError(f"unsupported DIB header size {header_size}, expected 40")
    if planes != 1:
        raise ImageFormatError(f"invalid color planes {planes}, expected 1")
    if bpp != 24:
        raise ImageFormatError(f"unsupported bits-per-pixel {bpp}, only 24 is accepted")
    if compression != 0:
        raise ImageFormatError(f"unsupported compression {compression}, only BI_RGB (0)")
    top_down = height < 0
    height = abs(height)
    if width < 1 or height < 1:
        raise ImageFormatError(f"invalid dimensions {width}x{height}")
    stride = (width * 3 + 3) & ~3
    if len(buf) < data_offset + stride * height:
        raise ImageFormatError(
            f"truncated pixel data: need {data_offset + stride * height} bytes, got {len(buf)}"
        )
    data = [0] * (width * height * 3)
    for row in range(height):
        src_row = row if top_down else height - 1 - row
        base = data_offset + src_row * stride
        out = row * width * 3
        for x in range(width):
            b, g, r = buf[base + 3 * x : base + 3 * x + 3]
            data[out + 3 * x] = r
            data[out + 3 * x + 1] = g
            data[out + 3 * x + 2] = b
    return RasterImage(width, height, 3, data)


def _bmp_bytes(img: RasterImage) -> bytes:
    stride = (img.width * 3 + 3) & ~3
    image_size = stride * img.height
    out = bytearray()
    out += struct.pack("<2sIHHI", b"BM", 54 + image_size, 0, 0, 54)
    out += struct.pack(
        "<IiiHHIIiiII", 40, img.width, img.height, 1, 24, 0, image_size, 2835, 2835, 0, 0
    )
    pad = b"\x00" * (stride - img.width * 3)
    for row in range(img.height - 1, -1, -1):  # bottom-up
        base = row * img.width * 3
        for x in range(img.width):
            r, g, b = img.data[base + 3 * x : base + 3 * x + 3]
            out += bytes((b, g, r))
        out += pad
    return bytes(out)
