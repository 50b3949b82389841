"""Bit-exact .fpic container format.

Layout (all multi-byte integers little-endian):

    magic "FPIC" | version u8=1 | width u32 | height u32 | channels u8 |
    alpha_ppm u16 (support threshold in parts-per-10000, provenance only)
    then per channel:
        effective_k u16 | k mean bytes | pattern_count u16 |
        per pattern: len u8, symbols (len bytes), code_len u8 |
        stream_bit_length u32 | ceil(bits/8) stream bytes, zero padded

The decoder needs only the means, the (pattern, code length) pairs (codewords
are canonical) and the bitstream.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .entropy import BitStream, CodeTable
from .quantizer import ClusterModel

MAGIC = b"FPIC"
VERSION = 1


class ContainerFormatError(ValueError):
    """Raised for malformed container bytes or unserializable field values."""


@dataclass(frozen=True)
class ChannelSection:
    model: ClusterModel
    table: CodeTable
    stream: BitStream


@dataclass(frozen=True)
class CompressedImage:
    width: int
    height: int
    channels: int
    alpha_ppm: int
    sections: tuple[ChannelSection, ...]

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"dimensions must be positive, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        if len(self.sections) != self.channels:
            raise ValueError(f"expected {self.channels} sections, got {len(self.sections)}")
        if not 0 <= self.alpha_ppm <= 0xFFFF:
            raise ValueError(f"alpha_ppm out of range: {self.alpha_ppm}")
        for sec in self.sections:
            for pattern, _, _ in sec.table.entries:
                if any(sym >= sec.model.k for sym in pattern):
                    raise ValueError(
                        f"pattern {pattern} uses symbols >= effective k {sec.model.k}"
                    )


def serialize(ci: CompressedImage) -> bytes:
    """Encode a CompressedImage to its canonical byte layout."""
    out = bytearray()
    out += MAGIC
    out += struct.pack("<BIIBH", VERSION, ci.width, ci.height, ci.channels, ci.alpha_ppm)
    for sec in ci.sections:
        out += struct.pack("<H", sec.model.k)
        out += bytes(sec.model.means)
        if len(sec.table.entries) > 0xFFFF:
            raise ContainerFormatError(
                f"pattern count {len(sec.table.entries)} exceeds 65535"
            )
        out += struct.pack("<H", len(sec.table.entries))
        for pattern, length, _ in sec.table.entries:
            if not 1 <= len(pattern) <= 0xFF:
                raise ContainerFormatError(f"pattern length {len(pattern)} not in [1, 255]")
            if length > 0xFF:
                raise ContainerFormatError(f"code length {length} exceeds 255")
            out += struct.pack("<B", len(pattern))
            out += bytes(pattern)
            out += struct.pack("<B", length)
        if sec.stream.bit_length > 0xFFFFFFFF:
            raise ContainerFormatError("stream bit length exceeds u32")
        out += struct.pack("<I", sec.stream.bit_length)
        out += sec.stream.data
    return bytes(out)


class _Cursor:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def take(self, n: int, field: str) -> bytes:
        if self.pos + n > len(self.buf):
            raise ContainerFormatError(f"truncated container: missing {field}")
        chunk = self.buf[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str, field: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt), field))


def deserialize(buf: bytes) -> CompressedImage:
    """Parse container bytes, validating structure and code-table sanity."""
    cur = _Cursor(bytes(buf))
    if cur.take(4, "magic") != MAGIC:
        raise ContainerFormatError("bad magic, not an fpic container")
    (version,) = cur.unpack("<B", "version")
    if version != VERSION:
        raise ContainerFormatError(f"unsupported version {version}")
    width, height, channels, alpha_ppm = cur.unpack("<IIBH", "header")
    if width < 1 or height < 1:
        raise ContainerFormatError(f"invalid dimensions {width}x{height}")
    if channels not in (1, 3):
        raise ContainerFormatError(f"invalid channel count {channels}")
    sections = []
    for c in range(channels):
        (k,) = cur.unpack("<H", f"channel {c} k")
        if not 1 <= k <= 256:
            raise ContainerFormatError(f"channel {c}: k {k} not in [1, 256]")
        means = tuple(cur.take(k, f"channel {c} means"))
        (pattern_count,) = cur.unpack("<H", f"channel {c} pattern count")
        if pattern_count < 1:
            raise ContainerFormatError(f"channel {c}: empty code table")
        lengths: dict[tuple[int, ...], int] = {}
        for i in range(pattern_count):
            (plen,) = cur.unpack("<B", f"channel {c} pattern {i} length")
            if plen < 1:
                raise ContainerFormatError(f"channel {c}: zero-length pattern")
            pattern = tuple(cur.take(plen, f"channel {c} pattern {i} symbols"))
            if any(sym >= k for sym in pattern):
                raise ContainerFormatError(
                    f"channel {c}: pattern {pattern} has symbols >= k {k}"
                )
            (code_len,) = cur.unpack("<B", f"channel {c} pattern {i} code length")
            if code_len < 1:
                raise ContainerFormatError(f"channel {c}: zero code length")
            if pattern in lengths:
                raise ContainerFormatError(f"channel {c}: duplicate pattern {pattern}")
            lengths[pattern] = code_len
        _check_kraft(lengths, c)
        table = CodeTable.from_lengths(lengths)
        (bit_length,) = cur.unpack("<I", f"channel {c} stream bit length")
        stream_bytes = cur.take((bit_length + 7) // 8, f"channel {c} stream")
        padding = len(stream_bytes) * 8 - bit_length
        if padding and stream_bytes[-1] & ((1 << padding) - 1):
            raise ContainerFormatError(f"channel {c}: non-zero stream padding")
        sections.append(
            ChannelSection(
                model=ClusterModel(k, means),
                table=table,
                stream=BitStream(stream_bytes, bit_length),
            )
        )
    if cur.pos != len(cur.buf):
        raise ContainerFormatError(f"{len(cur.buf) - cur.pos} trailing bytes")
    try:
        return CompressedImage(width, height, channels, alpha_ppm, tuple(sections))
    except ValueError as exc:
        raise ContainerFormatError(str(exc)) from None


def _check_kraft(lengths: dict[tuple[int, ...], int], channel: int) -> None:
    if len(lengths) == 1:
        if next(iter(lengths.values())) != 1:
            raise ContainerFormatError(
                f"channel {channel}: single-pattern table must use code length 1"
            )
        return
    top = max(lengths.values())
    total = sum(1 << (top - length) for length in lengths.values())
    if total != 1 << top:
        raise ContainerFormatError(f"channel {channel}: code lengths violate Kraft equality")


def compressed_size_bits(ci: CompressedImage) -> int:
    """Total container size in bits (serialized byte length times eight)."""
    return 8 * len(serialize(ci))
