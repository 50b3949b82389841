"""Canonical Huffman coding over pattern weights, plus bitstream I/O.

Code lengths come from a deterministic Huffman merge (smaller weight first,
then smaller minimal pattern).  Codewords are canonical: sorted by (length,
pattern) and numbered in order, so a table rebuilds from (pattern, length)
pairs alone.  Bits fill each byte from the most significant end; the final
byte is zero-padded.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping

from .quantizer import LabelMatrix
from .seqmine import Pattern
from .tiling import TilingRecord


class DecodeError(ValueError):
    """A bitstream cannot be decoded against its code table."""


@dataclass(frozen=True)
class BitStream:
    data: bytes
    bit_length: int

    def __post_init__(self):
        if self.bit_length < 0:
            raise ValueError("bit_length must be non-negative")
        if len(self.data) != (self.bit_length + 7) // 8:
            raise ValueError(
                f"{self.bit_length} bits need {(self.bit_length + 7) // 8} bytes, got {len(self.data)}"
            )


@dataclass(frozen=True)
class CodeTable:
    """Prefix code entries (pattern, length, codeword) in canonical order."""

    entries: tuple[tuple[Pattern, int, int], ...]

    @classmethod
    def from_lengths(cls, lengths: Mapping[Pattern, int]) -> "CodeTable":
        if not lengths:
            raise ValueError("empty code table")
        entries = []
        code = 0
        prev_len = 0
        for pattern, length in sorted(lengths.items(), key=lambda e: (e[1], e[0])):
            if length < 1:
                raise ValueError(f"code length must be >= 1, got {length}")
            code <<= length - prev_len
            if code >> length:
                raise ValueError("code lengths violate the Kraft inequality")
            entries.append((tuple(pattern), length, code))
            code += 1
            prev_len = length
        return cls(entries=tuple(entries))

    def codes(self) -> dict[Pattern, tuple[int, int]]:
        """pattern -> (codeword, length)"""
        return {p: (code, length) for p, length, code in self.entries}

    def lengths(self) -> dict[Pattern, int]:
        return {p: length for p, length, _ in self.entries}


def build_code(weights: Mapping[Pattern, int]) -> CodeTable:
    """Huffman-optimal canonical code for positive pattern weights."""
    if not weights:
        raise ValueError("cannot build a code from an empty weight map")
    items = sorted((tuple(p), w) for p, w in weights.items())
    for p, w in items:
        if w < 1:
            raise ValueError(f"weight for {p} must be >= 1, got {w}")
    if len(items) == 1:
        return CodeTable.from_lengths({items[0][0]: 1})
    depth = {p: 0 for p, _ in items}
    heap = [(w, p, [p]) for p, w in items]
    heapq.heapify(heap)
    while len(heap) > 1:
        w1, m1, leaves1 = heapq.heappop(heap)
        w2, m2, leaves2 = heapq.heappop(heap)
        for p in leaves1:
            depth[p] += 1
        for p in leaves2:
            depth[p] += 1
        heapq.heappush(heap, (w1 + w2, min(m1, m2), leaves1 + leaves2))
    return CodeTable.from_lengths(depth)


class _BitWriter:
    def __init__(self):
        self.buf = bytearray()
        self.acc = 0
        self.nbits = 0

    def write(self, code: int, length: int) -> None:
        self.acc = (self.acc << length) | code
        self.nbits += length
        while self.nbits >= 8:
            self.nbits -= 8
            self.buf.append((self.acc >> self.nbits) & 0xFF)
        self.acc &= (1 << self.nbits) - 1

    def finish(self) -> BitStream:
        total = len(self.buf) * 8 + self.nbits
        if self.nbits:
            self.buf.append((self.acc << (8 - self.nbits)) & 0xFF)
        return BitStream(data=bytes(self.buf), bit_length=total)


def encode_tokens(rec: TilingRecord, table: CodeTable) -> BitStream:
    """Concatenate the codewords of every token in (row, start) order."""
    codes = table.codes()
    writer = _BitWriter()
    for token in rec.tokens:
        entry = codes.get(token.pattern)
        if entry is None:
            raise ValueError(f"token pattern {token.pattern} missing from code table")
        writer.write(entry[0], entry[1])
    return writer.finish()


def decode_stream(
    bits: BitStream, table: CodeTable, expected_symbols: int, row_length: int
) -> LabelMatrix:
    """Walk the prefix code and expand patterns until exactly expected_symbols
    are produced, then split into rows of row_length."""
    if expected_symbols < 1 or row_length < 1:
        raise ValueError("expected_symbols and row_length must be positive")
    if expected_symbols % row_length:
        raise ValueError(
            f"{expected_symbols} symbols do not divide into rows of {row_length}"
        )
    padding = len(bits.data) * 8 - bits.bit_length
    if padding and bits.data[-1] & ((1 << padding) - 1):
        raise DecodeError("non-zero padding bits")
    by_code = {(length, code): p for p, length, code in table.entries}
    max_len = max(length for _, length, _ in table.entries)
    symbols: list[int] = []
    acc = 0
    acc_len = 0
    pos = 0
    while pos < bits.bit_length and len(symbols) < expected_symbols:
        byte = bits.data[pos >> 3]
        bit = (byte >> (7 - (pos & 7))) & 1
        pos += 1
        acc = (acc << 1) | bit
        acc_len += 1
        pattern = by_code.get((acc_len, acc))
        if pattern is not None:
            symbols.extend(pattern)
            acc = 0
            acc_len = 0
        elif acc_len > max_len:
            raise DecodeError("no codeword matches the next bits")
    if len(symbols) > expected_symbols:
        raise DecodeError(
            f"decoded {len(symbols)} symbols, pattern straddles the expected {expected_symbols}"
        )
    if len(symbols) < expected_symbols:
        raise DecodeError(
            f"bitstream exhausted after {len(symbols)} of {expected_symbols} symbols"
        )
    if pos < bits.bit_length:
        raise DecodeError(f"{bits.bit_length - pos} unread bits after the last symbol")
    return LabelMatrix(width=row_length, height=expected_symbols // row_length, labels=symbols)
