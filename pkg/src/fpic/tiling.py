"""Greedy longest-first tiling of label rows into mined patterns.

Patterns claim non-overlapping occurrences in a fixed order (length
descending, then row-support descending, then reverse-lexicographic).  Every
claimed span is removed, splitting the row into segments that later patterns
cannot match across.  The count a pattern ends up with is its modified
support; the recorded token placements are what the encoder replays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .seqmine import MinedPatternSet, Pattern, _check_database


class Token(NamedTuple):
    row: int
    start: int
    pattern: Pattern


@dataclass(frozen=True)
class TilingRecord:
    """Modified supports plus the exact token placement for every row."""

    counts: dict[Pattern, int]
    tokens: tuple[Token, ...]
    order: tuple[Pattern, ...]


def greedy_scan(segment, pattern) -> list[int]:
    """Left-to-right non-overlapping match offsets of pattern in segment."""
    p = list(pattern)
    if not p:
        raise ValueError("pattern must be non-empty")
    seg = list(segment)
    n = len(p)
    first = p[0]
    hits = []
    i = 0
    end = len(seg) - n
    while i <= end:
        if seg[i] == first and seg[i : i + n] == p:
            hits.append(i)
            i += n
        else:
            i += 1
    return hits


def pattern_order(supports: dict[Pattern, int]) -> list[Pattern]:
    """Deterministic processing order: length desc, support desc, symbols desc."""
    return sorted(supports, key=lambda p: (len(p), supports[p], p), reverse=True)


def modified_support(db, mined: MinedPatternSet) -> TilingRecord:
    """Tile every row of db with the mined patterns, longest first.

    The mined set must cover db's alphabet (guaranteed when all singletons
    are retained); anything left uncovered raises.
    """
    rows = _check_database(db)
    supports = mined.s
    order = pattern_order(supports)
    counts: dict[Pattern, int] = {p: 0 for p in order}
    tokens: list[Token] = []
    # per row: segments of not-yet-claimed symbols as (absolute start, symbols)
    segments: list[list[tuple[int, list[int]]]] = [
        [(0, row)] if row else [] for row in rows
    ]
    for pat in order:
        n = len(pat)
        for r, segs in enumerate(segments):
            if not segs:
                continue
            remaining: list[tuple[int, list[int]]] = []
            for start, syms in segs:
                if len(syms) < n:
                    remaining.append((start, syms))
                    continue
                hits = greedy_scan(syms, pat)
                if not hits:
                    remaining.append((start, syms))
                    continue
                counts[pat] += len(hits)
                prev_end = 0
                for h in hits:
                    tokens.append(Token(r, start + h, pat))
                    if h > prev_end:
                        remaining.append((start + prev_end, syms[prev_end:h]))
                    prev_end = h + n
                if prev_end < len(syms):
                    remaining.append((start + prev_end, syms[prev_end:]))
            segments[r] = remaining
    leftover = sum(len(syms) for segs in segments for _, syms in segs)
    if leftover:
        raise ValueError(f"{leftover} symbols not coverable by the pattern set")
    tokens.sort(key=lambda t: (t.row, t.start))
    return TilingRecord(counts=counts, tokens=tuple(tokens), order=tuple(order))
