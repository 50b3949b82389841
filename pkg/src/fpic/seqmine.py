"""Closed frequent contiguous-sequence mining.

A sequence database is a list of rows; a pattern is a contiguous run of
symbols inside one row.  Row-support counts the rows that contain a pattern
at least once.  mine_closed walks the pattern lattice level by level,
joining frequent patterns into one-longer candidates and dropping any
pattern absorbed by an equal-support supersequence.  All length-1 patterns
are always retained so every symbol stays encodable.
"""

from __future__ import annotations

from dataclasses import dataclass

Pattern = tuple[int, ...]

# longest pattern worth mining; container code-table entries store the length
# in one byte
MAX_PATTERN_LEN = 255


@dataclass(frozen=True)
class MinedPatternSet:
    """Mining output: unpruned singletons plus closed frequent levels F2, F3, ..."""

    e1: dict[Pattern, int]
    levels: tuple[dict[Pattern, int], ...]

    @property
    def s(self) -> dict[Pattern, int]:
        """Union of e1 and every level, with row-supports."""
        union = dict(self.e1)
        for level in self.levels:
            union.update(level)
        return union


def _check_database(db) -> list[list[int]]:
    rows = [list(row) for row in db]
    if not rows or all(not row for row in rows):
        raise ValueError("sequence database needs at least one non-empty row")
    for row in rows:
        for sym in row:
            if not isinstance(sym, int) or sym < 0 or sym > 255:
                raise ValueError(f"symbol {sym!r} outside [0, 255]")
    return rows


def row_support(db, pattern) -> int:
    """Number of rows containing the pattern as a contiguous run (once per row)."""
    p = list(pattern)
    if not p:
        raise ValueError("pattern must be non-empty")
    n = len(p)
    count = 0
    for row in db:
        row = list(row)
        if any(row[i : i + n] == p for i in range(len(row) - n + 1)):
            count += 1
    return count


def candidate_join(prev) -> set[Pattern]:
    """Join equal-length patterns: a extends by b's last symbol when the
    (L-1)-suffix of a equals the (L-1)-prefix of b.  For singletons this is
    the full cross product."""
    pats = {tuple(p) for p in prev}
    if not pats:
        return set()
    lengths = {len(p) for p in pats}
    if len(lengths) != 1:
        raise ValueError(f"mixed pattern lengths in join: {sorted(lengths)}")
    if lengths.pop() < 1:
        raise ValueError("patterns must be non-empty")
    by_prefix: dict[Pattern, list[int]] = {}
    for b in pats:
        by_prefix.setdefault(b[:-1], []).append(b[-1])
    joined = set()
    for a in pats:
        for last in by_prefix.get(a[1:], ()):
            joined.add(a + (last,))
    return joined


def _level_supports(rows, candidates: set[Pattern], length: int) -> dict[Pattern, int]:
    counts = dict.fromkeys(candidates, 0)
    for row in rows:
        if len(row) < length:
            continue
        grams = {tuple(row[i : i + length]) for i in range(len(row) - length + 1)}
        for g in grams:
            if g in counts:
                counts[g] += 1
    return counts


def _absorb(prev_level: dict[Pattern, int], fk: dict[Pattern, int]) -> None:
    # drop any pattern one shorter than an equal-support frequent supersequence
    for sigma, sup in fk.items():
        for sub in {sigma[:-1], sigma[1:]}:
            if prev_level.get(sub) == sup:
                del prev_level[sub]


def mine_closed(db, alpha: int) -> MinedPatternSet:
    """Level-wise closed frequent sequence mining with threshold alpha (rows).

    Levels stop at MAX_PATTERN_LEN so every mined pattern fits a container
    code-table entry.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    rows = _check_database(db)
    e1: dict[Pattern, int] = {}
    for row in rows:
        for sym in set(row):
            e1[(sym,)] = e1.get((sym,), 0) + 1
    e1 = {p: e1[p] for p in sorted(e1)}
    levels: list[dict[Pattern, int]] = []
    prev: dict[Pattern, int] = e1
    length = 2
    while length <= MAX_PATTERN_LEN:
        candidates = candidate_join(prev)
        counts = _level_supports(rows, candidates, length)
        fk = {p: counts[p] for p in sorted(counts) if counts[p] >= alpha}
        if not fk:
            break
        if levels:
            _absorb(levels[-1], fk)
        levels.append(fk)
        prev = fk
        length += 1
    return MinedPatternSet(e1=e1, levels=tuple(levels))


def brute_force_closed(db, alpha: int) -> MinedPatternSet:
    """Verification oracle: enumerate every substring, filter by support,
    prune anything with an equal-support longer supersequence, keep all
    singletons.  Must agree with mine_closed on every input."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    rows = _check_database(db)
    support: dict[Pattern, int] = {}
    for row in rows:
        subs = {
            tuple(row[i:j])
            for i in range(len(row))
            for j in range(i + 1, min(i + MAX_PATTERN_LEN, len(row)) + 1)
        }
        for p in subs:
            support[p] = support.get(p, 0) + 1
    e1 = {p: support[p] for p in sorted(support) if len(p) == 1}
    frequent = {p: c for p, c in support.items() if len(p) >= 2 and c >= alpha}
    # byte strings give constant-factor-cheap contiguous containment checks
    as_bytes = {p: bytes(p) for p in support}
    closed = {
        p: c
        for p, c in frequent.items()
        if not any(
            cq == c and len(q) > len(p) and as_bytes[p] in as_bytes[q]
            for q, cq in support.items()
        )
    }
    if not frequent:
        return MinedPatternSet(e1=e1, levels=())
    top = max(len(p) for p in frequent)
    levels = tuple(
        {p: closed[p] for p in sorted(closed) if len(p) == length}
        for length in range(2, top + 1)
    )
    return MinedPatternSet(e1=e1, levels=levels)
