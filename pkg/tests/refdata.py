"""Shared reference fixtures: the 8x8 worked example the codec is pinned to,
plus small random-input builders used across the suite."""

import random

from fpic import ClusterModel, CompressedImage, LabelMatrix, MinedPatternSet, RasterImage, encode_channel

# 8x8 grayscale source matrix
B = [
    154, 123, 123, 123, 123, 123, 123, 136,
    192, 180, 136, 154, 154, 154, 136, 110,
    254, 198, 154, 154, 180, 154, 123, 123,
    239, 180, 136, 180, 180, 166, 123, 123,
    180, 154, 136, 167, 166, 149, 136, 136,
    128, 136, 123, 136, 154, 180, 198, 166,
    123, 105, 110, 149, 136, 136, 180, 166,
    110, 136, 123, 123, 123, 136, 154, 136,
]

# reference 5-cluster model for B and the label matrix it induces
REF_MEANS = (179, 153, 135, 246, 120)

B_LABELS = [
    [1, 4, 4, 4, 4, 4, 4, 2],
    [0, 0, 2, 1, 1, 1, 2, 4],
    [3, 0, 1, 1, 0, 1, 4, 4],
    [3, 0, 2, 0, 0, 0, 4, 4],
    [0, 1, 2, 0, 0, 1, 2, 2],
    [2, 2, 4, 2, 1, 0, 0, 1],
    [4, 4, 4, 1, 2, 2, 0, 0],
    [4, 2, 4, 4, 4, 2, 1, 2],
]

# B_LABELS decoded through REF_MEANS
B_DECODED = [
    153, 120, 120, 120, 120, 120, 120, 135,
    179, 179, 135, 153, 153, 153, 135, 120,
    246, 179, 153, 153, 179, 153, 120, 120,
    246, 179, 135, 179, 179, 179, 120, 120,
    179, 153, 135, 179, 179, 153, 135, 135,
    135, 135, 120, 135, 153, 179, 179, 153,
    120, 120, 120, 153, 135, 135, 179, 179,
    120, 135, 120, 120, 120, 135, 153, 135,
]

# expected closed frequent sets for B_LABELS at alpha=3
F2 = {(0, 0): 5, (0, 1): 3, (1, 2): 4, (2, 1): 3, (2, 2): 3, (2, 4): 3, (4, 2): 3, (4, 4): 5}
F3 = {(2, 0, 0): 3, (4, 4, 4): 3}
E1 = {(0,): 6, (1,): 7, (2,): 7, (3,): 2, (4,): 7}

# two-row tiling example with its hand-picked pattern set and supports
M = [[4, 4, 4, 1, 2, 2, 0, 0], [4, 0, 0, 4, 4, 4, 2, 2]]
M_SET = MinedPatternSet(
    e1={(0,): 2, (1,): 1, (2,): 2, (4,): 2},
    levels=({(0, 0): 2, (2, 2): 2, (4, 4): 2}, {(4, 4, 4): 2}),
)
M_SMOD = {
    (4, 4, 4): 2, (4, 4): 0, (2, 2): 2, (0, 0): 2,
    (0,): 0, (1,): 1, (2,): 0, (4,): 1,
}


def flatten(rows):
    return [v for row in rows for v in row]


def b_fixture_container() -> CompressedImage:
    """Container for the worked example: reference model, pinned labels, alpha=3."""
    section = encode_channel(
        ClusterModel(5, REF_MEANS), LabelMatrix(8, 8, flatten(B_LABELS)), 3
    )
    return CompressedImage(width=8, height=8, channels=1, alpha_ppm=3750, sections=(section,))


def random_db(rng: random.Random, max_rows=8, max_len=12, alphabet=5):
    rows = [
        [rng.randrange(alphabet) for _ in range(rng.randint(1, max_len))]
        for _ in range(rng.randint(1, max_rows))
    ]
    return rows


def random_image(rng: random.Random, max_side=32, channels=None) -> RasterImage:
    w = rng.randint(1, max_side)
    h = rng.randint(1, max_side)
    ch = channels if channels is not None else rng.choice([1, 3])
    return RasterImage(w, h, ch, [rng.randrange(256) for _ in range(w * h * ch)])
