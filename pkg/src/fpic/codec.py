"""End-to-end compression and decompression pipelines.

Compression runs per channel: cluster pixels, mine closed frequent sequences
over the label rows, tile the rows greedily, Huffman-code the used patterns
and pack everything into a container.  Only the clustering step loses
information; mining and coding are exact on the label matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .container import ChannelSection, CompressedImage
from .entropy import build_code, decode_stream, encode_tokens
from .pixel_io import RasterImage, merge_channels, split_channels
from .quantizer import ClusterModel, LabelMatrix, quantize, reconstruct
from .seqmine import mine_closed
from .tiling import modified_support


@dataclass(frozen=True)
class CodecParams:
    """Knobs for compress(): cluster count, support threshold, clustering mode.

    min_support is an absolute row count when an int (>= 1) and a fraction of
    the row count when a float in (0, 1].  channel_clusters optionally
    overrides the cluster count per channel.
    """

    clusters: int
    min_support: int | float = 3
    mode: str = "dp"
    seed: int = 0
    channel_clusters: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.clusters <= 256:
            raise ValueError(f"clusters must be in [1, 256], got {self.clusters}")
        if isinstance(self.min_support, bool) or not isinstance(self.min_support, (int, float)):
            raise ValueError(f"min_support must be int or float, got {self.min_support!r}")
        if isinstance(self.min_support, int):
            if self.min_support < 1:
                raise ValueError(f"absolute min_support must be >= 1, got {self.min_support}")
        elif not 0.0 < self.min_support <= 1.0:
            raise ValueError(f"fractional min_support must be in (0, 1], got {self.min_support}")
        if self.mode not in ("dp", "lloyd"):
            raise ValueError(f"mode must be dp or lloyd, got {self.mode!r}")
        if self.channel_clusters is not None:
            if len(self.channel_clusters) not in (1, 3):
                raise ValueError("channel_clusters needs 1 or 3 entries")
            if any(not 1 <= k <= 256 for k in self.channel_clusters):
                raise ValueError("channel_clusters entries must be in [1, 256]")


def absolute_support(min_support: int | float, rows: int) -> int:
    """Fractions become ceil(fraction * rows); absolute values pass through."""
    if isinstance(min_support, int):
        return min_support
    return max(1, math.ceil(min_support * rows))


def _alpha_ppm(min_support: int | float, rows: int) -> int:
    fraction = min_support if isinstance(min_support, float) else min_support / rows
    return max(0, min(10000, round(fraction * 10000)))


def encode_channel(model: ClusterModel, labels: LabelMatrix, alpha: int) -> ChannelSection:
    """Mine, tile and entropy-code one labelled channel (alpha in rows)."""
    rows = labels.rows()
    mined = mine_closed(rows, alpha)
    rec = modified_support(rows, mined)
    weights = {p: c for p, c in rec.counts.items() if c > 0}
    table = build_code(weights)
    stream = encode_tokens(rec, table)
    return ChannelSection(model=model, table=table, stream=stream)


def compress(img: RasterImage, params: CodecParams) -> CompressedImage:
    """Run the full encoder over every channel of img."""
    ks = params.channel_clusters or (params.clusters,) * img.channels
    if len(ks) != img.channels:
        raise ValueError(f"{len(ks)} channel_clusters for a {img.channels}-channel image")
    alpha = absolute_support(params.min_support, img.height)
    sections = []
    for ch, k in zip(split_channels(img), ks):
        model, labels = quantize(ch, k, params.mode, params.seed)
        sections.append(encode_channel(model, labels, alpha))
    return CompressedImage(
        width=img.width,
        height=img.height,
        channels=img.channels,
        alpha_ppm=_alpha_ppm(params.min_support, img.height),
        sections=tuple(sections),
    )


def decompress(ci: CompressedImage) -> RasterImage:
    """Decode every channel's bitstream and substitute cluster means back."""
    channels = []
    for sec in ci.sections:
        labels = decode_stream(sec.stream, sec.table, ci.width * ci.height, ci.width)
        channels.append(reconstruct(labels, sec.model))
    return merge_channels(channels)
