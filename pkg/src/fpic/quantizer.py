"""Scalar pixel clustering.

Groups the pixel values of one channel into k clusters and swaps each pixel
for its cluster identifier.  The default "dp" mode finds the exact minimum
total within-cluster squared error by dynamic programming over the sorted
value histogram, so results are fully deterministic.  A classic Lloyd
iteration ("lloyd") is kept behind a flag for experiments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .pixel_io import Channel


@dataclass(frozen=True)
class ClusterModel:
    """k cluster means, indexed by identifier, sorted ascending."""

    k: int
    means: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "means", tuple(self.means))
        if self.k < 1 or self.k > 256:
            raise ValueError(f"k must be in [1, 256], got {self.k}")
        if len(self.means) != self.k:
            raise ValueError(f"expected {self.k} means, got {len(self.means)}")
        if any(m < 0 or m > 255 for m in self.means):
            raise ValueError("means must lie in [0, 255]")


@dataclass(frozen=True)
class LabelMatrix:
    """Per-pixel cluster identifiers, row-major."""

    width: int
    height: int
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.width < 1 or self.height < 1:
            raise ValueError(f"dimensions must be positive, got {self.width}x{self.height}")
        if len(self.labels) != self.width * self.height:
            raise ValueError(f"expected {self.width * self.height} labels, got {len(self.labels)}")

    def rows(self) -> list[list[int]]:
        w = self.width
        return [list(self.labels[r * w : (r + 1) * w]) for r in range(self.height)]


def quantize(ch: Channel, k: int, mode: str = "dp", seed: int = 0) -> tuple[ClusterModel, LabelMatrix]:
    """Cluster a channel's values into k groups and label every pixel.

    When k exceeds the number of distinct values, the effective k shrinks to
    that count.  Identifiers are assigned in ascending order of cluster mean;
    each pixel gets the identifier of the nearest mean (ties break toward the
    lower identifier).
    """
    if k < 1 or k > 256:
        raise ValueError(f"k must be in [1, 256], got {k}")
    if not ch.data:
        raise ValueError("cannot quantize an empty channel")
    counts = [0] * 256
    for v in ch.data:
        counts[v] += 1
    values = [v for v in range(256) if counts[v]]
    weights = [counts[v] for v in values]
    k_eff = min(k, len(values))
    if mode == "dp":
        segments = _dp_partition(values, weights, k_eff)
    elif mode == "lloyd":
        segments = _lloyd_partition(values, weights, k_eff, seed)
    else:
        raise ValueError(f"unknown clustering mode {mode!r}, expected dp or lloyd")
    means = _segment_means(values, weights, segments)
    model = ClusterModel(len(means), means)
    lut = _nearest_mean_lut(means)
    labels = [lut[v] for v in ch.data]
    return model, LabelMatrix(ch.width, ch.height, labels)


def reconstruct(labels: LabelMatrix, model: ClusterModel) -> Channel:
    """Replace every cluster identifier with its mean pixel value."""
    for lab in labels.labels:
        if lab < 0 or lab >= model.k:
            raise ValueError(f"label {lab} out of range for k={model.k}")
    return Channel(labels.width, labels.height, [model.means[lab] for lab in labels.labels])


def _round_mean(total: int, count: int) -> int:
    # round half away from zero; exact in integer arithmetic (values are >= 0)
    return (2 * total + count) // (2 * count)


def _segment_means(values, weights, segments) -> list[int]:
    # segments are disjoint intervals of the sorted values, so ordering them by
    # first index orders them by mean as well
    ordered = sorted(segments, key=lambda seg: seg[0])
    means = []
    for seg in ordered:
        total = sum(values[i] * weights[i] for i in seg)
        count = sum(weights[i] for i in seg)
        means.append(_round_mean(total, count))
    return means


def _nearest_mean_lut(means) -> list[int]:
    lut = []
    for v in range(256):
        best = 0
        best_d = abs(v - means[0])
        for idx in range(1, len(means)):
            d = abs(v - means[idx])
            if d < best_d:
                best, best_d = idx, d
        lut.append(best)
    return lut


def _dp_partition(values, weights, k) -> list[list[int]]:
    """Exact minimum-SSE partition of the sorted values into k groups."""
    d = len(values)
    if k == d:
        return [[i] for i in range(d)]
    w_pre = [0.0] * (d + 1)
    s1_pre = [0.0] * (d + 1)
    s2_pre = [0.0] * (d + 1)
    for i in range(d):
        w_pre[i + 1] = w_pre[i] + weights[i]
        s1_pre[i + 1] = s1_pre[i] + weights[i] * values[i]
        s2_pre[i + 1] = s2_pre[i] + weights[i] * values[i] * values[i]

    def sse(a: int, b: int) -> float:
        # weighted squared error of values[a..b] around their mean
        w = w_pre[b + 1] - w_pre[a]
        s1 = s1_pre[b + 1] - s1_pre[a]
        s2 = s2_pre[b + 1] - s2_pre[a]
        return s2 - s1 * s1 / w

    prev = [sse(0, i) for i in range(d)]
    backs = []
    for j in range(2, k + 1):
        cur = [0.0] * d
        back = [0] * d
        for i in range(j - 1, d):
            best_cost = prev[j - 2] + sse(j - 1, i)
            best_t = j - 2
            for t in range(j - 1, i):
                c = prev[t] + sse(t + 1, i)
                if c < best_cost:
                    best_cost, best_t = c, t
            cur[i], back[i] = best_cost, best_t
        prev = cur
        backs.append(back)
    bounds = []
    end = d - 1
    for j in range(k, 1, -1):
        t = backs[j - 2][end]
        bounds.append((t + 1, end))
        end = t
    bounds.append((0, end))
    bounds.reverse()
    return [list(range(a, b + 1)) for a, b in bounds]


def _lloyd_partition(values, weights, k, seed) -> list[list[int]]:
    """Standard k-means on the value histogram: random init, 100-iteration cap."""
    rng = random.Random(seed)
    centers = sorted(rng.sample(values, k))
    assign: list[int] | None = None
    for _ in range(100):
        new_assign = []
        for v in values:
            best = 0
            best_d = abs(v - centers[0])
            for idx in range(1, k):
                d = abs(v - centers[idx])
                if d < best_d:
                    best, best_d = idx, d
            new_assign.append(best)
        if new_assign == assign:
            break
        assign = new_assign
        for c in range(k):
            total = sum(values[i] * weights[i] for i in range(len(values)) if assign[i] == c)
            count = sum(weights[i] for i in range(len(values)) if assign[i] == c)
            if count:
                centers[c] = total / count
    segments = [[i for i in range(len(values)) if assign[i] == c] for c in range(k)]
    return [seg for seg in segments if seg]
