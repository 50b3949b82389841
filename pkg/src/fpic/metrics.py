"""Image quality and size metrics: MSE, PSNR, SSIM and compression ratio."""

from __future__ import annotations

import math

from .pixel_io import RasterImage

_SSIM_WINDOW = 8
_SSIM_C1 = (0.01 * 255) ** 2
_SSIM_C2 = (0.03 * 255) ** 2


def _check_shapes(a: RasterImage, b: RasterImage) -> None:
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        raise ValueError(
            f"shape mismatch: {a.width}x{a.height}x{a.channels} vs "
            f"{b.width}x{b.height}x{b.channels}"
        )


def mse(a: RasterImage, b: RasterImage) -> float:
    """Mean squared sample difference, all channels pooled."""
    _check_shapes(a, b)
    total = sum((x - y) * (x - y) for x, y in zip(a.data, b.data))
    return total / len(a.data)


def psnr(a: RasterImage, b: RasterImage) -> float:
    """Peak signal-to-noise ratio in dB against a 255 peak; inf for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(255.0 * 255.0 / err)


def _luminance(img: RasterImage) -> list[float]:
    if img.channels == 1:
        return [float(v) for v in img.data]
    d = img.data
    return [
        0.299 * d[i] + 0.587 * d[i + 1] + 0.114 * d[i + 2]
        for i in range(0, len(d), 3)
    ]


def _prefix2d(plane: list[float], w: int, h: int) -> list[list[float]]:
    pre = [[0.0] * (w + 1) for _ in range(h + 1)]
    for y in range(h):
        row_sum = 0.0
        base = y * w
        for x in range(w):
            row_sum += plane[base + x]
            pre[y + 1][x + 1] = pre[y][x + 1] + row_sum
    return pre


def _window_sum(pre, y: int, x: int, n: int) -> float:
    return pre[y + n][x + n] - pre[y][x + n] - pre[y + n][x] + pre[y][x]


def ssim(a: RasterImage, b: RasterImage) -> float:
    """Mean structural similarity over 8x8 sliding windows on the luminance plane."""
    _check_shapes(a, b)
    n = _SSIM_WINDOW
    if a.width < n or a.height < n:
        raise ValueError(f"image smaller than the {n}x{n} SSIM window")
    xs = _luminance(a)
    ys = _luminance(b)
    w, h = a.width, a.height
    px = _prefix2d(xs, w, h)
    py = _prefix2d(ys, w, h)
    pxx = _prefix2d([v * v for v in xs], w, h)
    pyy = _prefix2d([v * v for v in ys], w, h)
    pxy = _prefix2d([u * v for u, v in zip(xs, ys)], w, h)
    area = n * n
    total = 0.0
    windows = 0
    for y in range(h - n + 1):
        for x in range(w - n + 1):
            mx = _window_sum(px, y, x, n) / area
            my = _window_sum(py, y, x, n) / area
            vx = _window_sum(pxx, y, x, n) / area - mx * mx
            vy = _window_sum(pyy, y, x, n) / area - my * my
            cov = _window_sum(pxy, y, x, n) / area - mx * my
            num = (2 * mx * my + _SSIM_C1) * (2 * cov + _SSIM_C2)
            den = (mx * mx + my * my + _SSIM_C1) * (vx + vy + _SSIM_C2)
            total += num / den
            windows += 1
    return total / windows


def compression_ratio(uncompressed_bits: int, compressed_bits: int) -> float:
    """Uncompressed size over compressed size."""
    if uncompressed_bits <= 0 or compressed_bits <= 0:
        raise ValueError("sizes must be positive")
    return uncompressed_bits / compressed_bits
