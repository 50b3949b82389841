import math
import random

import pytest

from fpic import RasterImage, compression_ratio, mse, psnr, ssim

from refdata import random_image


def test_mse_identical_is_zero():
    img = RasterImage(2, 2, 1, [5, 6, 7, 8])
    assert mse(img, img) == 0.0


def test_mse_constant_difference():
    a = RasterImage(3, 3, 1, [0] * 9)
    b = RasterImage(3, 3, 1, [255] * 9)
    assert mse(a, b) == 65025.0


def test_mse_hand_sum():
    a = RasterImage(2, 2, 1, [0, 0, 0, 10])
    b = RasterImage(2, 2, 1, [0, 0, 0, 0])
    assert abs(mse(a, b) - 25.0) < 1e-9


def test_mse_shape_mismatch():
    with pytest.raises(ValueError, match="shape"):
        mse(RasterImage(1, 1, 1, [0]), RasterImage(1, 2, 1, [0, 0]))
    with pytest.raises(ValueError, match="shape"):
        mse(RasterImage(1, 1, 1, [0]), RasterImage(1, 1, 3, [0, 0, 0]))


def test_psnr_infinite_when_equal():
    img = RasterImage(1, 1, 1, [9])
    assert psnr(img, img) == math.inf


def test_psnr_zero_db():
    a = RasterImage(2, 2, 1, [0] * 4)
    b = RasterImage(2, 2, 1, [255] * 4)
    assert abs(psnr(a, b)) < 1e-12


def test_psnr_unit_mse():
    a = RasterImage(2, 2, 1, [10, 10, 10, 10])
    b = RasterImage(2, 2, 1, [11, 11, 11, 11])
    assert abs(psnr(a, b) - 48.13080361)  < 1e-6


def test_psnr_decreasing_in_mse():
    base = RasterImage(2, 2, 1, [0] * 4)
    worse = [RasterImage(2, 2, 1, [d] * 4) for d in (1, 5, 20, 80)]
    values = [psnr(base, img) for img in worse]
    assert values == sorted(values, reverse=True)


def test_psnr_symmetric():
    rng = random.Random(1)
    a = random_image(rng, max_side=12, channels=1)
    b = RasterImage(a.width, a.height, 1, [rng.randrange(256) for _ in range(a.width * a.height)])
    assert psnr(a, b) == psnr(b, a)


def test_ssim_self_is_one():
    rng = random.Random(2)
    for _ in range(5):
        w, h = rng.randint(8, 20), rng.randint(8, 20)
        img = RasterImage(w, h, 1, [rng.randrange(256) for _ in range(w * h)])
        assert abs(ssim(img, img) - 1.0) < 1e-12


def test_ssim_constant_images_closed_form():
    a = RasterImage(8, 8, 1, [100] * 64)
    b = RasterImage(8, 8, 1, [110] * 64)
    c1 = (0.01 * 255) ** 2
    expected = (2 * 100 * 110 + c1) / (100**2 + 110**2 + c1)
    assert abs(ssim(a, b) - expected) < 1e-12
    assert abs(expected - 0.99547644) < 1e-8


def test_ssim_bounded_and_symmetric():
    rng = random.Random(3)
    for _ in range(10):
        w, h = rng.randint(8, 16), rng.randint(8, 16)
        ch = rng.choice([1, 3])
        a = RasterImage(w, h, ch, [rng.randrange(256) for _ in range(w * h * ch)])
        b = RasterImage(w, h, ch, [rng.randrange(256) for _ in range(w * h * ch)])
        value = ssim(a, b)
        assert -1.0 <= value <= 1.0
        assert value == ssim(b, a)


def test_ssim_window_guard():
    small = RasterImage(4, 4, 1, [0] * 16)
    with pytest.raises(ValueError, match="window"):
        ssim(small, small)


def test_ssim_rgb_uses_luminance():
    # swapping channels changes luminance, so SSIM must notice
    a = RasterImage(8, 8, 3, [200, 30, 90] * 64)
    b = RasterImage(8, 8, 3, [30, 200, 90] * 64)
    assert ssim(a, b) < 1.0
    assert abs(ssim(a, a) - 1.0) < 1e-12


def test_compression_ratio_values():
    assert abs(compression_ratio(512, 129) - 3.968992248) < 1e-8
    assert abs(compression_ratio(512, 129) - 3.968) < 2e-3
    assert compression_ratio(100, 100) == 1.0
    assert compression_ratio(1024, 256) == 4.0


def test_compression_ratio_guards():
    with pytest.raises(ValueError):
        compression_ratio(0, 10)
    with pytest.raises(ValueError):
        compression_ratio(10, 0)
