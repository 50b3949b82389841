import random

import pytest

from fpic import (
    Channel,
    ImageFormatError,
    RasterImage,
    load_image,
    merge_channels,
    save_image,
    split_channels,
)


def test_load_p5_direct_bytes(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([10, 20, 30, 40]))
    img = load_image(path)
    assert (img.width, img.height, img.channels) == (2, 2, 1)
    assert img.data == (10, 20, 30, 40)


def test_load_p6_single_pixel(tmp_path):
    path = tmp_path / "a.ppm"
    path.write_bytes(b"P6 1 1 255\n" + bytes([255, 0, 0]))
    img = load_image(path)
    assert img.channels == 3
    assert img.data == (255, 0, 0)


def test_load_truncated_p5(tmp_path):
    path = tmp_path / "short.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([10, 20, 30]))
    with pytest.raises(ImageFormatError, match="truncated"):
        load_image(path)


def test_load_ascii_with_comments(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_text("P2\n# a comment\n2 1 # trailing\n255\n7 250\n")
    assert load_image(path).data == (7, 250)


def test_load_p3(tmp_path):
    path = tmp_path / "a.ppm"
    path.write_text("P3\n1 2\n255\n1 2 3 4 5 6\n")
    img = load_image(path)
    assert img.data == (1, 2, 3, 4, 5, 6)
    assert img.channels == 3


def test_maxval_rejected(tmp_path):
    path = tmp_path / "deep.pgm"
    path.write_text("P2\n1 1\n65535\n1000\n")
    with pytest.raises(ImageFormatError, match="maxval"):
        load_image(path)


def test_unknown_magic(tmp_path):
    path = tmp_path / "odd.pbm"
    path.write_bytes(b"P4\n1 1\n\x80")
    with pytest.raises(ImageFormatError, match="magic"):
        load_image(path)


def test_bad_width_token(tmp_path):
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P5\nxx 2\n255\n....")
    with pytest.raises(ImageFormatError, match="width"):
        load_image(path)


def test_ascii_sample_out_of_range(tmp_path):
    path = tmp_path / "hot.pgm"
    path.write_text("P2\n1 1\n255\n300\n")
    with pytest.raises(ImageFormatError, match="300"):
        load_image(path)


def test_binary_trailing_bytes_rejected(tmp_path):
    path = tmp_path / "fat.pgm"
    path.write_bytes(b"P5\n1 1\n255\n\x01\x02")
    with pytest.raises(ImageFormatError, match="trailing"):
        load_image(path)


@pytest.mark.parametrize("fmt,channels", [("pgm", 1), ("ppm", 3), ("bmp", 3)])
def test_save_load_round_trip(tmp_path, fmt, channels):
    rng = random.Random(fmt)
    for w, h in [(1, 1), (3, 2), (5, 4), (8, 8)]:
        img = RasterImage(w, h, channels, [rng.randrange(256) for _ in range(w * h * channels)])
        path = tmp_path / f"img_{w}x{h}.{fmt}"
        save_image(img, path, fmt)
        assert load_image(path) == img


def test_save_channel_mismatch(tmp_path):
    rgb = RasterImage(1, 1, 3, [1, 2, 3])
    gray = RasterImage(1, 1, 1, [9])
    with pytest.raises(ValueError, match="pgm"):
        save_image(rgb, tmp_path / "x.pgm", "pgm")
    with pytest.raises(ValueError, match="ppm"):
        save_image(gray, tmp_path / "x.ppm", "ppm")
    with pytest.raises(ValueError, match="bmp"):
        save_image(gray, tmp_path / "x.bmp", "bmp")
    with pytest.raises(ValueError, match="format"):
        save_image(gray, tmp_path / "x.png", "png")


def test_ppm_payload_bytes(tmp_path):
    path = tmp_path / "one.ppm"
    save_image(RasterImage(1, 1, 3, [7, 8, 9]), path, "ppm")
    assert path.read_bytes().endswith(bytes([7, 8, 9]))


def test_bmp_bottom_up_normalized(tmp_path):
    # 1x2 image: red on the top row, blue on the bottom; BMP stores bottom row first
    img = RasterImage(1, 2, 3, [255, 0, 0, 0, 0, 255])
    path = tmp_path / "t.bmp"
    save_image(img, path, "bmp")
    raw = path.read_bytes()
    # pixel data starts at offset 54; first stored row is the bottom one, BGR order
    assert raw[54:57] == bytes([255, 0, 0])  # blue pixel
    assert load_image(path) == img


def test_bmp_top_down_height(tmp_path):
    img = RasterImage(2, 2, 3, list(range(12)))
    path = tmp_path / "t.bmp"
    save_image(img, path, "bmp")
    raw = bytearray(path.read_bytes())
    rows = [raw[54:62], raw[62:70]]
    raw[18 + 4 : 18 + 8] = (-2).to_bytes(4, "little", signed=True)  # negative height
    raw[54:62], raw[62:70] = rows[1], rows[0]  # rows now top-down
    path.write_bytes(bytes(raw))
    assert load_image(path) == img


def test_bmp_rejects_compressed(tmp_path):
    img = RasterImage(1, 1, 3, [1, 2, 3])
    path = tmp_path / "t.bmp"
    save_image(img, path, "bmp")
    raw = bytearray(path.read_bytes())
    raw[30] = 1  # BI_RLE8
    path.write_bytes(bytes(raw))
    with pytest.raises(ImageFormatError, match="compression"):
        load_image(path)


def test_split_channels_rgb():
    img = RasterImage(1, 1, 3, [255, 0, 0])
    chans = split_channels(img)
    assert [c.data for c in chans] == [(255,), (0,), (0,)]


def test_split_channels_interleave():
    img = RasterImage(2, 1, 3, [1, 2, 3, 4, 5, 6])
    assert [c.data for c in split_channels(img)] == [(1, 4), (2, 5), (3, 6)]


def test_split_channels_gray():
    img = RasterImage(2, 1, 1, [9, 8])
    chans = split_channels(img)
    assert len(chans) == 1 and chans[0].data == (9, 8)


def test_split_merge_inverse():
    rng = random.Random(3)
    for ch in (1, 3):
        img = RasterImage(4, 5, ch, [rng.randrange(256) for _ in range(20 * ch)])
        assert merge_channels(split_channels(img)) == img


def test_merge_errors():
    a = Channel(2, 2, [0] * 4)
    b = Channel(2, 3, [0] * 6)
    with pytest.raises(ValueError, match="dimensions"):
        merge_channels([a, b, a])
    with pytest.raises(ValueError, match="1 or 3"):
        merge_channels([a, a])


def test_raster_image_validation():
    with pytest.raises(ValueError, match="samples"):
        RasterImage(2, 2, 1, [1, 2, 3])
    with pytest.raises(ValueError, match="0, 255"):
        RasterImage(1, 1, 1, [256])
    with pytest.raises(ValueError, match="channels"):
        RasterImage(1, 1, 2, [1, 2])
    with pytest.raises(ValueError, match="positive"):
        RasterImage(0, 1, 1, [])
