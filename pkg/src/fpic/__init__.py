"""fpic: lossy image compression via pixel clustering, closed frequent
sequence mining and canonical Huffman coding."""

from .codec import CodecParams, absolute_support, compress, decompress, encode_channel
from .container import (
    ChannelSection,
    CompressedImage,
    ContainerFormatError,
    compressed_size_bits,
    deserialize,
    serialize,
)
from .entropy import BitStream, CodeTable, DecodeError, build_code, decode_stream, encode_tokens
from .metrics import compression_ratio, mse, psnr, ssim
from .pixel_io import (
    Channel,
    ImageFormatError,
    RasterImage,
    load_image,
    merge_channels,
    save_image,
    split_channels,
)
from .quantizer import ClusterModel, LabelMatrix, quantize, reconstruct
from .seqmine import MinedPatternSet, Pattern, brute_force_closed, candidate_join, mine_closed, row_support
from .tiling import TilingRecord, Token, greedy_scan, modified_support, pattern_order

__version__ = "0.1.0"

__all__ = [
    "BitStream",
    "Channel",
    "ChannelSection",
    "ClusterModel",
    "CodeTable",
    "CodecParams",
    "CompressedImage",
    "ContainerFormatError",
    "DecodeError",
    "ImageFormatError",
    "LabelMatrix",
    "MinedPatternSet",
    "Pattern",
    "RasterImage",
    "TilingRecord",
    "Token",
    "absolute_support",
    "brute_force_closed",
    "build_code",
    "candidate_join",
    "compress",
    "compressed_size_bits",
    "compression_ratio",
    "decode_stream",
    "decompress",
    "deserialize",
    "encode_channel",
    "encode_tokens",
    "greedy_scan",
    "load_image",
    "merge_channels",
    "mine_closed",
    "modified_support",
    "mse",
    "pattern_order",
    "psnr",
    "quantize",
    "reconstruct",
    "row_support",
    "save_image",
    "serialize",
    "split_channels",
    "ssim",
    "__version__",
]
