"""In-place MSD binary radix sorting with order-preserving key codecs."""

from .bench import BenchPlan, BenchRecord, FitResult, fit_linear, run_plan, write_csv
from .core import (Metrics, PartitionResult, SortRange, binar_sort_range,
                   partition, sort, sort_with_observer)
from .kernels import BACKEND
from .keys import (ByteStringCodec, Float64Codec, KeyCodec, SignedCodec,
                   UnsignedCodec, bit_at_bytestring, bit_at_unsigned,
                   codec_for_kind, decode_float_total_order, decode_signed,
                   encode_float_total_order, encode_signed, msb_mask)
from .oracle import (MT19937, CaseSpec, canonicalize, generate_case,
                     is_nondecreasing, is_permutation, mt19937_next,
                     reference_sort)
from .variants import (OptimizationConfig, sort_iterative, sort_optimized,
                       sort_parallel)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BenchPlan",
    "BenchRecord",
    "ByteStringCodec",
    "CaseSpec",
    "FitResult",
    "Float64Codec",
    "KeyCodec",
    "MT19937",
    "Metrics",
    "OptimizationConfig",
    "PartitionResult",
    "SignedCodec",
    "SortRange",
    "UnsignedCodec",
    "binar_sort_range",
    "bit_at_bytestring",
    "bit_at_unsigned",
    "canonicalize",
    "codec_for_kind",
    "decode_float_total_order",
    "decode_signed",
    "encode_float_total_order",
    "encode_signed",
    "fit_linear",
    "generate_case",
    "is_nondecreasing",
    "is_permutation",
    "msb_mask",
    "mt19937_next",
    "partition",
    "reference_sort",
    "run_plan",
    "sort",
    "sort_iterative",
    "sort_optimized",
    "sort_parallel",
    "sort_with_observer",
    "write_csv",
]
