"""Order-preserving key codecs.

A codec maps each element to a fixed (or bounded) width bitstring, read
most-significant-bit first.  The contract every codec obeys is the monotone
encoding law: ``a`` precedes ``b`` in the codec's declared key order exactly
when the width-padded bitstring of ``a`` is lexicographically less than that
of ``b``.  That law is what lets a purely bit-driven partition sort signed
integers, floats, and byte strings without ever comparing two elements.
"""

import struct

import numpy as np

__all__ = [
    "msb_mask",
    "bit_at_unsigned",
    "encode_signed",
    "decode_signed",
    "encode_float_total_order",
    "decode_float_total_order",
    "bit_at_bytestring",
    "double_to_bits",
    "bits_to_double",
    "KeyCodec",
    "UnsignedCodec",
    "SignedCodec",
    "Float64Codec",
    "ByteStringCodec",
    "KEY_KINDS",
    "codec_for_kind",
]


def msb_mask(width: int) -> int:
    """Mask selecting the most significant bit of a ``width``-bit word."""
    return 1 << (width - 1)


def bit_at_unsigned(x: int, pos: int, width: int) -> int:
    """Bit ``pos`` of unsigned word ``x``, counted 0-based from the MSB.

    Computed as ``(x << pos) & msb_mask(width)``: the selected bit is shifted
    up into the MSB slot and masked there, so the result is 1 iff that bit
    is set.
    """
    assert 0 <= pos < width, f"bit position {pos} out of range for width {width}"
    return 1 if (int(x) << pos) & (1 << (width - 1)) else 0


def encode_signed(x: int, width: int) -> int:
    """Map a two's-complement value to an unsigned word with the same order.

    Flipping the sign bit (XOR with 2**(width-1)) moves negatives below
    non-negatives in unsigned order while preserving order within each half.
    """
    full = (1 << width) - 1
    return (x & full) ^ (1 << (width - 1))


def decode_signed(u: int, width: int) -> int:
    """Inverse of :func:`encode_signed`; returns the signed value."""
    w = (u ^ (1 << (width - 1))) & ((1 << width) - 1)
    if w & (1 << (width - 1)):
        w -= 1 << width
    return w


def encode_float_total_order(b: int, width: int) -> int:
    """Map a raw IEEE-754 bit pattern to an unsigned word in total order.

    Negative patterns (sign bit set) are complemented, which reverses their
    magnitude order; non-negative patterns get the sign bit flipped.  The
    resulting unsigned order agrees with numeric order on finite values,
    places -0.0 immediately before +0.0, and sends NaN patterns to the
    extremes (negative-sign NaNs first, positive-sign NaNs last).
    """
    full = (1 << width) - 1
    msb = 1 << (width - 1)
    b &= full
    if b & msb:
        return (~b) & full
    return b ^ msb


def decode_float_total_order(u: int, width: int) -> int:
    """Inverse of :func:`encode_float_total_order`; returns the bit pattern."""
    full = (1 << width) - 1
    msb = 1 << (width - 1)
    u &= full
    if u & msb:
        return u ^ msb
    return (~u) & full


def bit_at_bytestring(s: bytes, pos: int) -> int:
    """Bit ``pos`` of a byte string, MSB-first within each byte.

    Positions at or past ``8 * len(s)`` read as 0, so a shorter string sorts
    before any extension of it.
    """
    i = pos >> 3
    if i >= len(s):
        return 0
    return (s[i] >> (7 - (pos & 7))) & 1


def double_to_bits(x: float) -> int:
    """Raw 64-bit IEEE-754 pattern of a double."""
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def bits_to_double(b: int) -> float:
    """Double carried by a raw 64-bit IEEE-754 pattern."""
    return struct.unpack("<d", struct.pack("<Q", b & 0xFFFFFFFFFFFFFFFF))[0]


class KeyCodec:
    """Interface shared by all codecs.

    ``width`` is the bitstring length (``None`` when it is derived per input,
    as for byte strings), ``bit_at`` reads one bit, and ``le`` is the
    declared total key order that the bitstrings encode.
    """

    width: int | None = None

    def bit_at(self, x, pos: int) -> int:
        raise NotImplementedError

    def le(self, a, b) -> bool:
        raise NotImplementedError

    def width_for(self, seq) -> int:
        """Effective bit width to use when sorting ``seq``."""
        if self.width is None:
            raise NotImplementedError
        return self.width

    def words_view(self, seq):
        """Try to expose ``seq`` as a sortable unsigned word array.

        Returns ``(words, restore)`` where ``words`` shares memory with
        ``seq`` and holds the order-preserving unsigned encoding, and
        ``restore()`` undoes any in-place transform after sorting.  Returns
        ``None`` when ``seq`` is not a suitable ndarray; callers then fall
        back to element-at-a-time access through ``bit_at``.
        """
        return None


def _plain_1d(seq) -> bool:
    return isinstance(seq, np.ndarray) and seq.ndim == 1


def _noop():
    pass


class UnsignedCodec(KeyCodec):
    """Unsigned integers of a fixed width; the identity encoding."""

    def __init__(self, width: int):
        if not 1 <= width <= 64:
            raise ValueError(f"unsupported word width {width}")
        self.width = width
        self._msb = 1 << (width - 1)

    def bit_at(self, x, pos: int) -> int:
        return 1 if (int(x) << pos) & self._msb else 0

    def le(self, a, b) -> bool:
        return a <= b

    def words_view(self, seq):
        if _plain_1d(seq) and seq.dtype.kind == "u" and seq.dtype.itemsize * 8 >= self.width:
            return seq, _noop
        return None


class SignedCodec(KeyCodec):
    """Two's-complement integers; encoded by flipping the sign bit."""

    def __init__(self, width: int):
        if not 2 <= width <= 64:
            raise ValueError(f"unsupported word width {width}")
        self.width = width
        self._msb = 1 << (width - 1)
        self._full = (1 << width) - 1

    def bit_at(self, x, pos: int) -> int:
        u = (int(x) & self._full) ^ self._msb
        return 1 if (u << pos) & self._msb else 0

    def le(self, a, b) -> bool:
        return a <= b

    def words_view(self, seq):
        if not (_plain_1d(seq) and seq.dtype.kind == "i" and seq.dtype.itemsize * 8 == self.width):
            return None
        words = seq.view(seq.dtype.str.replace("i", "u"))
        flip = words.dtype.type(self._msb)
        words[...] ^= flip

        def restore():
            words[...] ^= flip

        return words, restore


class Float64Codec(KeyCodec):
    """IEEE-754 doubles under the standard total-order bit transform."""

    width = 64

    def bit_at(self, x, pos: int) -> int:
        u = encode_float_total_order(double_to_bits(float(x)), 64)
        return 1 if (u << pos) & (1 << 63) else 0

    def le(self, a, b) -> bool:
        ea = encode_float_total_order(double_to_bits(float(a)), 64)
        eb = encode_float_total_order(double_to_bits(float(b)), 64)
        return ea <= eb

    def words_view(self, seq):
        if not (_plain_1d(seq) and seq.dtype == np.float64):
            return None
        words = seq.view(np.uint64)
        msb = np.uint64(1 << 63)

        def transform():
            neg = (words >> np.uint64(63)) != 0
            words[neg] = ~words[neg]
            words[~neg] ^= msb

        def restore():
            # After encoding, a clear MSB marks an originally negative pattern.
            neg = (words >> np.uint64(63)) == 0
            words[neg] = ~words[neg]
            words[~neg] ^= msb

        transform()
        return words, restore


class ByteStringCodec(KeyCodec):
    """Variable-length byte strings (plain ``bytes``), raw byte order.

    Bits are read MSB-first within each byte.  The bit width is bounded by
    ``8 * max_len``; when no bound is given it is computed per sort call
    from the longest element.  Bits past the end of a string read as 0, so
    prefixes sort before their extensions (a string and the same string
    padded with trailing NUL bytes carry equal keys).
    """

    width = None

    def __init__(self, max_len: int | None = None):
        if max_len is not None:
            if max_len < 0:
                raise ValueError("max_len must be >= 0")
            self.width = 8 * max_len

    def bit_at(self, x, pos: int) -> int:
        return bit_at_bytestring(x, pos)

    def le(self, a, b) -> bool:
        # Zero-padded comparison: trailing NULs do not distinguish keys.
        return bytes(a).rstrip(b"\x00") <= bytes(b).rstrip(b"\x00")

    def width_for(self, seq) -> int:
        if self.width is not None:
            return self.width
        return 8 * max((len(s) for s in seq), default=0)


KEY_KINDS = ("unsigned32", "unsigned64", "signed32", "float64", "bytestring")


def codec_for_kind(kind: str) -> KeyCodec:
    """Codec for one of the canonical key kinds used by the test tooling."""
    if kind == "unsigned32":
        return UnsignedCodec(32)
    if kind == "unsigned64":
        return UnsignedCodec(64)
    if kind == "signed32":
        return SignedCodec(32)
    if kind == "float64":
        return Float64Codec()
    if kind == "bytestring":
        return ByteStringCodec()
    raise ValueError(f"unknown key kind {kind!r}")
