"""Independent correctness machinery: reference sort, predicates, MT19937.

The reference sort is a self-contained merge sort so that no code is shared
with the radix engine it is used to check.  Test data comes from a local
MT19937 (classic 32-bit variant) so every generated case is reproducible
from its seed alone.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .keys import KEY_KINDS

__all__ = [
    "MT19937",
    "mt19937_next",
    "CaseSpec",
    "generate_case",
    "reference_sort",
    "is_nondecreasing",
    "is_permutation",
    "canonicalize",
]

_N = 624
_M = 397
_MATRIX_A = np.uint32(0x9908B0DF)
_UPPER = np.uint32(0x80000000)
_LOWER = np.uint32(0x7FFFFFFF)


class MT19937:
    """Classic 32-bit Mersenne Twister.

    Seeding uses the standard 1812433253 initializer, so the output stream
    for a given seed matches the reference implementation word for word.
    The twist and temper steps are vectorized per 624-word block; the
    stream order is unchanged.
    """

    def __init__(self, seed: int):
        self.seed(seed)

    def seed(self, seed: int) -> None:
        mt = np.zeros(_N, dtype=np.uint32)
        prev = seed & 0xFFFFFFFF
        mt[0] = prev
        for i in range(1, _N):
            prev = (1812433253 * (prev ^ (prev >> 30)) + i) & 0xFFFFFFFF
            mt[i] = prev
        self._mt = mt
        self._buf = None
        self._idx = _N

    @property
    def index(self) -> int:
        return self._idx

    def _twist(self) -> None:
        mt = self._mt

        def block(lo: int, hi: int, src: int) -> None:
            y = (mt[lo:hi] & _UPPER) | (mt[lo + 1:hi + 1] & _LOWER)
            mt[lo:hi] = (mt[src:src + hi - lo]
                         ^ (y >> np.uint32(1))
                         ^ np.where((y & np.uint32(1)) != 0, _MATRIX_A, np.uint32(0)))

        # Blocks sized so every recurrence input is already in the state the
        # sequential loop would see: the lag-227 source of each block was
        # written by an earlier block, the y inputs are still untouched.
        block(0, _N - _M, _M)
        block(_N - _M, 2 * (_N - _M), 0)
        block(2 * (_N - _M), _N - 1, _N - _M)
        y = (mt[-1] & _UPPER) | (mt[0] & _LOWER)
        mt[-1] = mt[_M - 1] ^ (y >> np.uint32(1)) ^ (_MATRIX_A if y & 1 else np.uint32(0))

        out = mt.copy()
        out ^= out >> np.uint32(11)
        out ^= (out << np.uint32(7)) & np.uint32(0x9D2C5680)
        out ^= (out << np.uint32(15)) & np.uint32(0xEFC60000)
        out ^= out >> np.uint32(18)
        self._buf = out
        self._idx = 0

    def next_u32(self) -> int:
        """Next 32-bit word of the stream."""
        if self._idx >= _N:
            self._twist()
        v = int(self._buf[self._idx])
        self._idx += 1
        return v

    def draw(self, count: int) -> np.ndarray:
        """Next ``count`` words as a uint32 array."""
        chunks = []
        remaining = count
        while remaining > 0:
            if self._idx >= _N:
                self._twist()
            take = min(remaining, _N - self._idx)
            chunks.append(self._buf[self._idx:self._idx + take])
            self._idx += take
            remaining -= take
        if not chunks:
            return np.empty(0, dtype=np.uint32)
        return np.concatenate(chunks)


def mt19937_next(state: MT19937) -> int:
    """Functional form of :meth:`MT19937.next_u32`."""
    return state.next_u32()


@dataclass(frozen=True)
class CaseSpec:
    """One reproducible test case: size, key kind, and generator seed."""

    size: int
    key_kind: str
    seed: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be >= 0")
        if self.key_kind not in KEY_KINDS:
            raise ValueError(f"unknown key kind {self.key_kind!r}")


def generate_case(spec: CaseSpec):
    """Deterministic test sequence for ``spec``.

    Numeric kinds come out as 1-D numpy arrays (uint32/uint64/int32/float64);
    64-bit values take two 32-bit draws, high word first.  Byte strings come
    out as a list of ``bytes``: length = draw mod 17, then one non-NUL byte
    per draw (1 + draw mod 255), so distinct strings never share a
    zero-padded key.
    """
    gen = MT19937(spec.seed)
    n = spec.size
    kind = spec.key_kind
    if kind == "unsigned32":
        return gen.draw(n).copy()
    if kind == "unsigned64":
        words = gen.draw(2 * n).astype(np.uint64)
        return (words[0::2] << np.uint64(32)) | words[1::2]
    if kind == "signed32":
        return gen.draw(n).view(np.int32).copy()
    if kind == "float64":
        words = gen.draw(2 * n).astype(np.uint64)
        return ((words[0::2] << np.uint64(32)) | words[1::2]).view(np.float64)
    values = []
    for _ in range(n):
        length = gen.next_u32() % 17
        values.append(bytes(1 + gen.next_u32() % 255 for _ in range(length)))
    return values


def reference_sort(seq, key_order):
    """Merge sort under the ``key_order(a, b) == a <= b`` predicate.

    Returns a new sorted list; the input is untouched.  Kept deliberately
    independent of the radix machinery so the two cannot share a defect.
    """
    items = list(seq)
    if len(items) <= 1:
        return items
    mid = len(items) // 2
    left = reference_sort(items[:mid], key_order)
    right = reference_sort(items[mid:], key_order)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if key_order(left[i], right[j]):
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged


def is_nondecreasing(seq, key_order) -> bool:
    """True iff every adjacent pair satisfies ``key_order``."""
    items = list(seq)
    return all(key_order(items[i], items[i + 1]) for i in range(len(items) - 1))


def is_permutation(a, b) -> bool:
    """Multiset equality of two sequences.

    Elements are counted by value; NaN-bearing floats should be passed
    through :func:`canonicalize` first since NaN != NaN breaks counting.
    """
    a = list(a)
    b = list(b)
    if len(a) != len(b):
        return False
    return Counter(a) == Counter(b)


def canonicalize(seq, key_kind: str) -> list:
    """Hashable, equality-faithful stand-ins for comparing sequences.

    float64 values map to their raw bit patterns so NaNs and signed zeros
    compare by identity of encoding; other kinds map to plain ints/bytes.
    """
    if key_kind == "float64":
        return [int(v) for v in np.asarray(seq, dtype=np.float64).view(np.uint64)]
    if key_kind == "bytestring":
        return [bytes(v) for v in seq]
    return [int(v) for v in seq]
