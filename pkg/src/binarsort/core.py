"""The sort itself: bitwise two-way partition and recursive dispatch.

Each partition pass walks a range with two cursors.  The element at the low
cursor has one bit extracted; bit 0 leaves it in place and advances the low
cursor, bit 1 swaps it to the high cursor and retracts that.  When the
cursors cross, everything left of the split carries bit 0 and everything
from the split up carries bit 1.  Recursion then descends one bit position
per level until a range holds at most one element or the bits run out.

Inputs backed by a 1-D ndarray with a word-encodable codec are routed
through :mod:`binarsort.kernels`; anything else (lists, byte strings,
custom codecs) runs the equivalent pure-Python engine below.  Both count
the same metrics at the same points.
"""

from dataclasses import dataclass

from . import kernels


@dataclass
class SortRange:
    """Inclusive index bounds plus the current bit position (0 = MSB)."""

    lower: int
    upper: int
    pos: int = 0

    def __post_init__(self):
        assert self.lower >= 0, "lower bound must be >= 0"
        assert self.upper >= self.lower - 1, "upper may be at most one below lower"
        assert self.pos >= 0, "bit position must be >= 0"

    def is_empty(self) -> bool:
        return self.upper < self.lower


@dataclass
class PartitionResult:
    """Outcome of one partition pass.

    ``split`` is the first index of the bit-1 side (``upper + 1`` when every
    element had bit 0); ``pass_through`` marks a pass that produced a single
    non-empty sub-array.
    """

    split: int
    pass_through: bool


@dataclass
class Metrics:
    """Work counters accumulated across one sort invocation."""

    bit_extractions: int = 0
    swaps: int = 0
    recursive_calls: int = 0
    max_depth: int = 0

    def merge(self, other: "Metrics") -> None:
        """Fold in counters from a concurrent sub-sort.

        Counts add; depth merges by max so the depth bound stays meaningful
        when sub-sorts ran side by side rather than nested.
        """
        self.bit_extractions += other.bit_extractions
        self.swaps += other.swaps
        self.recursive_calls += other.recursive_calls
        if other.max_depth > self.max_depth:
            self.max_depth = other.max_depth

    def _add_counters(self, counters) -> None:
        self.bit_extractions += int(counters[kernels.EXTRACTIONS])
        self.swaps += int(counters[kernels.SWAPS])
        self.recursive_calls += int(counters[kernels.CALLS])
        if int(counters[kernels.MAX_DEPTH]) > self.max_depth:
            self.max_depth = int(counters[kernels.MAX_DEPTH])


def _partition_span(seq, lo, hi, pos, codec, metrics):
    """The partition loop on seq[lo..hi]; returns the split index."""
    bit_at = codec.bit_at
    while lo < hi + 1:
        metrics.bit_extractions += 1
        if bit_at(seq[lo], pos):
            seq[lo], seq[hi] = seq[hi], seq[lo]
            metrics.swaps += 1
            hi -= 1
        else:
            lo += 1
    return lo


def partition(seq, rng: SortRange, codec, metrics: Metrics) -> PartitionResult:
    """Partition seq[rng.lower..rng.upper] on bit ``rng.pos``.

    A bit-1 element at the low cursor swaps to the high cursor (pulling
    that element forward for the next look); a bit-0 element stays put.
    Out-of-bounds ranges or bit positions are contract violations
    (assertion failures).
    """
    width = codec.width_for(seq)
    assert not rng.is_empty(), "partition requires a non-empty range"
    assert rng.upper < len(seq), "range exceeds sequence bounds"
    assert 0 <= rng.pos < width, "bit position out of codec width"
    split = _partition_span(seq, rng.lower, rng.upper, rng.pos, codec, metrics)
    return PartitionResult(split, split == rng.lower or split == rng.upper + 1)


def _range_sorted(seq, lower, upper, codec) -> bool:
    le = codec.le
    for i in range(lower, upper):
        if not le(seq[i], seq[i + 1]):
            return False
    return True


def _sort_recursive(seq, lower, upper, pos, width, codec, metrics, depth,
                    passthrough_loop=False, check_after=0, streak=0, checked=False):
    """Pure-Python twin of :func:`kernels.sort_words`; identical counting."""
    metrics.recursive_calls += 1
    if depth > metrics.max_depth:
        metrics.max_depth = depth
    while True:
        if pos == width or upper < lower + 1:
            return
        split = _partition_span(seq, lower, upper, pos, codec, metrics)
        if split == lower or split == upper + 1:
            streak += 1
            if check_after > 0 and streak >= check_after and not checked:
                checked = True
                if _range_sorted(seq, lower, upper, codec):
                    return
            if passthrough_loop:
                pos += 1
                continue
            return _sort_recursive(seq, lower, upper, pos + 1, width, codec,
                                   metrics, depth + 1,
                                   passthrough_loop, check_after, streak, checked)
        _sort_recursive(seq, lower, split - 1, pos + 1, width, codec,
                        metrics, depth + 1, passthrough_loop, check_after)
        return _sort_recursive(seq, split, upper, pos + 1, width, codec,
                               metrics, depth + 1, passthrough_loop, check_after)


def _sort_levels(seq, lower, upper, start_pos, width, codec, metrics, observer):
    """Level-synchronous sort driving a per-bit-level observer.

    After each completed bit level the observer receives
    ``(pos, boundaries)`` where ``boundaries`` lists the current sub-array
    (lower, upper) pairs left to right.  A range already in nondecreasing
    key order is left untouched from that level on, so the reported
    per-level configurations match the summary form in which a settled
    sub-array simply stops subdividing.  The final content is the same
    either way; only the per-level bookkeeping differs from plain
    recursion.
    """
    segments = [(lower, upper, upper > lower)]
    for pos in range(start_pos, width):
        nxt = []
        worked = False
        for lo, up, active in segments:
            if not active:
                nxt.append((lo, up, False))
                continue
            if _range_sorted(seq, lo, up, codec):
                nxt.append((lo, up, False))
                continue
            worked = True
            metrics.recursive_calls += 1
            split = _partition_span(seq, lo, up, pos, codec, metrics)
            if split == lo or split == up + 1:
                nxt.append((lo, up, True))
            else:
                nxt.append((lo, split - 1, split - 1 > lo))
                nxt.append((split, up, up > split))
        segments = nxt
        if worked and pos + 1 - start_pos > metrics.max_depth:
            metrics.max_depth = pos + 1 - start_pos
        observer(pos, [(lo, up) for lo, up, _ in segments])


def binar_sort_range(seq, rng: SortRange, codec, metrics: Metrics, observer=None) -> None:
    """Sort seq[rng.lower..rng.upper] in place, starting at bit ``rng.pos``.

    With an observer the level-synchronous engine runs and reports sub-array
    boundaries after every bit level; otherwise plain recursion.
    """
    assert rng.is_empty() or (rng.lower >= 0 and rng.upper < len(seq)), \
        "range exceeds sequence bounds"
    if rng.is_empty():
        return
    width = codec.width_for(seq)
    assert rng.pos <= width, "bit position past codec width"
    if observer is None:
        _sort_recursive(seq, rng.lower, rng.upper, rng.pos, width, codec, metrics, 1)
    else:
        _sort_levels(seq, rng.lower, rng.upper, rng.pos, width, codec, metrics, observer)


def sort(seq, codec) -> Metrics:
    """Sort ``seq`` in place into nondecreasing codec order; returns metrics.

    Empty and single-element inputs return immediately with zeroed metrics.
    """
    metrics = Metrics()
    n = len(seq)
    if n <= 1:
        return metrics
    width = codec.width_for(seq)
    if width == 0:
        return metrics
    view = codec.words_view(seq)
    if view is not None:
        words, restore = view
        counters = kernels.new_counters()
        kernels.sort_words(words, 0, n - 1, 0, width, False, 0, 0, False, counters, 1)
        restore()
        metrics._add_counters(counters)
    else:
        _sort_recursive(seq, 0, n - 1, 0, width, codec, metrics, 1)
    return metrics


def sort_with_observer(seq, codec, observer) -> Metrics:
    """Sort ``seq`` while reporting sub-array boundaries per bit level.

    The observer is called once per bit position with ``(pos, boundaries)``.
    Inputs of fewer than two elements sort trivially with no callbacks.
    """
    metrics = Metrics()
    n = len(seq)
    if n <= 1:
        return metrics
    width = codec.width_for(seq)
    if width == 0:
        return metrics
    _sort_levels(seq, 0, n - 1, 0, width, codec, metrics, observer)
    return metrics
