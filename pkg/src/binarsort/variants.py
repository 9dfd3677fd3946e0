"""Alternative drive forms of the sort: iterative, optimized, parallel.

All three produce element-for-element the same output as the recursive
baseline in :mod:`binarsort.core`; they differ only in how the work is
scheduled and in what shortcuts they may take on pass-throughs.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import kernels
from .core import Metrics, _partition_span, _sort_recursive

__all__ = ["OptimizationConfig", "sort_iterative", "sort_optimized", "sort_parallel"]


@dataclass
class OptimizationConfig:
    """Switches for the pass-through shortcuts.

    ``passthrough_loop`` advances the bit position in place instead of
    recursing when a partition leaves the range whole.
    ``sortedness_check_after`` is the number of consecutive pass-throughs
    tolerated before one O(range) sortedness scan; a sorted range stops
    early.  0 disables the scan.
    """

    passthrough_loop: bool = True
    sortedness_check_after: int = 4

    def __post_init__(self):
        if self.sortedness_check_after < 0:
            raise ValueError("sortedness_check_after must be >= 0")


def _finish(metrics, provided):
    if provided is not None:
        provided.merge(metrics)
        return provided
    return metrics


def _sort_iterative_generic(seq, lower, upper, width, codec, metrics):
    # The stack mirrors kernels.sort_words_iterative: it only ever holds
    # non-empty ranges with bits left, lower sub-range popped first.
    stack = [(lower, upper, 0)]
    high_water = 1
    while stack:
        lo_, up_, pos = stack.pop()
        metrics.recursive_calls += 1
        split = _partition_span(seq, lo_, up_, pos, codec, metrics)
        if pos + 1 == width:
            continue
        if split == lo_ or split == up_ + 1:
            stack.append((lo_, up_, pos + 1))
        else:
            if up_ > split:
                stack.append((split, up_, pos + 1))
            if split - 1 > lo_:
                stack.append((lo_, split - 1, pos + 1))
        if len(stack) > high_water:
            high_water = len(stack)
    if high_water > metrics.max_depth:
        metrics.max_depth = high_water


def sort_iterative(seq, codec, metrics: Metrics | None = None) -> Metrics:
    """Sort with an explicit work stack instead of call recursion.

    The stack is popped depth-first with the lower sub-range first, so the
    partition sequence (and therefore the output) matches the recursive
    sort exactly.  ``max_depth`` records the stack high-water mark.
    """
    out = Metrics()
    n = len(seq)
    if n <= 1:
        return _finish(out, metrics)
    width = codec.width_for(seq)
    if width == 0:
        return _finish(out, metrics)
    view = codec.words_view(seq)
    if view is not None:
        words, restore = view
        counters = kernels.new_counters()
        kernels.sort_words_iterative(words, 0, n - 1, width, counters)
        restore()
        out._add_counters(counters)
    else:
        _sort_iterative_generic(seq, 0, n - 1, width, codec, out)
    return _finish(out, metrics)


def sort_optimized(seq, codec, config: OptimizationConfig | None = None,
                   metrics: Metrics | None = None) -> Metrics:
    """Sort with the pass-through loop and sortedness-check shortcuts.

    With both switches off this is the recursive baseline, counters
    included.
    """
    if config is None:
        config = OptimizationConfig()
    out = Metrics()
    n = len(seq)
    if n <= 1:
        return _finish(out, metrics)
    width = codec.width_for(seq)
    if width == 0:
        return _finish(out, metrics)
    view = codec.words_view(seq)
    if view is not None:
        words, restore = view
        counters = kernels.new_counters()
        kernels.sort_words(words, 0, n - 1, 0, width,
                           config.passthrough_loop, config.sortedness_check_after,
                           0, False, counters, 1)
        restore()
        out._add_counters(counters)
    else:
        _sort_recursive(seq, 0, n - 1, 0, width, codec, out, 1,
                        config.passthrough_loop, config.sortedness_check_after)
    return _finish(out, metrics)


def _prepartition(target, n, width, levels, metrics, do_partition):
    """Split [0, n-1] level-synchronously over the top ``levels`` bits.

    Returns the resulting (lower, upper) ranges left to right; they are
    disjoint and cover the full index range.  ``do_partition`` runs one
    partition pass and returns the split index.
    """
    ranges = [(0, n - 1)]
    for pos in range(levels):
        nxt = []
        for lo, up in ranges:
            if up <= lo:
                nxt.append((lo, up))
                continue
            metrics.recursive_calls += 1
            split = do_partition(target, lo, up, pos)
            if split == lo or split == up + 1:
                nxt.append((lo, up))
            else:
                nxt.append((lo, split - 1))
                nxt.append((split, up))
        ranges = nxt
        if pos + 1 > metrics.max_depth:
            metrics.max_depth = pos + 1
    return ranges


def _executor(workers: int) -> ThreadPoolExecutor:
    ex = _EXECUTORS.get(workers)
    if ex is None:
        ex = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="binarsort")
        _EXECUTORS[workers] = ex
    return ex


_EXECUTORS: dict[int, ThreadPoolExecutor] = {}


def sort_parallel(seq, codec, workers: int, metrics: Metrics | None = None) -> Metrics:
    """Sort with bucket-level parallelism over disjoint index ranges.

    The top ceil(lg workers) bit levels (capped at the codec width) are
    partitioned sequentially to form bit-signature buckets; the buckets
    then sort concurrently, each worker owning disjoint ranges of the
    sequence.  Output is identical to the sequential sort.  ``workers``
    must be >= 1.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    out = Metrics()
    n = len(seq)
    if n <= 1:
        return _finish(out, metrics)
    width = codec.width_for(seq)
    if width == 0:
        return _finish(out, metrics)

    levels = min((workers - 1).bit_length(), width)
    view = codec.words_view(seq)

    if view is not None:
        words, restore = view
        pre = kernels.new_counters()

        def do_partition(target, lo, up, pos):
            return int(kernels.partition_words(target, lo, up, pos, width, pre))

        buckets = _prepartition(words, n, width, levels, out, do_partition)
        out.bit_extractions += int(pre[kernels.EXTRACTIONS])
        out.swaps += int(pre[kernels.SWAPS])

        def run_bucket(rng):
            lo, up = rng
            counters = kernels.new_counters()
            kernels.sort_words(words, lo, up, levels, width,
                               False, 0, 0, False, counters, levels + 1)
            return counters

        work = [rng for rng in buckets if rng[1] > rng[0]]
        if workers == 1 or len(work) <= 1:
            results = [run_bucket(rng) for rng in work]
        else:
            results = list(_executor(workers).map(run_bucket, work))
        restore()
        for counters in results:
            out._add_counters(counters)
    else:
        def do_partition(target, lo, up, pos):
            return _partition_span(target, lo, up, pos, codec, out)

        buckets = _prepartition(seq, n, width, levels, out, do_partition)

        def run_bucket(rng):
            lo, up = rng
            local = Metrics()
            _sort_recursive(seq, lo, up, levels, width, codec, local, levels + 1)
            return local

        work = [rng for rng in buckets if rng[1] > rng[0]]
        if workers == 1 or len(work) <= 1:
            results = [run_bucket(rng) for rng in work]
        else:
            results = list(_executor(workers).map(run_bucket, work))
        for local in results:
            out.merge(local)
    return _finish(out, metrics)
