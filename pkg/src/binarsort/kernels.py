"""Hot sorting kernels over unsigned word arrays.

The kernels are compiled with numba when it is available.  Setting
``BINARSORT_BACKEND=python`` forces the plain-Python interpretation of the
same functions (useful for debugging and for benchmarking the JIT);
``BINARSORT_BACKEND=numba`` makes a missing numba an import error.  The
active choice is exposed as ``BACKEND``.

Counters are a 4-slot int64 array shared by all kernels:
index 0 bit extractions, 1 swaps, 2 calls/work items, 3 max depth.
"""

import os

import numpy as np

EXTRACTIONS, SWAPS, CALLS, MAX_DEPTH = 0, 1, 2, 3

_choice = os.environ.get("BINARSORT_BACKEND", "auto").strip().lower() or "auto"
if _choice not in ("auto", "numba", "python"):
    raise ValueError(
        f"BINARSORT_BACKEND must be 'numba' or 'python', got {_choice!r}"
    )

if _choice == "python":
    _njit = None
else:
    try:
        from numba import njit as _njit
    except ImportError:
        if _choice == "numba":
            raise
        _njit = None

BACKEND = "python" if _njit is None else "numba"

if _njit is not None:
    def _kernel(fn):
        return _njit(cache=True, nogil=True)(fn)

    def _recursive_kernel(fn):
        # numba's on-disk cache miscompiles self-recursive dispatchers on
        # reload (segfault), so the recursive kernel compiles per process.
        return _njit(cache=False, nogil=True)(fn)
else:
    def _kernel(fn):
        return fn

    _recursive_kernel = _kernel


def new_counters() -> np.ndarray:
    return np.zeros(4, dtype=np.int64)


@_kernel
def partition_words(arr, lower, upper, pos, width, counters):
    """One partition pass over arr[lower..upper] on bit ``pos``.

    Returns the split index: the first index of the upper (bit 1) side,
    ``upper + 1`` when every element had bit 0.
    """
    msb = np.uint64(1) << np.uint64(width - 1)
    shift = np.uint64(pos)
    lo = lower
    hi = upper
    while lo < hi + 1:
        counters[0] += 1
        if (np.uint64(arr[lo]) << shift) & msb:
            tmp = arr[hi]
            arr[hi] = arr[lo]
            arr[lo] = tmp
            counters[1] += 1
            hi -= 1
        else:
            lo += 1
    return lo


@_kernel
def range_sorted_words(arr, lower, upper):
    for i in range(lower, upper):
        if arr[i] > arr[i + 1]:
            return False
    return True


@_recursive_kernel
def sort_words(arr, lower, upper, pos, width,
               passthrough_loop, check_after, streak, checked,
               counters, depth):
    """Recursive word sort from bit ``pos``; the core dispatch.

    ``passthrough_loop`` turns a pass-through into an in-place advance of
    ``pos`` instead of a recursive call.  ``check_after`` > 0 enables a
    sortedness scan once a streak of that many consecutive pass-throughs
    accumulates (at most one scan per streak); a sorted range stops early.
    Both default off for the baseline sort.
    """
    counters[2] += 1
    if depth > counters[3]:
        counters[3] = depth
    while True:
        if pos == width or upper < lower + 1:
            return
        split = partition_words(arr, lower, upper, pos, width, counters)
        if split == lower or split == upper + 1:
            streak += 1
            if check_after > 0 and streak >= check_after and not checked:
                checked = True
                if range_sorted_words(arr, lower, upper):
                    return
            if passthrough_loop:
                pos += 1
                continue
            sort_words(arr, lower, upper, pos + 1, width,
                       passthrough_loop, check_after, streak, checked,
                       counters, depth + 1)
            return
        sort_words(arr, lower, split - 1, pos + 1, width,
                   passthrough_loop, check_after, 0, False,
                   counters, depth + 1)
        sort_words(arr, split, upper, pos + 1, width,
                   passthrough_loop, check_after, 0, False,
                   counters, depth + 1)
        return


@_kernel
def sort_words_iterative(arr, lower, upper, width, counters):
    """Explicit work-stack form of the recursive sort; same output.

    The stack only ever holds non-empty ranges with bits left to examine;
    popping the lower sub-range first mirrors the recursion order.  Counter
    slot 3 records the stack high-water mark, which stays within
    ``width + 1`` because each level parks at most one pending sub-range.
    """
    stack = np.empty((2 * (width + 1) + 2, 3), dtype=np.int64)
    stack[0, 0] = lower
    stack[0, 1] = upper
    stack[0, 2] = 0
    top = 1
    high_water = 1
    while top > 0:
        top -= 1
        lo_ = stack[top, 0]
        up_ = stack[top, 1]
        pos = stack[top, 2]
        counters[2] += 1
        split = partition_words(arr, lo_, up_, pos, width, counters)
        if pos + 1 == width:
            continue
        if split == lo_ or split == up_ + 1:
            stack[top, 0] = lo_
            stack[top, 1] = up_
            stack[top, 2] = pos + 1
            top += 1
        else:
            if up_ > split:
                stack[top, 0] = split
                stack[top, 1] = up_
                stack[top, 2] = pos + 1
                top += 1
            if split - 1 > lo_:
                stack[top, 0] = lo_
                stack[top, 1] = split - 1
                stack[top, 2] = pos + 1
                top += 1
        if top > high_water:
            high_water = top
    if high_water > counters[3]:
        counters[3] = high_water
