"""Size-sweep benchmark harness with granularity averaging and an OLS fit.

A plan walks an arithmetic progression of input sizes.  Per size one random
permutation is generated, one untimed warm-up sort runs (absorbing JIT and
cache effects), then ``granularity`` timed sorts run on fresh copies.  Only
the sort call sits between the monotonic clock reads; generation and
copying are excluded.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import core, variants
from .keys import KEY_KINDS, codec_for_kind
from .oracle import CaseSpec, generate_case

__all__ = [
    "VARIANTS",
    "BenchPlan",
    "BenchRecord",
    "FitResult",
    "run_plan",
    "fit_linear",
    "write_csv",
    "CSV_HEADER",
]

VARIANTS = ("recursive", "iterative", "optimized", "parallel")

CSV_HEADER = "size,mean_ns,min_ns,max_ns"


@dataclass
class BenchPlan:
    """Sweep configuration: sizes, iterations per size, data seed, variant."""

    start_size: int
    end_size: int
    step: int
    granularity: int
    seed: int = 0
    key_kind: str = "unsigned32"
    variant: str = "recursive"
    workers: int = 4

    def validate(self) -> None:
        if self.start_size < 1:
            raise ValueError("start_size must be >= 1")
        if self.end_size < self.start_size:
            raise ValueError("end_size must be >= start_size")
        if self.step < 1:
            raise ValueError("step must be >= 1")
        if self.granularity < 1:
            raise ValueError("granularity must be >= 1")
        if self.key_kind not in KEY_KINDS:
            raise ValueError(f"unknown key kind {self.key_kind!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "parallel" and self.workers < 1:
            raise ValueError("workers must be >= 1")

    def sizes(self) -> range:
        return range(self.start_size, self.end_size + 1, self.step)


@dataclass
class BenchRecord:
    """Timing summary for one size; ``error`` set when the size failed."""

    size: int
    mean_ns: int = 0
    min_ns: int = 0
    max_ns: int = 0
    error: str | None = None


@dataclass
class FitResult:
    """Ordinary least squares of mean time against size."""

    slope: float
    intercept: float
    r_squared: float


def make_sorter(variant: str, codec, workers: int = 4):
    """Callable running one in-place sort of the chosen variant."""
    if variant == "recursive":
        return lambda seq: core.sort(seq, codec)
    if variant == "iterative":
        return lambda seq: variants.sort_iterative(seq, codec)
    if variant == "optimized":
        return lambda seq: variants.sort_optimized(seq, codec)
    if variant == "parallel":
        return lambda seq: variants.sort_parallel(seq, codec, workers)
    raise ValueError(f"unknown variant {variant!r}")


def _copy(seq):
    if isinstance(seq, np.ndarray):
        return seq.copy()
    return list(seq)


def run_plan(plan: BenchPlan) -> list[BenchRecord]:
    """Run the sweep; one record per size in plan order.

    Out-of-memory at a given size produces an error record for that size
    rather than aborting the sweep.
    """
    plan.validate()
    codec = codec_for_kind(plan.key_kind)
    sorter = make_sorter(plan.variant, codec, plan.workers)
    records = []
    for size in plan.sizes():
        try:
            base = generate_case(CaseSpec(size, plan.key_kind, plan.seed))
            sorter(_copy(base))  # warm-up, untimed
            times = []
            for _ in range(plan.granularity):
                work = _copy(base)
                t0 = time.perf_counter_ns()
                sorter(work)
                t1 = time.perf_counter_ns()
                times.append(t1 - t0)
        except MemoryError:
            records.append(BenchRecord(size, error="allocation failed"))
            continue
        records.append(BenchRecord(
            size,
            mean_ns=int(round(sum(times) / len(times))),
            min_ns=min(times),
            max_ns=max(times),
        ))
    return records


def fit_linear(records: list[BenchRecord]) -> FitResult:
    """Least-squares line through (size, mean_ns); needs 2 distinct sizes."""
    points = [(r.size, r.mean_ns) for r in records if r.error is None]
    if len({s for s, _ in points}) < 2:
        raise ValueError("fit requires at least 2 records with distinct sizes")
    x = np.array([s for s, _ in points], dtype=np.float64)
    y = np.array([m for _, m in points], dtype=np.float64)
    xm = x.mean()
    ym = y.mean()
    slope = float(((x - xm) * (y - ym)).sum() / ((x - xm) ** 2).sum())
    intercept = float(ym - slope * xm)
    ss_res = float(((y - (slope * x + intercept)) ** 2).sum())
    ss_tot = float(((y - ym) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(slope, intercept, max(0.0, min(1.0, r_squared)))


def write_csv(records: list[BenchRecord], destination) -> None:
    """Write records (ascending size) as CSV to a path or text stream.

    Error records carry no timings and are skipped.  A failed write raises
    OSError naming the destination.
    """
    rows = [CSV_HEADER]
    for r in sorted((r for r in records if r.error is None), key=lambda r: r.size):
        rows.append(f"{r.size},{r.mean_ns},{r.min_ns},{r.max_ns}")
    text = "\n".join(rows) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {destination}: {exc}") from exc
