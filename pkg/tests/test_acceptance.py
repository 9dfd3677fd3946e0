"""Acceptance suite: one test per criterion, one printed pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; the corpus-driven criteria (2 and 3) share one generated corpus.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest

from binarsort import core
from binarsort.bench import BenchPlan, fit_linear, run_plan
from binarsort.cli import main
from binarsort.keys import (KEY_KINDS, UnsignedCodec, codec_for_kind,
                            encode_float_total_order, encode_signed)
from binarsort.oracle import (MT19937, CaseSpec, canonicalize, generate_case,
                              is_permutation, reference_sort)
from binarsort.variants import (OptimizationConfig, sort_iterative,
                                sort_optimized, sort_parallel)


@contextmanager
def report(number: int, name: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({name}): FAIL")
        raise
    elapsed = time.perf_counter() - started
    print(f"criterion {number} ({name}): PASS [{elapsed:.2f}s]")


NYBBLE_TRACE = """\
begin: [B 4 0 0 7 A C E]
bit 1: [7 4 0 0][A C E B]
bit 2: [0 0][4 7][A B][E C]
bit 3: [0 0][4 7][A B][C][E]
bit 4: [0 0][4 7][A B][C][E]
end: [0 0 4 7 A B C E]
"""


def test_criterion_1_worked_example_fidelity(capsys):
    with report(1, "worked-example fidelity"):
        t0 = time.perf_counter()
        seq = [0xB, 0x4, 0x0, 0x0, 0x7, 0xA, 0xC, 0xE]
        core.sort(seq, UnsignedCodec(4))
        assert seq == [0x0, 0x0, 0x4, 0x7, 0xA, 0xB, 0xC, 0xE]
        assert main(["trace", "--width", "4", "B", "4", "0", "0", "7", "A", "C", "E"]) == 0
        assert capsys.readouterr().out == NYBBLE_TRACE
        assert time.perf_counter() - t0 < 1.0


# --- criteria 2 and 3 share one randomized corpus ---------------------------

CASES_PER_KIND = 2000
FORCED_SIZES = (0, 1, 2, 3, 2048)

VARIANT_RUNNERS = (
    ("recursive", lambda seq, codec: core.sort(seq, codec)),
    ("iterative", lambda seq, codec: sort_iterative(seq, codec)),
    ("optimized", lambda seq, codec: sort_optimized(seq, codec)),
    ("parallel-1", lambda seq, codec: sort_parallel(seq, codec, 1)),
    ("parallel-2", lambda seq, codec: sort_parallel(seq, codec, 2)),
    ("parallel-4", lambda seq, codec: sort_parallel(seq, codec, 4)),
)


def _case_size(i: int, kind: str, master: MT19937) -> int:
    if i < len(FORCED_SIZES):
        return FORCED_SIZES[i]
    if kind == "bytestring":
        if i % 100 == 0:
            return master.next_u32() % 1025
        return master.next_u32() % 65
    if i % 25 == 0:
        return master.next_u32() % 2049
    return master.next_u32() % 129


def _f64_rank(bits: int) -> int:
    mag = bits & ((1 << 63) - 1)
    return (mag * 2 + 1) if bits < (1 << 63) else -(mag * 2)


def _expected_canonical(original, kind: str) -> list:
    """Oracle ordering via the in-repo merge sort and an independent order."""
    if kind == "float64":
        patterns = [int(v) for v in np.asarray(original).view(np.uint64)]
        return reference_sort(patterns, lambda a, b: _f64_rank(a) <= _f64_rank(b))
    if kind == "bytestring":
        return reference_sort(list(original), lambda a, b: a <= b)
    return reference_sort([int(v) for v in original], lambda a, b: a <= b)


def _copy(seq):
    return seq.copy() if isinstance(seq, np.ndarray) else list(seq)


@pytest.fixture(scope="module")
def corpus_results():
    mismatches = []
    bound_violations = []
    total_cases = 0
    total_runs = 0
    started = time.perf_counter()
    master = MT19937(20080215)
    for kind in KEY_KINDS:
        codec = codec_for_kind(kind)
        for i in range(CASES_PER_KIND):
            size = _case_size(i, kind, master)
            seed = master.next_u32()
            original = generate_case(CaseSpec(size, kind, seed))
            width = codec.width_for(original)
            expected = _expected_canonical(original, kind)
            original_canonical = canonicalize(original, kind)
            for variant, run in VARIANT_RUNNERS:
                work = _copy(original)
                metrics = run(work, codec)
                got = canonicalize(work, kind)
                if got != expected or not is_permutation(got, original_canonical):
                    mismatches.append((kind, variant, seed, size))
                if not (metrics.bit_extractions <= width * size
                        and metrics.swaps <= metrics.bit_extractions
                        and metrics.max_depth <= width + 1):
                    bound_violations.append((kind, variant, seed, size, metrics))
                total_runs += 1
            total_cases += 1
    return {
        "mismatches": mismatches,
        "bound_violations": bound_violations,
        "cases": total_cases,
        "runs": total_runs,
        "elapsed": time.perf_counter() - started,
    }


def test_criterion_2_oracle_equivalence(corpus_results):
    with report(2, "oracle equivalence"):
        print(f"corpus: {corpus_results['cases']} cases x {len(VARIANT_RUNNERS)} "
              f"variants in {corpus_results['elapsed']:.1f}s")
        assert corpus_results["cases"] >= 10_000
        assert corpus_results["runs"] == corpus_results["cases"] * len(VARIANT_RUNNERS)
        assert corpus_results["mismatches"] == []
        assert corpus_results["elapsed"] < 120.0


def test_criterion_3_linear_work_bound(corpus_results):
    with report(3, "linear work and depth bounds"):
        assert corpus_results["bound_violations"] == []


def test_criterion_4_permutation_independence():
    with report(4, "permutation independence"):
        t0 = time.perf_counter()
        keys = [3, 17, 42, 128, 200, 255]
        counts = {
            core.sort(list(perm), UnsignedCodec(8)).bit_extractions
            for perm in itertools.permutations(keys)
        }
        assert len(counts) == 1
        assert time.perf_counter() - t0 < 1.0


def test_criterion_5_desk_scale_linearity():
    with report(5, "desk-scale linearity"):
        t0 = time.perf_counter()
        plan = BenchPlan(start_size=100_000, end_size=1_000_000, step=100_000,
                         granularity=10, seed=4, key_kind="unsigned32",
                         variant="recursive")
        records = run_plan(plan)
        assert [r.size for r in records] == list(range(100_000, 1_000_001, 100_000))
        assert all(r.error is None for r in records)
        fit = fit_linear(records)
        assert fit.r_squared >= 0.95, fit
        by_size = {r.size: r.mean_ns for r in records}
        for n in (100_000, 200_000, 300_000, 400_000, 500_000):
            ratio = by_size[2 * n] / by_size[n]
            assert 1.4 <= ratio <= 3.0, (n, ratio)
        assert time.perf_counter() - t0 < 300.0


def _sign_magnitude_rank(bits: int, width: int) -> int:
    sign = bits >> (width - 1)
    mag = bits & ((1 << (width - 1)) - 1)
    return (mag * 2 + 1) if sign == 0 else -(mag * 2)


def test_criterion_6_codec_soundness():
    with report(6, "codec soundness"):
        # Signed transform, width 8: every ordered pair.
        v8 = np.arange(-128, 128)
        e8 = np.array([encode_signed(int(v), 8) for v in v8])
        assert np.all((v8[:, None] < v8[None, :]) == (e8[:, None] < e8[None, :]))

        # Float-pattern transform, width 8: every ordered pair against the
        # sign-magnitude rank oracle.
        f8 = np.array([encode_float_total_order(b, 8) for b in range(256)])
        r8 = np.array([_sign_magnitude_rank(b, 8) for b in range(256)])
        assert len(np.unique(f8)) == 256
        assert np.all((r8[:, None] < r8[None, :]) == (f8[:, None] < f8[None, :]))

        # Width 16: all values, one million sampled pairs per transform.
        v16 = np.arange(-(2**15), 2**15)
        e16 = np.array([encode_signed(int(v), 16) for v in v16])
        assert np.all(np.diff(e16) > 0)
        rng = np.random.default_rng(60)
        ai = rng.integers(0, v16.size, 1_000_000)
        bi = rng.integers(0, v16.size, 1_000_000)
        assert np.all((v16[ai] < v16[bi]) == (e16[ai] < e16[bi]))

        f16 = np.array([encode_float_total_order(b, 16) for b in range(2**16)])
        r16 = np.array([_sign_magnitude_rank(b, 16) for b in range(2**16)])
        assert len(np.unique(f16)) == 2**16
        ai = rng.integers(0, 2**16, 1_000_000)
        bi = rng.integers(0, 2**16, 1_000_000)
        assert np.all((r16[ai] < r16[bi]) == (f16[ai] < f16[bi]))

        # Bit-fold reconstruction identity, width 8, exhaustive.
        codec = UnsignedCodec(8)
        for x in range(256):
            folded = 0
            for pos in range(8):
                folded = (folded << 1) | codec.bit_at(x, pos)
            assert folded == x


def test_criterion_7_optimization_safety():
    with report(7, "optimization safety"):
        base = np.arange(10_000, dtype=np.uint32)
        plain = base.copy()
        unopt = core.sort(plain, UnsignedCodec(32))
        tuned = base.copy()
        opt = sort_optimized(tuned, UnsignedCodec(32),
                             OptimizationConfig(sortedness_check_after=1))
        assert np.array_equal(plain, base)
        assert np.array_equal(tuned, base)
        assert opt.bit_extractions < unopt.bit_extractions


def test_criterion_8_generator_fidelity():
    with report(8, "generator fidelity"):
        gen = MT19937(5489)
        assert [gen.next_u32() for _ in range(10)] == [
            3499211612, 581869302, 3890346734, 3586334585, 545404204,
            4161255391, 3922919429, 949333985, 2715962298, 1323567403,
        ]
