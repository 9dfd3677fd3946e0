#!/usr/bin/env python3
"""Compare the numba kernels against the pure-Python fallback.

Runs the same size sweep in two fresh interpreters, one per backend
(selected through BINARSORT_BACKEND), then prints the per-size means side
by side with the speedup.  Going through the CLI keeps the measurement
identical to what `binarsort bench` reports.
"""

import argparse
import os
import subprocess
import sys
import tempfile


def run_backend(backend: str, args: argparse.Namespace) -> dict[int, int]:
    with tempfile.NamedTemporaryFile(suffix=".csv", delete=False) as tmp:
        csv_path = tmp.name
    cmd = [
        sys.executable, "-m", "binarsort.cli", "bench",
        "--start", str(args.start), "--end", str(args.end),
        "--step", str(args.step), "--granularity", str(args.granularity),
        "--seed", str(args.seed), "--type", args.type,
        "--variant", args.variant, "--csv", csv_path,
    ]
    env = dict(os.environ, BINARSORT_BACKEND=backend)
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(f"{backend} run failed:\n{proc.stderr}")
    print(f"[{backend}] {proc.stdout.strip()}")
    means = {}
    with open(csv_path) as fh:
        next(fh)
        for line in fh:
            size, mean_ns, _, _ = line.split(",")
            means[int(size)] = int(mean_ns)
    os.unlink(csv_path)
    return means


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--start", type=int, default=4_000)
    parser.add_argument("--end", type=int, default=20_000)
    parser.add_argument("--step", type=int, default=4_000)
    parser.add_argument("--granularity", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--type", default="u32",
                        choices=("u32", "u64", "i32", "f64"))
    parser.add_argument("--variant", default="recursive",
                        choices=("recursive", "iterative", "optimized", "parallel"))
    args = parser.parse_args()

    numba_means = run_backend("numba", args)
    python_means = run_backend("python", args)

    print(f"\n{'size':>10} {'numba mean':>14} {'python mean':>14} {'speedup':>9}")
    for size in sorted(numba_means):
        jit = numba_means[size]
        py = python_means[size]
        print(f"{size:>10} {jit:>11} ns {py:>11} ns {py / jit:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
