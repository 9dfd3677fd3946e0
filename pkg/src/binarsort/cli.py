"""Command-line front end: sort, bench, trace, and verify subcommands.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 I/O error.
"""

import argparse
import sys

import numpy as np

from . import core
from .bench import BenchPlan, fit_linear, make_sorter, run_plan, write_csv
from .keys import UnsignedCodec, codec_for_kind
from .oracle import (MT19937, CaseSpec, canonicalize, generate_case,
                     is_permutation, reference_sort)

TYPE_KINDS = {
    "u32": "unsigned32",
    "u64": "unsigned64",
    "i32": "signed32",
    "f64": "float64",
    "str": "bytestring",
}

_INT_LIMITS = {
    "u32": (0, 2**32 - 1),
    "u64": (0, 2**64 - 1),
    "i32": (-(2**31), 2**31 - 1),
}

_DTYPES = {"u32": np.uint32, "u64": np.uint64, "i32": np.int32, "f64": np.float64}


class _ParseError(Exception):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _read_input(path: str) -> bytes:
    if path == "-":
        buf = getattr(sys.stdin, "buffer", None)
        if buf is not None:
            return buf.read()
        return sys.stdin.read().encode("latin-1")
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        buf = getattr(sys.stdout, "buffer", None)
        if buf is not None:
            buf.write(data)
            buf.flush()
        else:
            sys.stdout.write(data.decode("latin-1"))
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _split_lines(data: bytes) -> list[bytes]:
    if not data:
        return []
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    return lines


def _parse_values(lines: list[bytes], type_name: str):
    if type_name == "str":
        return list(lines)
    values = []
    for i, raw in enumerate(lines, 1):
        text = raw.decode("ascii", "replace").strip()
        try:
            if type_name == "f64":
                values.append(float(text))
            else:
                v = int(text)
                lo, hi = _INT_LIMITS[type_name]
                if not lo <= v <= hi:
                    raise ValueError(f"value out of range for {type_name}")
                values.append(v)
        except ValueError as exc:
            raise _ParseError(i, f"{exc} ({text!r})") from exc
    return np.array(values, dtype=_DTYPES[type_name])


def _render_values(values, type_name: str) -> bytes:
    if type_name == "str":
        return b"".join(v + b"\n" for v in values)
    if type_name == "f64":
        return "".join(f"{float(v)!r}\n" for v in values).encode("ascii")
    return "".join(f"{int(v)}\n" for v in values).encode("ascii")


def cmd_sort(args) -> int:
    if args.variant == "parallel" and args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        data = _read_input(args.input)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 3
    try:
        values = _parse_values(_split_lines(data), args.type)
    except _ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    codec = codec_for_kind(TYPE_KINDS[args.type])
    make_sorter(args.variant, codec, args.workers)(values)
    try:
        _write_output(args.output, _render_values(values, args.type))
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_bench(args) -> int:
    plan = BenchPlan(
        start_size=args.start,
        end_size=args.end,
        step=args.step,
        granularity=args.granularity,
        seed=args.seed,
        key_kind=TYPE_KINDS[args.type],
        variant=args.variant,
        workers=args.workers,
    )
    try:
        plan.validate()
    except ValueError as exc:
        print(f"error: invalid plan: {exc}", file=sys.stderr)
        return 2
    records = run_plan(plan)
    for rec in records:
        if rec.error is not None:
            print(f"size {rec.size}: {rec.error}", file=sys.stderr)
    try:
        write_csv(records, args.csv)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        fit = fit_linear(records)
    except ValueError:
        print("fit: n/a (need at least 2 sizes)")
        return 0
    print(f"fit: slope={fit.slope:.6g} ns/element "
          f"intercept={fit.intercept:.6g} ns r_squared={fit.r_squared:.6f}")
    return 0


def cmd_trace(args) -> int:
    limit = 1 << args.width
    values = []
    for token in args.values:
        try:
            v = int(token, 16)
        except ValueError:
            print(f"parse error: {token!r} is not a hex value", file=sys.stderr)
            return 2
        if not 0 <= v < limit:
            print(f"parse error: {token!r} does not fit in {args.width} bits",
                  file=sys.stderr)
            return 2
        values.append(v)

    def fmt(indices) -> str:
        return " ".join(format(values[i], "X") for i in indices)

    def observer(pos, boundaries):
        groups = "".join(f"[{fmt(range(lo, up + 1))}]" for lo, up in boundaries)
        print(f"bit {pos + 1}: {groups}")

    print(f"begin: [{fmt(range(len(values)))}]")
    core.sort_with_observer(values, UnsignedCodec(args.width), observer)
    print(f"end: [{fmt(range(len(values)))}]")
    return 0


def cmd_verify(args) -> int:
    if args.cases < 1:
        print("error: --cases must be >= 1", file=sys.stderr)
        return 2
    if args.variant == "parallel" and args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    kind = TYPE_KINDS[args.type]
    codec = codec_for_kind(kind)
    sorter = make_sorter(args.variant, codec, args.workers)
    master = MT19937(args.seed)
    passed = 0
    first_failure = None
    for _ in range(args.cases):
        size = master.next_u32() % 2049
        case_seed = master.next_u32()
        original = generate_case(CaseSpec(size, kind, case_seed))
        work = original.copy() if isinstance(original, np.ndarray) else list(original)
        metrics = sorter(work)
        expected = reference_sort(original, codec.le)
        width = codec.width_for(original)
        ok = (
            canonicalize(work, kind) == canonicalize(expected, kind)
            and is_permutation(canonicalize(work, kind), canonicalize(original, kind))
            and metrics.bit_extractions <= width * size
            and metrics.swaps <= metrics.bit_extractions
            and metrics.max_depth <= width + 1
        )
        if ok:
            passed += 1
        elif first_failure is None:
            first_failure = (case_seed, size)
    print(f"{passed}/{args.cases} passed")
    if first_failure is not None:
        print(f"first failure: seed={first_failure[0]} size={first_failure[1]}",
              file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binarsort",
        description="In-place MSD binary radix sort tools",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--type", choices=sorted(TYPE_KINDS), default="u32",
                       help="element type (default u32)")
        p.add_argument("--variant", choices=("recursive", "iterative", "optimized", "parallel"),
                       default="recursive", help="sort variant (default recursive)")
        p.add_argument("--workers", type=int, default=4,
                       help="worker count for --variant parallel (default 4)")

    p_sort = sub.add_parser("sort", help="sort values, one per line")
    add_common(p_sort)
    p_sort.add_argument("--output", "-o", default="-", help="output path (default stdout)")
    p_sort.add_argument("input", nargs="?", default="-", help="input path (default stdin)")
    p_sort.set_defaults(func=cmd_sort)

    p_bench = sub.add_parser("bench", help="run a size sweep and fit a line")
    add_common(p_bench)
    p_bench.add_argument("--start", type=int, required=True)
    p_bench.add_argument("--end", type=int, required=True)
    p_bench.add_argument("--step", type=int, required=True)
    p_bench.add_argument("--granularity", type=int, required=True)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--csv", required=True, help="destination CSV path")
    p_bench.set_defaults(func=cmd_bench)

    p_trace = sub.add_parser("trace", help="print per-bit partition boundaries")
    p_trace.add_argument("--width", type=int, choices=(4, 8, 16, 32), required=True)
    p_trace.add_argument("values", nargs="+", help="unsigned hex values")
    p_trace.set_defaults(func=cmd_trace)

    p_verify = sub.add_parser("verify", help="randomized check against the reference sort")
    add_common(p_verify)
    p_verify.add_argument("--cases", type=int, required=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
