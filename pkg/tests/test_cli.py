import subprocess
import sys

import pytest

from binarsort.cli import main

NYBBLE_ARGS = ["trace", "--width", "4", "B", "4", "0", "0", "7", "A", "C", "E"]

NYBBLE_TRACE = """\
begin: [B 4 0 0 7 A C E]
bit 1: [7 4 0 0][A C E B]
bit 2: [0 0][4 7][A B][E C]
bit 3: [0 0][4 7][A B][C][E]
bit 4: [0 0][4 7][A B][C][E]
end: [0 0 4 7 A B C E]
"""


def run_sort(tmp_path, body: bytes, *flags) -> tuple[int, bytes, str]:
    inp = tmp_path / "in.txt"
    outp = tmp_path / "out.txt"
    inp.write_bytes(body)
    rc = main(["sort", *flags, "--output", str(outp), str(inp)])
    return rc, (outp.read_bytes() if outp.exists() else b""), str(outp)


class TestSortCommand:
    def test_u32_sorts_lines(self, tmp_path):
        rc, out, _ = run_sort(tmp_path, b"3\n1\n2\n", "--type", "u32")
        assert rc == 0
        assert out == b"1\n2\n3\n"

    def test_empty_input_empty_output(self, tmp_path):
        rc, out, _ = run_sort(tmp_path, b"", "--type", "u32")
        assert rc == 0
        assert out == b""

    def test_parse_failure_names_line(self, tmp_path, capsys):
        rc, _, _ = run_sort(tmp_path, b"1\nx\n", "--type", "u32")
        assert rc == 2
        assert "line 2" in capsys.readouterr().err

    def test_u32_range_check(self, tmp_path, capsys):
        rc, _, _ = run_sort(tmp_path, b"4294967296\n", "--type", "u32")
        assert rc == 2
        assert "line 1" in capsys.readouterr().err

    def test_i32_negative_values(self, tmp_path):
        rc, out, _ = run_sort(tmp_path, b"5\n-2147483648\n-1\n2147483647\n", "--type", "i32")
        assert rc == 0
        assert out == b"-2147483648\n-1\n5\n2147483647\n"

    def test_u64_large_values(self, tmp_path):
        rc, out, _ = run_sort(tmp_path, b"18446744073709551615\n0\n7\n", "--type", "u64")
        assert rc == 0
        assert out == b"0\n7\n18446744073709551615\n"

    def test_f64_specials_round_trip(self, tmp_path):
        body = b"nan\n1.5\n-inf\n-0.0\ninf\n0.0\n"
        rc, out, _ = run_sort(tmp_path, body, "--type", "f64")
        assert rc == 0
        assert out == b"-inf\n-0.0\n0.0\n1.5\ninf\nnan\n"

    def test_str_lexicographic(self, tmp_path):
        rc, out, _ = run_sort(tmp_path, b"b\nab\na\n\n", "--type", "str")
        assert rc == 0
        assert out == b"\na\nab\nb\n"

    @pytest.mark.parametrize("variant", ["iterative", "optimized", "parallel"])
    def test_variants_agree(self, tmp_path, variant):
        body = b"9\n3\n7\n3\n0\n4294967295\n"
        _, base, _ = run_sort(tmp_path, body, "--type", "u32")
        rc, out, _ = run_sort(tmp_path, body, "--type", "u32", "--variant", variant)
        assert rc == 0
        assert out == base

    def test_missing_input_is_io_error(self, tmp_path, capsys):
        rc = main(["sort", str(tmp_path / "absent.txt")])
        assert rc == 3

    def test_unwritable_output_is_io_error(self, tmp_path, capsys):
        inp = tmp_path / "in.txt"
        inp.write_bytes(b"1\n")
        rc = main(["sort", "--output", str(tmp_path / "no" / "out.txt"), str(inp)])
        assert rc == 3

    def test_zero_workers_rejected(self, tmp_path, capsys):
        inp = tmp_path / "in.txt"
        inp.write_bytes(b"1\n")
        rc = main(["sort", "--variant", "parallel", "--workers", "0", str(inp)])
        assert rc == 2

    def test_unknown_flag_rejected(self, capsys):
        assert main(["sort", "--frobnicate"]) == 2

    def test_stdout_default(self, tmp_path, capsys):
        inp = tmp_path / "in.txt"
        inp.write_bytes(b"2\n1\n")
        rc = main(["sort", str(inp)])
        assert rc == 0
        assert capsys.readouterr().out == "1\n2\n"


class TestBenchCommand:
    def test_sweep_writes_csv_and_summary(self, tmp_path, capsys):
        csv = tmp_path / "out.csv"
        rc = main(["bench", "--start", "1000", "--end", "5000", "--step", "1000",
                   "--granularity", "2", "--csv", str(csv)])
        assert rc == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == "size,mean_ns,min_ns,max_ns"
        assert len(lines) == 6
        out = capsys.readouterr().out
        assert "slope=" in out and "r_squared=" in out

    def test_zero_step_rejected(self, tmp_path, capsys):
        rc = main(["bench", "--start", "10", "--end", "20", "--step", "0",
                   "--granularity", "1", "--csv", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_single_size_reports_no_fit(self, tmp_path, capsys):
        rc = main(["bench", "--start", "64", "--end", "64", "--step", "1",
                   "--granularity", "1", "--csv", str(tmp_path / "x.csv")])
        assert rc == 0
        assert "n/a" in capsys.readouterr().out


class TestTraceCommand:
    def test_worked_example_full_output(self, capsys):
        assert main(NYBBLE_ARGS) == 0
        assert capsys.readouterr().out == NYBBLE_TRACE

    def test_single_value_no_bit_lines(self, capsys):
        assert main(["trace", "--width", "4", "5"]) == 0
        assert capsys.readouterr().out == "begin: [5]\nend: [5]\n"

    def test_wider_words(self, capsys):
        assert main(["trace", "--width", "8", "FF", "0A", "00"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "begin: [FF A 0]"
        assert out[-1] == "end: [0 A FF]"
        assert len(out) == 10

    def test_non_hex_rejected(self, capsys):
        assert main(["trace", "--width", "4", "G"]) == 2

    def test_too_wide_value_rejected(self, capsys):
        assert main(["trace", "--width", "4", "10"]) == 2

    def test_unsupported_width_rejected(self, capsys):
        assert main(["trace", "--width", "5", "1"]) == 2


class TestVerifyCommand:
    def test_passes_and_reports(self, capsys):
        rc = main(["verify", "--cases", "25", "--seed", "7", "--type", "u32"])
        assert rc == 0
        assert capsys.readouterr().out.strip() == "25/25 passed"

    @pytest.mark.parametrize("type_name,variant", [
        ("u64", "iterative"),
        ("i32", "optimized"),
        ("f64", "recursive"),
        ("str", "parallel"),
    ])
    def test_all_types_and_variants(self, capsys, type_name, variant):
        rc = main(["verify", "--cases", "8", "--seed", "3",
                   "--type", type_name, "--variant", variant, "--workers", "2"])
        assert rc == 0
        assert "8/8 passed" in capsys.readouterr().out

    def test_zero_cases_rejected(self, capsys):
        assert main(["verify", "--cases", "0"]) == 2

    def test_deterministic_output(self, capsys):
        main(["verify", "--cases", "10", "--seed", "42", "--type", "i32"])
        first = capsys.readouterr().out
        main(["verify", "--cases", "10", "--seed", "42", "--type", "i32"])
        assert capsys.readouterr().out == first


def test_console_entry_end_to_end(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "binarsort.cli", "sort", "--type", "u32"],
        input=b"3\n1\n2\n", capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == b"1\n2\n3\n"
