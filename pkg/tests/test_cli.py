"""Command-line contract: byte-exactness, exit codes, formats."""

import io
import json
import subprocess
import sys

import pytest

from iotrng.cli import EXIT_OK, EXIT_SUITE_FAIL, EXIT_USAGE, run_cli


class _Out(io.TextIOWrapper):
    pass


def _run(argv):
    buf = io.BytesIO()
    out = io.TextIOWrapper(buf, encoding="utf-8")
    code = run_cli(argv, out=out)
    out.flush()
    return code, buf.getvalue()


def test_generate_known_word_little_endian():
    code, data = _run(
        ["generate", "xorshift32", "--seed", "01", "--bytes", "8",
         "--format", "raw-le-words"]
    )
    assert code == EXIT_OK
    assert int.from_bytes(data[:4], "little") == 270369


def test_generate_byte_identical_across_runs():
    a = _run(["generate", "mt19937", "--seed", "2a", "--bytes", "64"])
    b = _run(["generate", "mt19937", "--seed", "2a", "--bytes", "64"])
    assert a == b


def test_generate_ascii_bits_format():
    code, data = _run(
        ["generate", "xorshift32", "--seed", "01", "--bytes", "4",
         "--format", "ascii-bits"]
    )
    assert code == EXIT_OK
    text = data.decode()
    assert set(text) <= {"0", "1"} and len(text) == 32
    # 270369 = 0x00042021 little-endian, bytes expanded MSB-first
    assert text == "00100001001000000000010000000000"


def test_export_equals_generate_raw():
    a = _run(["export", "sha256prng", "--seed", "00", "--bytes", "32",
              "--allow-weak-seed"])
    b = _run(["generate", "sha256prng", "--seed", "00", "--bytes", "32",
              "--format", "raw-le-words", "--allow-weak-seed"])
    assert a == b == (EXIT_OK, a[1])


def test_crypto_weak_seed_guard():
    code, _ = _run(["generate", "sha256prng", "--seed", "00", "--bytes", "16"])
    assert code == EXIT_USAGE


def test_unknown_generator_rejected():
    code, _ = _run(["generate", "rot13", "--seed", "00"])
    assert code == EXIT_USAGE


def test_bad_hex_seed():
    code, _ = _run(["generate", "xorshift32", "--seed", "zz"])
    assert code == EXIT_USAGE


def test_entropy_seed_produces_output():
    code, data = _run(["generate", "ctr_drbg", "--seed", "entropy", "--bytes", "16"])
    assert code == EXIT_OK and len(data) == 16


def test_suite_pass_and_fail_exit_codes(tmp_path):
    report = tmp_path / "r.json"
    code, text = _run(
        ["test", "mt19937", "--seed", "07", "--sequences", "6",
         "--bits", "20000", "--report", str(report)]
    )
    assert code == EXIT_OK, text
    payload = json.loads(report.read_text())
    assert payload["suite_verdict"] == "pass"
    assert payload["generator"] == "mt19937"

    # constant generator output: hard fail at any scale
    code, text = _run(
        ["test", "lfsr16", "--seed", "0001", "--sequences", "6", "--bits", "131072"]
    )
    assert code == EXIT_SUITE_FAIL


def test_suite_from_stdin(monkeypatch, tmp_path):
    from iotrng import make_generator
    from iotrng.sts.bits import bits_from_bytes, bits_to_ascii

    data = make_generator("mt19937", seed=5).generate(6 * 2500)
    text = bits_to_ascii(bits_from_bytes(data))
    monkeypatch.setattr(
        sys, "stdin", type("S", (), {"buffer": io.BytesIO(text.encode())})()
    )
    code, out = _run(["test", "--stdin", "--sequences", "6", "--bits", "20000"])
    assert code in (EXIT_OK, EXIT_SUITE_FAIL)
    assert "stdin" in out.decode()


def test_stdin_underflow_is_usage_error(monkeypatch):
    monkeypatch.setattr(
        sys, "stdin", type("S", (), {"buffer": io.BytesIO(b"0101")})()
    )
    code, _ = _run(["test", "--stdin", "--sequences", "2", "--bits", "1000"])
    assert code == EXIT_USAGE


def test_puf_sim_report(tmp_path):
    report = tmp_path / "puf.json"
    code, out = _run(
        ["puf-sim", "--devices", "2", "--reads", "8", "--size", "128",
         "--report", str(report)]
    )
    assert code == EXIT_OK
    payload = json.loads(report.read_text())
    assert payload["devices"] == ["D0", "D1"]


def test_bench_subcommand(tmp_path):
    report = tmp_path / "bench.json"
    code, out = _run(
        ["bench", "xorshift32", "knuth_lcg", "--mode", "throughput",
         "--duration", "0.05", "--report", str(report)]
    )
    assert code == EXIT_OK
    rows = json.loads(report.read_text())
    assert {r["generator"] for r in rows} == {"xorshift32", "knuth_lcg"}


def test_zero_duration_rejected_at_parse():
    code, _ = _run(["bench", "xorshift32", "--duration", "0"])
    assert code == EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "iotrng.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "iotrng" in proc.stdout
