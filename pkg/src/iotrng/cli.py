"""Command-line front end.

Subcommands: ``generate`` (stream bytes or ASCII bits), ``test`` (run
the statistical battery), ``puf-sim`` (memory seeder experiments),
``bench`` (throughput / latency), ``export`` (raw stream for external
suites).  Exit codes: 0 success or suite pass, 1 suite fail, 2 usage
error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, registry
from .bench import format_table, measure_latency, measure_throughput
from .entropy import SeedMaterial, accumulate, host_entropy_source
from .errors import IotRngError
from .factory import make_generator, produce, seed_material_from_bytes
from .lightweight import gp_seed
from .puf import run_puf_experiment
from .sts import TestConfig, bits_from_ascii, bits_to_ascii, run_suite
from .sts.bits import bits_from_bytes

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_USAGE = 2

FORMATS = ("raw-le-words", "ascii-bits")


class UsageError(Exception):
    pass


def _build_generator(name, seed_spec, allow_weak_seed, strength_bits=128):
    desc = registry.descriptor(name)
    if desc.generator_class == registry.CRYPTO_SECURE:
        if seed_spec == "entropy":
            material = accumulate([host_entropy_source()], strength_bits)
        else:
            material = seed_material_from_bytes(
                _parse_hex(seed_spec), weak_ok=allow_weak_seed
            )
            if not allow_weak_seed:
                raise UsageError(
                    f"{name} is crypto-secure: a literal seed carries no entropy "
                    "claim; pass --allow-weak-seed for reproducible testing or "
                    "--seed entropy for a real seed"
                )
        return make_generator(name, seed_material=material, strength_bits=strength_bits)
    if seed_spec == "entropy":
        material = accumulate([host_entropy_source()], 64)
        seed_int = int.from_bytes(material.data[:8], "little")
    else:
        seed_int = int.from_bytes(_parse_hex(seed_spec), "big")
    return gp_seed(name, seed_int)


def _parse_hex(text):
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise UsageError(f"seed {text!r} is not valid hex") from None


def _write_stream(gen, n_bytes, fmt, out):
    data = produce(gen, n_bytes)
    if fmt == "raw-le-words":
        out.buffer.write(data)
    else:
        out.write(bits_to_ascii(bits_from_bytes(data)))
    out.flush()


def cmd_generate(args, out):
    gen = _build_generator(args.generator, args.seed, args.allow_weak_seed)
    _write_stream(gen, args.bytes, args.format, out)
    return EXIT_OK


def cmd_export(args, out):
    gen = _build_generator(args.generator, args.seed, args.allow_weak_seed)
    _write_stream(gen, args.bytes, "raw-le-words", out)
    return EXIT_OK


def cmd_test(args, out):
    config = TestConfig(
        sequence_bits=args.bits,
        sequences=args.sequences,
        workers=args.workers,
    )
    if args.stdin:
        text = sys.stdin.buffer.read()
        bits = bits_from_ascii(text)
        needed = config.sequences * config.sequence_bits
        if bits.size < needed:
            raise UsageError(f"stdin supplied {bits.size} bits, need {needed}")
        sequences = [
            _pack_bits(bits[i * config.sequence_bits : (i + 1) * config.sequence_bits])
            for i in range(config.sequences)
        ]
        report = run_suite(sequences, config, generator_name="stdin", skip_short=True)
    else:
        if args.generator is None:
            raise UsageError("test needs a generator name or --stdin")
        gen = _build_generator(args.generator, args.seed, args.allow_weak_seed)
        report = run_suite(
            lambda n: produce(gen, n), config,
            generator_name=args.generator, skip_short=True,
        )
    out.write(report.to_text() + "\n")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json())
        out.write(f"report written to {args.report}\n")
    return EXIT_OK if report.verdict == "pass" else EXIT_SUITE_FAIL


def _pack_bits(bits):
    import numpy as np

    return np.packbits(bits).tobytes()


def cmd_puf_sim(args, out):
    result = run_puf_experiment(
        n_devices=args.devices,
        n_reads=args.reads,
        read_bytes=args.size,
        seed=args.sim_seed,
    )
    out.write(result.to_text() + "\n")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(result.to_json())
        out.write(f"report written to {args.report}\n")
    return EXIT_OK


def cmd_bench(args, out):
    results = []
    for name in args.generators:
        gen = _build_generator(name, args.seed, allow_weak_seed=True)
        if args.mode == "throughput":
            results.append(measure_throughput(gen, args.duration))
        else:
            results.append(measure_latency(gen, args.iterations))
    out.write(format_table(results) + "\n")
    if args.report:
        import json

        with open(args.report, "w") as fh:
            json.dump([r.to_dict() for r in results], fh, indent=2, sort_keys=True)
        out.write(f"report written to {args.report}\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="iotrng",
        description="Random subsystem workbench: generators, entropy, statistics, benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    names = registry.generator_names()

    p = sub.add_parser("generate", help="write generator output to stdout")
    p.add_argument("generator", choices=names, metavar="generator",
                   help=f"one of: {', '.join(names)}")
    p.add_argument("--seed", default="entropy",
                   help="hex bytes, or 'entropy' for a host-sourced seed")
    p.add_argument("--bytes", type=int, default=1024)
    p.add_argument("--format", choices=FORMATS, default="raw-le-words")
    p.add_argument("--allow-weak-seed", action="store_true",
                   help="accept a literal seed for a crypto-secure generator")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("test", help="run the statistical battery")
    p.add_argument("generator", nargs="?", choices=names, metavar="generator")
    p.add_argument("--stdin", action="store_true", help="read ASCII bits from stdin")
    p.add_argument("--seed", default="entropy")
    p.add_argument("--allow-weak-seed", action="store_true")
    p.add_argument("--sequences", type=int, default=100)
    p.add_argument("--bits", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(fn=cmd_test)

    p = sub.add_parser("puf-sim", help="simulated memory-seeder experiment")
    p.add_argument("--devices", type=int, default=5)
    p.add_argument("--reads", type=int, default=50)
    p.add_argument("--size", type=int, default=1024)
    p.add_argument("--sim-seed", type=int, default=2024)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_puf_sim)

    p = sub.add_parser("bench", help="measure generator performance")
    p.add_argument("generators", nargs="+", choices=names, metavar="generator")
    p.add_argument("--mode", choices=("throughput", "latency"), default="throughput")
    p.add_argument("--duration", type=float, default=10.0)
    p.add_argument("--iterations", type=int, default=100_000)
    p.add_argument("--seed", default="0102030405060708090a0b0c0d0e0f10"
                                     "1112131415161718191a1b1c1d1e1f20")
    p.add_argument("--report")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("export", help="raw byte stream to stdout for external suites")
    p.add_argument("generator", choices=names, metavar="generator")
    p.add_argument("--seed", default="entropy")
    p.add_argument("--bytes", type=int, default=12_500_000)
    p.add_argument("--allow-weak-seed", action="store_true")
    p.set_defaults(fn=cmd_export)

    return parser


def run_cli(argv, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except (UsageError, IotRngError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
