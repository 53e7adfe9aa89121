"""Command line entry point: ``acmatch {match,bench,gen,dump}``.

Exit codes: 0 success, 1 match or verification failure, 2 usage error,
3 I/O error.  Matches go to stdout; timings and warnings go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import __version__
from .automaton import EngineKind, build, dump
from .bench import ratio_table, run_bench_matrix, write_csv
from .engine import DEFAULT_CHUNK_SIZE, naive_oracle
from .parallel import BACKENDS, RunConfig, run_pattern_partitioned
from .patterns import EmptyPatternSetError, dump_patterns, generate_synthetic, read_pattern_file

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("acmatch")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("thread counts must be positive")
    return values


def _engine_list(text):
    try:
        return [EngineKind(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="acmatch", description="Multi-pattern exact string matching.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    engines = [e.value for e in EngineKind]

    p = sub.add_parser("match", help="report every occurrence of every pattern")
    p.add_argument("--patterns", required=True, help="pattern file, one pattern per line")
    p.add_argument("--input", required=True, help="input file to scan")
    p.add_argument("--engine", choices=engines, default=EngineKind.FAILURE_LESS.value)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--backend", choices=BACKENDS, default="thread")
    p.add_argument(
        "--chunk-size", type=int, default=0,
        help=f"stream the input in chunks of this many bytes (0 reads it whole; "
        f"a typical value is {DEFAULT_CHUNK_SIZE})",
    )
    p.add_argument("--verify", action="store_true", help="cross-check against brute force")
    p.add_argument("--count-only", action="store_true", help="print only the match count")

    p = sub.add_parser("bench", help="run the throughput matrix and write CSV")
    p.add_argument("--patterns", nargs="+", required=True, help="pattern files or synth:... specs")
    p.add_argument("--inputs", nargs="+", required=True, help="input files or random:... specs")
    p.add_argument("--threads", type=_int_list, default=[1], help="comma-separated thread counts")
    p.add_argument("--engines", type=_engine_list, default=list(EngineKind))
    p.add_argument("--repeats", type=_positive, default=3)
    p.add_argument("--backend", choices=BACKENDS, default="thread")
    p.add_argument("--chunk-size", type=int, default=0)
    p.add_argument("--out", default="-", help="CSV destination (default stdout)")

    p = sub.add_parser("gen", help="write a synthetic pattern file")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--min", type=_positive, default=10, dest="len_min")
    p.add_argument("--max", type=_positive, default=30, dest="len_max")
    p.add_argument("--alphabet", default="ACGT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")

    p = sub.add_parser("dump", help="print the automaton in a stable text form")
    p.add_argument("--patterns", required=True)
    p.add_argument("--engine", choices=engines, default=EngineKind.FAILURE_LESS.value)
    return parser


def _cmd_match(args) -> int:
    if args.chunk_size < 0:
        raise _UsageError("--chunk-size must be >= 0")
    t0 = time.perf_counter_ns()
    ps = read_pattern_file(args.patterns)
    with open(args.input, "rb") as fh:
        data = fh.read()
    load_ns = time.perf_counter_ns() - t0
    if ps.duplicates:
        log.warning("dropped %d duplicate pattern line(s)", ps.duplicates)

    cfg = RunConfig(args.threads, args.engine, args.chunk_size, args.backend)
    report = run_pattern_partitioned(ps, args.input if args.chunk_size else data, cfg)
    print(
        f"engine={cfg.engine.value} threads={report.threads_used} patterns={len(ps)} "
        f"input_bytes={len(data)} matches={report.count} load_ms={load_ns / 1e6:.3f} "
        f"build_ms={report.build_wall / 1e6:.3f} search_ms={report.search_wall / 1e6:.3f} "
        f"total_ms={report.total_wall / 1e6:.3f}",
        file=sys.stderr,
    )

    out = sys.stdout.buffer
    if args.count_only:
        out.write(f"{report.count}\n".encode())
    else:
        by_id = ps.by_id()
        out.writelines(
            b"%d\t%d\t%d\t%s\n" % (m.start, m.length, m.pattern_id, by_id[m.pattern_id])
            for m in report.matches
        )
    out.flush()

    if args.verify:
        expected = naive_oracle(ps, data)
        if expected != report.matches:
            print(
                f"verify: MISMATCH (engine {report.count} matches, oracle {len(expected)})",
                file=sys.stderr,
            )
            return EXIT_MISMATCH
        print(f"verify: ok ({len(expected)} matches)", file=sys.stderr)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.chunk_size < 0:
        raise _UsageError("--chunk-size must be >= 0")
    try:
        records = run_bench_matrix(
            args.patterns, args.inputs, args.threads, args.engines, args.repeats,
            args.backend, args.chunk_size,
        )
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.out == "-":
        write_csv(records, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    for psrc, isrc, threads, ratio in ratio_table(records):
        print(f"ratio {psrc} {isrc} threads={threads}: {ratio}", file=sys.stderr)
    return EXIT_MISMATCH if any(r.row_type == "error" for r in records) else EXIT_OK


def _cmd_gen(args) -> int:
    try:
        ps = generate_synthetic(args.count, args.len_min, args.len_max, args.alphabet.encode(), args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.out == "-":
        dump_patterns(ps, sys.stdout.buffer)
        sys.stdout.flush()
    else:
        with open(args.out, "wb") as fh:
            dump_patterns(ps, fh)
    print(f"wrote {len(ps)} patterns, {ps.total_bytes} bytes", file=sys.stderr)
    return EXIT_OK


def _cmd_dump(args) -> int:
    ps = read_pattern_file(args.patterns)
    sys.stdout.write(dump(build(ps, args.engine)))
    return EXIT_OK


class _UsageError(Exception):
    pass


COMMANDS = {"match": _cmd_match, "bench": _cmd_bench, "gen": _cmd_gen, "dump": _cmd_dump}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"acmatch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EmptyPatternSetError as exc:
        print(f"acmatch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"acmatch {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
