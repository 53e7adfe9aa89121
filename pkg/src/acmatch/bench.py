"""Throughput benchmark matrix and its CSV form.

Every cell of the matrix is one (pattern source, input source, thread
count) triple.  A cell runs each engine ``repeats`` times and emits one
``raw`` row per run, one ``median`` row per engine, and, when both engines
ran, one ``ratio`` row holding failure-less throughput over with-failure
throughput.  Failing cells become ``error`` rows and the matrix goes on.

Pattern and input sources are file paths or synthetic specs::

    synth:count=50000,min=10,max=30,alphabet=ACGT,seed=7
    random:size=70000,alphabet=ACGT,seed=1,embed=100

``embed=N`` overwrites N random positions with patterns of the cell's set.
Pattern ingestion (file read or generation) is not part of any timing.
"""

from __future__ import annotations

import csv
import dataclasses
import logging
import os
import statistics
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .automaton import EngineKind
from .parallel import RunConfig, run_pattern_partitioned
from .patterns import DNA, PatternSet, embed, generate_synthetic, random_text, read_pattern_file

__all__ = [
    "BenchRecord",
    "CSV_FIELDS",
    "throughput",
    "load_pattern_source",
    "load_input_source",
    "run_bench_matrix",
    "write_csv",
    "read_csv",
    "ratio_table",
]

log = logging.getLogger(__name__)

RATIO_ENGINE = "failure-less/with-failure"


def throughput(input_bytes: int, elapsed: float) -> float:
    """Bytes per second for ``input_bytes`` processed in ``elapsed`` seconds."""
    if not elapsed > 0:
        raise ValueError(f"elapsed time must be positive, got {elapsed}")
    return input_bytes / elapsed


@dataclass
class BenchRecord:
    engine: str
    threads: int | None = None
    pattern_count: int | None = None
    pattern_bytes: int | None = None
    input_bytes: int | None = None
    build_wall_ns: int | None = None
    search_wall_ns: int | None = None
    total_wall_ns: int | None = None
    throughput_total_Bps: float | None = None
    throughput_search_Bps: float | None = None
    match_count: int | None = None
    repeat_index: int | None = None
    logical_cpus: int | None = None
    row_type: str = "raw"  # raw | median | ratio | error
    pattern_source: str = ""
    input_source: str = ""
    error: str = ""


CSV_FIELDS = [f.name for f in dataclasses.fields(BenchRecord)]
_FLOAT_FIELDS = {"throughput_total_Bps", "throughput_search_Bps"}
_STR_FIELDS = {"engine", "row_type", "pattern_source", "input_source", "error"}
_TYPES = {
    name: float if name in _FLOAT_FIELDS else str if name in _STR_FIELDS else int
    for name in CSV_FIELDS
}


def _rate(nbytes: int, ns: int) -> float | None:
    if ns <= 0:
        return None
    return round(throughput(nbytes, ns / 1e9), 2)


def _parse_spec(spec: str) -> dict[str, str]:
    _, _, body = spec.partition(":")
    opts = {}
    for item in filter(None, body.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"malformed option {item!r} in {spec!r}")
        opts[key.strip()] = value.strip()
    return opts


def load_pattern_source(source: str) -> PatternSet:
    if source.startswith("synth:"):
        opts = _parse_spec(source)
        return generate_synthetic(
            int(opts.get("count", 500_000)),
            int(opts.get("min", 10)),
            int(opts.get("max", 30)),
            opts.get("alphabet", DNA.decode()).encode(),
            int(opts.get("seed", 0)),
        )
    return read_pattern_file(source)


def load_input_source(source: str, ps: PatternSet | None = None) -> bytes:
    if source.startswith("random:"):
        opts = _parse_spec(source)
        seed = int(opts.get("seed", 0))
        text = random_text(int(opts.get("size", 70_000)), opts.get("alphabet", DNA.decode()).encode(), seed)
        n_embed = int(opts.get("embed", 0))
        if n_embed:
            if ps is None:
                raise ValueError("embed= needs a pattern set")
            text = embed(text, ps, n_embed, seed)
        return text
    with open(source, "rb") as fh:
        return fh.read()


def _median_row(rows: list[BenchRecord]) -> BenchRecord:
    first = rows[0]
    build = int(statistics.median(r.build_wall_ns for r in rows))
    search = int(statistics.median(r.search_wall_ns for r in rows))
    total = int(statistics.median(r.total_wall_ns for r in rows))
    return dataclasses.replace(
        first,
        build_wall_ns=build,
        search_wall_ns=search,
        total_wall_ns=total,
        throughput_total_Bps=_rate(first.input_bytes, total),
        throughput_search_Bps=_rate(first.input_bytes, search),
        repeat_index=None,
        row_type="median",
    )


def _ratio_row(fl: BenchRecord, wf: BenchRecord) -> BenchRecord:
    def ratio(a, b):
        return round(a / b, 2) if a and b else None

    return dataclasses.replace(
        fl,
        engine=RATIO_ENGINE,
        build_wall_ns=None,
        search_wall_ns=None,
        total_wall_ns=None,
        throughput_total_Bps=ratio(fl.throughput_total_Bps, wf.throughput_total_Bps),
        throughput_search_Bps=ratio(fl.throughput_search_Bps, wf.throughput_search_Bps),
        match_count=None,
        row_type="ratio",
    )


def run_bench_matrix(
    pattern_sources: Sequence[str],
    input_sources: Sequence[str],
    thread_counts: Sequence[int],
    engines: Sequence[EngineKind | str] = tuple(EngineKind),
    repeats: int = 3,
    backend: str = "thread",
    chunk_size: int = 0,
) -> list[BenchRecord]:
    """Run the full cross product sequentially and return every row."""
    if not pattern_sources or not input_sources:
        raise ValueError("need at least one pattern source and one input source")
    if not thread_counts:
        raise ValueError("thread count list is empty")
    if any(t < 1 for t in thread_counts):
        raise ValueError(f"thread counts must be positive, got {list(thread_counts)}")
    if not engines:
        raise ValueError("engine list is empty")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    engines = list(dict.fromkeys(EngineKind(e) for e in engines))
    cpus = os.cpu_count() or 1
    records: list[BenchRecord] = []

    for psrc in pattern_sources:
        try:
            ps = load_pattern_source(psrc)
        except Exception as exc:
            log.warning("pattern source %s failed: %s", psrc, exc)
            records.append(BenchRecord("", row_type="error", pattern_source=psrc, error=str(exc)))
            continue
        for isrc in input_sources:
            try:
                data = load_input_source(isrc, ps)
            except Exception as exc:
                log.warning("input source %s failed: %s", isrc, exc)
                records.append(
                    BenchRecord("", row_type="error", pattern_source=psrc, input_source=isrc, error=str(exc))
                )
                continue
            for threads in thread_counts:
                records.extend(_run_cell(ps, data, psrc, isrc, threads, engines, repeats, backend, chunk_size, cpus))
    return records


def _run_cell(ps, data, psrc, isrc, threads, engines, repeats, backend, chunk_size, cpus):
    # Engines alternate within each repeat so slow drift hits both alike.
    base = {
        engine: BenchRecord(
            engine=engine.value,
            threads=threads,
            pattern_count=len(ps),
            pattern_bytes=ps.total_bytes,
            input_bytes=len(data),
            logical_cpus=cpus,
            pattern_source=psrc,
            input_source=isrc,
        )
        for engine in engines
    }
    raw: dict[EngineKind, list[BenchRecord]] = {engine: [] for engine in engines}
    errors: dict[EngineKind, BenchRecord] = {}
    for i in range(repeats):
        for engine in engines:
            if engine in errors:
                continue
            try:
                rep = run_pattern_partitioned(ps, data, RunConfig(threads, engine, chunk_size, backend))
            except Exception as exc:
                log.warning("cell %s/%s/%d/%s failed: %s", psrc, isrc, threads, engine.value, exc)
                errors[engine] = dataclasses.replace(base[engine], row_type="error", error=str(exc))
                continue
            raw[engine].append(
                dataclasses.replace(
                    base[engine],
                    build_wall_ns=rep.build_wall,
                    search_wall_ns=rep.search_wall,
                    total_wall_ns=rep.total_wall,
                    throughput_total_Bps=_rate(len(data), rep.total_wall),
                    throughput_search_Bps=_rate(len(data), rep.search_wall),
                    match_count=rep.count,
                    repeat_index=i,
                )
            )

    rows: list[BenchRecord] = []
    medians = {}
    for engine in engines:
        if engine in errors:
            rows.append(errors[engine])
            continue
        rows.extend(raw[engine])
        medians[engine] = _median_row(raw[engine])
        rows.append(medians[engine])
        log.info(
            "%s threads=%d patterns=%d median total=%.3fs",
            engine.value, threads, len(ps), medians[engine].total_wall_ns / 1e9,
        )
    if len(medians) == 2:
        rows.append(_ratio_row(medians[EngineKind.FAILURE_LESS], medians[EngineKind.WITH_FAILURE]))
    return rows


def _fmt(name: str, value) -> str:
    if value is None:
        return ""
    if _TYPES[name] is float:
        return f"{value:.2f}"
    return str(value)


def write_csv(records: Iterable[BenchRecord], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow([_fmt(name, getattr(r, name)) for name in CSV_FIELDS])


def read_csv(fh: IO[str]) -> list[BenchRecord]:
    reader = csv.DictReader(fh)
    if reader.fieldnames != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    out = []
    for row in reader:
        kwargs = {}
        for name in CSV_FIELDS:
            text = row[name]
            kind = _TYPES[name]
            kwargs[name] = text if kind is str else (kind(text) if text != "" else None)
        out.append(BenchRecord(**kwargs))
    return out


def ratio_table(records: Iterable[BenchRecord]) -> list[tuple[str, str, int, float | None]]:
    """(pattern source, input source, threads, total-throughput ratio) per cell."""
    return [
        (r.pattern_source, r.input_source, r.threads, r.throughput_total_Bps)
        for r in records
        if r.row_type == "ratio"
    ]
