"""Pattern-partitioned parallel matching.

The dictionary is split into byte-balanced chunks, one worker per chunk.
Each worker builds its own automaton from its chunk and scans the whole
input, so automaton construction is spread across workers as well as the
scan.  Partial results carry original pattern ids and are merged into one
sorted list.

Two backends run the workers.  ``"thread"`` uses OS threads in this
process; under CPython's GIL the pure-Python build and scan loops then
interleave instead of running simultaneously.  ``"process"`` starts one
process per worker and gives real multicore speedup; the single-chunk
case always runs inline.
"""

from __future__ import annotations

import io
import multiprocessing
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .automaton import EngineKind, build
from .engine import Match, search, sort_matches, stream_search
from .patterns import PatternSet, partition

__all__ = [
    "BACKENDS",
    "EngineKind",
    "RunConfig",
    "WorkerStats",
    "MatchReport",
    "WorkerError",
    "run_pattern_partitioned",
    "merge_matches",
]

BACKENDS = ("thread", "process")


@dataclass(frozen=True)
class RunConfig:
    threads: int = 1
    engine: EngineKind = EngineKind.FAILURE_LESS
    chunk_size: int = 0  # 0 scans the whole input in memory
    backend: str = "thread"

    def __post_init__(self):
        object.__setattr__(self, "engine", EngineKind(self.engine))
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.chunk_size < 0:
            raise ValueError(f"chunk_size must be >= 0, got {self.chunk_size}")
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}, got {self.backend!r}")


@dataclass
class WorkerStats:
    pattern_bytes: int
    build_time: int  # ns
    search_time: int  # ns
    match_count: int


@dataclass
class MatchReport:
    matches: list[Match]
    per_worker: list[WorkerStats]
    build_wall: int  # ns, slowest worker build
    search_wall: int  # ns, slowest worker search
    total_wall: int  # ns, partition through merge
    threads_used: int

    @property
    def count(self) -> int:
        return len(self.matches)

    @property
    def build_cpu(self) -> int:
        return sum(w.build_time for w in self.per_worker)

    @property
    def search_cpu(self) -> int:
        return sum(w.search_time for w in self.per_worker)


class WorkerError(RuntimeError):
    def __init__(self, chunk_index: int, cause: BaseException):
        super().__init__(f"worker for pattern chunk {chunk_index} failed: {cause!r}")
        self.chunk_index = chunk_index


def _work(chunk: PatternSet, source, engine: EngineKind, chunk_size: int):
    t0 = time.perf_counter_ns()
    automaton = build(chunk, engine)
    t1 = time.perf_counter_ns()
    if chunk_size:
        if isinstance(source, (bytes, bytearray, memoryview)):
            matches = stream_search(automaton, io.BytesIO(source), chunk_size)
        else:
            with open(source, "rb") as fh:
                matches = stream_search(automaton, fh, chunk_size)
    else:
        matches = search(automaton, source)
    t2 = time.perf_counter_ns()
    return matches, WorkerStats(chunk.total_bytes, t1 - t0, t2 - t1, len(matches))


def merge_matches(parts: Sequence[Sequence[Match]]) -> list[Match]:
    """Concatenate per-chunk results and sort by ``(start, pattern_id)``.

    Parts must come from id-disjoint chunks; a repeated ``(pattern_id,
    start)`` pair means they did not and raises RuntimeError.
    """
    merged = sort_matches(m for part in parts for m in part)
    for prev, cur in zip(merged, merged[1:]):
        if prev.start == cur.start and prev.pattern_id == cur.pattern_id:
            raise RuntimeError(
                f"duplicate match for pattern {cur.pattern_id} at {cur.start}: "
                "partial results are not id-disjoint"
            )
    return merged


def _process_entry(conn, chunk, source, engine, chunk_size):
    try:
        conn.send((True, _work(chunk, source, engine, chunk_size)))
    except BaseException as exc:
        conn.send((False, exc))
    finally:
        conn.close()


def _run_processes(chunks, source, engine, chunk_size):
    # With fork the chunks and the input are inherited, not pickled.
    method = "fork" if "fork" in multiprocessing.get_all_start_methods() else "spawn"
    ctx = multiprocessing.get_context(method)
    running = []
    try:
        for chunk in chunks:
            recv, send = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_process_entry, args=(send, chunk, source, engine, chunk_size), daemon=True)
            proc.start()
            send.close()
            running.append((proc, recv))
        results = []
        for i, (proc, recv) in enumerate(running):
            try:
                ok, payload = recv.recv()
            except EOFError:
                proc.join()
                ok, payload = False, RuntimeError(f"worker process exited with code {proc.exitcode}")
            if not ok:
                raise WorkerError(i, payload) from payload
            results.append(payload)
        return results
    finally:
        for proc, recv in running:
            recv.close()
            if proc.is_alive():
                proc.terminate()
            proc.join()


def _run_threads(chunks, source, engine, chunk_size):
    with ThreadPoolExecutor(len(chunks), thread_name_prefix="acmatch-worker") as pool:
        futures = [pool.submit(_work, c, source, engine, chunk_size) for c in chunks]
        results = []
        for i, fut in enumerate(futures):
            try:
                results.append(fut.result())
            except Exception as exc:
                raise WorkerError(i, exc) from exc
        return results


def run_pattern_partitioned(ps: PatternSet, data, cfg: RunConfig = RunConfig()) -> MatchReport:
    """Match ``ps`` against ``data`` with one worker per pattern chunk.

    ``data`` is the input as bytes, or a path when ``cfg.chunk_size`` is
    set, in which case every worker opens its own reader on the file.
    """
    t0 = time.perf_counter_ns()
    chunks = partition(ps, cfg.threads)
    if not cfg.chunk_size and not isinstance(data, (bytes, bytearray, memoryview)):
        with open(data, "rb") as fh:
            data = fh.read()
    if len(chunks) == 1:
        try:
            results = [_work(chunks[0], data, cfg.engine, cfg.chunk_size)]
        except Exception as exc:
            raise WorkerError(0, exc) from exc
    elif cfg.backend == "process":
        results = _run_processes(chunks, data, cfg.engine, cfg.chunk_size)
    else:
        results = _run_threads(chunks, data, cfg.engine, cfg.chunk_size)
    matches = merge_matches([r[0] for r in results])
    stats = [r[1] for r in results]
    total = time.perf_counter_ns() - t0
    return MatchReport(
        matches=matches,
        per_worker=stats,
        build_wall=max(s.build_time for s in stats),
        search_wall=max(s.search_time for s in stats),
        total_wall=total,
        threads_used=len(chunks),
    )
