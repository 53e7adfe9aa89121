"""Sequential search over whole inputs and byte streams.

All searches return a list of :class:`Match` sorted by ``(start,
pattern_id)``; that list is the normalized result form shared by every
engine, so outputs compare with ``==``.
"""

from __future__ import annotations

from operator import itemgetter
from typing import BinaryIO, Iterable, NamedTuple

from .automaton import Automaton, EngineKind
from .patterns import PatternSet

__all__ = [
    "DEFAULT_CHUNK_SIZE",
    "Match",
    "StreamReadError",
    "sort_matches",
    "match_at",
    "search",
    "search_failureless",
    "search_with_failure",
    "stream_search",
    "naive_oracle",
    "check_matches",
]

DEFAULT_CHUNK_SIZE = 64 * 1024


class Match(NamedTuple):
    pattern_id: int
    start: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length


# (start, pattern_id), the canonical match order.
_key = itemgetter(1, 0)


def sort_matches(matches: Iterable[Match]) -> list[Match]:
    return sorted(matches, key=_key)


class StreamReadError(OSError):
    """A read from the input stream failed after ``offset`` bytes."""

    def __init__(self, offset: int, cause: BaseException):
        super().__init__(f"stream read failed at byte offset {offset}: {cause}")
        self.offset = offset
        self.__cause__ = cause


def _require(a: Automaton, variant: EngineKind):
    if a.variant is not variant:
        raise ValueError(f"expected a {variant.value} automaton, got {a.variant.value}")


def match_at(a: Automaton, data: bytes, start: int) -> list[Match]:
    """Matches anchored at ``start``: walk the trie until an edge is missing."""
    if not 0 <= start <= len(data):
        raise ValueError(f"start {start} outside input of length {len(data)}")
    goto, out, lens = a.goto, a.out, a.pattern_lens
    found = []
    s = 0
    for i in range(start, len(data)):
        s = goto[s].get(data[i])
        if s is None:
            break
        for pid in out[s]:
            found.append(Match(pid, start, lens[pid]))
    found.sort(key=_key)
    return found


def _scan_starts(a: Automaton, data: bytes, lo: int, hi: int, base: int, found: list):
    # Start positions lo..hi-1 of data, reported at offset base + start.
    goto, out, lens = a.goto, a.out, a.pattern_lens
    root = goto[0]
    n = len(data)
    for start in range(lo, hi):
        s = root.get(data[start])
        i = start + 1
        while s is not None:
            ids = out[s]
            if ids:
                for pid in ids:
                    found.append(Match(pid, base + start, lens[pid]))
            if i == n:
                break
            s = goto[s].get(data[i])
            i += 1


def search_failureless(a: Automaton, data: bytes) -> list[Match]:
    """Run a fresh trie walk from every start position of ``data``."""
    _require(a, EngineKind.FAILURE_LESS)
    found: list[Match] = []
    _scan_starts(a, data, 0, len(data), 0, found)
    # Starts are produced in order; only ids within one start need sorting.
    found.sort(key=_key)
    return found


def _scan_with_failure(a: Automaton, data: bytes, s: int, base: int, found: list) -> int:
    goto, fail, out, lens = a.goto, a.fail, a.out, a.pattern_lens
    end = base + 1
    for b in data:
        t = goto[s].get(b)
        while t is None:
            if s == 0:
                t = 0
                break
            s = fail[s]
            t = goto[s].get(b)
        s = t
        ids = out[s]
        if ids:
            for pid in ids:
                n = lens[pid]
                found.append(Match(pid, end - n, n))
        end += 1
    return s


def search_with_failure(a: Automaton, data: bytes) -> list[Match]:
    """Single left-to-right pass following failure links on mismatch."""
    _require(a, EngineKind.WITH_FAILURE)
    found: list[Match] = []
    _scan_with_failure(a, data, 0, 0, found)
    found.sort(key=_key)
    return found


def search(a: Automaton, data: bytes) -> list[Match]:
    if a.variant is EngineKind.WITH_FAILURE:
        return search_with_failure(a, data)
    return search_failureless(a, data)


def _read(reader: BinaryIO, size: int, offset: int) -> bytes:
    try:
        return reader.read(size)
    except OSError as exc:
        raise StreamReadError(offset, exc) from exc


def stream_search(a: Automaton, reader: BinaryIO, chunk_size: int = DEFAULT_CHUNK_SIZE) -> list[Match]:
    """Search a binary stream read ``chunk_size`` bytes at a time.

    The with-failure machine carries its state across reads.  The
    failure-less machine keeps the last ``max_len - 1`` bytes of each
    buffer unscanned and prepends them to the next read, so every start
    position is scanned exactly once with full lookahead.  Offsets in the
    result are global.
    """
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    found: list[Match] = []
    offset = 0
    if a.variant is EngineKind.WITH_FAILURE:
        s = 0
        while True:
            chunk = _read(reader, chunk_size, offset)
            if not chunk:
                break
            s = _scan_with_failure(a, chunk, s, offset, found)
            offset += len(chunk)
    else:
        keep = a.max_len - 1
        tail = b""
        base = 0  # global offset of tail[0]
        while True:
            chunk = _read(reader, chunk_size, offset)
            if not chunk:
                _scan_starts(a, tail, 0, len(tail), base, found)
                break
            offset += len(chunk)
            buf = tail + chunk
            ready = len(buf) - keep
            if ready > 0:
                _scan_starts(a, buf, 0, ready, base, found)
                tail = buf[ready:]
                base += ready
            else:
                tail = buf
    found.sort(key=_key)
    return found


def naive_oracle(ps: PatternSet, data: bytes) -> list[Match]:
    """Reference result by direct comparison of every pattern at every offset."""
    found = []
    for p in ps:
        pat = p.bytes
        n = len(pat)
        i = data.find(pat)
        while i != -1:
            found.append(Match(p.id, i, n))
            i = data.find(pat, i + 1)
    found.sort(key=_key)
    return found


def check_matches(ps: PatternSet, data: bytes, matches: Iterable[Match]):
    """Raise AssertionError unless every match is a real, unique occurrence."""
    by_id = ps.by_id()
    seen = set()
    for m in matches:
        pat = by_id[m.pattern_id]
        assert m.length == len(pat), m
        assert data[m.start : m.end] == pat, m
        assert (m.pattern_id, m.start) not in seen, m
        seen.add((m.pattern_id, m.start))
