"""Pattern sets: loading, deduplication, partitioning and synthesis.

A pattern file is plain bytes with one pattern per LF-terminated line.
Empty lines are skipped and repeated lines keep their first occurrence.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Sequence

import numpy as np

__all__ = [
    "EmptyPatternSetError",
    "Pattern",
    "PatternSet",
    "load_patterns",
    "read_pattern_file",
    "dump_patterns",
    "partition",
    "generate_synthetic",
    "random_text",
    "embed",
]

DNA = b"ACGT"


class EmptyPatternSetError(ValueError):
    def __init__(self):
        super().__init__("empty pattern set")


@dataclass(frozen=True)
class Pattern:
    id: int
    bytes: bytes

    def __post_init__(self):
        if not self.bytes:
            raise ValueError(f"pattern {self.id} is empty")
        if b"\n" in self.bytes:
            raise ValueError(f"pattern {self.id} contains a LF byte")

    def __len__(self):
        return len(self.bytes)


@dataclass(frozen=True)
class PatternSet:
    """An immutable collection of distinct byte patterns.

    Sets produced by :func:`load_patterns` or :func:`generate_synthetic`
    have dense ids ``0..n-1``.  Chunks produced by :func:`partition` keep
    the ids of the set they were cut from, so their ids need not be dense.

    ``duplicates`` counts the repeated lines dropped while loading.
    """

    patterns: tuple[Pattern, ...]
    duplicates: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if not self.patterns:
            raise EmptyPatternSetError()
        ids = {p.id for p in self.patterns}
        if len(ids) != len(self.patterns):
            raise ValueError("pattern ids are not unique")
        if len({p.bytes for p in self.patterns}) != len(self.patterns):
            raise ValueError("pattern bytes are not unique")

    @classmethod
    def from_bytes(cls, items: Iterable[bytes]) -> "PatternSet":
        """Build a dense set from distinct byte strings, in order."""
        return cls(tuple(Pattern(i, b) for i, b in enumerate(items)))

    @classmethod
    def _trusted(cls, patterns) -> "PatternSet":
        # Subsets of a validated set need no re-check.
        obj = object.__new__(cls)
        object.__setattr__(obj, "patterns", tuple(patterns))
        object.__setattr__(obj, "duplicates", 0)
        return obj

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    @property
    def total_bytes(self) -> int:
        return sum(len(p.bytes) for p in self.patterns)

    @property
    def max_len(self) -> int:
        return max(len(p.bytes) for p in self.patterns)

    @property
    def ids(self) -> list[int]:
        return [p.id for p in self.patterns]

    @property
    def is_dense(self) -> bool:
        return self.ids == list(range(len(self.patterns)))

    def by_id(self) -> dict[int, bytes]:
        return {p.id: p.bytes for p in self.patterns}


def load_patterns(source: BinaryIO | bytes) -> PatternSet:
    """Read a newline-delimited pattern file into a dense :class:`PatternSet`.

    ``source`` is a binary stream or a bytes object.  A missing trailing LF
    on the last line is accepted.  Raises :class:`EmptyPatternSetError`
    when no non-empty line remains.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    seen: dict[bytes, None] = {}
    duplicates = 0
    for line in bytes(data).split(b"\n"):
        if not line:
            continue
        if line in seen:
            duplicates += 1
        else:
            seen[line] = None
    if not seen:
        raise EmptyPatternSetError()
    return PatternSet(tuple(Pattern(i, b) for i, b in enumerate(seen)), duplicates)


def read_pattern_file(path) -> PatternSet:
    with open(path, "rb") as fh:
        return load_patterns(fh)


def dump_patterns(ps: PatternSet, sink: BinaryIO | None = None) -> bytes:
    """Serialize ``ps`` one pattern per line; also written to ``sink`` if given."""
    buf = b"".join(p.bytes + b"\n" for p in ps)
    if sink is not None:
        sink.write(buf)
    return buf


def partition(ps: PatternSet, k: int) -> list[PatternSet]:
    """Split ``ps`` into ``min(k, len(ps))`` byte-balanced chunks.

    Patterns are taken longest first (ties by bytes) and each goes to the
    chunk holding the fewest bytes so far, lowest index on ties.  Chunks
    keep original ids and list their patterns in id order.
    """
    if k < 1:
        raise ValueError(f"chunk count must be >= 1, got {k}")
    k = min(k, len(ps))
    if k == 1:
        return [ps]
    pats = ps.patterns
    raw = [p.bytes for p in pats]
    lens = np.fromiter(map(len, raw), dtype=np.int64, count=len(raw))
    order = np.lexsort((np.array(raw, dtype=bytes), -lens))
    heap = [(0, i) for i in range(k)]
    members: list[list[int]] = [[] for _ in range(k)]
    for j in order.tolist():
        load, i = heap[0]
        members[i].append(j)
        heapq.heapreplace(heap, (load + len(raw[j]), i))
    return [PatternSet._trusted(sorted((pats[j] for j in m), key=_by_id)) for m in members]


def _by_id(p: Pattern):
    return p.id


def _capacity(alphabet_size: int, len_min: int, len_max: int, limit: int) -> int:
    total = 0
    for n in range(len_min, len_max + 1):
        total += alphabet_size**n
        if total >= limit:
            break
    return total


def generate_synthetic(
    count: int,
    len_min: int = 10,
    len_max: int = 30,
    alphabet: bytes | Sequence[int] = DNA,
    seed: int = 0,
) -> PatternSet:
    """Draw ``count`` distinct random patterns, deterministically per seed.

    Lengths are uniform on ``[len_min, len_max]`` and bytes uniform over
    ``alphabet``.  The defaults give about 20 bytes per pattern, so
    500 000 patterns come to roughly 10 MB.
    """
    alphabet = bytes(sorted(set(bytes(alphabet))))
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 1 <= len_min <= len_max:
        raise ValueError(f"need 1 <= len_min <= len_max, got {len_min}..{len_max}")
    if not alphabet:
        raise ValueError("alphabet is empty")
    if 0x0A in alphabet:
        raise ValueError("alphabet must not contain LF")
    if _capacity(len(alphabet), len_min, len_max, count) < count:
        raise ValueError(
            f"alphabet of {len(alphabet)} symbols cannot produce {count} unique "
            f"patterns of length {len_min}..{len_max}"
        )

    rng = random.Random(seed)
    symbols = list(alphabet)
    seen: dict[bytes, None] = {}
    budget = 10 * count + 1000
    while len(seen) < count:
        if budget == 0:
            raise ValueError(f"gave up after too many duplicate draws ({len(seen)}/{count})")
        budget -= 1
        n = rng.randint(len_min, len_max)
        seen.setdefault(bytes(rng.choices(symbols, k=n)), None)
    return PatternSet.from_bytes(seen)


def random_text(size: int, alphabet: bytes = DNA, seed: int = 0) -> bytes:
    """Uniform random bytes over ``alphabet``; used for synthetic inputs."""
    rng = random.Random(seed)
    return bytes(rng.choices(list(alphabet), k=size))


def embed(text: bytes, ps: PatternSet, count: int, seed: int = 0) -> bytes:
    """Overwrite ``count`` random positions of ``text`` with random patterns."""
    rng = random.Random(seed)
    buf = bytearray(text)
    pool = ps.patterns
    for _ in range(count):
        p = pool[rng.randrange(len(pool))].bytes
        if len(p) > len(buf):
            continue
        at = rng.randrange(len(buf) - len(p) + 1)
        buf[at : at + len(p)] = p
    return bytes(buf)
