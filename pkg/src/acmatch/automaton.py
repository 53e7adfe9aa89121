"""Goto/output tries, with or without failure links.

States are dense integers numbered in creation order, with 0 the root.
Each state owns a ``dict`` row mapping a byte value to the child state,
which keeps lookups O(1) while storing only the edges that exist; a dense
256-wide row per state would cost ~2 KB per state on multi-megabyte
dictionaries.
"""

from __future__ import annotations

import enum
from collections import deque
from itertools import repeat

from .patterns import PatternSet

__all__ = [
    "EngineKind",
    "Automaton",
    "build_trie",
    "add_failure_links",
    "build",
    "step_failureless",
    "step_with_failure",
    "dump",
]


class EngineKind(str, enum.Enum):
    FAILURE_LESS = "failure-less"
    WITH_FAILURE = "with-failure"

    def __str__(self):
        return self.value


class Automaton:
    """A built matching machine; treat every attribute as read-only.

    Attributes
    ----------
    variant : EngineKind
    goto : list of dict
        ``goto[s][b]`` is the child of ``s`` on byte ``b``.
    fail : list of int or None
        Failure target per state, only for the with-failure variant.
        ``fail[0]`` is stored as 0 but has no meaning.
    out : list of tuple
        Pattern ids recognized on entering each state.
    depth : list of int
    pattern_lens : dict
        Pattern id to length in bytes.
    """

    __slots__ = ("variant", "goto", "fail", "out", "depth", "pattern_lens", "max_len")

    def __init__(self, variant, goto, fail, out, depth, pattern_lens):
        self.variant = EngineKind(variant)
        self.goto = goto
        self.fail = fail
        self.out = out
        self.depth = depth
        self.pattern_lens = pattern_lens
        self.max_len = max(pattern_lens.values())

    @property
    def state_count(self) -> int:
        return len(self.goto)

    def __repr__(self):
        return (
            f"Automaton(variant={self.variant.value!r}, states={self.state_count}, "
            f"patterns={len(self.pattern_lens)})"
        )

    def fail_of(self, s: int) -> int | None:
        if self.fail is None or s == 0:
            return None
        return self.fail[s]

    def walk(self, path: bytes) -> int | None:
        """State reached by following ``path`` from the root, or None."""
        s = 0
        for b in path:
            s = self.goto[s].get(b)
            if s is None:
                return None
        return s

    def paths(self) -> list[bytes]:
        """Root-to-state label of every state, indexed by state id."""
        labels = [b""] * self.state_count
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for b, t in self.goto[s].items():
                labels[t] = labels[s] + bytes((b,))
                queue.append(t)
        return labels


def build_trie(ps: PatternSet) -> Automaton:
    """Insert every pattern of ``ps`` (in id order) into a bare trie."""
    goto: list[dict[int, int]] = [{}]
    depth = [0]
    out: list[tuple[int, ...]] = [()]
    lens = {}
    for p in sorted(ps.patterns, key=lambda p: p.id):
        data = p.bytes
        n = len(data)
        s = i = 0
        while i < n:
            t = goto[s].get(data[i])
            if t is None:
                break
            s = t
            i += 1
        if i < n:
            # The rest of the pattern is a fresh single-child chain.
            first = len(goto)
            goto[s][data[i]] = first
            goto.extend([{b: t} for t, b in enumerate(data[i + 1 :], first + 1)])
            goto.append({})
            d = depth[s]
            depth.extend(range(d + 1, d + 1 + n - i))
            out.extend(repeat((), n - i))
            s = first + n - i - 1
        out[s] += (p.id,)
        lens[p.id] = n
    return Automaton(EngineKind.FAILURE_LESS, goto, None, out, depth, lens)


def add_failure_links(trie: Automaton) -> Automaton:
    """Return the with-failure machine over the same goto tree.

    Failure targets are filled breadth first and each state's outputs are
    extended with those of its failure target, so outputs for suffix
    patterns are available without walking the chain at search time.
    """
    if trie.variant is not EngineKind.FAILURE_LESS:
        raise ValueError("input automaton already has failure links")
    goto = trie.goto
    fail = [0] * len(goto)
    out = list(trie.out)
    queue = deque(goto[0].values())
    while queue:
        s = queue.popleft()
        for b, child in goto[s].items():
            queue.append(child)
            if s == 0:
                continue
            f = fail[s]
            while f and b not in goto[f]:
                f = fail[f]
            target = goto[f].get(b, 0)
            fail[child] = target
            if out[target]:
                out[child] = out[child] + out[target]
    return Automaton(EngineKind.WITH_FAILURE, goto, fail, out, trie.depth, trie.pattern_lens)


def build(ps: PatternSet, engine: EngineKind | str) -> Automaton:
    trie = build_trie(ps)
    if EngineKind(engine) is EngineKind.WITH_FAILURE:
        return add_failure_links(trie)
    return trie


def step_failureless(a: Automaton, s: int, b: int) -> int | None:
    return a.goto[s].get(b)


def step_with_failure(a: Automaton, s: int, b: int) -> int:
    """Next state on byte ``b``; the root loops to itself on a missing edge."""
    if a.fail is None:
        raise ValueError("automaton has no failure links")
    goto, fail = a.goto, a.fail
    while True:
        t = goto[s].get(b)
        if t is not None:
            return t
        if s == 0:
            return 0
        s = fail[s]


def dump(a: Automaton) -> str:
    """Stable text form: a header, then one line per state and per edge.

    ::

        automaton variant=with-failure states=3 patterns=1
        state 1 depth=1 fail=0 out=
        edge 1 0x42 2
    """
    lines = [
        f"automaton variant={a.variant.value} states={a.state_count} "
        f"patterns={len(a.pattern_lens)}"
    ]
    for s in range(a.state_count):
        f = a.fail_of(s)
        out = ",".join(str(i) for i in sorted(a.out[s]))
        lines.append(f"state {s} depth={a.depth[s]} fail={'-' if f is None else f} out={out}")
        for b in sorted(a.goto[s]):
            lines.append(f"edge {s} 0x{b:02x} {a.goto[s][b]}")
    return "\n".join(lines) + "\n"
