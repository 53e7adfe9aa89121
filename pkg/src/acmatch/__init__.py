"""Multi-pattern exact string matching with Aho-Corasick automata.

Two machines are provided over the same goto trie: the classic one with
failure links, scanned in a single pass, and a failure-less one that
restarts a trie walk at every input position.  Either can be run with the
dictionary split across parallel workers.

>>> from acmatch import PatternSet, build_trie, search_failureless
>>> ps = PatternSet.from_bytes([b"HE", b"HIS", b"SHE", b"HERS"])
>>> [(m.start, m.length) for m in search_failureless(build_trie(ps), b"USHERS")]
[(1, 3), (2, 2), (2, 4)]
"""

__version__ = "0.1.0"

from .automaton import (
    Automaton,
    EngineKind,
    add_failure_links,
    build,
    build_trie,
    dump,
    step_failureless,
    step_with_failure,
)
from .engine import (
    Match,
    StreamReadError,
    match_at,
    naive_oracle,
    search,
    search_failureless,
    search_with_failure,
    stream_search,
)
from .estimator import AhoCorasickMatcher
from .parallel import MatchReport, RunConfig, WorkerError, merge_matches, run_pattern_partitioned
from .patterns import (
    EmptyPatternSetError,
    Pattern,
    PatternSet,
    dump_patterns,
    generate_synthetic,
    load_patterns,
    partition,
)

__all__ = [
    "AhoCorasickMatcher",
    "Automaton",
    "EmptyPatternSetError",
    "EngineKind",
    "Match",
    "MatchReport",
    "Pattern",
    "PatternSet",
    "RunConfig",
    "StreamReadError",
    "WorkerError",
    "add_failure_links",
    "build",
    "build_trie",
    "dump",
    "dump_patterns",
    "generate_synthetic",
    "load_patterns",
    "match_at",
    "merge_matches",
    "naive_oracle",
    "partition",
    "run_pattern_partitioned",
    "search",
    "search_failureless",
    "search_with_failure",
    "step_failureless",
    "step_with_failure",
    "stream_search",
]
