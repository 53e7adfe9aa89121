"""Shared test utilities."""

import random

from acmatch import PatternSet

SET_AB = [b"AB", b"ABG", b"BEDE", b"EF"]
SET_HE = [b"HE", b"HIS", b"SHE", b"HERS"]

# Filled by the acceptance module, printed in the terminal summary.
ACCEPTANCE_LINES = []


def random_case(rng: random.Random, alphabet: bytes, max_patterns=200, max_len=16, max_input=4096):
    """A random pattern set plus an input salted with some of its patterns."""
    n = rng.randint(1, max_patterns)
    seen = {}
    for _ in range(n):
        k = rng.randint(1, max_len)
        seen.setdefault(bytes(rng.choices(alphabet, k=k)), None)
    ps = PatternSet.from_bytes(seen)
    size = rng.randint(0, max_input)
    buf = bytearray(rng.choices(alphabet, k=size))
    for _ in range(rng.randint(0, 20)):
        p = ps.patterns[rng.randrange(len(ps))].bytes
        if len(p) <= len(buf):
            at = rng.randrange(len(buf) - len(p) + 1)
            buf[at : at + len(p)] = p
    return ps, bytes(buf)
