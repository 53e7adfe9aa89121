"""Input checks shared by the estimator and the command line."""

from __future__ import annotations

from numbers import Integral

from .automaton import EngineKind
from .patterns import Pattern, PatternSet


def as_bytes(value, encoding: str = "utf-8", what: str = "input") -> bytes:
    if isinstance(value, str):
        return value.encode(encoding)
    if isinstance(value, (bytes, bytearray, memoryview)):
        return bytes(value)
    raise TypeError(f"{what} must be str or bytes, got {type(value).__name__}")


def check_patterns(patterns, encoding: str = "utf-8") -> PatternSet:
    """Coerce ``patterns`` to a dense PatternSet, rejecting repeats."""
    if isinstance(patterns, PatternSet):
        return patterns
    if patterns is None or isinstance(patterns, (str, bytes, bytearray)):
        raise TypeError("patterns must be an iterable of str or bytes, or a PatternSet")
    items = [as_bytes(p, encoding, "pattern") for p in patterns]
    if not items:
        raise ValueError("empty pattern set")
    seen = {}
    for i, b in enumerate(items):
        if b in seen:
            raise ValueError(f"pattern {i} repeats pattern {seen[b]}: {b!r}")
        seen[b] = i
    return PatternSet(tuple(Pattern(i, b) for i, b in enumerate(items)))


def check_engine(engine) -> EngineKind:
    try:
        return EngineKind(engine)
    except ValueError:
        choices = ", ".join(e.value for e in EngineKind)
        raise ValueError(f"engine must be one of {choices}; got {engine!r}") from None


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
