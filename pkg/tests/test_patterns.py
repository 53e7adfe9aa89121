import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acmatch.patterns import (
    EmptyPatternSetError,
    Pattern,
    PatternSet,
    dump_patterns,
    generate_synthetic,
    load_patterns,
    partition,
)


def greedy_reference(ps, k):
    """Plain-loop restatement of the byte-balanced assignment rule."""
    k = min(k, len(ps))
    loads = [0] * k
    members = [[] for _ in range(k)]
    for p in sorted(ps.patterns, key=lambda p: (-len(p.bytes), p.bytes)):
        i = min(range(k), key=lambda j: (loads[j], j))
        loads[i] += len(p.bytes)
        members[i].append(p.bytes)
    return [sorted(m) for m in members]


pattern_sets = st.lists(
    st.binary(min_size=1, max_size=12).filter(lambda b: b"\n" not in b),
    min_size=1,
    max_size=60,
    unique=True,
).map(PatternSet.from_bytes)


class TestLoad:
    def test_ab_set(self):
        ps = load_patterns(b"AB\nABG\nBEDE\nEF\n")
        assert [p.bytes for p in ps] == [b"AB", b"ABG", b"BEDE", b"EF"]
        assert ps.ids == [0, 1, 2, 3]
        assert ps.total_bytes == 11
        assert ps.max_len == 4
        assert ps.duplicates == 0

    def test_duplicates_and_blank_lines(self):
        ps = load_patterns(io.BytesIO(b"X\n\nX\n"))
        assert [p.bytes for p in ps] == [b"X"]
        assert ps.duplicates == 1

    def test_no_trailing_newline(self):
        ps = load_patterns(b"foo\nbar")
        assert [p.bytes for p in ps] == [b"foo", b"bar"]

    def test_first_occurrence_order(self):
        ps = load_patterns(b"b\na\nb\nc\na\n")
        assert [p.bytes for p in ps] == [b"b", b"a", b"c"]
        assert ps.duplicates == 2

    @pytest.mark.parametrize("data", [b"", b"\n\n\n"])
    def test_empty(self, data):
        with pytest.raises(EmptyPatternSetError, match="empty pattern set"):
            load_patterns(data)

    def test_unreadable_source(self):
        class Broken(io.RawIOBase):
            def read(self, *args):
                raise OSError("device gone")

        with pytest.raises(OSError, match="device gone"):
            load_patterns(Broken())

    def test_carriage_returns_are_pattern_bytes(self):
        ps = load_patterns(b"ab\r\n")
        assert ps.patterns[0].bytes == b"ab\r"

    @given(pattern_sets)
    def test_dump_then_load_is_identity(self, ps):
        again = load_patterns(dump_patterns(ps))
        assert again == ps
        assert again.duplicates == 0


class TestPatternSet:
    def test_rejects_empty_pattern(self):
        with pytest.raises(ValueError):
            Pattern(0, b"")

    def test_rejects_lf(self):
        with pytest.raises(ValueError):
            Pattern(0, b"a\nb")

    def test_rejects_repeated_bytes(self):
        with pytest.raises(ValueError):
            PatternSet((Pattern(0, b"a"), Pattern(1, b"a")))

    def test_rejects_repeated_ids(self):
        with pytest.raises(ValueError):
            PatternSet((Pattern(0, b"a"), Pattern(0, b"b")))


class TestPartition:
    def test_ab_set_two_ways(self, set_ab):
        chunks = partition(set_ab, 2)
        assert [sorted(p.bytes for p in c) for c in chunks] == greedy_reference(set_ab, 2)
        assert {p.bytes for p in chunks[0]} == {b"BEDE", b"EF"}
        assert {p.bytes for p in chunks[1]} == {b"ABG", b"AB"}
        assert [c.total_bytes for c in chunks] == [6, 5]

    def test_ids_preserved(self, set_ab):
        chunks = partition(set_ab, 2)
        assert chunks[0].ids == [2, 3]
        assert chunks[1].ids == [0, 1]

    def test_single_chunk_is_identity(self, set_he):
        assert partition(set_he, 1) == [set_he]

    def test_clamps_to_pattern_count(self):
        ps = PatternSet.from_bytes([b"A", b"B"])
        chunks = partition(ps, 5)
        assert len(chunks) == 2
        assert all(len(c) == 1 for c in chunks)

    def test_zero_chunks(self, set_ab):
        with pytest.raises(ValueError):
            partition(set_ab, 0)

    @given(pattern_sets, st.integers(1, 12))
    def test_properties(self, ps, k):
        chunks = partition(ps, k)
        assert len(chunks) == min(k, len(ps))
        assert all(len(c) > 0 for c in chunks)
        flat = sorted(i for c in chunks for i in c.ids)
        assert flat == ps.ids
        assert sum(c.total_bytes for c in chunks) == ps.total_bytes
        loads = [c.total_bytes for c in chunks]
        assert max(loads) - min(loads) <= ps.max_len
        assert [sorted(p.bytes for p in c) for c in chunks] == greedy_reference(ps, k)
        assert partition(ps, k) == chunks


class TestSynthetic:
    def test_deterministic(self):
        a = generate_synthetic(4, 2, 4, b"ACGT", seed=1)
        b = generate_synthetic(4, 2, 4, b"ACGT", seed=1)
        assert dump_patterns(a) == dump_patterns(b)
        assert len(a) == 4

    def test_seed_changes_output(self):
        a = generate_synthetic(50, 5, 9, b"ACGT", seed=1)
        b = generate_synthetic(50, 5, 9, b"ACGT", seed=2)
        assert a != b

    def test_bounds(self):
        ps = generate_synthetic(300, 3, 7, b"xyz", seed=3)
        assert ps.is_dense
        assert all(3 <= len(p) <= 7 for p in ps)
        assert set(b"".join(p.bytes for p in ps)) <= set(b"xyz")

    def test_exhaustion(self):
        with pytest.raises(ValueError):
            generate_synthetic(2, 1, 1, b"A", seed=0)

    def test_exact_capacity(self):
        ps = generate_synthetic(4, 1, 1, b"ACGT", seed=0)
        assert sorted(p.bytes for p in ps) == [b"A", b"C", b"G", b"T"]

    @pytest.mark.parametrize(
        "kwargs",
        [dict(count=0), dict(len_min=0), dict(len_min=5, len_max=4), dict(alphabet=b""), dict(alphabet=b"a\n")],
    )
    def test_bad_arguments(self, kwargs):
        args = dict(count=3, len_min=1, len_max=3, alphabet=b"ab", seed=0) | kwargs
        with pytest.raises(ValueError):
            generate_synthetic(**args)

    def test_half_million_is_about_ten_megabytes(self):
        ps = generate_synthetic(500_000, 10, 30, b"ACGT", seed=7)
        assert len(ps) == 500_000
        assert 9_500_000 <= ps.total_bytes <= 10_500_000
