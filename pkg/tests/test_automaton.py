import pytest
from hypothesis import given
from hypothesis import strategies as st

from acmatch.automaton import (
    EngineKind,
    add_failure_links,
    build,
    build_trie,
    dump,
    step_failureless,
    step_with_failure,
)
from acmatch.patterns import PatternSet

# Small sets over small alphabets, so suffix/prefix overlaps are common.
small_sets = st.sampled_from([b"ab", b"abcd", bytes(b for b in range(256) if b != 0x0A)]).flatmap(
    lambda alpha: st.lists(
        st.binary(min_size=1, max_size=8).map(lambda b: bytes(alpha[x % len(alpha)] for x in b)),
        min_size=1,
        max_size=12,
        unique=True,
    )
).filter(lambda items: sum(map(len, items)) <= 64).map(PatternSet.from_bytes)


def prefixes(ps):
    return {p.bytes[:i] for p in ps for i in range(len(p.bytes) + 1)}


def longest_suffix_in(path, universe, proper=True):
    for i in range(1 if proper else 0, len(path) + 1):
        if path[i:] in universe:
            return path[i:]
    raise AssertionError("the empty string is always present")


class TestBuildTrie:
    def test_ab_set_numbering(self, set_ab):
        a = build_trie(set_ab)
        assert a.state_count == 10
        # States named in the worked examples: 1 "A", 2 "AB", 4 "B", 5 "BE", 7 "BEDE".
        assert [a.walk(p) for p in (b"A", b"AB", b"B", b"BE", b"BEDE")] == [1, 2, 4, 5, 7]
        ab = a.walk(b"AB")
        assert a.out[ab] == (0,)
        assert list(a.goto[ab]) == [ord("G")]
        assert a.fail is None

    def test_he_set_numbering(self, set_he):
        a = build_trie(set_he)
        assert a.state_count == 10
        # 2 "HE", 5 "S", 7 "SHE", 9 "HERS".
        assert [a.walk(p) for p in (b"HE", b"S", b"SHE", b"HERS")] == [2, 5, 7, 9]
        assert a.out[a.walk(b"SHE")] == (2,)

    def test_single_pattern(self):
        a = build_trie(PatternSet.from_bytes([b"A"]))
        assert a.state_count == 2
        assert a.out[1] == (0,)

    def test_full_byte_range(self):
        ps = PatternSet.from_bytes([bytes([0, 255, 13]), bytes([255])])
        a = build_trie(ps)
        assert a.out[a.walk(bytes([0, 255, 13]))] == (0,)
        assert a.out[a.walk(bytes([255]))] == (1,)

    def test_non_dense_ids_keep_their_numbers(self):
        ps = PatternSet.from_bytes([b"x", b"yy", b"zzz"])
        chunk = PatternSet(ps.patterns[1:])
        a = build_trie(chunk)
        assert a.pattern_lens == {1: 2, 2: 3}
        assert a.out[a.walk(b"zzz")] == (2,)

    @given(small_sets)
    def test_structure(self, ps):
        a = build_trie(ps)
        assert a.state_count <= 1 + ps.total_bytes
        assert a.state_count == len(prefixes(ps))
        incoming = [0] * a.state_count
        for s, row in enumerate(a.goto):
            for t in row.values():
                incoming[t] += 1
                assert a.depth[t] == a.depth[s] + 1
        assert incoming[0] == 0 and all(c == 1 for c in incoming[1:])
        paths = a.paths()
        for s, path in enumerate(paths):
            assert set(a.out[s]) == {p.id for p in ps if p.bytes == path}


class TestFailureLinks:
    def test_ab_set_failure_links(self, set_ab):
        a = add_failure_links(build_trie(set_ab))
        assert a.fail_of(a.walk(b"AB")) == a.walk(b"B") == 4
        assert a.fail_of(a.walk(b"BEDE")) == a.walk(b"E")
        assert a.fail_of(a.walk(b"BE")) == a.walk(b"E")
        assert a.fail_of(a.walk(b"ABG")) == 0
        assert a.fail_of(0) is None

    def test_suffix_outputs_are_merged(self):
        a = add_failure_links(build_trie(PatternSet.from_bytes([b"HE", b"SHE"])))
        assert set(a.out[a.walk(b"SHE")]) == {0, 1}

    def test_distinct_bytes_fail_to_root(self):
        a = add_failure_links(build_trie(PatternSet.from_bytes([b"WXYZ"])))
        assert all(a.fail_of(s) == 0 for s in range(1, a.state_count))

    def test_rejects_already_linked(self, set_ab):
        with pytest.raises(ValueError):
            add_failure_links(build(set_ab, "with-failure"))

    @given(small_sets)
    def test_against_brute_force(self, ps):
        trie = build_trie(ps)
        before = dump(trie)
        a = add_failure_links(trie)
        assert dump(trie) == before
        assert a.goto is trie.goto and a.depth is trie.depth
        universe = prefixes(ps)
        paths = a.paths()
        index = {p: s for s, p in enumerate(paths)}
        for s in range(1, a.state_count):
            path = paths[s]
            assert a.fail[s] == index[longest_suffix_in(path, universe)]
            assert a.depth[a.fail[s]] < a.depth[s]
            assert set(a.out[s]) == {p.id for p in ps if path.endswith(p.bytes)}

    @given(small_sets)
    def test_deterministic(self, ps):
        assert dump(build(ps, "with-failure")) == dump(build(ps, "with-failure"))


class TestSteps:
    def test_failureless(self, set_ab, set_he):
        a = build_trie(set_ab)
        assert step_failureless(a, a.walk(b"AB"), ord("E")) is None
        for p in set_ab:
            assert step_failureless(a, 0, p.bytes[0]) == a.walk(p.bytes[:1])
        assert step_failureless(build_trie(set_he), 0, ord("U")) is None

    def test_with_failure(self, set_ab):
        a = build(set_ab, EngineKind.WITH_FAILURE)
        assert step_with_failure(a, a.walk(b"AB"), ord("E")) == a.walk(b"BE")
        assert step_with_failure(a, 0, ord("Z")) == 0
        assert step_with_failure(a, a.walk(b"BEDE"), ord("F")) == a.walk(b"EF")

    def test_with_failure_needs_links(self, set_ab):
        with pytest.raises(ValueError):
            step_with_failure(build_trie(set_ab), 0, 65)

    @given(small_sets, st.binary(max_size=40))
    def test_with_failure_tracks_longest_suffix(self, ps, text):
        a = build(ps, "with-failure")
        universe = prefixes(ps)
        paths = a.paths()
        s = 0
        for i, b in enumerate(text):
            s = step_with_failure(a, s, b)
            assert paths[s] == longest_suffix_in(text[: i + 1], universe, proper=False)


SET_AB_DUMP = """\
automaton variant=with-failure states=10 patterns=4
state 0 depth=0 fail=- out=
edge 0 0x41 1
edge 0 0x42 4
edge 0 0x45 8
state 1 depth=1 fail=0 out=
edge 1 0x42 2
state 2 depth=2 fail=4 out=0
edge 2 0x47 3
state 3 depth=3 fail=0 out=1
state 4 depth=1 fail=0 out=
edge 4 0x45 5
state 5 depth=2 fail=8 out=
edge 5 0x44 6
state 6 depth=3 fail=0 out=
edge 6 0x45 7
state 7 depth=4 fail=8 out=2
state 8 depth=1 fail=0 out=
edge 8 0x46 9
state 9 depth=2 fail=0 out=3
"""


def test_dump_golden(set_ab):
    assert dump(build(set_ab, "with-failure")) == SET_AB_DUMP
