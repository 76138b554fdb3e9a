import random

import pytest
from hypothesis import given, strategies as st

from seqlat.alphabet import ITEMSET, AlphabetSchema, FieldSpec
from seqlat.errors import ConfigError, InputError
from seqlat.sequence import (
    EMPTY,
    TOP,
    Pattern,
    is_subsequence_contiguous,
    is_subsequence_general,
    make_pattern,
    maximal_antichain,
    pattern_leq,
    pattern_meet,
    pattern_of,
    run_length_decode,
    run_length_encode,
    sequence_meet,
    split_at_bottom,
)

import oracles
from worked import E, ITEMS, P1, P2, P3, S, SCHEMA, SS, pat, ss

UNIVERSE = oracles.universe(SCHEMA, ITEMS)
BOTTOM = SCHEMA.general


# -- worked meets ------------------------------------------------------------

def test_p2_meet_p3():
    assert pattern_meet(SCHEMA, pat(P2), pat(P3)) == ss(6, 7, 8)


def test_common_part_meet_p1():
    assert pattern_meet(SCHEMA, ss(6, 7, 8), pat(P1)) == ss(4, 5)


def test_p1_meet_p2():
    assert pattern_meet(SCHEMA, pat(P1), pat(P2)) == ss(2, 3)


def test_p1_meet_p3():
    # ss11 and ss4 are the same sequence
    assert SS[4] == SS[11]
    assert pattern_meet(SCHEMA, pat(P1), pat(P3)) == ss(4, 12)


def test_meet_of_two_short_patterns():
    assert pattern_meet(SCHEMA, ss(4), ss(12)) == pat(S(E("*", "d")))


def test_itemset_alignment_example():
    schema = AlphabetSchema((FieldSpec("proc", ITEMSET),))
    s1 = tuple((frozenset(x),) for x in ("a", "cd", "ba", "d"))
    s2 = tuple((frozenset(x),) for x in ("cd", "bd", "ad"))
    got = pattern_meet(schema, pattern_of(schema, s1), pattern_of(schema, s2))
    right = tuple((frozenset(x),) for x in ("cd", "b", "d"))
    left = tuple((frozenset(x),) for x in ("d",))  # the non-maximal alignment
    assert right in got.sequences
    assert left not in got.sequences
    assert is_subsequence_contiguous(schema, left, right)


def test_subsequence_examples():
    assert is_subsequence_contiguous(SCHEMA, SS[1], P1)
    assert is_subsequence_general(SCHEMA, SS[1], P1)
    gap = S(E("H1", "a"), E("H1", "a"))
    assert is_subsequence_general(SCHEMA, gap, P1)
    assert not is_subsequence_contiguous(SCHEMA, gap, P1)


def test_identical_sequences_meet_to_themselves():
    for p in (P1, P2, P3):
        assert pattern_meet(SCHEMA, pat(p), pat(p)) == pat(p)


def test_top_absorbed_and_empty_annihilates():
    assert pattern_meet(SCHEMA, TOP, pat(P1)) == pat(P1)
    assert pattern_meet(SCHEMA, pat(P1), TOP) == pat(P1)
    assert pattern_meet(SCHEMA, EMPTY, pat(P1)) == EMPTY
    assert pattern_leq(SCHEMA, EMPTY, pat(P1))
    assert pattern_leq(SCHEMA, pat(P1), TOP)
    assert not pattern_leq(SCHEMA, TOP, pat(P1))


def test_split_at_bottom():
    s = [E("H1", "a"), BOTTOM, BOTTOM, E("H2", "b"), E("H2", "c"), BOTTOM]
    assert split_at_bottom(SCHEMA, s) == [S(E("H1", "a")), S(E("H2", "b"), E("H2", "c"))]
    assert split_at_bottom(SCHEMA, s, min_len=2) == [S(E("H2", "b"), E("H2", "c"))]


def test_antichain_drops_equal_length_dominated():
    # Two length-1 sequences where one is strictly more general.
    got = maximal_antichain(SCHEMA, [S(E("CH")), S(E("CH", "cd")), S(E("CH", "d"))])
    assert got == Pattern((S(E("CH", "cd")),))


def test_antichain_is_canonical():
    a = maximal_antichain(SCHEMA, [SS[7], SS[6], SS[8], SS[10]])
    b = maximal_antichain(SCHEMA, [SS[8], SS[10], SS[7], SS[6]])
    assert a == b and hash(a) == hash(b)
    assert SS[10] not in a.sequences  # embeds in ss6


def test_make_pattern_validates():
    with pytest.raises(InputError, match="least element"):
        make_pattern(SCHEMA, [S(E("H1", "a"), BOTTOM)])
    with pytest.raises(InputError, match="empty sequence"):
        make_pattern(SCHEMA, [()])
    with pytest.raises(InputError):
        make_pattern(SCHEMA, [S(("H9", frozenset()))])


def test_pattern_of_splits_raw_sequences():
    raw = S(E("H1", "a"), BOTTOM, E("H2", "b"))
    assert pattern_of(SCHEMA, raw) == pat(S(E("H1", "a")), S(E("H2", "b")))


# -- run-length encoding -------------------------------------------------------

def test_rle_round_trip_and_counts():
    schema = SCHEMA.with_repetition()
    one = lambda h, p: (h, frozenset(p), (1, 1))  # noqa: E731
    raw = (one("H1", "a"), one("H1", "a"), one("H2", ""), one("H2", ""), one("H2", ""), one("H1", "a"))
    enc = run_length_encode(schema, raw)
    assert [e[2] for e in enc] == [(2, 2), (3, 3), (1, 1)]
    assert run_length_decode(schema, enc) == raw


def test_rle_requires_repetition_field():
    with pytest.raises(ConfigError):
        run_length_encode(SCHEMA, (E("H1"),))


def test_rle_over_limit_rejected():
    schema = AlphabetSchema(SCHEMA.fields, max_rep=3).with_repetition()
    raw = tuple(("H1", frozenset(), (1, 1)) for _ in range(4))
    enc = run_length_encode(schema, raw)
    with pytest.raises(InputError):
        schema.check(enc[0])


# -- oracle cross-checks ---------------------------------------------------------

def _rand_seq(rng, n):
    return tuple(rng.choice(UNIVERSE[1:]) for _ in range(rng.randint(1, n)))


def test_sequence_meet_matches_window_oracle_seeded():
    rng = random.Random(7)
    for _ in range(60):
        s, t = _rand_seq(rng, 4), _rand_seq(rng, 4)
        got = maximal_antichain(SCHEMA, sequence_meet(SCHEMA, s, t))
        assert set(got.sequences) == oracles.common_maximal(SCHEMA, s, t, UNIVERSE, BOTTOM)


seqs = st.lists(st.sampled_from(UNIVERSE), min_size=1, max_size=4).map(tuple)


@given(seqs, seqs)
def test_contiguous_embedding_matches_enumeration(t, s):
    assert is_subsequence_contiguous(SCHEMA, t, s) == oracles.embeds(SCHEMA, t, s)
    assert is_subsequence_general(SCHEMA, t, s) == oracles.embeds_general(SCHEMA, t, s)


@given(st.lists(seqs, max_size=4))
def test_antichain_matches_oracle(candidates):
    candidates = [c for c in candidates if BOTTOM not in c]
    assert set(maximal_antichain(SCHEMA, candidates).sequences) == oracles.maximal(SCHEMA, candidates)
