import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imlcs.baselines import (
    ResourceLimitError,
    all_matches_by_level,
    dp_level_of,
    dp_level_sets,
    dp_table,
    minima,
    minima_pairwise,
    naive_dp,
    quick_dp,
    quick_dp_levels,
)
from imlcs.fixtures import FIGURE_STRINGS, TABLE_BEFORE
from imlcs.seqstore import Alphabet, SequenceStore


def store_of(strings):
    alphabet = Alphabet()
    seqs = [alphabet.encode(x) for x in strings]
    return SequenceStore.from_sequences(seqs, max(1, len(alphabet)))


def lcs2(a, b):
    """Textbook two-string LCS, one row at a time."""
    prev = [0] * (len(b) + 1)
    for x in a:
        row = [0]
        for j, y in enumerate(b, 1):
            row.append(prev[j - 1] + 1 if x == y else max(prev[j], row[j - 1]))
        prev = row
    return prev[-1]


def test_figure_values():
    store = store_of(FIGURE_STRINGS)
    assert naive_dp(store) == 9
    assert dp_level_of(store, (6, 3, 5, 3)) == 2
    assert [sorted(x) for x in dp_level_sets(store)] == [sorted(x) for x in TABLE_BEFORE]


def test_empty_string_gives_zero():
    store = store_of(["ABC", ""])
    assert naive_dp(store) == 0 and quick_dp(store) == 0 and dp_level_sets(store) == []


def test_table_is_monotone():
    D = dp_table(store_of(["ABCAB", "BACBA", "CABBA"]))
    assert (D[0] == 0).all() and (D[:, 0] == 0).all() and (D[:, :, 0] == 0).all()
    for axis in range(3):
        assert ((D.take(range(1, D.shape[axis]), axis) - D.take(range(D.shape[axis] - 1), axis)) >= 0).all()


@settings(max_examples=200, deadline=None)
@given(st.text("ABCD", max_size=12), st.text("ABCD", max_size=12))
def test_two_strings_match_textbook_lcs(a, b):
    assert naive_dp(store_of([a, b])) == lcs2(a, b)


def test_single_shared_letter():
    store = store_of(["xAy", "zzA", "Aqq"])
    levels = dp_level_sets(store)
    assert levels == [[(2, 3, 1)]]


def test_level_sets_two_routes():
    rng = random.Random(3)
    for _ in range(60):
        k = rng.randint(2, 4)
        strings = ["".join(rng.choice("ABC") for _ in range(rng.randint(1, 7))) for _ in range(k)]
        store = store_of(strings)
        literal = [sorted(minima(level), key=lambda p: p[::-1]) for level in all_matches_by_level(store)]
        assert literal == dp_level_sets(store) == quick_dp_levels(store)


def test_minima_examples():
    assert minima([(6, 3, 5, 3), (6, 5, 5, 4)]) == [(6, 3, 5, 3)]
    chain = [(1, 2, 3), (2, 1, 3), (3, 2, 1)]
    assert sorted(minima(chain)) == chain
    assert minima([(1, 1), (1, 1)]) == [(1, 1)]
    assert minima([]) == []
    assert minima([(3,), (1,), (2,)]) == [(1,)]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_minima_matches_pairwise(k):
    rng = random.Random(k)
    for n in (0, 1, 5, 63, 64, 200, 400):
        pts = [tuple(rng.randrange(15) for _ in range(k)) for _ in range(n)]
        assert sorted(minima(pts)) == sorted(minima_pairwise(pts))


def test_quick_dp_equals_dp_on_random_instances():
    rng = random.Random(11)
    for _ in range(100):
        k = rng.randint(2, 4)
        S = rng.randint(1, 5)
        store = SequenceStore.from_sequences(
            [[rng.randrange(S) for _ in range(rng.randint(0, 10))] for _ in range(k)], S
        )
        assert quick_dp(store) == naive_dp(store)


def test_caps():
    store = store_of(["AB" * 20] * 4)
    with pytest.raises(ResourceLimitError):
        naive_dp(store, cap=1000)
    with pytest.raises(ResourceLimitError):
        quick_dp(store, cap=10)
