import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imlcs.seqstore import Alphabet, EmptyPopError, SequenceStore


def test_positions_are_absolute_after_pops():
    store = SequenceStore.from_sequences([[0, 1, 0, 1], [1, 1]], 2)
    assert store.pop(0) == (0, 1)
    assert store.head(0) == 2 and store.tail(0) == 4
    assert store.append(0, 0) == 5
    assert store.letters(0) == [1, 0, 1, 0]
    assert store.letter_at(0, 2) == 1
    with pytest.raises(IndexError):
        store.letter_at(0, 1)


def test_occurrence_queries():
    # string 0: positions 1..6 hold 0 1 1 0 2 0
    store = SequenceStore.from_sequences([[0, 1, 1, 0, 2, 0], [2]], 3)
    assert store.first_occ(0, 0) == 1
    assert store.last_occ(0, 0) == 6
    assert store.next_occ(0, 0, 2) == 4
    assert store.next_occ(0, 2, 6) is None
    assert store.prev_occ(0, 0, 4) == 1
    assert store.prev_occ(0, 0, 1) is None
    store.pop(0)
    assert store.first_occ(0, 0) == 4
    assert store.prev_occ(0, 0, 4) is None
    assert store.first_occ(1, 0) is None
    assert not store.occurs_everywhere(0)
    assert store.occurs_everywhere(2)


def test_errors():
    with pytest.raises(ValueError):
        SequenceStore(1, 2)
    with pytest.raises(ValueError):
        SequenceStore(2, 0)
    store = SequenceStore(2, 2)
    with pytest.raises(EmptyPopError):
        store.pop(0)
    with pytest.raises(ValueError):
        store.append(2, 0)
    with pytest.raises(ValueError):
        store.append(0, 2)
    with pytest.raises(ValueError):
        store.pop(-1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.integers(0, 2), st.integers(0, 3)), max_size=300))
def test_matches_list_model(ops):
    store = SequenceStore(3, 4)
    model = [[], [], []]
    heads = [1, 1, 1]
    for is_pop, s, c in ops:
        if is_pop and model[s]:
            assert store.pop(s) == (model[s].pop(0), heads[s])
            heads[s] += 1
        elif not is_pop:
            store.append(s, c)
            model[s].append(c)
    store.check_invariants()
    for s in range(3):
        assert store.letters(s) == model[s]
        assert store.head(s) == heads[s]
        for c in range(4):
            pos = [heads[s] + i for i, x in enumerate(model[s]) if x == c]
            assert store.first_occ(s, c) == (pos[0] if pos else None)
            assert store.last_occ(s, c) == (pos[-1] if pos else None)
            probe = heads[s] + len(model[s]) // 2
            after = [p for p in pos if p >= probe]
            before = [p for p in pos if p < probe]
            assert store.next_occ(s, c, probe) == (after[0] if after else None)
            assert store.prev_occ(s, c, probe) == (before[-1] if before else None)


def test_alphabet_first_appearance():
    a = Alphabet()
    assert a.encode("CAB") == [0, 1, 2]
    assert a.encode("BAD") == [2, 1, 3]
    assert a.decode([3, 0]) == "DC"
    assert a.mapping() == "C=0 A=1 B=2 D=3"
    with pytest.raises(ValueError):
        a.encode("Z", grow=False)
