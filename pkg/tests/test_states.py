import numpy as np
import pytest

from braidlab.errors import ValidationError
from braidlab.states import TensorState, all_words, index_word, word_index


def test_word_index_round_trip():
    for n, N in [(2, 5), (3, 3), (4, 2)]:
        for idx in range(n ** N):
            assert word_index(index_word(idx, n, N), n) == idx
    assert all_words(2, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_basis_and_norm():
    v = TensorState.basis(3, (1, 3, 2))
    assert v.norm() == 1.0
    assert v.scale(2.0).norm() == 2.0
    assert TensorState.zero(2, 3).is_zero()


def test_add_cancellation_prunes():
    a = TensorState(2, 2, {(1, 2): 1.0, (2, 1): 0.5})
    b = TensorState(2, 2, {(1, 2): -1.0})
    out = a.add(b)
    assert out.amps == {(2, 1): 0.5}


def test_inner_conjugates_left_argument():
    a = TensorState(2, 1, {(1,): 1j})
    b = TensorState(2, 1, {(1,): 1.0})
    assert a.inner(b) == pytest.approx(-1j)
    assert b.inner(a) == pytest.approx(1j)
    assert a.inner(a) == pytest.approx(1.0)


def test_dense_round_trip():
    state = TensorState(2, 3, {(1, 2, 1): 0.25, (2, 2, 2): -1.5})
    v = state.to_dense()
    assert v[word_index((1, 2, 1), 2)] == 0.25
    back = TensorState.from_dense(v, 2, 3)
    assert back.amps == state.amps


def test_validation_rejects_bad_words():
    with pytest.raises(ValidationError):
        TensorState(2, 2, {(1, 3): 1.0})
    with pytest.raises(ValidationError):
        TensorState(2, 2, {(1, 2, 1): 1.0})
    with pytest.raises(ValidationError):
        TensorState.zero(2, 2).normalized()
