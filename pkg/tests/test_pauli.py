import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense
from summoning.pauli import PauliOperator

labels = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.sampled_from(["+", "-", "+i", "-i"]),
                        st.text("IXYZ", min_size=n, max_size=n)).map("".join))


@given(labels)
def test_string_roundtrip(label):
    assert str(PauliOperator.from_string(label)) == label


@given(st.data())
def test_product_matches_matrices(data):
    n = data.draw(st.integers(1, 4))
    a = data.draw(st.text("IXYZ", min_size=n, max_size=n))
    b = data.draw(st.text("IXYZ", min_size=n, max_size=n))
    pa, pb = PauliOperator.from_string(a), PauliOperator.from_string(b)
    assert np.allclose(dense(str(pa * pb)), dense(a) @ dense(b))
    commute = np.allclose(dense(a) @ dense(b), dense(b) @ dense(a))
    assert pa.commutes(pb) == commute


def test_y_is_i_x_z():
    x, z = PauliOperator.from_string("X"), PauliOperator.from_string("Z")
    assert str(PauliOperator(1, 0, 0, 1) * x * z) == "+Y"


def test_hermitian_and_sign():
    p = PauliOperator.from_string("-iXY")
    assert not p.is_hermitian()
    assert PauliOperator.from_string("-XY").sign == -1
    with pytest.raises(ValueError):
        p.sign


def test_support_and_weight():
    p = PauliOperator.from_string("XIZY")
    assert p.support == 0b1101 and p.weight == 3


def test_embed():
    p = PauliOperator.from_string("XZ").embed(4, [3, 1])
    assert p.label() == "IZIX"


def test_bad_character():
    with pytest.raises(ValueError):
        PauliOperator.from_string("XQ")
