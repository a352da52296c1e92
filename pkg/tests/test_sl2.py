"""Tests for quantum SL(2) functions and their image in the formal group."""
import pytest

from src.duality.sl2 import (SERIES, SL2FunctionElement, a, b, c, d, sl2_antipode, sl2_counit, sl2_embed_xi,
                             sl2_hopf_check, sl2_relation_check, sl2_series, sl2_series_check, sl2_series_window,
                             xi_hopf_check, xi_relation_check)
from src.kernel.qcoeff import q, qpow


def test_relations():
    one = SL2FunctionElement.one()
    assert a * b == b * a * q
    assert b * c == c * b
    assert a * d - b * c * q == one
    assert d * a - b * c * qpow(-1) == one
    assert sl2_relation_check() == 7


def test_hopf_structure():
    assert sl2_counit(a * d) == 1
    assert sl2_counit(b + c) == 0
    assert sl2_antipode(a) == d
    assert sl2_antipode(b) == b * -qpow(-1)
    assert sl2_antipode(c) == c * -q
    assert sl2_hopf_check(2) == 14


def test_xi(H):
    assert sl2_embed_xi(d) == H.L((-1,))
    assert sl2_embed_xi(c) == H.L((-1,)) * H.E(0) * (q - qpow(-1))
    assert sl2_embed_xi(SL2FunctionElement.one()) == H.one()
    assert xi_relation_check() == 7
    assert xi_hopf_check(1, 1) > 0


def test_series_truncation():
    assert len(sl2_series("delta_F", 1).terms) == 2
    assert len(sl2_series("antipode_L", 1).terms) == 2
    assert sl2_series_window("antipode_L", 1) == 3
    with pytest.raises(ValueError):
        sl2_series("delta_X", 1)


@pytest.mark.parametrize("name", ["delta_F", "delta_L", "antipode_F", "antipode_L", "antipode_E"])
def test_sl2_series(name):
    assert sl2_series_check(name, 1).name == name


def test_series_names():
    assert len(SERIES) == 12
