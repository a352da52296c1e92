"""Tests for the restricted and dkp forms."""
import pytest

from src.duality.forms import (FormBasisMonomial, closure_check, coproduct_closure_check, expand,
                               filtration_degree, form_basis, materialize, membership, require_member,
                               toral_binomial_poly)
from src.kernel.errors import NotInForm
from src.kernel.qcoeff import ONE, q, q_number, qpow


def restricted(e=0, t=0, f=0):
    return FormBasisMonomial("restricted", (e,), (t,), (f,))


def dkp(e=0, t=0, f=0):
    return FormBasisMonomial("dkp", (e,), (t,), (f,))


def test_toral_binomials():
    assert toral_binomial_poly(0, 1) == {1: ONE / (q - 1), 0: -ONE / (q - 1)}
    assert toral_binomial_poly(3, 0) == {0: ONE}


def test_divided_powers(U):
    E = U.E(0)
    assert expand(E * E, "restricted") == {restricted(e=2): q_number(2)}
    assert materialize(restricted(e=2), U) == E * E * (ONE / q_number(2))
    assert materialize(dkp(f=1, t=-1), U) == (q - qpow(-1)) * (U.L((-1,)) * U.F(0))


def test_membership(U):
    E, L = U.E(0), U.L((1,))
    assert membership(E * E * (ONE / q_number(2)), "restricted").member
    assert not membership(E * E * (ONE / (q - 1)), "restricted").member
    assert membership((L - 1) * (ONE / (q - 1)), "restricted").member
    assert not membership(L * (ONE / (q - 1)), "restricted").member
    assert not membership(E, "dkp").member
    assert membership((q - qpow(-1)) * E, "dkp").member
    assert membership(L, "dkp").member


def test_require_member(U):
    with pytest.raises(NotInForm) as info:
        require_member(U.E(0), "dkp")
    assert info.value.code == "E304"
    with pytest.raises(ValueError):
        expand(U.E(0), "integral")


def test_basis_sizes(U):
    assert len(form_basis(U, "restricted", 1, toral=2)) == 3 * 3
    assert len(form_basis(U, "dkp", 1, toral=1)) == 3 * 3
    assert len(form_basis(U, "dkp", 2, toral=0, sides="E")) == 3


def test_basis_round_trip(U):
    for form in ("restricted", "dkp"):
        for m in form_basis(U, form, 2, toral=2):
            assert expand(materialize(m, U), form) == {m: ONE}


def test_closure(U):
    assert closure_check(U, "restricted") == 36
    assert closure_check(U, "dkp") == 81
    assert coproduct_closure_check(U, "restricted") == 6
    assert coproduct_closure_check(U, "dkp", toral=1) == 9


def test_filtration_degree(U):
    E, F = U.E(0), U.F(0)
    toral = (U.L((1,)) - ONE) * (ONE / (q - 1))
    assert filtration_degree(U.one()) == 0
    assert filtration_degree(U.zero()) == 0
    assert filtration_degree(F) == 1
    assert filtration_degree(materialize(restricted(e=2), U) * toral) == 3
    assert filtration_degree(E + materialize(restricted(e=2), U)) == 2
    assert filtration_degree((q - qpow(-1)) * F, "dkp") == 1
    with pytest.raises(NotInForm):
        filtration_degree(F * (ONE / (q - 1)))
    with pytest.raises(NotInForm):
        filtration_degree(E, "dkp")
