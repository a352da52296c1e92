"""Tests for the DRT pairings, the quantum Poisson pairing and the double."""
from fractions import Fraction

import pytest

from src.duality.double import (double_multiply, project_to_quotient, projection_checks, triangular_check,
                                verify_cross_relation)
from src.duality.forms import FormBasisMonomial, materialize
from src.duality.pair import (PairingConvention, closed_form_check, closed_form_pair, drt_pair, duality_gram_check,
                              is_unit, perfection_check, quantum_poisson_pair, resolve_pairing_convention,
                              scaled_poisson_pair)
from src.kernel.algebra import get_algebra
from src.kernel.errors import NotInForm, PresentationMismatch
from src.kernel.qcoeff import ONE, q, qpow, specialize_scalar


@pytest.fixture(scope="module")
def minus(a1):
    return get_algebra(a1, "borel_minus")


@pytest.fixture(scope="module")
def plus(a1):
    return get_algebra(a1, "borel_plus")


def test_convention(a1, a2):
    assert resolve_pairing_convention(a1).convention == PairingConvention(False, False)
    assert resolve_pairing_convention(a2).passing


def test_generators(a1, a1_root, minus, plus):
    assert drt_pair("drt_pi", minus.F(0), plus.E(0)) == ONE / (qpow(-1) - q)
    dual_plus = get_algebra(a1_root, "borel_plus")
    assert drt_pair("drt_pi", minus.L((1,)), dual_plus.L((1,))) == qpow(-1)
    assert drt_pair("drt_pi", minus.F(0), plus.one()) == 0


def test_closed_form(a1, minus, plus):
    F, E = minus.F(0), plus.E(0)
    assert drt_pair("drt_pi", F * F, E * E) == closed_form_pair(a1, (2,), (2,))
    assert closed_form_check(a1, 3) == 16
    assert closed_form_pair(a1, (1,), (2,)) == 0


def test_wrong_sides(minus, plus):
    with pytest.raises(PresentationMismatch):
        drt_pair("drt_pi", plus.E(0), minus.F(0))
    with pytest.raises(PresentationMismatch):
        drt_pair("quantum_poisson", minus.F(0), plus.E(0))


def test_perfection(a1, a2):
    dets = perfection_check(a1, 2)
    assert set(dets) == {(1,), (2,)}
    assert all(dets.values())
    assert (1, 1) in perfection_check(a2, 2)


def test_integral_duality(a1):
    report = duality_gram_check(a1, 2)
    assert len(report.blocks) == 5
    assert all(is_unit(value) for _, _, value in report.blocks)
    with pytest.raises(ValueError):
        duality_gram_check(a1, 4)


def test_is_unit():
    assert is_unit(-qpow(3))
    assert is_unit(ONE)
    assert not is_unit(2 * q)
    assert not is_unit(q + 1)
    assert not is_unit(ONE / (q - 1))


def test_quantum_poisson(a1, a1_root, H):
    U = get_algebra(a1_root, "full")
    assert quantum_poisson_pair(H.F(0), U.E(0)) == ONE / (qpow(-1) - q)
    assert quantum_poisson_pair(H.F(0), U.F(0)) == 0
    assert quantum_poisson_pair(H.one(), U.L((3,))) == 1
    with pytest.raises(PresentationMismatch):
        quantum_poisson_pair(U.E(0), U.E(0))


def test_scaled_pairing_values(a1_root, H):
    U = get_algebra(a1_root, "full")
    assert specialize_scalar(scaled_poisson_pair("UU", H.E(0), U.F(0))) == Fraction(1, 2)
    m = (H.L((1,)) - ONE) * (ONE / (q - 1))
    k = (U.L((1,)) - ONE) * (ONE / (q - 1))
    assert specialize_scalar(scaled_poisson_pair("UU", m, k)) == 2
    assert scaled_poisson_pair("UU", H.one(), U.one()) == 1
    assert scaled_poisson_pair("FF", H.one(), U.one()) == 1
    with pytest.raises(ValueError):
        scaled_poisson_pair("UF", H.one(), U.one())


def test_scaled_pairing_uses_degree_of_whole_element(a1_root, H):
    U = get_algebra(a1_root, "full")
    g = U.E(0) + materialize(FormBasisMonomial("restricted", (2,), (0,), (0,)), U)
    value = scaled_poisson_pair("UU", H.F(0), g)
    assert value == (q - 1) ** 2 * quantum_poisson_pair(H.F(0), g)
    assert value == (q - q ** 2) / (q + 1)
    assert specialize_scalar(value) == 0


def test_scaled_pairing_needs_form_member(a1_root, H):
    U = get_algebra(a1_root, "full")
    with pytest.raises(NotInForm):
        scaled_poisson_pair("UU", H.F(0), U.E(0) * (ONE / (q - 1)))
    with pytest.raises(NotInForm):
        scaled_poisson_pair("FF", H.F(0), U.E(0))


def test_drt_pairing_is_graded(a2):
    minus, plus = get_algebra(a2, "borel_minus"), get_algebra(a2, "borel_plus")
    F1, F2, E1, E2 = minus.F(0), minus.F(1), plus.E(0), plus.E(1)
    assert drt_pair("drt_pi", F1, E2) == 0
    assert drt_pair("drt_pi", F1 * F2, E1 * E1) == 0
    assert drt_pair("drt_pi", F1, E1 * E2) == 0
    assert drt_pair("drt_pi", F1 * F2, E1 * E2) != 0
    assert drt_pair("drt_pi", F1, E1) != 0


def test_double(a1):
    D = get_algebra(a1, "double")
    U = get_algebra(a1, "full")
    assert project_to_quotient(D.K((1,))) == U.L((2,))
    assert project_to_quotient(double_multiply(D.E(0), D.F(0))) == U.E(0) * U.F(0)
    with pytest.raises(PresentationMismatch):
        double_multiply(D.E(0), U.F(0))


def test_double_checks(a1):
    assert verify_cross_relation(a1, 1).checked > 0
    assert triangular_check(a1, 2) > 0
    assert projection_checks(a1, 5).generators == 4
    with pytest.raises(ValueError):
        verify_cross_relation(a1, 3)
