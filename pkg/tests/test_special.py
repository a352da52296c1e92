"""Tests for specialization, classical limits and the Frobenius maps."""
from fractions import Fraction

import pytest

from src.config import PRESETS
from src.duality import special
from src.duality.forms import FormBasisMonomial
from src.duality.special import (FrobeniusContext, SpecializedElement, classical_limit_check, frobenius_apply,
                                 frobenius_property_checks, function_frobenius_check, one_at, poisson_cobracket,
                                 special_product, specialize_element, specialize_tensor, toral_generator,
                                 values_equal)
from src.kernel.algebra import get_algebra
from src.kernel.cartan import build_cartan
from src.kernel.errors import LimitFailure, NotInForm, PresentationMismatch
from src.kernel.hopf import coproduct
from src.kernel.qcoeff import ONE, CyclotomicScalar, q, q_factorial, q_number, qpow


def restricted(e=0, t=0, f=0):
    return FormBasisMonomial("restricted", (e,), (t,), (f,))


def dkp(e=0, t=0, f=0):
    return FormBasisMonomial("dkp", (e,), (t,), (f,))


def test_values_equal():
    assert values_equal(Fraction(2), 2)
    assert values_equal(CyclotomicScalar.from_int(3, 1), Fraction(1))
    assert not values_equal(CyclotomicScalar.from_int(5, 2), 1)
    assert values_equal(one_at(7), 1)


def test_specialize_element(U):
    x = specialize_element(U.E(0) * U.E(0) * (ONE / q_number(2)), "restricted", 3)
    assert x.terms == {restricted(e=2): CyclotomicScalar.from_int(3, 1)}
    m = specialize_element(toral_generator(U, 0), "restricted")
    assert m.terms == {restricted(t=1): 1}
    assert not specialize_element(q_number(3) * U.F(0), "restricted", 3)
    with pytest.raises(NotInForm):
        specialize_element(U.E(0), "dkp")
    with pytest.raises(ValueError):
        specialize_element(U.E(0), "restricted", 4)


def test_special_product(U):
    e = specialize_element(U.E(0), "restricted")
    f = specialize_element(U.F(0), "restricted")
    assert special_product(e, f, U).terms == {restricted(e=1, f=1): 1}
    want = SpecializedElement(1, "restricted", {restricted(e=1, f=1): Fraction(1), restricted(t=1): Fraction(-2)})
    assert special_product(f, e, U).agrees(want)
    with pytest.raises(PresentationMismatch):
        special_product(e, specialize_element(U.F(0), "restricted", 3), U)


def test_specialize_tensor(U):
    t = specialize_tensor(coproduct(U.E(0)), "restricted")
    assert t.agrees({(restricted(e=1), restricted()): 1, (restricted(), restricted(e=1)): 1,
                     (restricted(t=1), restricted(e=1)): 0})


def test_cobracket_on_root_lattice(a1_root):
    U = get_algebra(a1_root, "full")
    m, f = restricted(t=1), restricted(f=1)
    assert poisson_cobracket(U.F(0)).agrees({(m, f): 1, (f, m): -1})
    assert not poisson_cobracket(U.L((1,)))


def test_cobracket_on_formal_group(H):
    m, e, f = restricted(t=1), restricted(e=1), restricted(f=1)
    assert poisson_cobracket(H.F(0), window=3).agrees({(m, f): 2, (f, m): -2})
    assert poisson_cobracket(toral_generator(H, 0), window=3).agrees({(e, f): 4, (f, e): -4})


def test_classical_limit(a1):
    report = classical_limit_check(a1)
    assert report.to_json()["passed"]
    assert "g:delta:f1" in report.checks
    assert "h:antipode:m1" in report.checks
    assert "h:cobracket:h1" in report.checks
    assert report.normalization["g"] == {"basis": [[2]], "orientation": 1}
    assert report.normalization["h"] == {"basis": [[2]], "orientation": 1}
    assert report.root_factors == {0: 1}
    assert report.bracket_ratios == {}
    with pytest.raises(ValueError):
        classical_limit_check(build_cartan("B2", "Q"))


def test_classical_limit_on_root_lattice(a1_root):
    report = classical_limit_check(a1_root)
    assert report.normalization["g"]["basis"] == [[1]]
    assert report.normalization["h"]["basis"] == [[1]]
    assert report.root_factors == {0: 1}


def test_classical_limit_of_twisted_datum():
    preset = PRESETS["A2"]["Twisted"]
    datum = build_cartan("A2", preset["lattice"], preset["phi"])
    report = classical_limit_check(datum, series=False)
    cartan = [[2, -1], [-1, 2]]
    assert report.normalization["g"] == {"basis": cartan, "orientation": 1}
    assert report.normalization["h"] == {"basis": cartan, "orientation": -1}
    assert "h:serre:E12" in report.checks
    assert not any(name.startswith("h:delta") for name in report.checks)


def test_classical_limit_rejects_wrong_eigenvalues(a1, monkeypatch):
    targets = special._cartan_targets
    monkeypatch.setattr(special, "_cartan_targets", lambda datum, side, o: (targets(datum, side, o)[0],) * 2)
    with pytest.raises(LimitFailure):
        classical_limit_check(a1, series=False)


def test_frobenius_context():
    ctx = FrobeniusContext(3, "fr_g")
    assert ctx.contracting and ctx.source_form == "restricted" and ctx.target_at == 1
    cr = FrobeniusContext(3, "cr_h")
    assert cr.kind == "H" and cr.source_at == 1 and cr.target_at == 3
    with pytest.raises(ValueError):
        FrobeniusContext(3, "sideways")
    with pytest.raises(ValueError):
        FrobeniusContext(4, "fr_g")


def test_frobenius_maps(U):
    fr = FrobeniusContext(3, "fr_g")
    divided = U.F(0) ** 3 * (ONE / q_factorial(3))
    assert frobenius_apply(fr, divided).terms == {restricted(f=1): 1}
    assert not frobenius_apply(fr, U.F(0))
    cr = FrobeniusContext(3, "cr_g")
    image = frobenius_apply(cr, (q - qpow(-1)) * U.E(0))
    assert image.at == 3
    assert image.terms == {dkp(e=3): CyclotomicScalar.from_int(3, 1)}
    with pytest.raises(PresentationMismatch):
        frobenius_apply(FrobeniusContext(3, "fr_h"), U.E(0))
    with pytest.raises(NotInForm):
        frobenius_apply(cr, specialize_element(U.E(0), "restricted"))


def test_frobenius_properties(a1):
    report = frobenius_property_checks(a1, 3, 3)
    assert report.multiplicative > 0
    assert report.adjoint > 0
    assert report.central == 2 * 16
    assert report.rank == 24
    assert report.full_rank == 27


def test_frobenius_rank_is_reached(a1):
    report = frobenius_property_checks(a1, 3, 4)
    assert report.rank == report.full_rank == 27


def test_frobenius_properties_a2(a2):
    report = frobenius_property_checks(a2, 3, 2)
    assert (report.multiplicative, report.adjoint, report.central) == (4032, 2268, 128)
    assert 0 < report.rank < report.full_rank == 3 ** 8


def test_function_frobenius():
    report = function_frobenius_check(3)
    assert report.powers == 4
    m, e, f = restricted(t=1), restricted(e=1), restricted(f=1)
    assert report.limits["a"].terms == {m: 1}
    assert report.limits["b"].terms == {f: -1}
    assert report.limits["c"].terms == {e: 1}
    assert report.limits["d"].terms == {m: -1}
