"""Tests for Cartan data, normal forms, the Hopf structure and the oracle."""
from fractions import Fraction

import pytest

from src.config import PRESETS
from src.kernel.algebra import get_algebra
from src.kernel.cartan import build_cartan
from src.kernel.errors import DegreeTooLarge, InvalidCartan, InvalidLattice, InvalidPhi, PresentationMismatch
from src.kernel.hopf import TensorElement, antipode, check_hopf_axioms, coproduct, counit, sample_monomials
from src.kernel.oracle import oracle_check, serre_oracle_normal_form
from src.kernel.qcoeff import ONE, q, q_number, qpow
from src.kernel.tables import root_vectors


def test_root_systems():
    assert build_cartan("A1").roots.N == 1
    assert build_cartan("A2").roots.N == 3
    assert build_cartan("B2", "Q").roots.N == 4


def test_weights_and_lattices(a1, a1_root):
    assert a1.alpha(0) == (2,)
    assert a1.bilinear(a1.alpha(0), a1.alpha(0)) == 2
    assert a1.alpha_in_lattice(0) == (2,)
    assert a1_root.alpha_in_lattice(0) == (1,)
    assert a1.dual().lattice_name == "Q"
    assert a1_root.dual().lattice_name == "P"


def test_custom_lattice_is_recognized():
    assert build_cartan("A2", [[2, -1], [-1, 2]]).lattice_name == "Q"
    assert build_cartan("A2", [[1, 0], [0, 1]]).lattice_name == "P"


def test_invalid_data():
    with pytest.raises(InvalidCartan) as info:
        build_cartan("G2")
    assert info.value.code == "E201"
    with pytest.raises(InvalidLattice):
        build_cartan("A1", [[4]])
    with pytest.raises(InvalidLattice):
        build_cartan("A1", "X")
    with pytest.raises(InvalidPhi):
        build_cartan("A2", "P", [["1", "0"], ["0", "0"]])
    with pytest.raises(InvalidPhi):
        build_cartan("A2", "P", [["0"]])


def test_twisted_preset():
    preset = PRESETS["A2"]["Twisted"]
    datum = build_cartan("A2", preset["lattice"], preset["phi"])
    assert not datum.is_untwisted
    assert datum.tau(0) == (Fraction(0), Fraction(-3))


def test_toral_commutation(U):
    E, F, L = U.E(0), U.F(0), U.L
    assert L((1,)) * E == q * (E * L((1,)))
    assert F * L((1,)) == q * (L((1,)) * F)
    assert L((1,)) * L((-1,)) == U.one()
    assert U.K((1,)) == L((2,))


def test_cross_relation(U):
    E, F = U.E(0), U.F(0)
    rhs = (U.L((2,)) - U.L((-2,))) * (ONE / (q - qpow(-1)))
    assert E * F - F * E == rhs
    assert U.from_letters([("E", 0), ("F", 0)]) == E * F


def test_h_root_vectors_commute(H):
    assert H.E(0) * H.F(0) == H.F(0) * H.E(0)
    assert H.L((1,)) * H.E(0) == q * (H.E(0) * H.L((1,)))


def test_missing_letter(a1):
    plus = get_algebra(a1, "borel_plus")
    with pytest.raises(PresentationMismatch):
        plus.F(0)
    with pytest.raises(PresentationMismatch):
        plus.E(0) + get_algebra(a1, "full").E(0)


def test_serre_relations_vanish(a2):
    U2 = get_algebra(a2, "full")
    E1, E2 = U2.E(0), U2.E(1)
    assert E1 * E1 * E2 - q_number(2) * (E1 * E2 * E1) + E2 * E1 * E1 == 0
    F1, F2 = U2.F(0), U2.F(1)
    assert F2 * F2 * F1 - q_number(2) * (F2 * F1 * F2) + F1 * F2 * F2 == 0


def test_root_vectors(a1, a2):
    assert root_vectors(a1) == {}
    assert root_vectors(a2) == {(1, 1): {(0, 1): ONE, (1, 0): -qpow(-1)}}
    assert len(root_vectors(build_cartan("B2", "Q"))) == 2


def test_generator_coproducts(U):
    E, F, one = U.E(0), U.F(0), U.one()
    assert coproduct(E) == TensorElement.pure(E, one) + TensorElement.pure(U.L((2,)), E)
    assert coproduct(F) == TensorElement.pure(F, U.L((-2,))) + TensorElement.pure(one, F)
    assert coproduct(U.L((1,))) == TensorElement.pure(U.L((1,)), U.L((1,)))


def test_counit_and_antipode(U):
    E, F = U.E(0), U.F(0)
    assert counit(E) == 0
    assert counit(U.L((3,)) + 2 * F) == 1
    assert antipode(E) == -(U.L((-2,)) * E)
    assert antipode(F) == -(F * U.L((2,)))
    assert antipode(antipode(E)) == qpow(-2) * E


def test_hopf_axioms(a1, a1_root):
    assert check_hopf_axioms(a1, "full", 2).checked > 0
    assert check_hopf_axioms(a1_root, "double", 1).checked > 0
    assert check_hopf_axioms(a1, "borel_minus", 2, 5).checked > 0


def test_hopf_bounds(a1):
    with pytest.raises(ValueError):
        check_hopf_axioms(a1, "full", 5)
    with pytest.raises(PresentationMismatch):
        check_hopf_axioms(a1, "H", 1)


def test_oracle(a1, a2):
    assert oracle_check(a1, 4) == 2 + 4 + 8 + 16
    assert oracle_check(a2, 2) == 4 + 16


def test_oracle_degree_bound(a1):
    word = [("E", 0)] * 3
    with pytest.raises(DegreeTooLarge):
        serre_oracle_normal_form(word, 2, a1)
    with pytest.raises(PresentationMismatch):
        serre_oracle_normal_form(word, 3, a1, "H")


def _sample_elements(alg, size, degree, seed):
    monos = sample_monomials(alg, 2 * size, degree, seed)
    return [alg.element({a: ONE, b: q + 1}) if a != b else alg.element({a: ONE})
            for a, b in zip(monos[::2], monos[1::2])]


@pytest.mark.parametrize("cartan_type, size, degree", [("A1", 4, 3), ("A2", 3, 2)])
def test_associativity_on_samples(cartan_type, size, degree):
    alg = get_algebra(build_cartan(cartan_type), "full")
    xs = _sample_elements(alg, size, degree, seed=11)
    for x, y, z in zip(xs, xs[1:], xs[2:]):
        assert (x * y) * z == x * (y * z)


def test_products_respect_weights(a2):
    alg = get_algebra(a2, "full")
    monos = sample_monomials(alg, 6, 2, seed=5)
    for a, b in zip(monos, monos[1:]):
        want = tuple(u + v for u, v in zip(alg.weight_of(a), alg.weight_of(b)))
        product = alg.element({a: ONE}) * alg.element({b: ONE})
        assert all(alg.weight_of(m) == want for m in product.terms)


def test_normal_form_is_idempotent(a2):
    alg = get_algebra(a2, "full")
    x = alg.F(0) * alg.E(1) * alg.F(1) * alg.E(0)
    for m, c in x.terms.items():
        single = alg.element({m: c})
        assert alg.one() * single == single
        assert single * alg.one() == single
    assert alg.one() * x == x
