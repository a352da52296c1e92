"""Tests for functionals on U, series reconstruction and the umbral checks."""
import pytest

from src.duality import dualform
from src.duality.dualform import (agree_on_window, compute_structure_constants, dual_antipode, dual_coproduct,
                                  dual_counit, dual_pseudobasis, function_form_membership, multiply_functionals,
                                  nu_embed, nu_morphism_check, reconstruct_series, reconstruct_tensor,
                                  umbral_congruence_check)
from src.kernel.errors import AmbiguousCharacters, CongruenceFailure, DualityFailure, PresentationMismatch
from src.kernel.hopf import TensorElement
from src.kernel.qcoeff import ONE, q, qpow


def test_values(H):
    f = nu_embed(H.F(0))
    U = f.algebra
    assert U.datum.lattice_name == "Q"
    assert f(U.E(0)) == ONE / (qpow(-1) - q)
    assert f(U.F(0)) == 0
    assert nu_embed(H.L((1,)))(U.L((1,))) == q
    with pytest.raises(PresentationMismatch):
        nu_embed(U.E(0))


def test_counit(H):
    assert dual_counit(nu_embed(H.L((1,)))) == 1
    assert dual_counit(nu_embed(H.F(0))) == 0
    assert dual_counit(nu_embed(H.one() * 5)) == 5


@pytest.mark.parametrize("text", ["F", "E", "L", "LE"])
def test_reconstruct_series(H, text):
    x = {"F": H.F(0), "E": H.E(0), "L": H.L((1,)), "LE": H.L((-1,)) * H.E(0)}[text]
    assert reconstruct_series(nu_embed(x), 1, 2) == x


def test_reconstruct_needs_wide_window(H):
    with pytest.raises(AmbiguousCharacters):
        reconstruct_series(nu_embed(H.L((3,))), 1, 1)
    with pytest.raises(ValueError):
        reconstruct_series(nu_embed(H.L((1,))), 1, 0)


def test_dual_coproduct_of_toral(H):
    L = H.L((1,))
    got = reconstruct_tensor(dual_coproduct(nu_embed(L)), 0, 2)
    assert got == TensorElement.pure(L, L)


def test_dual_antipode_of_toral(H):
    got = reconstruct_series(dual_antipode(nu_embed(H.L((2,)))), 0, 2)
    assert got == H.L((-2,))


def test_nu_is_multiplicative(a1, H):
    f = multiply_functionals(nu_embed(H.F(0)), nu_embed(H.E(0)))
    assert agree_on_window(f, nu_embed(H.F(0) * H.E(0)), 2, 1) > 0
    assert nu_morphism_check(a1, 1, 2) > 0


def test_pseudobasis(a1):
    report = dual_pseudobasis(a1, (0,), (0,), 1)
    assert report.taus == [(0,), (1,)]
    assert report.matrix == [[1, 0], [1, 1]]
    assert report.triangular
    assert report.duals[1] == report.duals[1].algebra.L((1,)) - report.duals[1].algebra.one()


def test_pseudobasis_needs_unit_diagonal(a1, monkeypatch):
    embed = dualform.nu_embed
    monkeypatch.setattr(dualform, "nu_embed", lambda y: (lambda x: 2 * embed(y)(x)))
    with pytest.raises(DualityFailure):
        dual_pseudobasis(a1, (0,), (0,), 1)


def test_structure_constants(a1, a2):
    assert compute_structure_constants(a1).minus == {}
    consts = compute_structure_constants(a2)
    assert consts.minus and consts.plus


def test_umbral_congruences(a1):
    assert umbral_congruence_check(a1, "F", "delta", 0, degree=1, window=2).power == 2
    assert umbral_congruence_check(a1, "F", "antipode", 0, degree=1, window=2).checked == 1
    assert umbral_congruence_check(a1, "L", "antipode", 0, degree=1, window=3).power == 1
    with pytest.raises(ValueError):
        umbral_congruence_check(a1, "K", "delta", 0)


def test_umbral_report_checks_counits(a1, monkeypatch):
    report = umbral_congruence_check(a1, "F", "antipode", 0, degree=1, window=2)
    assert report.counit == {"F": 0, "L": 1}
    monkeypatch.setattr(dualform, "dual_counit", lambda f: ONE + ONE)
    with pytest.raises(CongruenceFailure):
        umbral_congruence_check(a1, "F", "antipode", 0, degree=1, window=2)


def test_function_form_membership(H):
    assert not function_form_membership(nu_embed(H.F(0)), "restricted", 1, 1).member
    scaled = H.F(0) * (q - qpow(-1))
    assert function_form_membership(nu_embed(scaled), "restricted", 1, 1).member
