"""Tests for the expression language."""
import pytest

from src.cli.expr import Gen, Neg, Num, evaluate, parse, tokenize
from src.kernel.algebra import get_algebra
from src.kernel.errors import ExprIndexError, ExprSyntaxError, PresentationMismatch
from src.kernel.qcoeff import ONE, q, q_number, qpow


def test_tokenize():
    kinds = [t.type for t in tokenize("dp(E[1], 2)")]
    assert kinds == ["name", "lpar", "name", "lbr", "num", "rbr", "comma", "num", "rpar", "end"]
    assert tokenize("binom(M_1,0,1)")[2].value == "M_1"


def test_tokenize_reports_position():
    with pytest.raises(ExprSyntaxError) as info:
        tokenize("E[1] $")
    assert info.value.position == (5, 6)
    assert info.value.as_dict()["code"] == "E701"


def test_parse_tree():
    assert parse("-3") == Neg(Num(3))
    assert parse("L[1,-2]") == Gen("L", (1, -2))


@pytest.mark.parametrize("text", ["E[1] F[1]", "E[1] +", "(E[1]", "E[x]", "foo(1)", "binom(N1, 0, 1)", ""])
def test_parse_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


def test_generators(U):
    E, F = U.E(0), U.F(0)
    assert evaluate("E[1]*F[1] - F[1]*E[1]", U) == (U.L((2,)) - U.L((-2,))) * (ONE / (q - qpow(-1)))
    assert evaluate("L[1]^-2", U) == U.L((-2,))
    assert evaluate("K[1]", U) == U.L((2,))
    assert evaluate("2*E[1]", U) == 2 * E
    assert evaluate("E[1]*q", U) == q * E
    assert evaluate("3 - F[1]", U) == 3 - F
    assert evaluate("-E[1] + 3", U) == 3 - E
    assert evaluate("q^-1", U) == U.scalar(qpow(-1))


def test_calls(U):
    E, F = U.E(0), U.F(0)
    assert evaluate("dp(E[1], 2)", U) == E * E * (ONE / q_number(2))
    assert evaluate("bar(F[1])", U) == (q - qpow(-1)) * F
    toral = (U.L((1,)) - ONE) * (ONE / (q - ONE))
    assert evaluate("binom(M_1, 0, 1)", U) == toral
    assert evaluate("(L[1] - 1)/(q - 1)", U) == toral


def test_root_vectors_of_rank_two(a2):
    U2 = get_algebra(a2, "full")
    assert evaluate("Er[2]", U2) == U2.root_E(1)
    assert evaluate("K[1,0]", U2) == U2.L_weight(a2.alpha(0))


def test_evaluation_errors(U):
    with pytest.raises(ExprIndexError) as info:
        evaluate("E[2]", U)
    assert info.value.code == "E702"
    with pytest.raises(ExprIndexError):
        evaluate("L[1,1]", U)
    with pytest.raises(ExprSyntaxError):
        evaluate("E[1]/F[1]", U)
    with pytest.raises(ExprSyntaxError):
        evaluate("1/0", U)
    with pytest.raises(ExprSyntaxError):
        evaluate("dp(E[1]*F[1], 2)", U)
    with pytest.raises(PresentationMismatch):
        evaluate("E[1]^-1", U)
