"""Tests for exact scalars and specialization."""
from fractions import Fraction

import pytest

from src.kernel.errors import PoleAtSpecialization
from src.kernel.qcoeff import (ONE, CyclotomicScalar, bar, divisible_by_q_minus_qinv, is_laurent, laurent_terms,
                               order_at_one, q, q_binomial, q_factorial, q_number, qpow, render_scalar,
                               scalar_from_json, scalar_to_json, specialize_scalar)


def test_q_numbers():
    assert q_number(1) == ONE
    assert q_number(2) == q + qpow(-1)
    assert q_number(3, 2) == qpow(4) + 1 + qpow(-4)
    assert q_number(-2) == -q_number(2)
    assert q_factorial(3) == q_number(2) * q_number(3)


def test_q_binomial():
    assert q_binomial(4, 2) == qpow(4) + qpow(2) + 2 + qpow(-2) + qpow(-4)
    assert q_binomial(5, 0) == ONE
    assert q_binomial(3, -1) == 0
    assert q_binomial(2, 3) == 0


def test_bar_is_involution():
    x = (q + 3) / (qpow(2) - 1)
    assert bar(bar(x)) == x
    assert bar(q_number(4)) == q_number(4)


def test_laurent_terms():
    x = 2 * qpow(-3) + q - 5
    assert is_laurent(x)
    assert laurent_terms(x) == {-3: Fraction(2), 0: Fraction(-5), 1: Fraction(1)}
    assert not is_laurent(ONE / (q - 1))


def test_render_and_json():
    assert render_scalar(q + qpow(-1)) == "q + q^-1"
    assert render_scalar(-q) == "-q"
    assert render_scalar(0 * q) == "0"
    x = (3 * q - 1) / (qpow(2) + 1)
    assert scalar_from_json(scalar_to_json(x)) == x


def test_order_at_one():
    assert order_at_one((q - 1) ** 2 * q) == 2
    assert order_at_one(ONE / (q - 1)) == -1
    assert order_at_one(q_number(2)) == 0


def test_divisible_by_q_minus_qinv():
    s = q - qpow(-1)
    assert divisible_by_q_minus_qinv(s ** 2 * q_number(3), 2)
    assert not divisible_by_q_minus_qinv(q - 1, 1)
    assert divisible_by_q_minus_qinv(0 * q, 5)


def test_specialize_at_one():
    assert specialize_scalar(q_number(3)) == 3
    assert specialize_scalar(q_binomial(4, 2)) == 6
    assert specialize_scalar((qpow(2) - 1) / (q - 1)) == 2
    with pytest.raises(PoleAtSpecialization) as info:
        specialize_scalar(ONE / (q - 1))
    assert info.value.code == "E101"


def test_specialize_at_root_of_unity():
    assert not specialize_scalar(q_number(3), 3)
    assert specialize_scalar(qpow(3), 3) == CyclotomicScalar.from_int(3, 1)
    with pytest.raises(PoleAtSpecialization):
        specialize_scalar(ONE / q_number(3), 3)
    with pytest.raises(ValueError):
        specialize_scalar(q, 4)


def test_cyclotomic_arithmetic():
    z = specialize_scalar(q, 5)
    assert z * z.inverse() == CyclotomicScalar.from_int(5, 1)
    assert 1 + z - z == CyclotomicScalar.from_int(5, 1)
    total = CyclotomicScalar.from_int(5, 0)
    for k in range(5):
        total = total + specialize_scalar(qpow(k), 5)
    assert not total
