"""Exact scalars: the field Q(q), Laurent polynomials, q-combinatorics and
specialization at q = 1 or at a primitive odd root of unity."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import QQ, totient
from sympy.polys.fields import FracElement, field
from sympy.polys.specialpolys import cyclotomic_poly

from .errors import PoleAtSpecialization, UnsupportedExponent

QFIELD, q = field("q", QQ)
QRING = QFIELD.ring
ZERO = QFIELD.zero
ONE = QFIELD.one
_X = QRING.gens[0]


def _qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def coerce(value) -> FracElement:
    if isinstance(value, FracElement):
        return value
    return QFIELD.ground_new(_qq(value))


def qpow(k) -> FracElement:
    if isinstance(k, Fraction):
        if k.denominator != 1:
            raise UnsupportedExponent(f"fractional power q^{k} is outside Q(q)")
        k = k.numerator
    return q ** int(k)


def inverse(x: FracElement) -> FracElement:
    if not x:
        raise ZeroDivisionError("inverse of zero scalar")
    return ONE / x


def _bar_poly(p) -> FracElement:
    out = ZERO
    for (e,), c in p.terms():
        out += coerce(_frac(c)) * qpow(-e)
    return out


def bar(x) -> FracElement:
    """Image under the field involution q -> q^-1."""
    x = coerce(x)
    return _bar_poly(x.numer) / _bar_poly(x.denom)


@lru_cache(maxsize=None)
def q_number(n: int, d: int = 1) -> FracElement:
    if n < 0:
        return -q_number(-n, d)
    out = ZERO
    for k in range(n):
        out += qpow(d * (n - 1 - 2 * k))
    return out


@lru_cache(maxsize=None)
def q_factorial(n: int, d: int = 1) -> FracElement:
    out = ONE
    for k in range(1, n + 1):
        out *= q_number(k, d)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int, d: int = 1) -> FracElement:
    if k < 0:
        return ZERO
    num = ONE
    for s in range(1, k + 1):
        num *= q_number(n - s + 1, d)
    return num / q_factorial(k, d)


def toral_binomial_value(m: int, c: int, t: int, d: int = 1) -> FracElement:
    """Value of (Y; c, t) at Y = q^(d*m)."""
    out = ONE
    for s in range(1, t + 1):
        out *= (qpow(d * (c - s + 1 + m)) - ONE) / (qpow(d * s) - ONE)
    return out


def is_laurent(x: FracElement) -> bool:
    return coerce(x).denom.is_term


def laurent_terms(x: FracElement) -> dict[int, Fraction]:
    x = coerce(x)
    if not x.denom.is_term:
        raise ValueError("scalar is not a Laurent polynomial")
    ((shift,), lc), = x.denom.terms()
    lc = _frac(lc)
    return {e - shift: _frac(c) / lc for (e,), c in x.numer.terms()}


def from_laurent_terms(terms) -> FracElement:
    out = ZERO
    for e, c in terms:
        out += coerce(Fraction(c)) * qpow(e)
    return out


def _normalized_parts(x: FracElement):
    x = coerce(x)
    den = x.denom
    lc = _frac(den.LC)
    low = den.tail_degree()
    num_terms = sorted((e - low, _frac(c) / lc) for (e,), c in x.numer.terms())
    den_terms = sorted((e - low, _frac(c) / lc) for (e,), c in den.terms())
    return num_terms, den_terms


def scalar_to_json(x: FracElement) -> dict:
    num, den = _normalized_parts(x)
    enc = lambda ts: [[e, c.numerator, c.denominator] for e, c in ts]
    return {"num": enc(num), "den": enc(den)}


def scalar_from_json(obj) -> FracElement:
    dec = lambda ts: from_laurent_terms((e, Fraction(n, d)) for e, n, d in ts)
    return dec(obj["num"]) / dec(obj["den"])


def _render_poly(terms) -> str:
    parts = []
    for e, c in sorted(terms, key=lambda t: -t[0]):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = "q" if e == 1 else f"q^{e}"
            body = power if mag == 1 else f"{mag}*{power}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def render_scalar(x: FracElement) -> str:
    """Text form accepted back by the expression parser."""
    x = coerce(x)
    if not x:
        return "0"
    if x.denom.is_term:
        terms = laurent_terms(x).items()
        return _render_poly(terms)
    num, den = _normalized_parts(x)
    return f"({_render_poly(num)})/({_render_poly(den)})"


def multiplicity(x: FracElement, factor) -> int:
    """Order of vanishing of x along the irreducible polynomial factor."""
    x = coerce(x)
    if not x:
        raise ValueError("multiplicity of zero is undefined")

    def count(p):
        k = 0
        while True:
            quo, rem = p.div(factor)
            if rem:
                return k
            p, k = quo, k + 1

    return count(x.numer) - count(x.denom)


def order_at_one(x: FracElement) -> int:
    return multiplicity(x, _X - 1)


def divisible_by_q_minus_qinv(x: FracElement, k: int) -> bool:
    """True when x lies in (q - q^-1)^k times the local ring at q = +-1."""
    x = coerce(x)
    if not x or k <= 0:
        return True
    return multiplicity(x, _X - 1) >= k and multiplicity(x, _X + 1) >= k


@lru_cache(maxsize=None)
def cyclotomic(ell: int):
    coeffs = cyclotomic_poly(ell, polys=True).all_coeffs()
    return QRING.from_list([QQ(int(c)) for c in coeffs])


def _check_order(ell: int) -> None:
    if ell < 1 or ell % 2 == 0:
        raise ValueError(f"root of unity order must be odd and positive, got {ell}")


@dataclass(frozen=True)
class CyclotomicScalar:
    """Residue class in Q[x]/Phi_ell, the image of q at a primitive ell-th root."""

    ell: int
    coeffs: tuple

    @classmethod
    def from_poly(cls, ell: int, poly) -> "CyclotomicScalar":
        phi = cyclotomic(ell)
        rem = poly.rem(phi)
        size = int(totient(ell))
        coeffs = [Fraction(0)] * size
        for (e,), c in rem.terms():
            coeffs[e] = _frac(c)
        return cls(ell, tuple(coeffs))

    @classmethod
    def from_int(cls, ell: int, value) -> "CyclotomicScalar":
        return cls.from_poly(ell, QRING(_qq(Fraction(value))))

    def to_poly(self):
        return QRING.from_dict({(e,): _qq(c) for e, c in enumerate(self.coeffs) if c})

    def _lift(self, other):
        if isinstance(other, CyclotomicScalar):
            if other.ell != self.ell:
                raise ValueError("mixing different roots of unity")
            return other.to_poly()
        return QRING(_qq(Fraction(other)))

    def __add__(self, other):
        return CyclotomicScalar.from_poly(self.ell, self.to_poly() + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return CyclotomicScalar.from_poly(self.ell, self.to_poly() - self._lift(other))

    def __rsub__(self, other):
        return CyclotomicScalar.from_poly(self.ell, self._lift(other) - self.to_poly())

    def __mul__(self, other):
        return CyclotomicScalar.from_poly(self.ell, self.to_poly() * self._lift(other))

    __rmul__ = __mul__

    def __neg__(self):
        return CyclotomicScalar(self.ell, tuple(-c for c in self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def inverse(self) -> "CyclotomicScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        s, _, h = self.to_poly().gcdex(cyclotomic(self.ell))
        return CyclotomicScalar.from_poly(self.ell, s.quo_ground(h.LC))

    def __truediv__(self, other):
        if not isinstance(other, CyclotomicScalar):
            other = CyclotomicScalar.from_int(self.ell, other)
        return self * other.inverse()

    def to_json(self) -> dict:
        return {"ell": self.ell, "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    def __str__(self) -> str:
        terms = [(e, c) for e, c in enumerate(self.coeffs) if c]
        return f"[{_render_poly(terms).replace('q', 'z')} mod Phi_{self.ell}]"


def specialize_scalar(x, at: int = 1):
    """Image of x under q -> 1 (at=1) or q -> primitive at-th root of unity."""
    _check_order(at)
    x = coerce(x)
    if at == 1:
        den = x.denom.evaluate(_X, 1)
        if not den:
            raise PoleAtSpecialization(f"denominator vanishes at q=1: {render_scalar(x)}")
        return _frac(x.numer.evaluate(_X, 1)) / _frac(den)
    den = CyclotomicScalar.from_poly(at, x.denom)
    if not den:
        raise PoleAtSpecialization(f"denominator vanishes at root of order {at}: {render_scalar(x)}")
    return CyclotomicScalar.from_poly(at, x.numer) / den


def is_pole_free(x, at: int = 1) -> bool:
    try:
        specialize_scalar(x, at)
    except PoleAtSpecialization:
        return False
    return True


def special_zero(at: int):
    return Fraction(0) if at == 1 else CyclotomicScalar.from_int(at, 0)


def special_is_zero(value) -> bool:
    return not value
