"""Coproduct, counit and antipode on the Serre presentations, with tensor arithmetic."""
import logging
import random
from dataclasses import dataclass
from itertools import product

from ..config import DEFAULTS, LIMITS
from .algebra import AlgebraElement, get_algebra
from .errors import AxiomFailure, InvalidPhi, PresentationMismatch
from .monomial import PBWMonomial
from .qcoeff import ONE, ZERO, coerce, render_scalar, scalar_to_json
from .relations import LETTERS
from .rootvec import e_monomial_words, f_monomial_words
from .words import add_into

log = logging.getLogger(__name__)


class TensorElement:
    """Finite combination of tuples of normal monomials, one per tensor factor."""

    __slots__ = ("algebras", "terms")

    def __init__(self, algebras: tuple, terms: dict | None = None) -> None:
        self.algebras = tuple(algebras)
        self.terms = {k: coerce(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def pure(cls, *elements: AlgebraElement) -> "TensorElement":
        terms = {(): ONE}
        for x in elements:
            terms = {k + (m,): c * v for k, c in terms.items() for m, v in x.terms.items()}
        return cls(tuple(x.algebra for x in elements), terms)

    @property
    def arity(self) -> int:
        return len(self.algebras)

    def _check(self, other: "TensorElement") -> None:
        if not isinstance(other, TensorElement) or other.algebras != self.algebras:
            raise PresentationMismatch("tensor factors do not match")

    def __add__(self, other):
        self._check(other)
        return TensorElement(self.algebras, add_into(dict(self.terms), other.terms))

    def __neg__(self):
        return TensorElement(self.algebras, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            c = coerce(other)
            return TensorElement(self.algebras, {k: c * v for k, v in self.terms.items()})
        self._check(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial = {(): c1 * c2}
                for alg, m1, m2 in zip(self.algebras, k1, k2):
                    prod = alg.mono_mul(m1, m2)
                    partial = {k + (m,): c * v for k, c in partial.items() for m, v in prod.items()}
                add_into(out, partial)
        return TensorElement(self.algebras, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.algebras == other.algebras and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def flip(self) -> "TensorElement":
        return TensorElement(self.algebras[::-1], {k[::-1]: c for k, c in self.terms.items()})

    def map_factor(self, k: int, fn, algebras: tuple) -> "TensorElement":
        """Replace factor k by fn(monomial) -> {tuple of monomials: coeff} living in algebras."""
        out = {}
        for key, c in self.terms.items():
            for new, v in fn(key[k]).items():
                add_into(out, {key[:k] + tuple(new) + key[k + 1:]: c * v})
        return TensorElement(self.algebras[:k] + tuple(algebras) + self.algebras[k + 1:], out)

    def multiply_out(self) -> AlgebraElement:
        alg = self.algebras[0]
        out = alg.zero()
        for key, c in self.terms.items():
            x = alg.element({key[0]: c})
            for m in key[1:]:
                x = alg.multiply(x, alg.element({m: ONE}))
            out = out + x
        return out

    def to_json(self) -> dict:
        return {
            "presentation": [a.kind for a in self.algebras],
            "terms": [{"factors": [m.to_json() for m in k], "coeff": scalar_to_json(c)} for k, c in self],
        }

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self:
            factors = [alg.render(alg.element({m: ONE})) for alg, m in zip(self.algebras, k)]
            parts.append(self._term(c, factors))
        return " + ".join(parts)

    @staticmethod
    def _term(c, factors) -> str:
        body = " (x) ".join(factors)
        text = render_scalar(c)
        return body if text == "1" else f"({text})*[{body}]"


def _has_coproduct(alg) -> None:
    if alg.kind == "H":
        raise PresentationMismatch("H carries no coproduct here; use the dual functionals")


def _tau_in_roots(datum, i: int) -> tuple:
    coords = datum.to_alpha(datum.tau(i))
    if any(c.denominator != 1 for c in coords):
        raise InvalidPhi(f"tau_{i + 1} is not in the root lattice, needed by the double")
    return tuple(int(c) for c in coords)


def _toral(alg, weight) -> AlgebraElement:
    return alg.L_weight(weight)


def _minus_toral(alg, i: int, sign: int, tau_sign: int) -> AlgebraElement:
    """L (or K in the double) of sign*alpha_i + tau_sign*tau_i."""
    datum = alg.datum
    if alg.kind == "double":
        tau = _tau_in_roots(datum, i)
        kappa = tuple(sign * (1 if k == i else 0) + tau_sign * tau[k] for k in range(alg.n))
        return alg.K(kappa)
    w = tuple(sign * a + tau_sign * t for a, t in zip(datum.alpha(i), datum.tau(i)))
    return _toral(alg, w)


def generator_coproduct(alg, sym: str, i: int) -> TensorElement:
    datum = alg.datum
    if sym == "E":
        left = TensorElement.pure(alg.E(i), _toral(alg, datum.tau(i)))
        right = TensorElement.pure(_toral(alg, tuple(a - t for a, t in zip(datum.alpha(i), datum.tau(i)))), alg.E(i))
        return left + right
    left = TensorElement.pure(alg.F(i), _minus_toral(alg, i, -1, -1))
    right = TensorElement.pure(_minus_toral(alg, i, 0, 1), alg.F(i))
    return left + right


def _word_coproduct(alg, sym: str, poly: dict, cache: dict) -> TensorElement:
    out = TensorElement((alg, alg))
    for word, c in poly.items():
        t = cache.get(word)
        if t is None:
            t = TensorElement.pure(alg.one(), alg.one())
            for i in word:
                t = t * generator_coproduct(alg, sym, i)
            cache[word] = t
        out = out + t * c
    return out


def _delta_monomial(alg, m: PBWMonomial) -> TensorElement:
    memo = alg.delta_memo
    hit = memo.get(m)
    if hit is not None:
        return hit
    words = alg.delta_words
    e_part = _word_coproduct(alg, "E", e_monomial_words(alg.datum, m.e), words["E"])
    toral = alg.element({alg.monomial(mu=m.mu, kappa=m.kappa): ONE})
    f_part = _word_coproduct(alg, "F", f_monomial_words(alg.datum, m.f), words["F"])
    out = e_part * TensorElement.pure(toral, toral) * f_part
    memo[m] = out
    return out


def coproduct(x: AlgebraElement) -> TensorElement:
    alg = x.algebra
    _has_coproduct(alg)
    out = TensorElement((alg, alg))
    for m, c in x.terms.items():
        out = out + _delta_monomial(alg, m) * c
    return out


def counit(x: AlgebraElement):
    return sum((c for m, c in x.terms.items() if not any(m.e) and not any(m.f)), ZERO)


def _antipode_letter(alg, sym: str, i: int) -> AlgebraElement:
    datum = alg.datum
    if sym == "E":
        return -(_toral(alg, tuple(-a for a in datum.alpha(i))) * alg.E(i))
    up = alg.K(tuple(1 if k == i else 0 for k in range(alg.n))) if alg.kind == "double" \
        else _toral(alg, datum.alpha(i))
    return -(alg.F(i) * up)


def _word_antipode(alg, sym: str, poly: dict) -> AlgebraElement:
    out = alg.zero()
    for word, c in poly.items():
        x = alg.one()
        for i in reversed(word):
            x = x * _antipode_letter(alg, sym, i)
        out = out + x * c
    return out


def antipode(x: AlgebraElement) -> AlgebraElement:
    alg = x.algebra
    _has_coproduct(alg)
    memo = alg.antipode_memo
    out = alg.zero()
    for m, c in x.terms.items():
        s = memo.get(m)
        if s is None:
            inv = alg.element({alg.monomial(mu=tuple(-v for v in m.mu), kappa=tuple(-v for v in m.kappa)): ONE})
            s = _word_antipode(alg, "F", f_monomial_words(alg.datum, m.f)) * inv \
                * _word_antipode(alg, "E", e_monomial_words(alg.datum, m.e))
            memo[m] = s
        out = out + s * c
    return out


def _delta_dict(alg):
    return lambda m: _delta_monomial(alg, m).terms


def _counit_dict(m: PBWMonomial) -> dict:
    return {(): ONE} if not any(m.e) and not any(m.f) else {}


def _antipode_dict(alg):
    return lambda m: {(k,): c for k, c in antipode(alg.element({m: ONE})).terms.items()}


@dataclass
class HopfReport:
    presentation: str
    checked: int = 0
    axioms: tuple = ("coassociativity", "counit", "antipode")

    def to_json(self) -> dict:
        return {"presentation": self.presentation, "checked": self.checked,
                "axioms": list(self.axioms), "passed": True}


def monomials_up_to(alg, bound: int, torals=None) -> list:
    """All normal monomials with E/F-degree at most bound and toral part in torals."""
    torals = torals or [(alg.zero_n, alg.zero_n)]
    vectors = [v for v in product(range(bound + 1), repeat=alg.N) if sum(v) <= bound]
    e_range = vectors if "E" in LETTERS[alg.kind] else [alg.zero_N]
    f_range = vectors if "F" in LETTERS[alg.kind] else [alg.zero_N]
    out = []
    for e in e_range:
        for f in f_range:
            if sum(e) + sum(f) > bound:
                continue
            for mu, kappa in torals:
                out.append(PBWMonomial(tuple(e), tuple(mu), tuple(kappa), tuple(f)))
    return sorted(out)


def sample_monomials(alg, size: int, degree: int = 3, seed: int | None = None) -> list:
    """Deterministic pseudo-random monomials of E/F-degree at most degree."""
    rng = random.Random(DEFAULTS["seed"] if seed is None else seed)
    pool = monomials_up_to(alg, degree)
    out = []
    for _ in range(size):
        m = rng.choice(pool)
        mu = tuple(rng.randint(-1, 1) for _ in range(alg.n))
        kappa = tuple(rng.randint(-1, 1) for _ in range(alg.n)) if alg.kind == "double" else alg.zero_n
        out.append(m.replace(mu=mu, kappa=kappa))
    return out


def _counit_ok(d: TensorElement, x: AlgebraElement, k: int) -> bool:
    reduced = d.map_factor(k, _counit_dict, ())
    return x.algebra.element({key[0]: c for key, c in reduced.terms.items()}) == x


def check_hopf_axioms(datum, kind: str, bound: int, sample_size: int = 0) -> HopfReport:
    """Coassociativity, counit and antipode axioms on normal monomials, exact.

    Raises AxiomFailure carrying the first failing monomial.
    """
    lo, hi = LIMITS["hopf"]
    if not lo <= bound <= hi:
        raise ValueError(f"degree bound must lie in [{lo}, {hi}]")
    alg = get_algebra(datum, kind)
    _has_coproduct(alg)
    n = alg.n
    torals = [(alg.zero_n, alg.zero_n)]
    for i in range(n):
        unit = tuple(1 if k == i else 0 for k in range(n))
        torals.append((unit, alg.zero_n))
        if kind == "double":
            torals.append((alg.zero_n, unit))
    monos = monomials_up_to(alg, bound, torals) + sample_monomials(alg, sample_size)
    delta = _delta_dict(alg)
    s = _antipode_dict(alg)
    report = HopfReport(kind)
    for m in monos:
        x = alg.element({m: ONE})
        d = coproduct(x)
        if d.map_factor(0, delta, (alg, alg)) != d.map_factor(1, delta, (alg, alg)):
            raise AxiomFailure("coassociativity fails", witness=m)
        if not _counit_ok(d, x, 0) or not _counit_ok(d, x, 1):
            raise AxiomFailure("counit axiom fails", witness=m)
        unit = alg.scalar(counit(x))
        if d.map_factor(0, s, (alg,)).multiply_out() != unit:
            raise AxiomFailure("antipode axiom m(S x id)D fails", witness=m)
        if d.map_factor(1, s, (alg,)).multiply_out() != unit:
            raise AxiomFailure("antipode axiom m(id x S)D fails", witness=m)
        report.checked += 1
    log.info("Hopf axioms hold on %d monomials of %s", report.checked, kind)
    return report
