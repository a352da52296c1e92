"""Quantum SL(2) functions and their embedding into the formal group of A1.

F[SL2] is generated by a, b, c, d with

    ab = q ba, cd = q dc, ac = q ca, bd = q db, bc = cb,
    ad - da = (q - q^-1) bc, ad - q bc = 1,

and normal basis a^i b^j c^k d^l with i * l = 0.  xi sends it into H on the
weight lattice of A1:

    a -> L - (q - q^-1)^2 F L^-1 E,   b -> -(q - q^-1) F L^-1,
    c -> (q - q^-1) L^-1 E,           d -> L^-1.

The antipode compatible with these relations is S(a) = d, S(b) = -q^-1 b,
S(c) = -q c, S(d) = a.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..kernel.algebra import get_algebra
from ..kernel.cartan import build_cartan
from ..kernel.errors import PropertyFailure, RelationFailure
from ..kernel.hopf import TensorElement
from ..kernel.qcoeff import ONE, ZERO, coerce, q_number, qpow, render_scalar
from ..kernel.words import add_into
from .dualform import (agree_on_window, dual_antipode, dual_coproduct, nu_embed, nu_tensor, reconstruct_series,
                       reconstruct_tensor)

log = logging.getLogger(__name__)

LETTERS = "abcd"


def _mono(letter: str) -> tuple:
    return tuple(1 if x == letter else 0 for x in LETTERS)


def _times_letter(m: tuple, letter: str) -> dict:
    """a^i b^j c^k d^l * letter in the normal basis."""
    i, j, k, l = m
    if letter == "a":
        if not l:
            return {(i + 1, j, k, 0): qpow(-j - k)}
        return {(0, j, k, l - 1): ONE, (0, j + 1, k + 1, l - 1): qpow(1 - 2 * l)}
    if letter == "b":
        return {(i, j + 1, k, l): qpow(-l)}
    if letter == "c":
        return {(i, j, k + 1, l): qpow(-l)}
    if not i:
        return {(0, j, k, l + 1): ONE}
    s = qpow(j + k)
    return {(i - 1, j, k, 0): s, (i - 1, j + 1, k + 1, 0): s * qpow(1)}


@lru_cache(maxsize=None)
def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    out = {m1: ONE}
    for letter, count in zip(LETTERS, m2):
        for _ in range(count):
            new = {}
            for m, c in out.items():
                add_into(new, _times_letter(m, letter), c)
            out = new
    return tuple(out.items())


class SL2FunctionElement:
    """Element of F[SL2] as {(i, j, k, l): coefficient} over the normal basis."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None) -> None:
        self.terms = {m: coerce(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def generator(cls, letter: str) -> "SL2FunctionElement":
        return cls({_mono(letter): ONE})

    @classmethod
    def one(cls) -> "SL2FunctionElement":
        return cls({(0, 0, 0, 0): ONE})

    def __add__(self, other):
        return SL2FunctionElement(add_into(dict(self.terms), other.terms))

    def __neg__(self):
        return SL2FunctionElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SL2FunctionElement):
            c = coerce(other)
            return SL2FunctionElement({m: c * v for m, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                add_into(out, dict(_mono_mul(m1, m2)), c1 * c2)
        return SL2FunctionElement(out)

    def __pow__(self, k: int):
        out = SL2FunctionElement.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, SL2FunctionElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            word = "*".join(x if k == 1 else f"{x}^{k}" for x, k in zip(LETTERS, m) if k) or "1"
            parts.append(f"({render_scalar(c)})*{word}")
        return " + ".join(parts)


a, b, c, d = (SL2FunctionElement.generator(x) for x in LETTERS)


def sl2_relations() -> dict:
    """The defining relations as elements that must vanish, keyed by name."""
    qq = qpow(1)
    return {
        "ab=qba": lambda x: x["a"] * x["b"] - x["b"] * x["a"] * qq,
        "cd=qdc": lambda x: x["c"] * x["d"] - x["d"] * x["c"] * qq,
        "ac=qca": lambda x: x["a"] * x["c"] - x["c"] * x["a"] * qq,
        "bd=qdb": lambda x: x["b"] * x["d"] - x["d"] * x["b"] * qq,
        "bc=cb": lambda x: x["b"] * x["c"] - x["c"] * x["b"],
        "ad-da=(q-q^-1)bc": lambda x: x["a"] * x["d"] - x["d"] * x["a"] - x["b"] * x["c"] * (qq - ONE / qq),
        "ad-qbc=1": lambda x: x["a"] * x["d"] - x["b"] * x["c"] * qq - x["one"],
    }


def _generators() -> dict:
    return {"a": a, "b": b, "c": c, "d": d, "one": SL2FunctionElement.one()}


def sl2_relation_check() -> int:
    """The normal-form multiplication satisfies every defining relation."""
    gens = _generators()
    for name, rel in sl2_relations().items():
        if rel(gens):
            raise RelationFailure(f"relation {name} fails in F[SL2]", witness=name)
    return len(sl2_relations())


# Hopf structure

def _tensor_mul(x: dict, y: dict) -> dict:
    out = {}
    for (m1, m2), c1 in x.items():
        for (n1, n2), c2 in y.items():
            for p1, v1 in _mono_mul(m1, n1):
                for p2, v2 in _mono_mul(m2, n2):
                    add_into(out, {(p1, p2): c1 * c2 * v1 * v2})
    return out


GENERATOR_COPRODUCT = {
    "a": (("a", "a"), ("b", "c")),
    "b": (("a", "b"), ("b", "d")),
    "c": (("c", "a"), ("d", "c")),
    "d": (("c", "b"), ("d", "d")),
}


def sl2_coproduct(x: SL2FunctionElement) -> dict:
    """Delta(x) as {(m1, m2): coefficient}."""
    out = {}
    for m, coeff in x.terms.items():
        acc = {((0,) * 4, (0,) * 4): ONE}
        for letter, count in zip(LETTERS, m):
            step = {(_mono(s), _mono(t)): ONE for s, t in GENERATOR_COPRODUCT[letter]}
            for _ in range(count):
                acc = _tensor_mul(acc, step)
        add_into(out, acc, coeff)
    return out


def sl2_counit(x: SL2FunctionElement):
    """epsilon(a) = epsilon(d) = 1, epsilon(b) = epsilon(c) = 0."""
    out = ZERO
    for (i, j, k, l), coeff in x.terms.items():
        if not j and not k:
            out += coeff
    return out


def _antipode_letter(letter: str) -> SL2FunctionElement:
    if letter == "a":
        return d
    if letter == "b":
        return b * -qpow(-1)
    if letter == "c":
        return c * -qpow(1)
    return a


def sl2_antipode(x: SL2FunctionElement) -> SL2FunctionElement:
    out = SL2FunctionElement()
    for m, coeff in x.terms.items():
        acc = SL2FunctionElement.one()
        for letter, count in zip(LETTERS, m):
            for _ in range(count):
                acc = _antipode_letter(letter) * acc
        out = out + acc * coeff
    return out


def _element(m: tuple) -> SL2FunctionElement:
    return SL2FunctionElement({m: ONE})


def sl2_hopf_check(bound: int = 2) -> int:
    """Counit and antipode axioms on normal monomials of degree at most bound."""
    count = 0
    for m in product(range(bound + 1), repeat=4):
        if sum(m) > bound or (m[0] and m[3]):
            continue
        x = _element(m)
        delta = sl2_coproduct(x)
        left = SL2FunctionElement()
        right = SL2FunctionElement()
        eps_left = SL2FunctionElement()
        for (m1, m2), coeff in delta.items():
            left = left + sl2_antipode(_element(m1)) * _element(m2) * coeff
            right = right + _element(m1) * sl2_antipode(_element(m2)) * coeff
            eps_left = eps_left + _element(m2) * (coeff * sl2_counit(_element(m1)))
        unit = SL2FunctionElement.one() * sl2_counit(x)
        if left != unit or right != unit:
            raise PropertyFailure("antipode axiom fails in F[SL2]", witness=m)
        if eps_left != x:
            raise PropertyFailure("counit axiom fails in F[SL2]", witness=m)
        count += 1
    return count


# the embedding xi

@lru_cache(maxsize=None)
def xi_datum():
    return build_cartan("A1", "P")


def _xi_generators() -> dict:
    H = get_algebra(xi_datum(), "H")
    cq = qpow(1) - qpow(-1)
    L, Linv = H.L((1,)), H.L((-1,))
    E, F = H.E(0), H.F(0)
    return {
        "a": L - F * Linv * E * (cq * cq),
        "b": F * Linv * -cq,
        "c": Linv * E * cq,
        "d": Linv,
        "one": H.one(),
    }


def sl2_embed_xi(x: SL2FunctionElement):
    """xi(x) in H for A1 on the weight lattice with phi = 0."""
    gens = _xi_generators()
    H = gens["one"].algebra
    out = H.zero()
    for (i, j, k, l), coeff in x.terms.items():
        term = gens["a"] ** i * gens["b"] ** j * gens["c"] ** k * gens["d"] ** l
        out = out + term * coeff
    return out


def xi_relation_check() -> int:
    """Images of a, b, c, d satisfy the defining relations in H."""
    gens = _xi_generators()
    for name, rel in sl2_relations().items():
        value = rel(gens)
        if value:
            raise RelationFailure(f"xi does not respect {name}", witness=value.render())
    log.info("xi respects all %d relations", len(sl2_relations()))
    return len(sl2_relations())


def xi_tensor(t: dict) -> TensorElement:
    H = get_algebra(xi_datum(), "H")
    out = TensorElement((H, H))
    for (m1, m2), coeff in t.items():
        out = out + TensorElement.pure(sl2_embed_xi(_element(m1)), sl2_embed_xi(_element(m2))) * coeff
    return out


def xi_hopf_check(degree: int = 2, window: int = 2) -> int:
    """Delta(xi(x)) = (xi (x) xi) Delta(x) and S(xi(x)) = xi(S(x)) on the window, x in a, b, c, d."""
    count = 0
    for letter in LETTERS:
        x = SL2FunctionElement.generator(letter)
        f = nu_embed(sl2_embed_xi(x))
        checked = agree_on_window(dual_coproduct(f), nu_tensor(xi_tensor(sl2_coproduct(x))), degree, window)
        if checked < 0:
            raise PropertyFailure("xi does not intertwine coproducts", witness=letter)
        count += checked
        checked = agree_on_window(dual_antipode(f), nu_embed(sl2_embed_xi(sl2_antipode(x))), degree, window)
        if checked < 0:
            raise PropertyFailure("xi does not intertwine antipodes", witness=letter)
        count += checked
    return count


# the closed series of the A1 formal group

SERIES = ("delta_F", "delta_L", "delta_L_inv", "delta_K", "delta_K_inv", "delta_E",
          "antipode_F", "antipode_L", "antipode_L_inv", "antipode_K", "antipode_K_inv", "antipode_E")

SOURCES = {"F": lambda H: H.F(0), "E": lambda H: H.E(0), "L": lambda H: H.L((1,)),
           "L_inv": lambda H: H.L((-1,)), "K": lambda H: H.L((2,)), "K_inv": lambda H: H.L((-2,))}


@dataclass
class SeriesReport:
    name: str
    degree: int
    window: int
    terms: int

    def to_json(self) -> dict:
        return {"series": self.name, "degree": self.degree, "window": self.window, "terms": self.terms,
                "passed": True}


def _series_terms(H, name: str, n_max: int):
    """Closed form of the named series summed over n <= n_max."""
    cq = qpow(1) - qpow(-1)
    E, F, one = H.E(0), H.F(0), H.one()
    L = lambda k: H.L((k,))
    pure = TensorElement.pure
    if name == "delta_L_inv":
        return pure(L(-1), L(-1)) - pure(L(-1) * E, F * L(-1)) * cq ** 2
    if name == "delta_K_inv":
        return (pure(L(-2), L(-2)) - pure(L(-2) * E, F * L(-2)) * (q_number(2) * cq ** 2)
                + pure(L(-2) * E ** 2, F ** 2 * L(-2)) * cq ** 4)
    if name == "antipode_L_inv":
        return L(1) - F * L(-1) * E * cq ** 2
    if name == "antipode_K_inv":
        return L(2) - F * E * (q_number(2) * cq ** 2) + F ** 2 * L(-2) * E ** 2 * cq ** 4
    if name.startswith("delta"):
        out = TensorElement((H, H))
        if name == "delta_F":
            out = pure(F, one)
        if name == "delta_E":
            out = pure(one, E)
    else:
        out = H.zero()
    for n in range(n_max + 1):
        c2n = cq ** (2 * n)
        if name == "delta_F":
            out = out + pure(L(2) * E ** n, F ** (n + 1)) * (qpow(-n) * c2n)
        elif name == "delta_L":
            out = out + pure(L(1) * E ** n, F ** n * L(1)) * c2n
        elif name == "delta_K":
            out = out + pure(L(2) * E ** n, F ** n * L(2)) * (q_number(n + 1) * c2n)
        elif name == "delta_E":
            out = out + pure(E ** (n + 1), F ** n * L(2)) * (qpow(n) * c2n)
        elif name == "antipode_F":
            out = out - F ** (n + 1) * L(-2 * (n + 1)) * E ** n * (qpow(-n - 2) * c2n)
        elif name == "antipode_L":
            out = out + F ** n * L(-(2 * n + 1)) * E ** n * c2n
        elif name == "antipode_K":
            out = out + F ** n * L(-2 * (n + 1)) * E ** n * (q_number(n + 1) * c2n)
        elif name == "antipode_E":
            out = out - F ** n * L(-2 * (n + 1)) * E ** (n + 1) * (qpow(n + 2) * c2n)
    return out


def _within(m, degree: int) -> bool:
    return m.e_degree <= degree and m.f_degree <= degree


def sl2_series(name: str, degree: int):
    """The closed series truncated to E and F degrees at most degree in every factor."""
    if name not in SERIES:
        raise ValueError(f"unknown series {name!r}; expected one of {SERIES}")
    H = get_algebra(xi_datum(), "H")
    full = _series_terms(H, name, degree + 1)
    if isinstance(full, TensorElement):
        return TensorElement(full.algebras, {k: v for k, v in full.terms.items()
                                             if all(_within(m, degree) for m in k)})
    return H.element({m: v for m, v in full.terms.items() if _within(m, degree)})


def sl2_series_window(name: str, degree: int) -> int:
    """Smallest toral window holding every character of the truncated series."""
    series = sl2_series(name, degree)
    keys = series.terms if not isinstance(series, TensorElement) else [m for k in series.terms for m in k]
    return max([1] + [abs(m.mu[0]) for m in keys])


def sl2_series_check(name: str, degree: int = 1, window: int | None = None) -> SeriesReport:
    """Reconstruct Delta or S of the named generator and compare with its closed series."""
    if name not in SERIES:
        raise ValueError(f"unknown series {name!r}; expected one of {SERIES}")
    H = get_algebra(xi_datum(), "H")
    op, source = name.split("_", 1)
    window = window or sl2_series_window(name, degree)
    f = nu_embed(SOURCES[source](H))
    if op == "delta":
        got = reconstruct_tensor(dual_coproduct(f), degree, window)
    else:
        got = reconstruct_series(dual_antipode(f), degree, window)
    want = sl2_series(name, degree)
    if got != want:
        diff = got - want
        key = next(iter(diff.terms))
        raise PropertyFailure(f"{name} differs from its closed series",
                              witness={"term": repr(key), "coeff": render_scalar(diff.terms[key])})
    log.info("%s matches its closed series up to degree %d", name, degree)
    return SeriesReport(name, degree, window, len(want.terms))


__all__ = [
    "SL2FunctionElement", "a", "b", "c", "d", "sl2_relations", "sl2_relation_check", "sl2_coproduct",
    "sl2_counit", "sl2_antipode", "sl2_hopf_check", "xi_datum", "sl2_embed_xi", "xi_relation_check",
    "xi_tensor", "xi_hopf_check", "SERIES", "SeriesReport", "sl2_series", "sl2_series_window",
    "sl2_series_check",
]
