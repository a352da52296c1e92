"""Hopf pairings between opposite Borel subalgebras and their consequences.

drt_pi     U<=(M) x U>=(M')   pi(L_mu, L_nu) = q^-(r(mu)|nu),
                              pi(F_i, E_j) = delta_ij q^-(r(tau_i)|tau_i) / (q_i^-1 - q_i)
drt_pibar  U>=(M) x U<=(M')   pibar(L_mu, L_nu) = q^(rbar(mu)|nu),
                              pibar(E_i, F_j) = delta_ij q^(rbar(tau_i)|tau_i) / (q_i - q_i^-1)

Both are evaluated on words in the generators by peeling one letter at a time
with the Hopf pairing identities.  Which tensor factor each identity pairs
with is an orientation chosen once per Cartan type by comparing against the
closed product formula on small monomials.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from ..config import LIMITS
from ..kernel.algebra import get_algebra
from ..kernel.cartan import build_cartan
from ..kernel.errors import DualityFailure, NoConsistentConvention, PresentationMismatch
from ..kernel.linalg import det
from ..kernel.qcoeff import ONE, ZERO, is_laurent, laurent_terms, q_factorial, qpow, render_scalar
from ..kernel.rootvec import (descending_letters, ascending_letters, e_monomial_words, monomials_of_weight,
                              root_word, root_word_f)
from ..kernel.words import word_mul
from .forms import FormBasisMonomial, filtration_degree, materialize, restricted_toral_poly

log = logging.getLogger(__name__)

PAIRING_KINDS = ("drt_pi", "drt_pibar", "quantum_poisson", "scaled_poisson_UU", "scaled_poisson_FF")


@dataclass(frozen=True)
class PairingConvention:
    """op_product: <xy, z> pairs x with z(2); op_split: <x, zw> pairs x(1) with z."""

    op_product: bool = False
    op_split: bool = False

    def to_json(self) -> dict:
        return {"op_product": self.op_product, "op_split": self.op_split}


ORIENTATIONS = tuple(PairingConvention(a, b) for a in (False, True) for b in (False, True))


def _vec(w) -> tuple:
    return tuple(Fraction(c) for c in w)


def toral_word(w) -> tuple:
    w = _vec(w)
    return (("L", w),) if any(w) else ()


def tidy(word) -> tuple:
    """Merge adjacent toral letters and drop trivial ones."""
    out = []
    for letter in word:
        if letter[0] == "L":
            if out and out[-1][0] == "L":
                w = tuple(a + b for a, b in zip(out[-1][1], letter[1]))
                out.pop()
            else:
                w = _vec(letter[1])
            if any(w):
                out.append(("L", w))
        else:
            out.append(letter)
    return tuple(out)


def letter_coproduct(datum, letter) -> tuple:
    """Delta of one generator as pairs of words: E_i, F_i or L_w (w in omega-coordinates)."""
    sym, arg = letter
    if sym == "L":
        return (((letter,), (letter,)),)
    alpha = datum.alpha(arg)
    tau = datum.tau(arg)
    if sym == "E":
        return (((letter,), toral_word(tau)), (toral_word(a - t for a, t in zip(alpha, tau)), (letter,)))
    return (((letter,), toral_word(-a - t for a, t in zip(alpha, tau))), (toral_word(tau), (letter,)))


def _pi_generator(datum, a, b):
    if a[0] == "L" and b[0] == "L":
        return qpow(-datum.bilinear(datum.r_of(a[1]), b[1]))
    if a[0] == "F" and b[0] == "E" and a[1] == b[1]:
        d = datum.d[a[1]]
        tau = datum.tau(a[1])
        return qpow(-datum.bilinear(datum.r_of(tau), tau)) / (qpow(-d) - qpow(d))
    return ZERO


def _pibar_generator(datum, a, b):
    if a[0] == "L" and b[0] == "L":
        return qpow(datum.bilinear(datum.rbar_of(a[1]), b[1]))
    if a[0] == "E" and b[0] == "F" and a[1] == b[1]:
        d = datum.d[a[1]]
        tau = datum.tau(a[1])
        return qpow(datum.bilinear(datum.rbar_of(tau), tau)) / (qpow(d) - qpow(-d))
    return ZERO


GENERATORS = {"drt_pi": _pi_generator, "drt_pibar": _pibar_generator}


class WordPairing:
    """Memoized evaluation of one pairing on generator words."""

    def __init__(self, datum, kind: str, convention: PairingConvention) -> None:
        self.datum = datum
        self.kind = kind
        self.generator = GENERATORS[kind]
        self.convention = convention
        self._memo = {}
        self._delta = {}

    def degree(self, word) -> tuple:
        counts = [0] * self.datum.n
        for sym, arg in word:
            if sym != "L":
                counts[arg] += 1
        return tuple(counts)

    def coproduct(self, word) -> dict:
        hit = self._delta.get(word)
        if hit is not None:
            return hit
        out = {((), ()): 1}
        for letter in word:
            new = {}
            for (a, b), m in out.items():
                for c, d in letter_coproduct(self.datum, letter):
                    key = (tidy(a + c), tidy(b + d))
                    new[key] = new.get(key, 0) + m
            out = new
        self._delta[word] = out
        return out

    def __call__(self, xw, yw):
        key = (xw, yw)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if self.degree(xw) != self.degree(yw):
            out = ZERO
        elif not xw or not yw:
            out = ONE
        elif len(xw) == 1 and len(yw) == 1:
            out = self.generator(self.datum, xw[0], yw[0])
        elif len(xw) > 1:
            out = self._split_product(xw, yw)
        else:
            out = self._split_argument(xw[0], yw)
        self._memo[key] = out
        return out

    def _split_product(self, xw, yw):
        head, rest = xw[:1], xw[1:]
        want = self.degree(head)
        out = ZERO
        for (y1, y2), m in self.coproduct(yw).items():
            first, second = (y2, y1) if self.convention.op_product else (y1, y2)
            if self.degree(first) != want:
                continue
            v = self(head, first)
            if v:
                out += v * self(rest, second) * m
        return out

    def _split_argument(self, letter, yw):
        z, w = yw[:1], yw[1:]
        out = ZERO
        for x1, x2 in letter_coproduct(self.datum, letter):
            if self.convention.op_split:
                out += self(x1, z) * self(x2, w)
            else:
                out += self(x2, z) * self(x1, w)
        return out

    def polys(self, xpoly: dict, ypoly: dict):
        out = ZERO
        for xw, xc in xpoly.items():
            for yw, yc in ypoly.items():
                v = self(xw, yw)
                if v:
                    out += xc * yc * v
        return out


def untwisted(datum):
    if datum.is_untwisted:
        return datum
    if datum.lattice_name in ("P", "Q"):
        lattice = datum.lattice_name
    else:
        lattice = [[int(datum.lattice[j][k]) for j in range(datum.n)] for k in range(datum.n)]
    return build_cartan(datum.cartan_type, lattice, None, datum.reduced_word)


@lru_cache(maxsize=None)
def word_pairing(datum, kind: str, convention: PairingConvention = None) -> WordPairing:
    if convention is None:
        convention = resolve_pairing_convention(datum).convention
    return WordPairing(datum, kind, convention)


# closed form

def letter_words(poly: dict, sym: str) -> dict:
    return {tuple((sym, i) for i in w): c for w, c in poly.items()}


def descending_f_words(datum, f: tuple) -> dict:
    out = {(): ONE}
    for r in descending_letters(f):
        out = word_mul(out, root_word_f(datum, r))
    return out


def closed_form_pair(datum, f: tuple, e: tuple, mu=None, nu=None):
    """pi(F^f L_mu, E^e L_nu) for descending monomials of an untwisted datum.

    mu, nu are weights in omega-coordinates.
    """
    if not datum.is_untwisted:
        raise ValueError("the product formula is implemented for untwisted data")
    if tuple(f) != tuple(e):
        return ZERO
    out = ONE
    for r, k in enumerate(e):
        d = datum.roots.d_alpha[r]
        c = ONE / (qpow(-d) - qpow(d))
        out *= q_factorial(k, d) * qpow(d * comb(k, 2)) * c ** k
    if mu is not None and nu is not None:
        out *= qpow(-datum.bilinear(mu, nu))
    return out


def _small_monomials(datum, bound: int) -> list:
    N = datum.roots.N
    return [v for v in product(range(bound + 1), repeat=N) if sum(v) <= bound]


def _closed_form_failures(datum, convention: PairingConvention, bound: int) -> list:
    pairing = WordPairing(datum, "drt_pi", convention)
    torals = [datum.from_alpha((0,) * datum.n)] + [datum.alpha(i) for i in range(datum.n)]
    failures = []
    for f in _small_monomials(datum, bound):
        fw = letter_words(descending_f_words(datum, f), "F")
        for e in _small_monomials(datum, bound):
            ew = letter_words(e_monomial_words(datum, e), "E")
            for mu, nu in product(torals, repeat=2):
                x = {tidy(w + toral_word(mu)): c for w, c in fw.items()}
                y = {tidy(w + toral_word(nu)): c for w, c in ew.items()}
                if pairing.polys(x, y) != closed_form_pair(datum, f, e, mu, nu):
                    failures.append((f, e, mu, nu))
    return failures


@dataclass
class ConventionRecord:
    cartan_type: str
    convention: PairingConvention
    passing: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"type": self.cartan_type, "convention": self.convention.to_json(),
                "passing": [c.to_json() for c in self.passing]}


@lru_cache(maxsize=None)
def _resolve(datum) -> ConventionRecord:
    passing = [c for c in ORIENTATIONS if not _closed_form_failures(datum, c, 2)]
    if not passing:
        raise NoConsistentConvention(f"no orientation of the pairing identities matches the product "
                                     f"formula for {datum.cartan_type}")
    log.info("pairing orientation for %s: %s (%d of %d pass)", datum.cartan_type, passing[0],
             len(passing), len(ORIENTATIONS))
    return ConventionRecord(datum.cartan_type, passing[0], passing)


def resolve_pairing_convention(datum) -> ConventionRecord:
    return _resolve(untwisted(datum))


def closed_form_check(datum, bound: int = 3) -> int:
    """Recursive evaluation equals the product formula on descending monomials up to bound."""
    base = untwisted(datum)
    failures = _closed_form_failures(base, resolve_pairing_convention(base).convention, bound)
    if failures:
        raise NoConsistentConvention("recursive pairing differs from the product formula", witness=failures[0])
    return len(_small_monomials(base, bound)) ** 2


# pairing of algebra elements

def _same_type(x, y) -> None:
    a, b = x.algebra.datum, y.algebra.datum
    if a.cartan_type != b.cartan_type or a.phi != b.phi:
        raise PresentationMismatch("paired elements live over different Cartan data")


def minus_words(alg, m) -> dict:
    """L_mu F^f as generator words."""
    head = toral_word(alg.datum.from_lattice(m.mu))
    return {tidy(head + w): c for w, c in letter_words(alg.monomial_letters(m)[2], "F").items()}


def plus_words(alg, m) -> dict:
    """E^e L_mu as generator words."""
    tail = toral_word(alg.datum.from_lattice(m.mu))
    return {tidy(w + tail): c for w, c in letter_words(alg.monomial_letters(m)[0], "E").items()}


def drt_pair(kind: str, x, y):
    """Bilinear pairing of a Borel element x against an opposite Borel element y."""
    if kind not in GENERATORS:
        raise PresentationMismatch(f"{kind} is not a DRT pairing")
    want = ("borel_minus", "borel_plus") if kind == "drt_pi" else ("borel_plus", "borel_minus")
    if (x.algebra.kind, y.algebra.kind) != want:
        raise PresentationMismatch(f"{kind} pairs {want[0]} with {want[1]}, got "
                                   f"{x.algebra.kind} with {y.algebra.kind}")
    _same_type(x, y)
    pairing = word_pairing(x.algebra.datum, kind)
    xw = minus_words if kind == "drt_pi" else plus_words
    yw = plus_words if kind == "drt_pi" else minus_words
    out = ZERO
    for mx, cx in x.terms.items():
        px = xw(x.algebra, mx)
        for my, cy in y.terms.items():
            if x.algebra.weight_of(mx) != tuple(-c for c in y.algebra.weight_of(my)):
                continue
            out += cx * cy * pairing.polys(px, yw(y.algebra, my))
    return out


def drt_gram(datum, beta, dual=None) -> list:
    """Gram matrix of drt_pi between the F-monomials and E-monomials of weight beta."""
    dual = dual or datum
    minus = get_algebra(datum, "borel_minus")
    plus = get_algebra(dual, "borel_plus")
    monos = monomials_of_weight(datum, beta)
    rows = [minus.element({minus.monomial(f=f): ONE}) for f in monos]
    cols = [plus.element({plus.monomial(e=e): ONE}) for e in monos]
    return [[drt_pair("drt_pi", x, y) for y in cols] for x in rows]


def weights_up_to(n: int, height: int) -> list:
    return [v for v in product(range(height + 1), repeat=n) if 0 < sum(v) <= height]


def perfection_check(datum, height: int = 3) -> dict:
    """Determinant of the drt Gram matrix for every weight of height at most height."""
    out = {}
    for beta in weights_up_to(datum.n, height):
        if not monomials_of_weight(datum, beta):
            continue
        value = det(drt_gram(datum, beta))
        if not value:
            raise DualityFailure("drt pairing is degenerate", witness=beta)
        out[beta] = value
    return out


# quantum Poisson pairing

def _modified_words(datum, side: str, exps: tuple) -> dict:
    """Modified root vectors L_{tau beta} X_beta multiplied in normal order, as words."""
    letters = descending_letters(exps) if side == "E" else ascending_letters(exps)
    out = {(): ONE}
    for r in letters:
        head = toral_word(datum.tau_of(datum.root_weight(r)))
        poly = root_word(datum, r) if side == "E" else root_word_f(datum, r)
        step = {head + tuple((side, i) for i in w): c for w, c in poly.items()}
        out = {tidy(a + b): ca * cb for a, ca in out.items() for b, cb in step.items()}
    return out


def _root_sum(datum, exps: tuple) -> tuple:
    out = datum.from_alpha((0,) * datum.n)
    for r, k in enumerate(exps):
        if k:
            out = tuple(a + k * b for a, b in zip(out, datum.root_weight(r)))
    return out


def h_split(datum, m) -> tuple:
    """An H monomial E.L_mu.F rewritten as scalar * F.L_mu.E and sent to its two tensor factors."""
    mu = datum.from_lattice(m.mu)
    phimu = datum.phi_of(mu)
    beta_e = _root_sum(datum, m.e)
    beta_f = _root_sum(datum, m.f)
    x_e = datum.bilinear(beta_e, mu) - datum.bilinear(beta_e, phimu)
    x_f = datum.bilinear(beta_f, mu) + datum.bilinear(beta_f, phimu)
    left_tail = toral_word(tuple(-a - b for a, b in zip(mu, phimu)))
    right_head = toral_word(tuple(a - b for a, b in zip(mu, phimu)))
    left = {tidy(w + left_tail): c for w, c in _modified_words(datum, "F", m.f).items()}
    right = {tidy(right_head + w): c for w, c in _modified_words(datum, "E", m.e).items()}
    return qpow(x_f - x_e), left, right


def quantum_poisson_pair(h, g):
    """<h, g> for h in H and g in U, through h -> (F part . L) (x) (L . E part)."""
    if h.algebra.kind != "H":
        raise PresentationMismatch("the first argument of the quantum Poisson pairing lives in H")
    if g.algebra.kind not in ("full", "borel_plus", "borel_minus"):
        raise PresentationMismatch(f"cannot pair H with the {g.algebra.kind} presentation")
    _same_type(h, g)
    hdatum = h.algebra.datum
    pi = word_pairing(hdatum, "drt_pi")
    pibar = word_pairing(hdatum, "drt_pibar")
    galg = g.algebra
    gparts = {}
    for gm in g.terms:
        e_words, _, f_words = galg.monomial_letters(gm)
        tail = toral_word(galg.datum.from_lattice(gm.mu))
        gparts[gm] = ({tidy(w + tail): c for w, c in letter_words(e_words, "E").items()},
                      letter_words(f_words, "F"))
    out = ZERO
    for hm, hc in h.terms.items():
        scale, left, right = h_split(hdatum, hm)
        for gm, gc in g.terms.items():
            if gm.e_degree != hm.f_degree or gm.f_degree != hm.e_degree:
                continue
            gl, gr = gparts[gm]
            a = pi.polys(left, gl)
            if not a:
                continue
            out += hc * gc * scale * a * pibar.polys(right, gr)
    return out


def scaled_poisson_pair(kind: str, h, g):
    """(q - 1)^(+-d(g)) <h, g> with d(g) the filtration degree of g over the relevant form of U.

    UU uses the restricted form and multiplies, FF the dkp form and divides.
    The power is fixed by g as a whole, not per monomial.
    """
    if kind not in ("UU", "FF"):
        raise ValueError(f"unknown scaled pairing {kind!r}")
    form = "restricted" if kind == "UU" else "dkp"
    sign = 1 if kind == "UU" else -1
    degree = filtration_degree(g, form)
    value = quantum_poisson_pair(h, g)
    if not value:
        return ZERO
    return value * (qpow(1) - ONE) ** (sign * degree)


# duality of the integer forms

@dataclass
class DualityReport:
    blocks: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"blocks": [{"label": label, "size": size, "det": render_scalar(value)}
                           for label, size, value in self.blocks]}


def is_unit(x) -> bool:
    """x = +-q^k in k[q, q^-1]."""
    if not x or not is_laurent(x):
        return False
    terms = laurent_terms(x)
    return len(terms) == 1 and abs(next(iter(terms.values()))) == 1


def _gram_block(rows: list, cols: list, kind: str, label: str):
    gram = []
    for a, x in rows:
        row = []
        for b, y in cols:
            value = drt_pair(kind, x, y)
            if not is_laurent(value):
                raise DualityFailure(f"{label}: pairing is not a Laurent polynomial", witness=(a, b))
            row.append(value)
        gram.append(row)
    value = det(gram)
    if not is_unit(value):
        raise DualityFailure(f"{label}: Gram determinant {render_scalar(value)} is not a unit", witness=label)
    return value


def duality_gram_check(datum, bound: int = 2) -> DualityReport:
    """Restricted forms pair into k[q, q^-1] with the dkp forms, with unit Gram determinants."""
    lo, hi = LIMITS["gram"]
    if not lo <= bound <= hi:
        raise ValueError(f"weight height bound must lie in [{lo}, {hi}]")
    if not datum.is_untwisted or len(set(datum.d)) != 1:
        raise ValueError("integral duality is checked for untwisted simply-laced data")
    dual = datum.dual()
    minus = get_algebra(datum, "borel_minus")
    plus = get_algebra(dual, "borel_plus")
    report = DualityReport()
    zero_N, zero_n = minus.zero_N, minus.zero_n
    for beta in weights_up_to(datum.n, bound):
        monos = monomials_of_weight(datum, beta)
        if not monos:
            continue
        for f_form, e_form in (("restricted", "dkp"), ("dkp", "restricted")):
            rows = [(m, materialize(m, minus)) for m in
                    (FormBasisMonomial(f_form, zero_N, zero_n, f) for f in monos)]
            cols = [(m, materialize(m, plus)) for m in
                    (FormBasisMonomial(e_form, e, zero_n, zero_N) for e in monos)]
            label = f"{f_form}/{e_form} weight {beta}"
            report.blocks.append((label, len(rows), _gram_block(rows, cols, "drt_pi", label)))
    span = list(product(range(bound + 1), repeat=datum.n))
    restricted = [(t, _restricted_toral(minus, t)) for t in span]
    characters = [(t, plus.L(tuple(-s for s in t))) for t in span]
    label = "restricted/dkp toral"
    report.blocks.append((label, len(span), _gram_block(restricted, characters, "drt_pi", label)))
    log.info("integral duality holds on %d blocks", len(report.blocks))
    return report


def _restricted_toral(alg, t: tuple):
    return materialize(FormBasisMonomial("restricted", alg.zero_N, tuple(t), alg.zero_N), alg)


def toral_gram(datum, bound: int) -> list:
    """Gram matrix of restricted toral basis elements of U<= against L_-s, s in [0, bound]^n."""
    minus = get_algebra(datum, "borel_minus")
    plus = get_algebra(datum.dual(), "borel_plus")
    span = list(product(range(bound + 1), repeat=datum.n))
    return [[drt_pair("drt_pi", _restricted_toral(minus, t), plus.L(tuple(-c for c in s))) for s in span]
            for t in span]


__all__ = [
    "PAIRING_KINDS", "PairingConvention", "WordPairing", "closed_form_pair", "closed_form_check",
    "resolve_pairing_convention", "drt_pair", "drt_gram", "perfection_check", "quantum_poisson_pair",
    "scaled_poisson_pair", "duality_gram_check", "toral_gram", "is_unit", "restricted_toral_poly",
]
