"""Independent normal forms by linear algebra in the free algebra.

Each Q+-graded piece of the positive (or negative) part is computed as the
quotient of the span of words by the two-sided ideal generated by the quantum
Serre relations.  Mixed words are first sorted into E-words, a toral letter
and F-words using only the defining relations on simple generators.
"""
import logging
from functools import lru_cache
from itertools import product

from ..config import LIMITS
from .errors import ConventionFailure, DegreeTooLarge, PresentationMismatch
from .linalg import columns_matrix, rref
from .monomial import PBWMonomial, vec_add
from .qcoeff import ONE, qpow
from .relations import LETTERS, check_kind, cross_terms, toral_exponent, toral_weight
from .rootvec import e_monomial_words, f_monomial_words, monomials_of_weight
from .words import add_into, group_by_weight, serre_relations, split_weights, words_of_weight

log = logging.getLogger(__name__)


class GradedComponent:
    """One weight space of U+ (side 'E') or U- (side 'F') with its PBW coordinates."""

    def __init__(self, datum, side: str, beta: tuple) -> None:
        self.datum = datum
        self.side = side
        self.beta = tuple(beta)
        self.words = words_of_weight(beta)
        self.index = {w: k for k, w in enumerate(self.words)}
        self.basis = monomials_of_weight(datum, beta)
        self.ideal = self._ideal_columns()
        self.expansions = [self._expand(m) for m in self.basis]
        self._coords = self._solve()

    def _expand(self, m: tuple) -> dict:
        if self.side == "E":
            return e_monomial_words(self.datum, m)
        return f_monomial_words(self.datum, m)

    def _ideal_columns(self) -> list:
        cols = []
        for gamma, rel in serre_relations(self.datum):
            rest = tuple(b - g for b, g in zip(self.beta, gamma))
            if any(x < 0 for x in rest):
                continue
            for left, right in split_weights(rest):
                for u in words_of_weight(left):
                    for v in words_of_weight(right):
                        cols.append({self.index[u + w + v]: c for w, c in rel.items()})
        return cols

    def _solve(self) -> dict:
        nw, ni, nb = len(self.words), len(self.ideal), len(self.basis)
        identity = [{k: ONE} for k in range(nw)]
        cols = self.ideal + [{self.index[w]: c for w, c in exp.items()} for exp in self.expansions] + identity
        reduced, pivots = rref(columns_matrix(cols, nw))
        pivot_row = {col: row for row, col in enumerate(pivots)}
        missing = [self.basis[j] for j in range(nb) if ni + j not in pivot_row]
        if missing:
            raise ConventionFailure(f"PBW monomials {missing} are dependent modulo the Serre ideal",
                                    witness=self.beta)
        if any(col >= ni + nb for col in pivots):
            raise ConventionFailure("PBW monomials do not span the graded piece", witness=self.beta)
        coords = {}
        for w, k in self.index.items():
            column = ni + nb + k
            coords[w] = {self.basis[j]: reduced[pivot_row[ni + j]][column]
                         for j in range(nb) if reduced[pivot_row[ni + j]][column]}
        log.debug("graded piece %s%s: %d words, %d basis monomials", self.side, self.beta, nw, nb)
        return coords

    def coordinates(self, word: tuple) -> dict:
        return self._coords[tuple(word)]

    def reduce(self, poly: dict) -> dict:
        out = {}
        for w, c in poly.items():
            add_into(out, self.coordinates(w), c)
        return out


@lru_cache(maxsize=None)
def component(datum, side: str, beta: tuple) -> GradedComponent:
    if sum(beta) > LIMITS["maxdeg"][1]:
        raise DegreeTooLarge(f"graded piece {beta} exceeds degree {LIMITS['maxdeg'][1]}")
    return GradedComponent(datum, side, beta)


def reduce_words(datum, side: str, poly: dict) -> dict:
    """PBW coordinates of a word polynomial in E letters or F letters."""
    out = {}
    for beta, part in group_by_weight(poly, datum.n).items():
        add_into(out, component(datum, side, beta).reduce(part))
    return out


def _word_weight(datum, word) -> tuple:
    counts = [0] * datum.n
    for i in word:
        counts[i] += 1
    return datum.from_alpha(counts)


def naive_reduce(datum, kind: str, letters) -> dict:
    """Sort a generator word into (E-word, toral, F-word) triples using the simple relations."""
    n = datum.n
    zero = (0,) * n
    state = {((), (zero, zero), ()): ONE}
    for sym, arg in letters:
        if sym not in LETTERS[kind]:
            raise PresentationMismatch(f"letter {sym} does not exist in presentation {kind}")
        new = {}
        for (ew, (mu, kappa), fw), c in state.items():
            if sym == "F":
                add_into(new, {(ew, (mu, kappa), fw + (arg,)): c})
            elif sym in ("L", "K"):
                tx = (tuple(arg), zero) if sym == "L" else (zero, tuple(arg))
                if sym == "K" and kind == "full":
                    tx = (datum.to_lattice(datum.from_alpha(arg)), zero)
                k = toral_exponent(datum, kind, toral_weight(datum, *tx), _word_weight(datum, fw), "F")
                tor = (vec_add(mu, tx[0]), vec_add(kappa, tx[1]))
                add_into(new, {(ew, tor, fw): c * qpow(-k)})
            else:
                k = toral_exponent(datum, kind, toral_weight(datum, mu, kappa), datum.alpha(arg), "E")
                add_into(new, {(ew + (arg,), (mu, kappa), fw): c * qpow(k)})
                for p, j in enumerate(fw):
                    if j != arg:
                        continue
                    for (tmu, tkappa), cx in cross_terms(datum, kind, arg):
                        kx = toral_exponent(datum, kind, toral_weight(datum, tmu, tkappa),
                                            _word_weight(datum, fw[:p]), "F")
                        tor = (vec_add(mu, tmu), vec_add(kappa, tkappa))
                        add_into(new, {(ew, tor, fw[:p] + fw[p + 1:]): c * cx * qpow(-kx)})
        state = new
    return state


def serre_oracle_normal_form(word, maxdeg: int, datum, kind: str = "full"):
    """Normal form of a generator word computed without straightening tables.

    word is a sequence of (symbol, argument) pairs: ("E", i), ("F", i) with 0-based
    simple indices, ("L", mu) in lattice coordinates or ("K", kappa) in root coordinates.
    """
    from .algebra import get_algebra

    check_kind(kind)
    if kind == "H":
        raise PresentationMismatch("the oracle covers the Serre presentations only")
    limit = LIMITS["maxdeg"][1]
    degree = sum(1 for sym, _ in word if sym in ("E", "F"))
    if maxdeg > limit or degree > maxdeg:
        raise DegreeTooLarge(f"word of degree {degree} exceeds bound {min(maxdeg, limit)}")
    triples = naive_reduce(datum, kind, word)
    terms = {}
    for (ew, (mu, kappa), fw), c in triples.items():
        e_part = reduce_words(datum, "E", {ew: ONE})
        f_part = reduce_words(datum, "F", {fw: ONE})
        for e, ce in e_part.items():
            for f, cf in f_part.items():
                add_into(terms, {PBWMonomial(e, mu, kappa, f): c * ce * cf})
    return get_algebra(datum, kind).element(terms)


def oracle_check(datum, length: int = 4, kind: str = "full") -> int:
    """Straightened products of generator words agree with the oracle; returns the word count."""
    from .algebra import get_algebra

    alg = get_algebra(datum, kind)
    letters = [(sym, i) for sym in ("E", "F") for i in range(datum.n)]
    count = 0
    for k in range(1, length + 1):
        for word in product(letters, repeat=k):
            if alg.from_letters(word) != serre_oracle_normal_form(word, length, datum, kind):
                raise ConventionFailure("straightening disagrees with the oracle", witness=word)
            count += 1
    log.info("oracle agrees on %d words for %s", count, datum.cartan_type)
    return count
