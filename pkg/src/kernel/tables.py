"""Straightening tables for products of two root vectors.

E_r E_s (r < s) is expanded over descending monomials and F_s F_r (s > r) over
ascending monomials.  The untwisted tables are read off the oracle once per
datum; the tables of the algebra H are obtained from them by the 2-cocycle
twist E^phi_b E^phi_c = q^-(b|tau c) L_{tau(b+c)} E_b E_c.
"""
import logging
from functools import lru_cache

from .errors import ConventionFailure
from .oracle import component
from .qcoeff import is_laurent, qpow
from .rootvec import ascending_letters, descending_letters, root_word, root_word_f
from .words import word_mul

log = logging.getLogger(__name__)


def _pair_weight(datum, a: int, b: int) -> tuple:
    return tuple(x + y for x, y in zip(datum.roots.roots[a], datum.roots.roots[b]))


def _check_between(datum, expansion: dict, lo: int, hi: int, swapped: tuple) -> None:
    for m in expansion:
        if m == swapped:
            continue
        if any(m[k] for k in range(len(m)) if not lo < k < hi):
            raise ConventionFailure(
                f"straightening of roots {lo},{hi} leaves the interval between them", witness=m)


@lru_cache(maxsize=None)
def e_table(datum) -> dict:
    """{(r, s): {e-exponents: coeff}} for r < s."""
    N = datum.roots.N
    table = {}
    for r in range(N):
        for s in range(r + 1, N):
            poly = word_mul(root_word(datum, r), root_word(datum, s))
            expansion = component(datum, "E", _pair_weight(datum, r, s)).reduce(poly)
            bad = [c for c in expansion.values() if not is_laurent(c)]
            if bad:
                raise ConventionFailure(
                    f"E_{r + 1} E_{s + 1} does not straighten over Laurent polynomials", witness=bad[0])
            swapped = tuple(1 if k in (r, s) else 0 for k in range(N))
            _check_between(datum, expansion, r, s, swapped)
            table[(r, s)] = expansion
    log.info("E straightening table for %s: %d entries", datum.cartan_type, len(table))
    return table


@lru_cache(maxsize=None)
def f_table(datum) -> dict:
    """{(s, r): {f-exponents: coeff}} for s > r."""
    N = datum.roots.N
    table = {}
    for r in range(N):
        for s in range(r + 1, N):
            poly = word_mul(root_word_f(datum, s), root_word_f(datum, r))
            expansion = component(datum, "F", _pair_weight(datum, r, s)).reduce(poly)
            swapped = tuple(1 if k in (r, s) else 0 for k in range(N))
            _check_between(datum, expansion, r, s, swapped)
            table[(s, r)] = expansion
    log.info("F straightening table for %s: %d entries", datum.cartan_type, len(table))
    return table


def root_vectors(datum) -> dict:
    """{root: word polynomial} for the non-simple positive roots.

    Building the E table first makes a convention that does not close over
    Laurent polynomials fail with ConventionFailure.
    """
    e_table(datum)
    return {beta: root_word(datum, r) for r, beta in enumerate(datum.roots.roots) if sum(beta) > 1}


def _twist(datum, a: int, b: int):
    """(beta_a | tau beta_b)"""
    return datum.bilinear(datum.root_weight(a), datum.tau_of(datum.root_weight(b)))


def _word_twist(datum, letters) -> int:
    return sum(_twist(datum, letters[x], letters[y])
               for x in range(len(letters)) for y in range(x + 1, len(letters)))


@lru_cache(maxsize=None)
def h_e_table(datum) -> dict:
    table = {}
    for (r, s), expansion in e_table(datum).items():
        head = qpow(-_twist(datum, r, s))
        table[(r, s)] = {m: head * c * qpow(_word_twist(datum, descending_letters(m)))
                         for m, c in expansion.items()}
    return table


@lru_cache(maxsize=None)
def h_f_table(datum) -> dict:
    table = {}
    for (s, r), expansion in f_table(datum).items():
        head = qpow(_twist(datum, s, r))
        table[(s, r)] = {m: head * c * qpow(-_word_twist(datum, ascending_letters(m)))
                         for m, c in expansion.items()}
    return table
