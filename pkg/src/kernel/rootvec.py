"""Root vectors as word polynomials in the simple generators.

E root vectors are iterated q-brackets E_{a+b} = E_a E_b - q^(a|b) E_b E_a
along the convex order.  F root vectors are the images under the antilinear
anti-automorphism E_i -> F_i, q -> q^-1, rescaled so that the untwisted
pairing of F_beta against E_beta equals 1/(q_beta^-1 - q_beta).
"""
import logging
from functools import lru_cache

from .qcoeff import ONE, ZERO, bar, qpow
from .words import add_into, word_mul

log = logging.getLogger(__name__)


def ls_decomposition(datum, r: int) -> tuple[int, int] | None:
    """Split beta_r = beta_a + beta_b with a < r < b, smallest a first."""
    roots = datum.roots.roots
    target = roots[r]
    for a in range(r):
        for b in range(r + 1, len(roots)):
            if tuple(x + y for x, y in zip(roots[a], roots[b])) == target:
                return a, b
    return None


@lru_cache(maxsize=None)
def root_word(datum, r: int) -> dict:
    """E_{beta_r} in the free algebra on E_1..E_n."""
    beta = datum.roots.roots[r]
    if sum(beta) == 1:
        return {(beta.index(1),): ONE}
    split = ls_decomposition(datum, r)
    if split is None:
        raise ValueError(f"root {beta} has no decomposition compatible with the order")
    a, b = split
    wa, wb = root_word(datum, a), root_word(datum, b)
    k = datum.bilinear(datum.root_weight(a), datum.root_weight(b))
    out = word_mul(wa, wb)
    add_into(out, word_mul(wb, wa), -qpow(k))
    log.debug("root vector %s from brackets of %s and %s", beta, datum.roots.roots[a], datum.roots.roots[b])
    return out


def sigma_bar(poly: dict) -> dict:
    return {tuple(reversed(w)): bar(c) for w, c in poly.items()}


def _prefix_weight(datum, word) -> tuple:
    out = [0] * datum.n
    for i in word:
        out[i] += 1
    return datum.from_alpha(out)


@lru_cache(maxsize=None)
def simple_pairing(datum, fword: tuple, eword: tuple):
    """Untwisted pairing of the F-word against the E-word."""
    if len(fword) != len(eword):
        return ZERO
    if not fword:
        return ONE
    i, rest = fword[0], fword[1:]
    di = datum.d[i]
    c = ONE / (qpow(-di) - qpow(di))
    out = ZERO
    for p, j in enumerate(eword):
        if j != i:
            continue
        k = datum.bilinear(datum.alpha(i), _prefix_weight(datum, eword[:p]))
        out += qpow(k) * c * simple_pairing(datum, rest, eword[:p] + eword[p + 1:])
    return out


def pair_word_polys(datum, fpoly: dict, epoly: dict):
    out = ZERO
    for fw, fc in fpoly.items():
        for ew, ec in epoly.items():
            out += fc * ec * simple_pairing(datum, fw, ew)
    return out


@lru_cache(maxsize=None)
def f_normalization(datum, r: int):
    d = datum.roots.d_alpha[r]
    e = root_word(datum, r)
    value = pair_word_polys(datum, sigma_bar(e), e)
    if not value:
        raise ValueError(f"root vector {datum.roots.roots[r]} pairs to zero with its image")
    return ONE / ((qpow(-d) - qpow(d)) * value)


@lru_cache(maxsize=None)
def root_word_f(datum, r: int) -> dict:
    lam = f_normalization(datum, r)
    return {w: lam * c for w, c in sigma_bar(root_word(datum, r)).items()}


def descending_letters(e) -> list:
    return [r for r in reversed(range(len(e))) for _ in range(e[r])]


def ascending_letters(f) -> list:
    return [r for r in range(len(f)) for _ in range(f[r])]


@lru_cache(maxsize=None)
def e_monomial_words(datum, e: tuple) -> dict:
    out = {(): ONE}
    for r in descending_letters(e):
        out = word_mul(out, root_word(datum, r))
    return out


@lru_cache(maxsize=None)
def f_monomial_words(datum, f: tuple) -> dict:
    out = {(): ONE}
    for r in ascending_letters(f):
        out = word_mul(out, root_word_f(datum, r))
    return out


def monomials_of_weight(datum, beta) -> list[tuple]:
    """Exponent vectors e with sum_r e_r beta_r = beta (alpha-coordinates)."""
    roots = datum.roots.roots
    out = []

    def walk(r, rest, acc):
        if r == len(roots):
            if not any(rest):
                out.append(tuple(acc))
            return
        k = 0
        while all(x >= 0 for x in rest):
            walk(r + 1, rest, acc + [k])
            rest = tuple(x - y for x, y in zip(rest, roots[r]))
            k += 1

    walk(0, tuple(beta), [])
    return sorted(out)
