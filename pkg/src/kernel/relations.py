"""Defining relations of the supported presentations.

Each presentation fixes which letters exist, how toral letters commute past
root vectors and what the commutator [F_i, E_i] is.
"""
from fractions import Fraction

from .errors import PresentationMismatch
from .qcoeff import ONE, qpow

KINDS = ("borel_minus", "borel_plus", "double", "full", "H")

LETTERS = {
    "borel_minus": {"F", "L"},
    "borel_plus": {"E", "L"},
    "double": {"E", "F", "L", "K"},
    "full": {"E", "F", "L", "K"},
    "H": {"E", "F", "L"},
}


def check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise PresentationMismatch(f"unknown presentation {kind!r}; expected one of {KINDS}")
    return kind


def toral_weight(datum, mu, kappa) -> tuple:
    a = datum.from_lattice(mu)
    b = datum.from_alpha(kappa)
    return tuple(x + y for x, y in zip(a, b))


def toral_exponent(datum, kind: str, weight, beta, side: str) -> Fraction:
    """Exponent k with T X = q^k X T for T of the given weight and X a root vector of
    positive weight beta on the given side ('E' or 'F')."""
    k = datum.bilinear(beta, weight)
    if kind == "H":
        twist = datum.bilinear(beta, datum.phi_of(weight))
        return k - twist if side == "E" else k + twist
    return k if side == "E" else -k


def cross_terms(datum, kind: str, i: int) -> list:
    """[F_i, E_i] as a list of ((mu, kappa), coefficient)."""
    if kind == "H":
        return []
    if kind not in ("full", "double"):
        raise PresentationMismatch(f"presentation {kind} has no cross relation")
    n = datum.n
    di = datum.d[i]
    c = ONE / (qpow(di) - qpow(-di))
    zero = (0,) * n
    up = datum.to_lattice(datum.alpha(i))
    if kind == "full":
        down = (tuple(-x for x in up), zero)
    else:
        down = (zero, tuple(-1 if k == i else 0 for k in range(n)))
    return [((up, zero), -c), (down, c)]
