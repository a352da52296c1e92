"""Cartan data, lattices, the twist phi and positive roots in convex order."""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np
from sympy import Matrix, Rational, eye, zeros

from ..config import CARTAN
from .errors import InvalidCartan, InvalidLattice, InvalidPhi, NotReduced

log = logging.getLogger(__name__)


def _frac(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def _fmat(m: Matrix) -> tuple:
    return tuple(tuple(_frac(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def _smat(rows) -> Matrix:
    return Matrix([[Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                    for c in row] for row in rows])


def _is_integral(m: Matrix) -> bool:
    return all(Rational(c).q == 1 for c in m)


def _apply(mat, v) -> tuple:
    return tuple(sum((mat[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(mat)))


@dataclass(frozen=True)
class RootSystemData:
    roots: tuple          # positive roots in convex order, alpha-coordinates
    word: tuple
    d_alpha: tuple

    @property
    def N(self) -> int:
        return len(self.roots)

    def index(self, root) -> int:
        return self.roots.index(tuple(root))

    def simple_index(self, i: int) -> int:
        """Position in the convex order of the simple root alpha_i (0-based i)."""
        n = len(self.roots[0])
        return self.roots.index(tuple(1 if k == i else 0 for k in range(n)))


@dataclass(frozen=True)
class CartanDatum:
    cartan_type: str
    A: tuple
    d: tuple
    lattice: tuple        # columns mu_i in omega-coordinates, stored as rows of the transpose
    lattice_name: str
    phi: tuple            # omega-coordinates, acts on column vectors
    reduced_word: tuple
    gram: tuple           # (omega_i | omega_j)
    r: tuple
    rbar: tuple
    dual_lattice: tuple   # columns nu_j in omega-coordinates, as rows of the transpose

    @property
    def n(self) -> int:
        return len(self.d)

    def alpha(self, i: int) -> tuple:
        return tuple(Fraction(self.A[k][i]) for k in range(self.n))

    def from_alpha(self, coeffs) -> tuple:
        return tuple(sum((Fraction(self.A[k][j]) * coeffs[j] for j in range(self.n)), Fraction(0))
                     for k in range(self.n))

    @cached_property
    def _alpha_inverse(self) -> tuple:
        return _fmat(_smat(self.A).inv())

    def to_alpha(self, w) -> tuple:
        return _apply(self._alpha_inverse, w)

    def bilinear(self, x, y) -> Fraction:
        return bilinear(x, y, self)

    def phi_of(self, w) -> tuple:
        return _apply(self.phi, w)

    def tau_of(self, w) -> tuple:
        return tuple(c / 2 for c in self.phi_of(w))

    def tau(self, i: int) -> tuple:
        return self.tau_of(self.alpha(i))

    def r_of(self, w) -> tuple:
        return _apply(self.r, w)

    def rbar_of(self, w) -> tuple:
        return _apply(self.rbar, w)

    @property
    def is_untwisted(self) -> bool:
        return all(c == 0 for row in self.phi for c in row)

    @cached_property
    def _lattice_inverse(self) -> tuple:
        return _fmat(_smat(self.lattice).T.inv())

    def to_lattice(self, w) -> tuple:
        """Integer coordinates of w in the mu-basis; InvalidLattice if w is not in M."""
        coords = _apply(self._lattice_inverse, w)
        if any(c.denominator != 1 for c in coords):
            raise InvalidLattice(f"weight {tuple(map(str, w))} is not in the lattice {self.lattice_name}")
        return tuple(int(c) for c in coords)

    def from_lattice(self, coords) -> tuple:
        return tuple(sum((Fraction(self.lattice[j][k]) * coords[j] for j in range(self.n)), Fraction(0))
                     for k in range(self.n))

    def from_dual(self, coords) -> tuple:
        return tuple(sum((self.dual_lattice[j][k] * coords[j] for j in range(self.n)), Fraction(0))
                     for k in range(self.n))

    @cached_property
    def _dual_inverse(self) -> tuple:
        return _fmat(_smat(self.dual_lattice).T.inv())

    def to_dual(self, w) -> tuple:
        coords = _apply(self._dual_inverse, w)
        if any(c.denominator != 1 for c in coords):
            raise InvalidLattice(f"weight {tuple(map(str, w))} is not in the dual lattice")
        return tuple(int(c) for c in coords)

    def alpha_in_lattice(self, i: int) -> tuple:
        return self.to_lattice(self.alpha(i))

    @cached_property
    def roots(self) -> RootSystemData:
        return positive_roots_with_convex_order(self)

    def root_weight(self, r: int) -> tuple:
        return self.from_alpha(self.roots.roots[r])

    def dual(self) -> "CartanDatum":
        """Same Cartan data and twist with the lattice replaced by M'."""
        if self.lattice_name in ("P", "Q"):
            lattice = "Q" if self.lattice_name == "P" else "P"
        else:
            cols = _smat(self.dual_lattice).T
            if not _is_integral(cols):
                raise InvalidLattice("dual lattice is not contained in P")
            lattice = [[int(c) for c in row] for row in cols.tolist()]
        return build_cartan(self.cartan_type, lattice, self.phi, self.reduced_word)

    def describe(self) -> dict:
        return {
            "type": self.cartan_type,
            "lattice": self.lattice_name,
            "phi": [[str(c) for c in row] for row in self.phi],
            "reduced_word": list(self.reduced_word),
        }


def bilinear(x, y, datum: CartanDatum) -> Fraction:
    g = datum.gram
    n = datum.n
    return sum((Fraction(x[i]) * g[i][j] * Fraction(y[j]) for i in range(n) for j in range(n)), Fraction(0))


def _check_cartan(A: np.ndarray, d: np.ndarray) -> None:
    n = A.shape[0]
    if A.shape != (n, n) or d.shape != (n,):
        raise InvalidCartan("Cartan matrix and symmetrizers have mismatched sizes")
    if np.any(np.diag(A) != 2):
        raise InvalidCartan("diagonal entries must equal 2")
    off = A[~np.eye(n, dtype=bool)]
    if np.any(off > 0):
        raise InvalidCartan("off-diagonal entries must be non-positive")
    DA = np.diag(d) @ A
    if not np.array_equal(DA, DA.T):
        raise InvalidCartan("diag(d) A is not symmetric")
    if np.any(d <= 0) or np.gcd.reduce(d) != 1:
        raise InvalidCartan("symmetrizers must be positive and coprime")
    if np.any(np.linalg.eigvalsh(DA.astype(float)) <= 0):
        raise InvalidCartan("diag(d) A is not positive definite")


def _lattice_matrix(kind, A: Matrix, simply_laced: bool):
    n = A.rows
    if isinstance(kind, str):
        if kind == "P":
            return eye(n), "P"
        if kind == "Q":
            return A.copy(), "Q"
        raise InvalidLattice(f"unknown lattice {kind!r}")
    B = Matrix(kind)
    if B.shape != (n, n) or not _is_integral(B) or B.det() == 0:
        raise InvalidLattice("custom lattice must be a nonsingular integer n x n matrix")
    if not _is_integral(B.inv() * A):
        raise InvalidLattice("lattice does not contain the root lattice")
    if B == eye(n):
        return B, "P"
    if B == A:
        return B, "Q"
    if not simply_laced:
        raise InvalidLattice("custom lattices are supported in simply-laced types only")
    return B, "custom"


def _parse_phi(phi, n: int) -> Matrix:
    if phi is None:
        return zeros(n, n)
    rows = [[Rational(str(c)) for c in row] for row in phi]
    m = Matrix(rows)
    if m.shape != (n, n):
        raise InvalidPhi("phi must be an n x n matrix")
    return m


def build_cartan(cartan_type: str, lattice="P", phi=None, reduced_word=None) -> CartanDatum:
    if cartan_type not in CARTAN:
        raise InvalidCartan(f"unsupported type {cartan_type!r}; expected one of {sorted(CARTAN)}")
    spec = CARTAN[cartan_type]
    A_np = np.array(spec["A"], dtype=int)
    d_np = np.array(spec["d"], dtype=int)
    _check_cartan(A_np, d_np)
    n = A_np.shape[0]
    A = Matrix(spec["A"])
    D = Matrix.diag(*spec["d"])
    # A^T G = diag(d) in omega-coordinates
    G = (A.T).inv() * D
    simply_laced = len(set(spec["d"])) == 1
    B, lattice_name = _lattice_matrix(lattice, A, simply_laced)

    Phi = _parse_phi(phi, n)
    if not (G * Phi + Phi.T * G).is_zero_matrix:
        raise InvalidPhi("phi is not antisymmetric for ( | )")
    if not _is_integral(A.inv() * Phi * A):
        raise InvalidPhi("phi(Q) is not contained in Q")
    if not _is_integral(Phi.T * G / 2):
        raise InvalidPhi("(1/2)(phi(P) | P) is not integral")
    Y = A.inv() * Phi * A / 2
    if not _is_integral(2 * A * Y * A.inv()):
        raise InvalidPhi("2 A Y A^-1 is not integral")
    for i in range(n):
        tau = Phi * A[:, i] / 2
        if not _is_integral(B.inv() * tau):
            raise InvalidPhi(f"tau_{i + 1} does not lie in the lattice")

    r = (eye(n) + Phi).inv()
    rbar = (eye(n) - Phi).inv()
    # (mu_i | nu_j) = delta_ij
    N = (B.T * G).inv()
    word = tuple(reduced_word) if reduced_word is not None else spec["word"]
    datum = CartanDatum(
        cartan_type=cartan_type,
        A=tuple(tuple(int(c) for c in row) for row in spec["A"]),
        d=tuple(spec["d"]),
        lattice=tuple(tuple(int(B[k, j]) for k in range(n)) for j in range(n)),
        lattice_name=lattice_name,
        phi=_fmat(Phi),
        reduced_word=word,
        gram=_fmat(G),
        r=_fmat(r),
        rbar=_fmat(rbar),
        dual_lattice=tuple(tuple(_frac(N[k, j]) for k in range(n)) for j in range(n)),
    )
    datum.roots
    log.debug("built %s datum on lattice %s", cartan_type, lattice_name)
    return datum


def load_datum(path) -> CartanDatum:
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    return build_cartan(cfg["type"], cfg.get("lattice", "P"), cfg.get("phi"), cfg.get("reduced_word"))


def _reflect(beta, i: int, A) -> tuple:
    n = len(beta)
    pairing = sum(beta[j] * A[i][j] for j in range(n))
    return tuple(beta[k] - (pairing if k == i else 0) for k in range(n))


def _all_positive_roots(A) -> set:
    n = len(A)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            img = _reflect(beta, i, A)
            if all(c >= 0 for c in img) and any(img) and img not in found:
                found.add(img)
                frontier.append(img)
    return found


def positive_roots_with_convex_order(datum: CartanDatum) -> RootSystemData:
    A = datum.A
    n = datum.n
    word = datum.reduced_word
    if any(not 1 <= i <= n for i in word):
        raise NotReduced(f"reduced word {word} uses indices outside 1..{n}")
    roots = []
    for k, ik in enumerate(word):
        beta = tuple(1 if j == ik - 1 else 0 for j in range(n))
        for i in reversed(word[:k]):
            beta = _reflect(beta, i - 1, A)
        if any(c < 0 for c in beta) or beta in roots:
            raise NotReduced(f"word {word} is not reduced at position {k + 1}")
        roots.append(beta)
    if set(roots) != _all_positive_roots(A):
        raise NotReduced(f"word {word} is not a reduced word of the longest element")
    pos = {beta: k for k, beta in enumerate(roots)}
    for a, b in combinations(range(len(roots)), 2):
        s = tuple(x + y for x, y in zip(roots[a], roots[b]))
        if s in pos and not a < pos[s] < b:
            raise NotReduced(f"order from {word} is not convex at {roots[a]} + {roots[b]}")
    d_alpha = tuple(bilinear(datum.from_alpha(beta), datum.from_alpha(beta), datum) / 2 for beta in roots)
    return RootSystemData(roots=tuple(roots), word=word, d_alpha=tuple(int(x) for x in d_alpha))
