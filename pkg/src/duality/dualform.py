"""Functionals on U(M') and the quantum formal group H = H^M.

An H element acts on U(M') through nu: the H monomial E^b L_mu F^a is split
into (F part . L) (x) (L . E part) and paired with drt_pi and drt_pibar.
Dual coproducts and antipodes are defined extensionally, by
f(uv) and f(S(u)), and read back as truncated series over a finite window
of toral characters.

On a weight block the value of nu(E^b L_mu F^a) at E^e L_nu F^f is
G_mu[(e, f), (b, a)] * q^((mu + s | nu)) with a shift s that depends only on
the F weight of the block.  Reconstruction therefore peels the characters
one lattice axis at a time by Lagrange interpolation and then inverts the
small matrix G_mu.
"""
import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ..config import LIMITS
from ..kernel.algebra import AlgebraElement, get_algebra
from ..kernel.cartan import build_cartan
from ..kernel.errors import AmbiguousCharacters, CongruenceFailure, DualityFailure, PresentationMismatch, WindowTooSmall
from ..kernel.hopf import TensorElement, antipode, coproduct
from ..kernel.linalg import inverse
from ..kernel.monomial import PBWMonomial, vec_add, vec_neg
from ..kernel.qcoeff import (ONE, ZERO, coerce, divisible_by_q_minus_qinv, is_laurent, is_pole_free, q_number, qpow,
                             render_scalar, scalar_to_json, specialize_scalar)
from ..kernel.rootvec import monomials_of_weight
from ..kernel.words import add_into
from .forms import FormBasisMonomial, MembershipReport, check_form, form_basis, materialize
from .pair import is_unit, quantum_poisson_pair, weights_up_to, word_pairing

log = logging.getLogger(__name__)


def _check_window(degree: int, window: int) -> None:
    lo, hi = LIMITS["trunc"]
    if not lo <= degree <= hi:
        raise ValueError(f"truncation degree must lie in [{lo}, {hi}]")
    lo, hi = LIMITS["window"]
    if not lo <= window <= hi:
        raise ValueError(f"toral window must lie in [{lo}, {hi}]")


def _require_h(x) -> None:
    if x.algebra.kind != "H":
        raise PresentationMismatch(f"expected an element of H, got {x.algebra.kind}")


# functionals

class DualFunctional:
    """A linear functional on the full presentation of U(M'), M' dual to hdatum's lattice.

    Values are computed lazily per normal monomial and memoized.
    """

    def __init__(self, hdatum, evaluate, support=None, source=None) -> None:
        self.hdatum = hdatum
        self.algebra = get_algebra(hdatum.dual(), "full")
        self.support = None if support is None else frozenset(support)
        self.source = source
        self._evaluate = evaluate
        self._memo = {}
        self._lock = threading.Lock()

    def value(self, m: PBWMonomial):
        if self.support is not None and self.algebra.weight_of(m) not in self.support:
            return ZERO
        with self._lock:
            hit = self._memo.get(m)
        if hit is None:
            hit = coerce(self._evaluate(m))
            with self._lock:
                self._memo[m] = hit
        return hit

    def __call__(self, u: AlgebraElement):
        if u.algebra is not self.algebra:
            raise PresentationMismatch("functional evaluated on an element of another algebra")
        out = ZERO
        for m, c in u.terms.items():
            out += c * self.value(m)
        return out

    def _combine(self, other, sign):
        if self.hdatum != other.hdatum:
            raise PresentationMismatch("functionals on different algebras")
        support = None
        if self.support is not None and other.support is not None:
            support = self.support | other.support
        return DualFunctional(self.hdatum, lambda m: self.value(m) + sign * other.value(m), support)

    def __add__(self, other):
        return self._combine(other, ONE)

    def __sub__(self, other):
        return self._combine(other, -ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        c = coerce(c)
        return DualFunctional(self.hdatum, lambda m: c * self.value(m), self.support)

    def __repr__(self) -> str:
        label = self.source.render() if isinstance(self.source, AlgebraElement) else "functional"
        return f"DualFunctional({label})"


class TensorFunctional:
    """A functional on U(M') (x) U(M'); support restricts the summed weight."""

    def __init__(self, hdatum, evaluate, support=None) -> None:
        self.hdatum = hdatum
        self.algebra = get_algebra(hdatum.dual(), "full")
        self.support = None if support is None else frozenset(support)
        self._evaluate = evaluate
        self._memo = {}
        self._lock = threading.Lock()

    def value(self, m1: PBWMonomial, m2: PBWMonomial):
        if self.support is not None:
            w = vec_add(self.algebra.weight_of(m1), self.algebra.weight_of(m2))
            if w not in self.support:
                return ZERO
        key = (m1, m2)
        with self._lock:
            hit = self._memo.get(key)
        if hit is None:
            hit = coerce(self._evaluate(m1, m2))
            with self._lock:
                self._memo[key] = hit
        return hit

    def __call__(self, t: TensorElement):
        out = ZERO
        for (m1, m2), c in t.terms.items():
            out += c * self.value(m1, m2)
        return out


def nu_embed(x: AlgebraElement) -> DualFunctional:
    """x in H as the functional u -> quantum Poisson pairing <x, u>."""
    _require_h(x)
    H = x.algebra
    U = get_algebra(H.datum.dual(), "full")
    support = {vec_neg(H.weight_of(m)) for m in x.terms}

    def evaluate(m):
        return quantum_poisson_pair(x, U.element({m: ONE}))

    return DualFunctional(H.datum, evaluate, support, source=x)


def nu_tensor(t: TensorElement) -> TensorFunctional:
    """An element of H (x) H as a functional on pairs."""
    H = t.algebras[0]
    if len(t.algebras) != 2 or any(a.kind != "H" for a in t.algebras):
        raise PresentationMismatch("expected an element of H (x) H")
    U = get_algebra(H.datum.dual(), "full")
    support = {vec_neg(vec_add(H.weight_of(a), H.weight_of(b))) for a, b in t.terms}
    cache = {}

    def pair(hm, um):
        key = (hm, um)
        if key not in cache:
            cache[key] = quantum_poisson_pair(H.element({hm: ONE}), U.element({um: ONE}))
        return cache[key]

    def evaluate(m1, m2):
        out = ZERO
        for (h1, h2), c in t.terms.items():
            v = pair(h1, m1)
            if v:
                out += c * v * pair(h2, m2)
        return out

    return TensorFunctional(H.datum, evaluate, support)


def dual_counit(f: DualFunctional):
    return f.value(f.algebra.monomial())


def multiply_functionals(f: DualFunctional, g: DualFunctional) -> DualFunctional:
    """(fg)(u) = sum f(u(1)) g(u(2))."""
    if f.hdatum != g.hdatum:
        raise PresentationMismatch("functionals on different algebras")
    U = f.algebra
    support = None
    if f.support is not None and g.support is not None:
        support = {vec_add(a, b) for a in f.support for b in g.support}

    def evaluate(m):
        out = ZERO
        for (m1, m2), c in coproduct(U.element({m: ONE})).terms.items():
            a = f.value(m1)
            if a:
                out += c * a * g.value(m2)
        return out

    return DualFunctional(f.hdatum, evaluate, support)


def dual_coproduct(f: DualFunctional) -> TensorFunctional:
    """Delta(f)(u (x) v) = f(uv)."""
    U = f.algebra

    def evaluate(m1, m2):
        return f(U.element({m1: ONE}) * U.element({m2: ONE}))

    return TensorFunctional(f.hdatum, evaluate, f.support)


def dual_antipode(f: DualFunctional) -> DualFunctional:
    U = f.algebra
    return DualFunctional(f.hdatum, lambda m: f(antipode(U.element({m: ONE}))), f.support)


# character windows

@lru_cache(maxsize=None)
def _interpolation_rows(gain, window: int) -> tuple:
    """Lagrange coefficients for the nodes q^(gain * j), j in [-window, window]."""
    nodes = [qpow(gain * j) for j in range(-window, window + 1)]
    rows = []
    for m, xm in enumerate(nodes):
        poly, den = [ONE], ONE
        for j, xj in enumerate(nodes):
            if j == m:
                continue
            new = [ZERO] * (len(poly) + 1)
            for k, c in enumerate(poly):
                new[k + 1] += c
                new[k] -= c * xj
            poly = new
            den *= xm - xj
        rows.append(tuple(c / den for c in poly))
    return tuple(rows)


def _solve_line(line: dict, gain, window: int) -> dict:
    """{n: v} with v(n) = sum_m c_m q^(gain m n) to {m: c_m}."""
    out = {}
    for j, row in enumerate(_interpolation_rows(gain, window)):
        d = ZERO
        for k, a in enumerate(row):
            v = line.get(k - window)
            if v:
                d += a * v
        if d:
            m = j - window
            out[m] = d * qpow(gain * m * window)
    return out


def solve_characters(values: dict, gains: tuple, window: int) -> dict:
    """Peel toral characters axis by axis: {nu: value} to {mu: coefficient}."""
    current = dict(values)
    for i, gain in enumerate(gains):
        groups = {}
        for key, v in current.items():
            groups.setdefault(key[:i] + key[i + 1:], {})[key[i]] = v
        current = {}
        for rest, line in groups.items():
            for m, c in _solve_line(line, gain, window).items():
                current[rest[:i] + (m,) + rest[i:]] = c
    return current


class SeriesWindow:
    """Sample points and block inverses for reading functionals back as H series."""

    def __init__(self, hdatum, degree: int, window: int) -> None:
        _check_window(degree, window)
        self.datum = hdatum
        self.degree = degree
        self.window = window
        self.H = get_algebra(hdatum, "H")
        self.U = get_algebra(hdatum.dual(), "full")
        n = hdatum.n
        self.box = tuple(product(range(-window, window + 1), repeat=n))
        self.parts = {(0,) * n: [self.H.zero_N]}
        for beta in weights_up_to(n, degree):
            monos = monomials_of_weight(hdatum, beta)
            if monos:
                self.parts[beta] = [tuple(m) for m in monos]
        self.blocks = [(be, bf) for be in self.parts for bf in self.parts]
        self.gains = self._gains()
        self.convention = word_pairing(hdatum, "drt_pi").convention
        self._inverses = {}
        self._pairs = {}
        self._lock = threading.Lock()

    def _gains(self) -> tuple:
        n = self.datum.n
        unit = lambda i: tuple(1 if k == i else 0 for k in range(n))
        gains = []
        for i in range(n):
            mu = self.datum.from_lattice(unit(i))
            for j in range(n):
                g = self.datum.bilinear(mu, self.U.datum.from_lattice(unit(j)))
                if (i == j) != bool(g):
                    raise AmbiguousCharacters("lattice pairing is not diagonal in the chosen bases", witness=(i, j))
            gains.append(self.datum.bilinear(mu, self.U.datum.from_lattice(unit(i))))
        return tuple(gains)

    @staticmethod
    def block_weight(block) -> tuple:
        """alpha-weight of the U monomials sampled for a block."""
        be, bf = block
        return tuple(b - a for a, b in zip(be, bf))

    def shift(self, bf) -> tuple:
        beta = self.datum.from_alpha(bf)
        if self.convention.op_split:
            return self.datum.r_of(beta)
        return tuple(-c for c in self.datum.r_of(self.datum.phi_of(beta)))

    def _strip(self, bf, nu) -> object:
        return qpow(-self.datum.bilinear(self.shift(bf), self.U.datum.from_lattice(nu)))

    def sample(self, block, box=None) -> list:
        be, bf = block
        return [PBWMonomial(e, tuple(nu), self.U.zero_n, f)
                for e in self.parts[bf] for f in self.parts[be] for nu in (box or self.box)]

    def pair(self, hm: PBWMonomial, um: PBWMonomial):
        key = (hm, um)
        with self._lock:
            hit = self._pairs.get(key)
        if hit is None:
            hit = quantum_poisson_pair(self.H.element({hm: ONE}), self.U.element({um: ONE}))
            with self._lock:
                self._pairs[key] = hit
        return hit

    def _inverse(self, block, mu):
        key = (block, mu)
        with self._lock:
            hit = self._inverses.get(key)
        if hit is not None:
            return hit
        be, bf = block
        hs = [(b, a) for b in self.parts[be] for a in self.parts[bf]]
        us = [(e, f) for e in self.parts[bf] for f in self.parts[be]]
        zero = self.U.zero_n
        gram = [[self.pair(PBWMonomial(b, mu, self.H.zero_n, a), PBWMonomial(e, zero, zero, f)) for b, a in hs]
                for e, f in us]
        try:
            inv = inverse(gram)
        except Exception as exc:
            raise AmbiguousCharacters("block Gram matrix is singular", witness=(block, mu)) from exc
        hit = (hs, us, inv)
        with self._lock:
            self._inverses[key] = hit
        return hit

    def solve(self, block, values: dict) -> dict:
        """Sampled values {U monomial: value} of one block to H coefficients {H monomial: c}."""
        bf = block[1]
        lines = {}
        for u, v in values.items():
            if v:
                lines.setdefault((u.e, u.f), {})[u.mu] = v * self._strip(bf, u.mu)
        columns = {}
        for ef, line in lines.items():
            for mu, c in solve_characters(line, self.gains, self.window).items():
                columns.setdefault(mu, {})[ef] = c
        out = {}
        for mu, col in columns.items():
            hs, us, inv = self._inverse(block, mu)
            for i, (b, a) in enumerate(hs):
                x = ZERO
                for j, ef in enumerate(us):
                    c = col.get(ef)
                    if c:
                        x += inv[i][j] * c
                if x:
                    out[PBWMonomial(b, mu, self.H.zero_n, a)] = x
        return out

    def outer_points(self) -> list:
        edge = self.window + 1
        n = self.datum.n
        return [(edge,) * n, (-edge,) * n]


@lru_cache(maxsize=None)
def series_window(hdatum, degree: int, window: int) -> SeriesWindow:
    return SeriesWindow(hdatum, degree, window)


def _wanted(support, weight) -> bool:
    return support is None or weight in support


def reconstruct_series(f: DualFunctional, degree: int, window: int) -> AlgebraElement:
    """The truncated H series of f: all E^b L_mu F^a with E/F weights of height <= degree, mu in the window.

    The fit is re-checked on characters just outside the window; a mismatch means
    the window does not separate the characters of f.
    """
    win = series_window(f.hdatum, degree, window)
    terms, fitted = {}, []
    for block in win.blocks:
        if not _wanted(f.support, win.block_weight(block)):
            continue
        values = {u: f.value(u) for u in win.sample(block)}
        if not any(values.values()):
            continue
        solved = win.solve(block, values)
        terms.update(solved)
        fitted.append((block, solved))
    for block, solved in fitted:
        for u in win.sample(block, win.outer_points()):
            got = ZERO
            for hm, c in solved.items():
                got += c * win.pair(hm, u)
            if got != f.value(u):
                raise AmbiguousCharacters("toral window does not separate the characters of the functional",
                                          witness=u.to_json())
    log.debug("reconstructed %d terms (degree %d, window %d)", len(terms), degree, window)
    return win.H.element(terms)


def reconstruct_tensor(t: TensorFunctional, degree: int, window: int) -> TensorElement:
    """Truncated H (x) H series of a functional on pairs, solved one factor at a time."""
    win = series_window(t.hdatum, degree, window)
    H = win.H
    terms = {}
    for b1 in win.blocks:
        w1 = win.block_weight(b1)
        for b2 in win.blocks:
            if not _wanted(t.support, vec_add(w1, win.block_weight(b2))):
                continue
            s1, s2 = win.sample(b1), win.sample(b2)
            partial = {}
            for u2 in s2:
                column = {u1: t.value(u1, u2) for u1 in s1}
                if not any(column.values()):
                    continue
                for h1, c in win.solve(b1, column).items():
                    partial.setdefault(h1, {})[u2] = c
            solved = {}
            for h1, row in partial.items():
                for h2, c in win.solve(b2, row).items():
                    solved[(h1, h2)] = c
            if not solved:
                continue
            _verify_tensor(win, t, b1, b2, solved)
            terms.update(solved)
    log.debug("reconstructed %d tensor terms (degree %d, window %d)", len(terms), degree, window)
    return TensorElement((H, H), terms)


def _verify_tensor(win, t, b1, b2, solved) -> None:
    inner = [tuple([0] * win.datum.n)]
    outer = win.outer_points()
    for box1, box2 in ((outer, inner), (inner, outer)):
        for u1 in win.sample(b1, box1):
            for u2 in win.sample(b2, box2):
                got = ZERO
                for (h1, h2), c in solved.items():
                    v = win.pair(h1, u1)
                    if v:
                        got += c * v * win.pair(h2, u2)
                if got != t.value(u1, u2):
                    raise AmbiguousCharacters("toral window does not separate the characters of the tensor",
                                              witness=(u1.to_json(), u2.to_json()))


def agree_on_window(f, g, degree: int, window: int) -> int:
    """Compare two functionals (or two pair functionals) on every sample point of the window."""
    win = series_window(f.hdatum, degree, window)
    count = 0
    if isinstance(f, TensorFunctional):
        for b1 in win.blocks:
            for b2 in win.blocks:
                w = vec_add(win.block_weight(b1), win.block_weight(b2))
                if not (_wanted(f.support, w) or _wanted(g.support, w)):
                    continue
                for u1 in win.sample(b1):
                    for u2 in win.sample(b2):
                        if f.value(u1, u2) != g.value(u1, u2):
                            return -1
                        count += 1
        return count
    for block in win.blocks:
        w = win.block_weight(block)
        if not (_wanted(f.support, w) or _wanted(g.support, w)):
            continue
        for u in win.sample(block):
            if f.value(u) != g.value(u):
                return -1
            count += 1
    return count


def nu_morphism_check(hdatum, degree: int = 2, window: int = 3) -> int:
    """nu(xy) = nu(x) nu(y) on the window for pairs of generators of H."""
    H = get_algebra(hdatum, "H")
    n = hdatum.n
    gens = [H.E(i) for i in range(n)] + [H.F(i) for i in range(n)]
    gens += [H.L(tuple(s if k == i else 0 for k in range(n))) for i in range(n) for s in (1, -1)]
    count = 0
    for x in gens:
        for y in gens:
            if x.degree() + y.degree() > degree:
                continue
            checked = agree_on_window(nu_embed(x * y), multiply_functionals(nu_embed(x), nu_embed(y)), degree, window)
            if checked < 0:
                raise DualityFailure("nu is not multiplicative", witness=(x.render(), y.render()))
            count += checked
    log.info("nu multiplicative on %d sample values", count)
    return count


# dual pseudobasis

@dataclass
class PseudobasisReport:
    taus: list
    matrix: list
    inverse: list
    diagonal: list
    triangular: bool
    duals: list = field(default_factory=list)

    def to_json(self) -> dict:
        render = lambda rows: [[render_scalar(c) for c in row] for row in rows]
        return {
            "taus": [list(t) for t in self.taus],
            "matrix": render(self.matrix),
            "inverse": render(self.inverse),
            "diagonal": [render_scalar(c) for c in self.diagonal],
            "triangular": self.triangular,
        }


def _bar_root(datum, r: int):
    d = datum.roots.d_alpha[r]
    return qpow(d) - qpow(-d)


def dual_pseudobasis(hdatum, eta: tuple, phi: tuple, window: int) -> PseudobasisReport:
    """Inverse of the matrix <Fbar^eta L_tau Ebar^phi, E^(eta) u_tau' F^(phi)> over tau, tau' in [0, window]^n.

    Row tau' of the inverse gives the H element dual to E^(eta) u_tau' F^(phi).
    """
    lo, hi = LIMITS["window"]
    if not 0 <= window <= hi:
        raise ValueError(f"toral window must lie in [0, {hi}]")
    H = get_algebra(hdatum, "H")
    U = get_algebra(hdatum.dual(), "full")
    eta, phi = tuple(eta), tuple(phi)
    if len(eta) != H.N or len(phi) != H.N:
        raise ValueError(f"exponent vectors must have length {H.N}")
    scale = ONE
    for r in range(H.N):
        scale *= _bar_root(hdatum, r) ** (eta[r] + phi[r])
    taus = sorted(product(range(window + 1), repeat=hdatum.n))
    left = H.element({H.monomial(f=eta): scale})
    right = H.element({H.monomial(e=phi): ONE})
    ys = [left * H.L(t) * right for t in taus]
    xs = [materialize(FormBasisMonomial("restricted", eta, t, phi), U) for t in taus]
    matrix = [[nu_embed(y)(x) for x in xs] for y in ys]
    diagonal = [matrix[k][k] for k in range(len(taus))]
    for t, c in zip(taus, diagonal):
        if not c:
            raise WindowTooSmall("pairing matrix has a zero diagonal entry", witness=t)
        if not is_unit(c):
            raise DualityFailure(f"diagonal entry {render_scalar(c)} is not a unit of Z[q, q^-1]", witness=t)
    triangular = all(not matrix[i][j] for i in range(len(taus)) for j in range(i + 1, len(taus)))
    inv = inverse(matrix)
    duals = []
    for row in inv:
        x = H.zero()
        for c, y in zip(row, ys):
            if c:
                x = x + y * c
        duals.append(x)
    return PseudobasisReport(taus, matrix, inv, diagonal, triangular, duals)


# structure constants

@dataclass
class StructureConstants:
    cartan_type: str
    minus: dict
    plus: dict
    classical_minus: dict
    classical_plus: dict

    def to_json(self) -> dict:
        enc = lambda table: [{"i": i, "alpha": a, "beta": b, "value": render_scalar(c)}
                             for (i, a, b), c in sorted(table.items())]
        cls = lambda table: [{"i": i, "alpha": a, "beta": b, "value": str(c)}
                             for (i, a, b), c in sorted(table.items())]
        return {"type": self.cartan_type, "C_minus": enc(self.minus), "C_plus": enc(self.plus),
                "c_minus": cls(self.classical_minus), "c_plus": cls(self.classical_plus)}


def _on_root_lattice(datum):
    if datum.lattice_name == "Q":
        return datum
    phi = None if datum.is_untwisted else [[str(c) for c in row] for row in datum.phi]
    return build_cartan(datum.cartan_type, "Q", phi, datum.reduced_word)


@lru_cache(maxsize=None)
def compute_structure_constants(datum) -> StructureConstants:
    """C^{i,-}_{a,b} and C^{i,+}_{a,b}: the F_i and E_i coordinates of [F_a, E_b] with torals sent to 1."""
    qd = _on_root_lattice(datum)
    U = get_algebra(qd, "full")
    roots = qd.roots
    minus, plus = {}, {}
    for a in range(roots.N):
        for b in range(roots.N):
            comm = U.root_F(a) * U.root_E(b) - U.root_E(b) * U.root_F(a)
            for i in range(qd.n):
                s = roots.simple_index(i)
                for m, c in comm.terms.items():
                    if not any(m.e) and m.f == tuple(1 if k == s else 0 for k in range(roots.N)):
                        add_into(minus, {(i, a, b): c})
                    if not any(m.f) and m.e == tuple(1 if k == s else 0 for k in range(roots.N)):
                        add_into(plus, {(i, a, b): c})
    classical = lambda table: {k: specialize_scalar(c, 1) for k, c in table.items() if is_pole_free(c, 1)}
    return StructureConstants(qd.cartan_type, minus, plus, classical(minus), classical(plus))


# umbral congruences

UMBRAL_GENERATORS = ("F", "E", "L")
UMBRAL_OPS = ("delta", "antipode")


@dataclass
class CongruenceReport:
    generator: str
    op: str
    index: int
    power: int
    checked: int
    discrepancy: object = None
    counit: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "generator": self.generator, "op": self.op, "index": self.index, "power": self.power,
            "checked": self.checked, "passed": True,
            "discrepancy": None if self.discrepancy is None else render_scalar(self.discrepancy),
            "counit": {k: render_scalar(v) for k, v in self.counit.items()},
        }


def _unit(n: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(n))


def umbral_generator(H, generator: str, i: int) -> AlgebraElement:
    """F_i, E_i or the binomial (L_{mu_i}; 0, 1) = (L_{mu_i} - 1)/(q_i - 1) in H."""
    if generator == "F":
        return H.F(i)
    if generator == "E":
        return H.E(i)
    if generator == "L":
        d = H.datum.d[i]
        return (H.L(_unit(H.n, i)) - H.one()) * (ONE / (qpow(d) - ONE))
    raise ValueError(f"unknown generator {generator!r}; expected one of {UMBRAL_GENERATORS}")


def _qn(n, base: int = 1):
    """(n)_q = (q^n - 1)/(q - 1) at q^base."""
    return (qpow(base * n) - ONE) / (qpow(base) - ONE)


def _delta_congruence(H, generator: str, i: int) -> tuple:
    """Leading part and correction sum of Delta(generator) modulo (q - q^-1)^2."""
    datum = H.datum
    one = H.one()
    d = datum.d[i]
    qi = qpow(d) - qpow(-d)
    if generator in ("F", "E"):
        L_alpha = H.L(datum.alpha_in_lattice(i))
        consts = compute_structure_constants(datum)
        corr = TensorElement((H, H))
        table = consts.plus if generator == "F" else consts.minus
        for (k, a, b), c in table.items():
            if k != i:
                continue
            scale = c * _bar_root(datum, a) * _bar_root(datum, b) / qi
            if generator == "F":
                corr = corr + TensorElement.pure(L_alpha * H.root_E(a), H.root_F(b)) * scale
            else:
                corr = corr - TensorElement.pure(H.root_E(a), H.root_F(b) * L_alpha) * scale
        if generator == "F":
            base = TensorElement.pure(H.F(i), one) + TensorElement.pure(L_alpha, H.F(i))
        else:
            base = TensorElement.pure(one, H.E(i)) + TensorElement.pure(H.E(i), L_alpha)
        return base, corr
    b = umbral_generator(H, "L", i)
    M = H.L(_unit(H.n, i))
    base = TensorElement.pure(b, one) + TensorElement.pure(one, b) + TensorElement.pure(b, b) * (qpow(d) - ONE)
    front = (ONE + qpow(-1)) ** 2 / _qn(d)
    mu = datum.from_lattice(_unit(H.n, i))
    corr = TensorElement((H, H))
    for r in range(datum.roots.N):
        gamma = datum.root_weight(r)
        dg = datum.roots.d_alpha[r]
        scale = front * (qpow(1) - ONE) * q_number(int(dg)) * q_number(int(datum.bilinear(mu, gamma)))
        if scale:
            corr = corr + TensorElement.pure(M * H.root_E(r), H.root_F(r) * M) * scale
    return base, corr


def _antipode_congruence(H, generator: str, i: int) -> AlgebraElement:
    datum = H.datum
    alpha = datum.alpha(i)
    tau = datum.tau(i)
    L_minus = H.L(vec_neg(datum.alpha_in_lattice(i)))
    if generator == "F":
        k = datum.bilinear(alpha, tuple(a + t for a, t in zip(alpha, tau)))
        return H.F(i) * L_minus * (-qpow(-k))
    if generator == "E":
        k = datum.bilinear(alpha, tuple(a - t for a, t in zip(alpha, tau)))
        return L_minus * H.E(i) * (-qpow(k))
    return -(H.L(vec_neg(_unit(H.n, i))) * umbral_generator(H, "L", i))


def _failures(terms: dict, power: int) -> list:
    return [(k, c) for k, c in terms.items() if not divisible_by_q_minus_qinv(c, power)]


def _describe(key) -> str:
    return repr(key.to_json()) if isinstance(key, PBWMonomial) else repr([m.to_json() for m in key])


def umbral_congruence_check(datum, generator: str, op: str = "delta", index: int = 0,
                            degree: int = 2, window: int = 2) -> CongruenceReport:
    """Delta or S of an H generator, reconstructed on the window, against its congruence modulo (q - q^-1)^power."""
    if datum.cartan_type not in ("A1", "A2"):
        raise ValueError("umbral congruences are checked for A1 and A2")
    if op not in UMBRAL_OPS:
        raise ValueError(f"unknown operation {op!r}; expected one of {UMBRAL_OPS}")
    if not 0 <= index < datum.n:
        raise ValueError(f"generator index {index} out of range")
    H = get_algebra(datum, "H")
    x = umbral_generator(H, generator, index)
    f = nu_embed(x)
    counit = {"F": dual_counit(nu_embed(H.F(index))),
              "L": dual_counit(nu_embed(H.L(_unit(H.n, index))))}
    if counit["F"] != ZERO or counit["L"] != ONE:
        raise CongruenceFailure(f"counit of F_{index} or L_{index} is wrong",
                                witness={k: scalar_to_json(v) for k, v in counit.items()})
    discrepancy = None
    if op == "delta":
        power = 2
        got = reconstruct_tensor(dual_coproduct(f), degree, window)
        base, corr = _delta_congruence(H, generator, index)
        bad = _failures((got - base - corr).terms, power)
        if bad and corr:
            discrepancy = _unit_discrepancy(got - base, corr, power)
            bad = [] if discrepancy is not None else bad
        checked = len(got.terms)
    else:
        power = 1
        got = reconstruct_series(dual_antipode(f), degree, window)
        expected = _antipode_congruence(H, generator, index)
        bad = _failures((got - expected).terms, power)
        checked = len(got.terms)
    if bad:
        key, c = bad[0]
        raise CongruenceFailure(f"{op} of {generator}_{index} violates its congruence",
                                witness={"term": _describe(key), "coeff": scalar_to_json(c)})
    log.info("umbral congruence for %s of %s_%d holds on %d terms", op, generator, index, checked)
    return CongruenceReport(generator, op, index, power, checked, discrepancy, counit)


def _unit_discrepancy(rest: TensorElement, corr: TensorElement, power: int):
    """A unit u with rest - u * corr divisible, or None."""
    ratios = {rest.terms.get(k, ZERO) / c for k, c in corr.terms.items()}
    if len(ratios) != 1:
        return None
    u = ratios.pop()
    if not is_unit(u) or _failures((rest - corr * u).terms, power):
        return None
    log.warning("congruence holds up to the unit factor %s", render_scalar(u))
    return u


# functions on the integral forms

def function_form_membership(f: DualFunctional, form: str, degree: int = 2, toral: int = 2) -> MembershipReport:
    """Whether f takes Laurent values on the basis of the given form of U(M') up to the bounds."""
    check_form(form)
    U = f.algebra
    values = {}
    for m in form_basis(U, form, degree, toral):
        values[m] = f(materialize(m, U))
    witnesses = sorted((m, c) for m, c in values.items() if not is_laurent(c))
    return MembershipReport(not witnesses, form, values, witnesses)


__all__ = [
    "DualFunctional", "TensorFunctional", "nu_embed", "nu_tensor", "dual_counit", "multiply_functionals", "dual_coproduct",
    "dual_antipode", "solve_characters", "SeriesWindow", "series_window", "reconstruct_series",
    "reconstruct_tensor", "agree_on_window", "nu_morphism_check", "PseudobasisReport", "dual_pseudobasis",
    "StructureConstants", "compute_structure_constants", "CongruenceReport", "umbral_generator",
    "umbral_congruence_check", "function_form_membership", "UMBRAL_GENERATORS", "UMBRAL_OPS",
]
