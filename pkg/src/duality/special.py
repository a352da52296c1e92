"""Specializations at q = 1 and at odd roots of unity, and the Frobenius maps.

An element of one of the integral forms is specialized coordinatewise over
the form basis, so SpecializedElement keeps the basis monomials and replaces
each Laurent coefficient by its value: a Fraction at q = 1 or a
CyclotomicScalar at a primitive ell-th root.  Products of specialized
elements are computed from the structure constants of the basis at the
same point, with coefficients multiplied in the value field.

The Frobenius maps act on basis monomials only:

    fr_g, fr_h   restricted form at q = eps  ->  restricted form at q = 1
                 X^(s) -> X^(s/ell) when ell | s, else 0, and the same for
                 the toral binomials (M; 0, t); M^-1 -> 1
    cr_g, cr_h   dkp form at q = 1  ->  dkp form at q = eps
                 Xbar -> Xbar^ell, M -> M^ell
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from ..config import LIMITS
from ..kernel.algebra import AlgebraElement, get_algebra
from ..kernel.errors import LimitFailure, NotDivisible, NotInForm, PresentationMismatch, PropertyFailure
from ..kernel.hopf import TensorElement, antipode, coproduct
from ..kernel.linalg import det, inverse, mat_mul
from ..kernel.qcoeff import (ONE, CyclotomicScalar, _check_order, coerce, is_laurent, order_at_one, qpow,
                             specialize_scalar)
from ..kernel.words import add_into, serre_relation
from .dualform import (compute_structure_constants, dual_antipode, dual_coproduct, dual_counit, nu_embed,
                       reconstruct_series, reconstruct_tensor)
from .forms import FormBasisMonomial, check_form, expand, expand_tensor, form_basis, materialize, require_member
from .pair import quantum_poisson_pair
from .sl2 import LETTERS, SL2FunctionElement, sl2_coproduct, sl2_counit, sl2_embed_xi, xi_datum, xi_tensor

log = logging.getLogger(__name__)

DIRECTIONS = ("fr_g", "cr_g", "fr_h", "cr_h")


def one_at(at: int):
    return Fraction(1) if at == 1 else CyclotomicScalar.from_int(at, 1)


def _as_cyclotomic(value, ell: int):
    if isinstance(value, CyclotomicScalar):
        return value
    return CyclotomicScalar.from_int(ell, value)


def _as_rational(value):
    """A cyclotomic value lying in Q as a Fraction; other values unchanged."""
    if isinstance(value, CyclotomicScalar) and not any(value.coeffs[1:]):
        return value.coeffs[0]
    return value


def values_equal(a, b) -> bool:
    """Equality of specialized scalars, lifting rationals into the cyclotomic field when needed."""
    for v in (a, b):
        if isinstance(v, CyclotomicScalar):
            ell = v.ell
            return not (_as_cyclotomic(a, ell) - _as_cyclotomic(b, ell))
    return Fraction(a) == Fraction(b)


def _accumulate(acc: dict, key, value) -> None:
    total = acc[key] + value if key in acc else value
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


def _agree(left: dict, right: dict) -> bool:
    zero = Fraction(0)
    return all(values_equal(left.get(k, zero), right.get(k, zero)) for k in set(left) | set(right))


def _render_value(v) -> str:
    return str(v)


def _value_json(v):
    if isinstance(v, CyclotomicScalar):
        return v.to_json()
    return [v.numerator, v.denominator]


def _monomial_text(m: FormBasisMonomial) -> str:
    return f"{m.form}(e={list(m.e)}, t={list(m.t)}, f={list(m.f)})"


@dataclass
class SpecializedElement:
    at: int
    form: str
    terms: dict = field(default_factory=dict)
    kind: str = "full"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __neg__(self) -> "SpecializedElement":
        return SpecializedElement(self.at, self.form, {m: -c for m, c in self.terms.items()}, self.kind)

    def scale(self, c) -> "SpecializedElement":
        terms = {}
        for m, v in self.terms.items():
            _accumulate(terms, m, v * c)
        return SpecializedElement(self.at, self.form, terms, self.kind)

    def agrees(self, other: "SpecializedElement") -> bool:
        if (self.at, self.form, self.kind) != (other.at, other.form, other.kind):
            return False
        return _agree(self.terms, other.terms)

    def to_json(self) -> dict:
        return {
            "at": self.at,
            "form": self.form,
            "presentation": self.kind,
            "terms": [{"basis": m.to_json(), "value": _value_json(v)} for m, v in sorted(self.terms.items())],
        }

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({_render_value(v)})*{_monomial_text(m)}" for m, v in sorted(self.terms.items()))


@dataclass
class SpecializedTensor:
    at: int
    form: str
    terms: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def agrees(self, terms: dict) -> bool:
        return _agree(self.terms, terms)

    def to_json(self) -> dict:
        return {
            "at": self.at,
            "form": self.form,
            "terms": [{"factors": [m.to_json() for m in key], "value": _value_json(v)}
                      for key, v in sorted(self.terms.items())],
        }

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({_render_value(v)})*[{' (x) '.join(_monomial_text(m) for m in key)}]"
                          for key, v in sorted(self.terms.items()))


def _check_point(at: int) -> int:
    _check_order(at)
    lo, hi = LIMITS["ell"]
    if at != 1 and not lo <= at <= hi:
        raise ValueError(f"root of unity order must lie in [{lo}, {hi}]")
    return at


def specialize_element(x: AlgebraElement, form: str, at: int = 1) -> SpecializedElement:
    """x in the given form, with coordinates evaluated at q = 1 or at a primitive at-th root."""
    check_form(form)
    _check_point(at)
    terms = {}
    for m, c in require_member(x, form).items():
        v = specialize_scalar(c, at)
        if v:
            terms[m] = v
    return SpecializedElement(at, form, terms, x.algebra.kind)


def _unit_basis(form: str, alg) -> FormBasisMonomial:
    return FormBasisMonomial(form, alg.zero_N, alg.zero_n, alg.zero_N)


def special_product(x: SpecializedElement, y: SpecializedElement, alg) -> SpecializedElement:
    """Product of two specialized elements through the basis structure constants at the same point."""
    if (x.at, x.form, x.kind) != (y.at, y.form, y.kind) or alg.kind != x.kind:
        raise PresentationMismatch("specialized factors live in different algebras")
    constants = {}
    terms = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            key = (m1, m2)
            if key not in constants:
                constants[key] = specialize_element(materialize(m1, alg) * materialize(m2, alg), x.form, x.at)
            for m, v in constants[key].terms.items():
                _accumulate(terms, m, c1 * c2 * v)
    return SpecializedElement(x.at, x.form, terms, x.kind)


def specialize_tensor(t: TensorElement, form: str, at: int = 1) -> SpecializedTensor:
    _check_point(at)
    terms = {}
    for key, c in expand_tensor(t, form).items():
        if not is_laurent(c):
            raise NotInForm(f"tensor is not in the {form} form", witness=key)
        v = specialize_scalar(c, at)
        if v:
            terms[key] = v
    return SpecializedTensor(at, form, terms)


def _primitive_terms(s: SpecializedElement, alg) -> dict:
    unit = _unit_basis(s.form, alg)
    out = {}
    for m, v in s.terms.items():
        _accumulate(out, (m, unit), v)
        _accumulate(out, (unit, m), v)
    return out


# classical limit

@dataclass
class LimitReport:
    cartan_type: str
    checks: list = field(default_factory=list)
    normalization: dict = field(default_factory=dict)
    root_factors: dict = field(default_factory=dict)
    bracket_ratios: dict = field(default_factory=dict)

    def record(self, side: str, name: str) -> None:
        self.checks.append(f"{side}:{name}")

    def to_json(self) -> dict:
        norm = {side: {"basis": [[str(c) for c in row] for row in entry["basis"]],
                       "orientation": entry["orientation"]}
                for side, entry in self.normalization.items()}
        return {"type": self.cartan_type, "checks": len(self.checks), "names": self.checks,
                "normalization": norm,
                "root_factors": {str(r): str(v) for r, v in sorted(self.root_factors.items())},
                "bracket_ratios": [{"generator": g, "alpha": a, "beta": b, "value": str(v)}
                                   for (g, a, b), v in sorted(self.bracket_ratios.items())],
                "passed": True}


def _unit(n: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(n))


def toral_generator(alg, i: int) -> AlgebraElement:
    """(M_i; 0, 1) = (M_i - 1) / (q^d_i - 1) for M_i the i-th basis element of the lattice."""
    d = int(alg.datum.d[i])
    return (alg.L(_unit(alg.n, i)) - ONE) * (ONE / (qpow(d) - ONE))


def _serre_element(alg, poly: dict, sym: str) -> AlgebraElement:
    gen = alg.E if sym == "E" else alg.F
    out = alg.zero()
    for word, c in poly.items():
        term = alg.one()
        for i in word:
            term = term * gen(i)
        out = out + term * c
    return out


def _limit_fail(report: LimitReport, side: str, name: str, witness) -> None:
    raise LimitFailure(f"classical limit fails on the {side} side: {name}", witness=witness)


def _adjoint_value(report: LimitReport, side: str, name: str, t: AlgebraElement, x: AlgebraElement) -> Fraction:
    """c with [t, x] = c x at q = 1, read off the restricted coordinates."""
    (key,) = specialize_element(x, "restricted").terms
    s = specialize_element(t * x - x * t, "restricted")
    if set(s.terms) - {key}:
        _limit_fail(report, side, f"{name} is a multiple of the generator", s.render())
    return Fraction(s.terms.get(key, 0))


def _cartan_targets(datum, side: str, orientation: int) -> tuple:
    """[h_i, e_j] and [h_i, f_j] eigenvalues of the normalized Cartan elements.

    On g these are a_ij and -a_ij.  On h both are positive, alpha_i is shifted
    by +-2 tau_i and the orientation fixes which of E and F takes the plus sign.
    """
    n = datum.n
    plus, minus = [], []
    for i in range(n):
        ai = datum.alpha(i)
        di = Fraction(datum.bilinear(ai, ai)) / 2
        shift = tuple(2 * orientation * c for c in datum.tau(i))
        row_e, row_f = [], []
        for j in range(n):
            aj = datum.alpha(j)
            sym = Fraction(datum.bilinear(ai, aj))
            if side == "g":
                row_e.append(sym / di)
                row_f.append(-sym / di)
            else:
                tw = Fraction(datum.bilinear(shift, aj))
                row_e.append((sym + tw) / di)
                row_f.append((sym - tw) / di)
        plus.append(row_e)
        minus.append(row_f)
    return plus, minus


def _solve_normalization(measured: list, target: list):
    """C with C * measured = target, or None when no invertible C exists."""
    measured = [[coerce(v) for v in row] for row in measured]
    target = [[coerce(v) for v in row] for row in target]
    gram = mat_mul(measured, _transpose(measured))
    if not det(gram):
        return None
    c = mat_mul(mat_mul(target, _transpose(measured)), inverse(gram))
    if mat_mul(c, measured) != target or not det(c):
        return None
    return [[specialize_scalar(v, 1) for v in row] for row in c]


def _transpose(rows: list) -> list:
    return [[coerce(v) for v in col] for col in zip(*rows)]


def _normalize_cartan(report: LimitReport, alg, side: str) -> list:
    """Solve for the Cartan elements h_i = sum_k C_ik m_k of the limit and record C."""
    datum = alg.datum
    n = alg.n
    rows = []
    for k in range(n):
        m = toral_generator(alg, k)
        row = [_adjoint_value(report, side, f"[m{k + 1}, e{j + 1}]", m, alg.E(j)) for j in range(n)]
        row += [_adjoint_value(report, side, f"[m{k + 1}, f{j + 1}]", m, alg.F(j)) for j in range(n)]
        rows.append(row)
        report.record(side, f"ad:m{k + 1}")
    orientations = (1,) if side == "g" or datum.is_untwisted else (1, -1)
    for sigma in orientations:
        plus, minus = _cartan_targets(datum, side, sigma)
        c = _solve_normalization(rows, [p + m for p, m in zip(plus, minus)])
        if c is not None:
            report.normalization[side] = {"basis": c, "orientation": sigma}
            log.debug("%s side Cartan elements %s (orientation %d)", side, c, sigma)
            return c
    _limit_fail(report, side, "toral eigenvalues match no Cartan normalization", rows)


def _cartan_terms(alg, c: list, i: int) -> dict:
    out = {}
    for k, coeff in enumerate(c[i]):
        for key, v in specialize_element(toral_generator(alg, k), "restricted").terms.items():
            _accumulate(out, key, coeff * v)
    return out


def _relation_checks(report: LimitReport, alg, side: str) -> list:
    datum = alg.datum
    n = alg.n
    form = "restricted"
    c = _normalize_cartan(report, alg, side)
    for i in range(n):
        for j in range(n):
            comm = alg.E(i) * alg.F(j) - alg.F(j) * alg.E(i)
            s = specialize_element(comm, form)
            if side == "h" or i != j:
                if s:
                    _limit_fail(report, side, f"[e{i + 1}, f{j + 1}] = 0", s.render())
            elif not _agree(s.terms, _cartan_terms(alg, c, i)):
                _limit_fail(report, side, f"[e{i + 1}, f{i + 1}] = h{i + 1}", s.render())
            report.record(side, f"[e{i + 1},f{j + 1}]")
            if i != j:
                for sym in ("E", "F"):
                    s = specialize_element(_serre_element(alg, serre_relation(datum, i, j), sym), form)
                    if s:
                        _limit_fail(report, side, f"Serre {sym}{i + 1}{j + 1}", s.render())
                    report.record(side, f"serre:{sym}{i + 1}{j + 1}")
    return c


def _limit_generators(alg) -> list:
    out = []
    for i in range(alg.n):
        out += [(f"e{i + 1}", alg.E(i)), (f"f{i + 1}", alg.F(i)), (f"m{i + 1}", toral_generator(alg, i))]
    return out


def _wedge(a: dict, b: dict, scale=1) -> dict:
    """scale * (a (x) b - b (x) a) on specialized coordinates."""
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            _accumulate(out, (ka, kb), scale * va * vb)
            _accumulate(out, (kb, ka), -scale * va * vb)
    return out


def _subtract(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        _accumulate(out, k, -v)
    return out


def _root_keys(alg, r: int) -> tuple:
    e = FormBasisMonomial("restricted", _unit(alg.N, r), alg.zero_n, alg.zero_N)
    f = FormBasisMonomial("restricted", alg.zero_N, alg.zero_n, _unit(alg.N, r))
    return e, f


def _check_cartan_cobracket(report: LimitReport, H, c: list, deltas: dict, degree: int) -> None:
    """delta(h_i) = 4/d_i sum_gamma d_gamma (gamma|alpha_i) l_gamma e_gamma ^ f_gamma, one l_gamma per root."""
    datum = H.datum
    roots = datum.roots
    gammas = [r for r in range(H.N) if sum(roots.roots[r]) <= degree]
    measured = []
    for i in range(H.n):
        total = {}
        for k, coeff in enumerate(c[i]):
            for key, v in deltas[f"m{k + 1}"].items():
                _accumulate(total, key, coeff * v)
        measured.append(total)
    for r in gammas:
        gamma = datum.from_alpha(roots.roots[r])
        e, f = _root_keys(H, r)
        for i in range(H.n):
            ai = datum.alpha(i)
            pair = Fraction(datum.bilinear(gamma, ai))
            if pair:
                unit = 4 * roots.d_alpha[r] * pair / (Fraction(datum.bilinear(ai, ai)) / 2)
                value = Fraction(measured[i].get((e, f), 0)) / unit
                if not value:
                    _limit_fail(report, "h", f"delta(h{i + 1}) contains e_gamma ^ f_gamma", r)
                report.root_factors[r] = value
                break
    for i in range(H.n):
        ai = datum.alpha(i)
        di = Fraction(datum.bilinear(ai, ai)) / 2
        want = {}
        for r in gammas:
            gamma = datum.from_alpha(roots.roots[r])
            scale = 4 * roots.d_alpha[r] * Fraction(datum.bilinear(gamma, ai)) * report.root_factors.get(r, 0) / di
            if scale:
                e, f = _root_keys(H, r)
                for key, v in _wedge({e: Fraction(1)}, {f: Fraction(1)}, scale).items():
                    _accumulate(want, key, v)
        if not _agree(measured[i], want):
            _limit_fail(report, "h", f"delta(h{i + 1}) is the classical cobracket", i)
        report.record("h", f"cobracket:h{i + 1}")


def _root_pair(key: tuple):
    """(a, b) when key is e_a (x) f_b on single root vectors, else None."""
    left, right = key
    if any(left.t) or any(left.f) or any(right.e) or any(right.t):
        return None
    if sum(left.e) != 1 or sum(right.f) != 1:
        return None
    return left.e.index(1), right.f.index(1)


def _check_root_cobracket(report: LimitReport, H, c: list, deltas: dict) -> None:
    """delta(e_i) = d_i e_i ^ h_i and delta(f_i) = d_i h_i ^ f_i up to terms e_a ^ f_b
    carried by nonzero classical structure constants."""
    datum = H.datum
    roots = datum.roots
    consts = compute_structure_constants(datum)
    for i in range(H.n):
        ai = datum.alpha(i)
        di = Fraction(datum.bilinear(ai, ai)) / 2
        h = _cartan_terms(H, c, i)
        e, f = _root_keys(H, roots.simple_index(i))
        for sym, lead, table in (("e", _wedge({e: Fraction(1)}, h, di), consts.classical_plus),
                                 ("f", _wedge(h, {f: Fraction(1)}, di), consts.classical_minus)):
            name = f"{sym}{i + 1}"
            rest = _subtract(deltas[name], lead)
            for key, v in rest.items():
                pair = _root_pair(key)
                if pair is None:
                    if _root_pair(key[::-1]) is None:
                        _limit_fail(report, "h", f"delta({name}) is the classical cobracket", key)
                    continue
                if rest.get(key[::-1], 0) != -v:
                    _limit_fail(report, "h", f"delta({name}) is antisymmetric", key)
                a, b = pair
                constant = table.get((i, b, a), 0)
                if not constant:
                    _limit_fail(report, "h", f"delta({name}) has no structure constant for e{a} ^ f{b}", pair)
                unit = 2 * Fraction(constant) * roots.d_alpha[a] * roots.d_alpha[b] / di
                report.bracket_ratios[(name, a, b)] = Fraction(v) / unit
            report.record("h", f"cobracket:{name}")


def classical_limit_check(datum, window: int = 3, degree: int = 1, series: bool = True) -> LimitReport:
    """At q = 1 both forms become enveloping algebras.

    The toral eigenvalues fix the Cartan elements h_i of each limit, then the
    generators must satisfy the classical relations in them.  With series,
    coproducts on the H side are read back on the window: they must be
    primitive, S must be -id, and the cobracket must be the standard one up to
    one factor per root, recorded in root_factors.
    """
    if datum.cartan_type not in ("A1", "A2"):
        raise ValueError("classical limit checks are available for A1 and A2")
    report = LimitReport(datum.cartan_type)
    U = get_algebra(datum, "full")
    H = get_algebra(datum, "H")
    _relation_checks(report, U, "g")
    c = _relation_checks(report, H, "h")
    form = "restricted"
    deltas = {}
    for side, alg in (("g", U), ("h", H)):
        if side == "h" and not series:
            break
        for name, g in _limit_generators(alg):
            s = specialize_element(g, form)
            if side == "g":
                delta, sg = coproduct(g), antipode(g)
            else:
                f = nu_embed(g)
                delta = reconstruct_tensor(dual_coproduct(f), degree, window)
                sg = reconstruct_series(dual_antipode(f), degree, window)
                deltas[name] = _cobracket_terms(delta, form)
            if not specialize_tensor(delta, form).agrees(_primitive_terms(s, alg)):
                _limit_fail(report, side, f"Delta({name}) is primitive", name)
            report.record(side, f"delta:{name}")
            if not specialize_element(sg, form).agrees(-s):
                _limit_fail(report, side, f"S({name}) = -{name}", name)
            report.record(side, f"antipode:{name}")
    if series:
        _check_cartan_cobracket(report, H, c, deltas, degree)
        _check_root_cobracket(report, H, c, deltas)
    log.info("classical limit of %s: %d checks", datum.cartan_type, len(report.checks))
    return report


def _cobracket_terms(t: TensorElement, form: str) -> dict:
    diff = t - t.flip()
    scale = ONE / (qpow(1) - ONE)
    terms = {}
    for key, c in expand_tensor(diff, form).items():
        if not is_laurent(c):
            raise NotInForm(f"Delta - Delta^op is not in the {form} form", witness=key)
        if order_at_one(c) < 1:
            raise NotDivisible("Delta - Delta^op is not divisible by q - 1", witness=key)
        v = specialize_scalar(c * scale, 1)
        if v:
            terms[key] = v
    return terms


def poisson_cobracket(x: AlgebraElement, form: str = "restricted", degree: int = 1,
                      window: int = 3) -> SpecializedTensor:
    """(Delta - Delta^op)(x) / (q - 1) at q = 1.

    Coproducts of H elements are read back from the dual coproduct, truncated at degree.
    """
    if x.algebra.kind == "H":
        t = reconstruct_tensor(dual_coproduct(nu_embed(x)), degree, window)
    else:
        t = coproduct(x)
    return SpecializedTensor(1, form, _cobracket_terms(t, form))


# Frobenius maps

@dataclass(frozen=True)
class FrobeniusContext:
    ell: int
    direction: str

    def __post_init__(self) -> None:
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown Frobenius direction {self.direction!r}; expected one of {DIRECTIONS}")
        _check_point(self.ell)

    @property
    def contracting(self) -> bool:
        return self.direction.startswith("fr")

    @property
    def kind(self) -> str:
        return "full" if self.direction.endswith("_g") else "H"

    @property
    def source_form(self) -> str:
        return "restricted" if self.contracting else "dkp"

    @property
    def source_at(self) -> int:
        return self.ell if self.contracting else 1

    @property
    def target_at(self) -> int:
        return 1 if self.contracting else self.ell

    def check_datum(self, datum) -> None:
        if self.ell != 1 and self.ell <= max(int(d) for d in datum.d):
            raise ValueError(f"ell = {self.ell} must exceed the symmetrizers {datum.d}")


def frobenius_apply(ctx: FrobeniusContext, x) -> SpecializedElement:
    """Apply the Frobenius map of ctx to a specialized element or to an element of the source form."""
    if isinstance(x, AlgebraElement):
        if x.algebra.kind != ctx.kind:
            raise PresentationMismatch(f"{ctx.direction} acts on the {ctx.kind} presentation")
        ctx.check_datum(x.algebra.datum)
        x = specialize_element(x, ctx.source_form, ctx.source_at)
    if (x.form, x.at, x.kind) != (ctx.source_form, ctx.source_at, ctx.kind):
        raise NotInForm(f"{ctx.direction} expects the {ctx.source_form} form of {ctx.kind} at order {ctx.source_at}",
                        witness=(x.form, x.at, x.kind))
    ell = ctx.ell
    terms = {}
    for m, c in x.terms.items():
        if ctx.contracting:
            if any(v % ell for v in m.e + m.t + m.f):
                continue
            image = FormBasisMonomial(m.form, tuple(v // ell for v in m.e), tuple(v // ell for v in m.t),
                                      tuple(v // ell for v in m.f))
            c = _as_rational(c)
        else:
            image = FormBasisMonomial(m.form, tuple(v * ell for v in m.e), tuple(v * ell for v in m.t),
                                      tuple(v * ell for v in m.f))
            if ell > 1:
                c = _as_cyclotomic(c, ell)
        _accumulate(terms, image, c)
    return SpecializedElement(ctx.target_at, x.form, terms, ctx.kind)


@dataclass
class FrobeniusReport:
    cartan_type: str
    ell: int
    multiplicative: int = 0
    adjoint: int = 0
    central: int = 0
    leading: int = 0
    rank: int = 0
    full_rank: int = 0

    def to_json(self) -> dict:
        return {"type": self.cartan_type, "ell": self.ell, "multiplicative": self.multiplicative,
                "adjoint": self.adjoint, "central": self.central, "leading": self.leading,
                "rank": self.rank, "full_rank": self.full_rank, "passed": True}


def _generator_type(m: FormBasisMonomial) -> bool:
    return sum(1 for v in m.e + m.t + m.f if v) == 1


def _single(m: FormBasisMonomial, at: int, kind: str) -> SpecializedElement:
    return SpecializedElement(at, m.form, {m: one_at(at)}, kind)


def _pair_value(hs: SpecializedElement, H, g: SpecializedElement, U, at: int):
    """Pairing of two specialized elements through the quantum Poisson pairing at q = at."""
    total = Fraction(0) if at == 1 else CyclotomicScalar.from_int(at, 0)
    for hm, hc in hs.terms.items():
        for gm, gc in g.terms.items():
            v = quantum_poisson_pair(materialize(hm, H), materialize(gm, U))
            if v:
                total = total + hc * gc * specialize_scalar(v, at)
    return total


def _dkp_generators(alg) -> list:
    datum = alg.datum
    out = []
    for i in range(alg.n):
        r = datum.roots.simple_index(i)
        unit = _unit(alg.N, r)
        out.append(FormBasisMonomial("dkp", unit, alg.zero_n, alg.zero_N))
        out.append(FormBasisMonomial("dkp", alg.zero_N, alg.zero_n, unit))
        for sign in (1, -1):
            out.append(FormBasisMonomial("dkp", alg.zero_N, tuple(sign * v for v in _unit(alg.n, i)), alg.zero_N))
    return out


def _check_multiplicative(report, datum, ell: int, bound: int) -> None:
    U = get_algebra(datum, "full")
    fr = FrobeniusContext(ell, "fr_g")
    basis = form_basis(U, "restricted", bound, toral=bound)
    images = {m: frobenius_apply(fr, _single(m, ell, "full")) for m in basis}
    for mx in filter(_generator_type, basis):
        for my in basis:
            z = specialize_element(materialize(mx, U) * materialize(my, U), "restricted", ell)
            left = frobenius_apply(fr, z)
            right = special_product(images[mx], images[my], U)
            if not left.agrees(right):
                raise PropertyFailure("Fr_g is not multiplicative", witness=(mx, my))
            report.multiplicative += 1


def _check_adjoint(report, datum, ell: int, bound: int) -> None:
    H = get_algebra(datum, "H")
    U = get_algebra(datum.dual(), "full")
    fr = FrobeniusContext(ell, "fr_h")
    cr = FrobeniusContext(ell, "cr_g")
    hs = form_basis(H, "restricted", bound, toral=bound)
    gs = form_basis(U, "dkp", bound // ell, toral=1)
    for hm in hs:
        h_eps = _single(hm, ell, "H")
        h_one = frobenius_apply(fr, h_eps)
        for gm in gs:
            g_one = _single(gm, 1, "full")
            left = _pair_value(h_one, H, g_one, U, 1)
            right = _pair_value(h_eps, H, frobenius_apply(cr, g_one), U, ell)
            if not values_equal(left, right):
                raise PropertyFailure("Fr_h and Cr_g are not adjoint", witness=(hm, gm))
            report.adjoint += 1


def _check_central(report, datum, ell: int) -> None:
    for kind, direction in (("full", "cr_g"), ("H", "cr_h")):
        alg = get_algebra(datum, kind)
        cr = FrobeniusContext(ell, direction)
        gens = _dkp_generators(alg)
        for zm in gens:
            (image,) = frobenius_apply(cr, _single(zm, 1, kind)).terms
            z = materialize(image, alg)
            for gm in gens:
                g = materialize(gm, alg)
                if specialize_element(z * g - g * z, "dkp", ell):
                    raise PropertyFailure(f"{direction} image is not central at the root of unity",
                                          witness=(image, gm))
                report.central += 1


def _check_leading(report, datum, ell: int, bound: int) -> None:
    """Cr(z) * r with r reduced has a unit leading coefficient on the basis monomial ell*z + r.

    rank counts the distinct reduced parts r reached within the bound, full_rank is ell^dim g.
    """
    U = get_algebra(datum, "full")
    reduced = set()
    for m in form_basis(U, "dkp", bound, toral=1):
        split = [divmod(v, ell) for v in m.e + m.t + m.f]
        N, n = U.N, U.n
        high = [a * ell for a, _ in split]
        low = [r for _, r in split]
        z = FormBasisMonomial("dkp", tuple(high[:N]), tuple(high[N:N + n]), tuple(high[N + n:]))
        r = FormBasisMonomial("dkp", tuple(low[:N]), tuple(low[N:N + n]), tuple(low[N + n:]))
        coords = expand(materialize(z, U) * materialize(r, U), "dkp")
        lead = coords.get(m)
        if lead is None or not specialize_scalar(lead, ell):
            raise PropertyFailure("central and reduced parts do not span the dkp basis", witness=m)
        reduced.add(r)
        report.leading += 1
    report.rank = len(reduced)
    report.full_rank = ell ** (2 * U.N + U.n)
    if report.rank < report.full_rank:
        log.info("bound %d reaches %d of %d reduced monomials", bound, report.rank, report.full_rank)


def frobenius_property_checks(datum, ell: int = 3, bound: int = 3) -> FrobeniusReport:
    """Fr_g is an algebra map, Fr_h is adjoint to Cr_g, Cr images are central at the root of unity
    and the dkp form is spanned over them by monomials with exponents below ell."""
    lo, hi = LIMITS["frobenius"]
    if not lo <= bound <= hi:
        raise ValueError(f"Frobenius bound must lie in [{lo}, {hi}]")
    FrobeniusContext(ell, "fr_g").check_datum(datum)
    report = FrobeniusReport(datum.cartan_type, ell)
    _check_multiplicative(report, datum, ell, bound)
    _check_adjoint(report, datum, ell, bound)
    _check_central(report, datum, ell)
    _check_leading(report, datum, ell, bound)
    log.info("Frobenius checks for %s at ell=%d: %s", datum.cartan_type, ell, report.to_json())
    return report


# functions on quantum SL(2)

@dataclass
class FunctionFrobeniusReport:
    ell: int
    counit: int = 0
    primitive: int = 0
    powers: int = 0
    limits: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"ell": self.ell, "counit": self.counit, "primitive": self.primitive, "powers": self.powers,
                "limits": {k: v.to_json() for k, v in self.limits.items()}, "passed": True}


def _letter(letter: str) -> SL2FunctionElement:
    return SL2FunctionElement.generator(letter)


def _normalized(letter: str) -> tuple:
    """(shift, scale) with (xi(x) - shift) * scale in the restricted form and nonzero at q = 1."""
    if letter in "ad":
        return ONE, ONE / (qpow(1) - ONE)
    return 0, ONE / (qpow(1) - qpow(-1))


def function_frobenius_check(ell: int = 3) -> FunctionFrobeniusReport:
    """xi(a - 1), xi(b), xi(c), xi(d - 1) specialize to primitive generators at q = 1, and the
    ell-th powers of xi(a), ..., xi(d) at the root of unity are the Cr_h images of their
    values at q = 1."""
    datum = xi_datum()
    H = get_algebra(datum, "H")
    cr = FrobeniusContext(ell, "cr_h")
    report = FunctionFrobeniusReport(ell)
    for letter in LETTERS:
        x = _letter(letter)
        image = sl2_embed_xi(x)
        if dual_counit(nu_embed(image)) != sl2_counit(x):
            raise PropertyFailure("xi does not intertwine counits", witness=letter)
        report.counit += 1
        shift, scale = _normalized(letter)
        limit = specialize_element((image - shift) * scale, "restricted")
        if len(limit.terms) != 1:
            raise PropertyFailure("xi image does not specialize to a single generator", witness=limit.render())
        report.limits[letter] = limit
        delta = xi_tensor(sl2_coproduct(x))
        if shift:
            delta = delta - TensorElement.pure(H.one(), H.one())
        if not specialize_tensor(delta * scale, "restricted").agrees(_primitive_terms(limit, H)):
            raise PropertyFailure("xi image is not primitive at q = 1", witness=letter)
        report.primitive += 1
        power = specialize_element(image ** ell, "dkp", ell)
        if not power.agrees(frobenius_apply(cr, specialize_element(image, "dkp", 1))):
            raise PropertyFailure("ell-th power of a xi image differs from its Cr_h image", witness=letter)
        report.powers += 1
    log.info("function Frobenius checks at ell=%d passed", ell)
    return report


__all__ = [
    "SpecializedElement", "SpecializedTensor", "specialize_element", "special_product",
    "specialize_tensor", "values_equal", "one_at", "toral_generator", "LimitReport", "classical_limit_check",
    "poisson_cobracket", "DIRECTIONS", "FrobeniusContext", "frobenius_apply", "FrobeniusReport",
    "frobenius_property_checks", "FunctionFrobeniusReport", "function_frobenius_check",
]
