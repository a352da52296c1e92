"""The two k[q, q^-1]-forms of a quantum group.

restricted: E^(n) . prod (M_i; 0, t_i) M_i^-floor(t_i/2) . F^(m), t_i >= 0
dkp:        Ebar^n . prod M_i^t_i . Fbar^m, t_i in Z

with X^(m) = X^m / [m]_{q_a}!, Xbar = (q_a - q_a^-1) X and M_i = L_{mu_i} for the
chosen basis mu_i of the lattice.  Coordinates over either basis are found by
a triangular change of basis from the normal monomials.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ..kernel.errors import ConventionFailure, NotInForm, PresentationMismatch
from ..kernel.hopf import coproduct
from ..kernel.monomial import PBWMonomial
from ..kernel.qcoeff import ONE, is_laurent, q_factorial, qpow, scalar_to_json
from ..kernel.words import add_into

log = logging.getLogger(__name__)

FORMS = ("restricted", "dkp")


@dataclass(frozen=True, order=True)
class FormBasisMonomial:
    form: str
    e: tuple
    t: tuple
    f: tuple

    @property
    def degree(self) -> int:
        return sum(self.e) + sum(self.f)

    def to_json(self) -> dict:
        return {"form": self.form, "e": list(self.e), "t": list(self.t), "f": list(self.f)}


@dataclass
class MembershipReport:
    member: bool
    form: str
    coefficients: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "form": self.form,
            "witnesses": [{"basis": m.to_json(), "coeff": scalar_to_json(c)} for m, c in self.witnesses],
        }


def check_form(form: str) -> str:
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")
    return form


@lru_cache(maxsize=None)
def toral_binomial_poly(c: int, t: int, d: int = 1) -> dict:
    """(Y; c, t) = prod_{s=1..t} (q^{d(c-s+1)} Y - 1) / (q^{ds} - 1) as {exponent of Y: coeff}."""
    out = {0: ONE}
    for s in range(1, t + 1):
        den = qpow(d * s) - ONE
        step = {1: qpow(d * (c - s + 1)) / den, 0: -ONE / den}
        new = {}
        for k1, c1 in out.items():
            for k2, c2 in step.items():
                add_into(new, {k1 + k2: c1 * c2})
        out = new
    return out


@lru_cache(maxsize=None)
def restricted_toral_poly(t: int, d: int = 1) -> dict:
    shift = t // 2
    return {k - shift: c for k, c in toral_binomial_poly(0, t, d).items()}


def _new_exponent(t: int) -> int:
    if t % 2:
        return (t + 1) // 2
    return -(t // 2)


def _solve_1d(coeffs: dict, d: int) -> dict:
    """Coordinates of a Laurent polynomial in Y over the restricted toral basis."""
    rest = dict(coeffs)
    out = {}
    if not rest:
        return out
    top = max(2 * max(rest) - 1, -2 * min(rest), 0)
    for t in range(top, -1, -1):
        x = _new_exponent(t)
        c = rest.get(x)
        if not c:
            continue
        basis = restricted_toral_poly(t, d)
        k = c / basis[x]
        out[t] = k
        add_into(rest, basis, -k)
    if rest:
        raise ConventionFailure("toral basis change left a remainder", witness=rest)
    return out


def solve_toral(poly: dict, ds: tuple) -> dict:
    """{mu: coeff} over the monomials M^mu to {t: coeff} over the restricted toral basis."""
    current = dict(poly)
    for i, d in enumerate(ds):
        groups = {}
        for key, c in current.items():
            groups.setdefault(key[:i] + key[i + 1:], {})[key[i]] = c
        current = {}
        for rest, coeffs in groups.items():
            for t, c in _solve_1d(coeffs, d).items():
                add_into(current, {rest[:i] + (t,) + rest[i:]: c})
    return current


def _root_d(datum, r: int) -> int:
    return int(datum.roots.d_alpha[r])


def _divided_scale(datum, e: tuple, f: tuple):
    out = ONE
    for r, k in enumerate(e):
        out *= q_factorial(k, _root_d(datum, r))
    for r, k in enumerate(f):
        out *= q_factorial(k, _root_d(datum, r))
    return out


def _bar_scale(datum, e: tuple, f: tuple):
    out = ONE
    for r in range(len(e)):
        d = _root_d(datum, r)
        out *= (qpow(d) - qpow(-d)) ** (e[r] + f[r])
    return out


def toral_part(alg, m: FormBasisMonomial) -> dict:
    """{mu: coeff} of the toral factor of a form basis monomial."""
    if m.form == "dkp":
        return {tuple(m.t): ONE}
    out = {alg.zero_n: ONE}
    for i, t in enumerate(m.t):
        poly = restricted_toral_poly(t, int(alg.datum.d[i]))
        new = {}
        for mu, c in out.items():
            for k, v in poly.items():
                add_into(new, {mu[:i] + (mu[i] + k,) + mu[i + 1:]: c * v})
        out = new
    return out


def materialize(m: FormBasisMonomial, alg):
    """The form basis monomial as an element of alg in normal form."""
    check_form(m.form)
    if m.form == "restricted":
        scale = ONE / _divided_scale(alg.datum, m.e, m.f)
    else:
        scale = _bar_scale(alg.datum, m.e, m.f)
    terms = {PBWMonomial(tuple(m.e), mu, alg.zero_n, tuple(m.f)): scale * c
             for mu, c in toral_part(alg, m).items()}
    return alg.element(terms)


def expand(x, form: str) -> dict:
    """Coordinates {FormBasisMonomial: coeff} of x over the basis of form."""
    check_form(form)
    alg = x.algebra
    groups = {}
    for m, c in x.terms.items():
        if any(m.kappa):
            raise PresentationMismatch("forms are defined on U, project the double first")
        groups.setdefault((m.e, m.f), {})[m.mu] = c
    out = {}
    for (e, f), toral in groups.items():
        if form == "restricted":
            scale = _divided_scale(alg.datum, e, f)
            coords = solve_toral(toral, tuple(int(d) for d in alg.datum.d))
        else:
            scale = ONE / _bar_scale(alg.datum, e, f)
            coords = toral
        for t, c in coords.items():
            add_into(out, {FormBasisMonomial(form, e, tuple(t), f): c * scale})
    return out


def membership(x, form: str) -> MembershipReport:
    coords = expand(x, form)
    witnesses = sorted((m, c) for m, c in coords.items() if not is_laurent(c))
    report = MembershipReport(not witnesses, form, coords, witnesses)
    log.debug("membership in %s form: %s (%d coordinates)", form, report.member, len(coords))
    return report


def require_member(x, form: str) -> dict:
    report = membership(x, form)
    if not report.member:
        raise NotInForm(f"element is not in the {form} form", witness=report.witnesses[0][0])
    return report.coefficients


def monomial_degree(m: FormBasisMonomial) -> int:
    """Degree of a basis monomial in the filtration used by the scaled pairings."""
    if m.form == "restricted":
        return sum(m.e) + sum(m.t) + sum(m.f)
    return sum(m.e) + sum(m.f)


def filtration_degree(x, form: str = "restricted") -> int:
    """Largest monomial degree in the form expansion of x, 0 for x = 0.

    Raises NotInForm when x does not lie in the form.
    """
    degrees = [monomial_degree(m) for m, c in require_member(x, form).items() if c]
    return max(degrees, default=0)


def form_basis(alg, form: str, degree: int, toral: int = 0, sides: str = "EF") -> list:
    """Form basis monomials of E/F-degree at most degree with toral exponents bounded by toral.

    Restricted toral exponents run over 0..toral, dkp exponents over -toral..toral.
    """
    check_form(form)
    N, n = alg.N, alg.n
    vectors = [v for v in product(range(degree + 1), repeat=N) if sum(v) <= degree]
    e_range = vectors if "E" in sides else [alg.zero_N]
    f_range = vectors if "F" in sides else [alg.zero_N]
    span = range(toral + 1) if form == "restricted" else range(-toral, toral + 1)
    out = []
    for e in e_range:
        for f in f_range:
            if sum(e) + sum(f) > degree:
                continue
            for t in product(span, repeat=n):
                out.append(FormBasisMonomial(form, tuple(e), tuple(t), tuple(f)))
    return sorted(out)


def closure_check(alg, form: str, degree: int = 1, toral: int = 1) -> int:
    """Products of pairs of basis monomials stay in the form; returns the number of pairs."""
    basis = [materialize(m, alg) for m in form_basis(alg, form, degree, toral)]
    count = 0
    for x in basis:
        for y in basis:
            require_member(x * y, form)
            count += 1
    return count


def expand_tensor(t, form: str) -> dict:
    """Coordinates of a tensor over tuples of form basis monomials."""
    check_form(form)
    cache = {}

    def coords(alg, m):
        key = (id(alg), m)
        if key not in cache:
            cache[key] = expand(alg.element({m: ONE}), form)
        return cache[key]

    out = {}
    for key, c in t.terms.items():
        parts = [coords(alg, m).items() for alg, m in zip(t.algebras, key)]
        for combo in product(*parts):
            coeff = c
            for _, v in combo:
                coeff = coeff * v
            add_into(out, {tuple(b for b, _ in combo): coeff})
    return out


def coproduct_closure_check(alg, form: str, degree: int = 1, toral: int = 1) -> int:
    """Delta maps basis monomials of the form into the tensor square of the form."""
    count = 0
    for m in form_basis(alg, form, degree, toral):
        coords = expand_tensor(coproduct(materialize(m, alg)), form)
        bad = sorted(key for key, c in coords.items() if not is_laurent(c))
        if bad:
            raise NotInForm(f"coproduct leaves the {form} form", witness=(m, bad[0]))
        count += 1
    return count
