"""Elements in PBW normal form and the straightening engine.

An Algebra is one presentation over one Cartan datum:

    borel_minus   U<=(M): L_mu, F_i
    borel_plus    U>=(M): E_i, L_mu
    double        D_M: E_i, L_mu (mu in M), K_alpha (alpha in Q), F_i
    full          U(M): E_i, L_mu, F_i with [E_i, F_i] = (L_ai - L_-ai)/(q_i - q_i^-1)
    H             H_M: E^phi_i, L^phi_mu, F^phi_i, E and F commuting

Normal form is E (descending) . toral . F (ascending).
"""
import logging
from functools import lru_cache

from .errors import PresentationMismatch
from .monomial import PBWMonomial, bump, vec_add
from .qcoeff import ONE, ZERO, coerce, qpow, render_scalar, scalar_from_json, scalar_to_json
from .relations import LETTERS, check_kind, cross_terms, toral_exponent, toral_weight
from .rootvec import descending_letters, ascending_letters, e_monomial_words, f_monomial_words
from .tables import e_table, f_table, h_e_table, h_f_table
from .words import add_into

log = logging.getLogger(__name__)


class AlgebraElement:
    """Finite k(q)-combination of normal monomials of one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "Algebra", terms: dict | None = None) -> None:
        self.algebra = algebra
        self.terms = {m: coerce(c) for m, c in (terms or {}).items() if c}

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise PresentationMismatch(
                f"cannot combine {self.algebra.kind} element with {getattr(other, 'algebra', other)}")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.scalar(other)
        self._check(other)
        return AlgebraElement(self.algebra, add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        c = coerce(other)
        return AlgebraElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = coerce(other)
        return AlgebraElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            if not self.terms and not other:
                return True
            return self == self.algebra.scalar(other)
        return self.algebra is other.algebra and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def coefficient(self, m: PBWMonomial):
        return self.terms.get(m, ZERO)

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def to_json(self) -> dict:
        return {
            "presentation": self.algebra.kind,
            "terms": [dict(m.to_json(), coeff=scalar_to_json(c)) for m, c in self],
        }

    def render(self) -> str:
        return self.algebra.render(self)

    def __repr__(self) -> str:
        return f"<{self.algebra.kind} {self.render()}>"


class Algebra:
    def __init__(self, datum, kind: str) -> None:
        self.datum = datum
        self.kind = check_kind(kind)
        self.n = datum.n
        self.N = datum.roots.N
        self.zero_n = (0,) * self.n
        self.zero_N = (0,) * self.N
        self._e_memo = {}
        self._f_memo = {}
        self._swap_memo = {}
        self._weights = {}
        self.delta_memo = {}
        self.delta_words = {"E": {}, "F": {}}
        self.antipode_memo = {}

    def __repr__(self) -> str:
        return f"Algebra({self.datum.cartan_type}, {self.datum.lattice_name}, {self.kind})"

    @property
    def modified(self) -> bool:
        """True when root vectors are the modified ones L_{tau_a} E_a, L_{tau_a} F_a."""
        return self.kind == "H"

    # construction

    def element(self, terms: dict) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def monomial(self, e=None, mu=None, kappa=None, f=None) -> PBWMonomial:
        return PBWMonomial(tuple(e or self.zero_N), tuple(mu or self.zero_n),
                           tuple(kappa or self.zero_n), tuple(f or self.zero_N))

    def scalar(self, c) -> AlgebraElement:
        return AlgebraElement(self, {self.monomial(): coerce(c)})

    def one(self) -> AlgebraElement:
        return self.scalar(ONE)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def _need(self, letter: str) -> None:
        if letter not in LETTERS[self.kind]:
            raise PresentationMismatch(f"{letter} is not a generator of the {self.kind} presentation")

    def E(self, i: int) -> AlgebraElement:
        return self.root_E(self.datum.roots.simple_index(i))

    def F(self, i: int) -> AlgebraElement:
        return self.root_F(self.datum.roots.simple_index(i))

    def root_E(self, r: int) -> AlgebraElement:
        self._need("E")
        return self.element({self.monomial(e=bump(self.zero_N, r)): ONE})

    def root_F(self, r: int) -> AlgebraElement:
        self._need("F")
        return self.element({self.monomial(f=bump(self.zero_N, r)): ONE})

    def L(self, mu) -> AlgebraElement:
        return self.element({self.monomial(mu=tuple(mu)): ONE})

    def L_weight(self, w) -> AlgebraElement:
        return self.L(self.datum.to_lattice(w))

    def K(self, kappa) -> AlgebraElement:
        """K_alpha for alpha = sum kappa_i alpha_i; equal to L_alpha outside the double."""
        if self.kind == "double":
            return self.element({self.monomial(kappa=tuple(kappa)): ONE})
        return self.L_weight(self.datum.from_alpha(kappa))

    def from_letters(self, letters) -> AlgebraElement:
        out = self.one()
        for sym, arg in letters:
            gen = {"E": self.E, "F": self.F, "L": self.L, "K": self.K}[sym]
            out = out * gen(arg)
        return out

    # weights

    def _positive_weight(self, v: tuple) -> tuple:
        w = self._weights.get(v)
        if w is None:
            w = self.zero_n
            for r, k in enumerate(v):
                if k:
                    w = vec_add(w, tuple(k * x for x in self.datum.root_weight(r)))
            self._weights[v] = w
        return w

    def toral_weight(self, mu, kappa) -> tuple:
        return toral_weight(self.datum, mu, kappa)

    def weight_of(self, m: PBWMonomial) -> tuple:
        roots = self.datum.roots.roots
        out = [0] * self.n
        for r in range(self.N):
            for k in range(self.n):
                out[k] += (m.e[r] - m.f[r]) * roots[r][k]
        return tuple(out)

    # straightening

    def _tables(self):
        if self.kind == "H":
            return h_e_table(self.datum), h_f_table(self.datum)
        return e_table(self.datum), f_table(self.datum)

    def _e_times_letter(self, e: tuple, s: int) -> dict:
        key = (e, s)
        hit = self._e_memo.get(key)
        if hit is not None:
            return hit
        last = next((r for r in range(self.N) if e[r]), None)
        if last is None or s <= last:
            out = {bump(e, s): ONE}
        else:
            head = bump(e, last, -1)
            out = {}
            for m, c in self._tables()[0][(last, s)].items():
                add_into(out, self._e_letters(head, descending_letters(m)), c)
        self._e_memo[key] = out
        return out

    def _e_letters(self, e: tuple, letters) -> dict:
        acc = {e: ONE}
        for s in letters:
            new = {}
            for m, c in acc.items():
                add_into(new, self._e_times_letter(m, s), c)
            acc = new
        return acc

    def e_mul(self, e1: tuple, e2: tuple) -> dict:
        return self._e_letters(e1, descending_letters(e2))

    def _f_times_letter(self, f: tuple, t: int) -> dict:
        key = (f, t)
        hit = self._f_memo.get(key)
        if hit is not None:
            return hit
        last = next((r for r in reversed(range(self.N)) if f[r]), None)
        if last is None or t >= last:
            out = {bump(f, t): ONE}
        else:
            head = bump(f, last, -1)
            out = {}
            for m, c in self._tables()[1][(last, t)].items():
                add_into(out, self._f_letters(head, ascending_letters(m)), c)
        self._f_memo[key] = out
        return out

    def _f_letters(self, f: tuple, letters) -> dict:
        acc = {f: ONE}
        for t in letters:
            new = {}
            for m, c in acc.items():
                add_into(new, self._f_times_letter(m, t), c)
            acc = new
        return acc

    def f_mul(self, f1: tuple, f2: tuple) -> dict:
        return self._f_letters(f1, ascending_letters(f2))

    def _exp(self, toral: tuple, beta: tuple, side: str):
        return toral_exponent(self.datum, self.kind, self.toral_weight(*toral), beta, side)

    def _pass_f_word(self, fw: tuple, i: int) -> list:
        """F_w E_i - E_i F_w as a list of (toral, remaining F-word, coefficient)."""
        out = []
        for p, j in enumerate(fw):
            if j != i:
                continue
            prefix = self._simple_word_weight(fw[:p])
            for toral, c in cross_terms(self.datum, self.kind, i):
                k = self._exp(toral, prefix, "F")
                out.append((toral, fw[:p] + fw[p + 1:], c * qpow(-k)))
        return out

    def _simple_word_weight(self, word) -> tuple:
        counts = [0] * self.n
        for i in word:
            counts[i] += 1
        return self.datum.from_alpha(counts)

    def _simple_swap(self, fw: tuple, ew: tuple) -> dict:
        """F_fw E_ew as {(E-word, toral, F-word): coeff}."""
        zero_t = (self.zero_n, self.zero_n)
        state = {((), zero_t, fw): ONE}
        for i in ew:
            new = {}
            for (e_word, toral, f_word), c in state.items():
                k = self._exp(toral, self.datum.alpha(i), "E")
                add_into(new, {(e_word + (i,), toral, f_word): c * qpow(k)})
                for tx, rest, cx in self._pass_f_word(f_word, i):
                    tor = (vec_add(toral[0], tx[0]), vec_add(toral[1], tx[1]))
                    add_into(new, {(e_word, tor, rest): c * cx})
            state = new
        return state

    def _from_simple(self, word: tuple, side: str) -> dict:
        index = self.datum.roots.simple_index
        letters = [index(i) for i in word]
        if side == "E":
            return self._e_letters(self.zero_N, letters)
        return self._f_letters(self.zero_N, letters)

    def swap(self, f: tuple, e: tuple) -> dict:
        """F^f E^e as {(e', toral, f'): coeff} with each part normal."""
        zero_t = (self.zero_n, self.zero_n)
        if not any(f) or not any(e) or self.kind == "H":
            return {(e, zero_t, f): ONE}
        key = (f, e)
        hit = self._swap_memo.get(key)
        if hit is not None:
            return hit
        out = {}
        fwords = f_monomial_words(self.datum, f)
        ewords = e_monomial_words(self.datum, e)
        for fw, fc in fwords.items():
            for ew, ec in ewords.items():
                for (e_word, toral, f_word), c in self._simple_swap(fw, ew).items():
                    scale = fc * ec * c
                    for e2, c2 in self._from_simple(e_word, "E").items():
                        for f2, c3 in self._from_simple(f_word, "F").items():
                            add_into(out, {(e2, toral, f2): scale * c2 * c3})
        self._swap_memo[key] = out
        return out

    def mono_mul(self, m1: PBWMonomial, m2: PBWMonomial) -> dict:
        out = {}
        t1 = m1.toral
        t2 = m2.toral
        for (e_mid, t_mid, f_mid), c in self.swap(m1.f, m2.e).items():
            k1 = self._exp(t1, self._positive_weight(e_mid), "E")
            k2 = self._exp(t2, self._positive_weight(f_mid), "F")
            scale = c * qpow(k1 - k2)
            mu = vec_add(vec_add(t1[0], t_mid[0]), t2[0])
            kappa = vec_add(vec_add(t1[1], t_mid[1]), t2[1])
            for e, ce in self.e_mul(m1.e, e_mid).items():
                for f, cf in self.f_mul(f_mid, m2.f).items():
                    add_into(out, {PBWMonomial(e, mu, kappa, f): scale * ce * cf})
        return out

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self or y.algebra is not self:
            raise PresentationMismatch("factors belong to different presentations")
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                add_into(out, self.mono_mul(m1, m2), c1 * c2)
        return AlgebraElement(self, out)

    # words

    def monomial_letters(self, m: PBWMonomial):
        """m as (E word polynomial, toral, F word polynomial) in simple letters."""
        return e_monomial_words(self.datum, m.e), m.toral, f_monomial_words(self.datum, m.f)

    # printing and serialization

    def render(self, x: AlgebraElement) -> str:
        if not x.terms:
            return "0"
        parts = []
        for m, c in x:
            factors = []
            for r in reversed(range(self.N)):
                if m.e[r]:
                    factors.append(self._root_symbol("E", r) + (f"^{m.e[r]}" if m.e[r] > 1 else ""))
            if any(m.mu):
                factors.append("L[" + ",".join(map(str, m.mu)) + "]")
            if any(m.kappa):
                factors.append("K[" + ",".join(map(str, m.kappa)) + "]")
            for r in range(self.N):
                if m.f[r]:
                    factors.append(self._root_symbol("F", r) + (f"^{m.f[r]}" if m.f[r] > 1 else ""))
            body = "*".join(factors)
            coeff = render_scalar(c)
            if not body:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(body)
            else:
                parts.append(f"({coeff})*{body}")
        return " + ".join(parts)

    def _root_symbol(self, side: str, r: int) -> str:
        beta = self.datum.roots.roots[r]
        if sum(beta) == 1:
            return f"{side}[{beta.index(1) + 1}]"
        return f"{side}r[{r + 1}]"

    def from_json(self, obj: dict) -> AlgebraElement:
        if obj.get("presentation", self.kind) != self.kind:
            raise PresentationMismatch(f"element of {obj['presentation']} read into {self.kind}")
        terms = {}
        for t in obj["terms"]:
            m = PBWMonomial(tuple(t["e"]), tuple(t["mu"]), tuple(t["kappa"]), tuple(t["f"]))
            add_into(terms, {m: scalar_from_json(t["coeff"])})
        return AlgebraElement(self, terms)


@lru_cache(maxsize=None)
def get_algebra(datum, kind: str) -> Algebra:
    log.debug("new %s algebra for %s on %s", kind, datum.cartan_type, datum.lattice_name)
    return Algebra(datum, kind)


def weight_of(m: PBWMonomial, datum) -> tuple:
    """Q-grading degree of a monomial in simple-root coordinates."""
    return get_algebra(datum, "full").weight_of(m)
