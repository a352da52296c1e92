"""Expression language for algebra elements.

    expr    = term { ("+" | "-") term } ;
    term    = power { ("*" | "/") power } ;
    power   = unary [ "^" [ "-" ] integer ] ;
    unary   = "-" unary | atom ;
    atom    = number | "q" | "(" expr ")" | gen | call ;
    gen     = ( "E" | "F" | "Er" | "Fr" ) "[" integer "]"
            | ( "L" | "K" ) "[" [ "-" ] integer { "," [ "-" ] integer } "]" ;
    call    = "dp" "(" expr "," integer ")"
            | "bar" "(" expr ")"
            | "binom" "(" "M" [ "_" ] integer "," [ "-" ] integer "," integer ")" ;
    number  = digit { digit } ;

Indices are 1-based.  L vectors are lattice coordinates, K vectors root
coordinates.  dp and bar take a single root vector.  Division is by
scalars only.
"""
import re
from typing import NamedTuple

from ..duality.forms import toral_binomial_poly
from ..kernel.algebra import AlgebraElement
from ..kernel.errors import ExprIndexError, ExprSyntaxError, PresentationMismatch
from ..kernel.qcoeff import ONE, coerce, q, q_factorial, qpow

TOKENS = {
    "num": r"\d+",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "lpar": r"\(",
    "rpar": r"\)",
    "lbr": r"\[",
    "rbr": r"\]",
    "plus": r"\+",
    "minus": r"-",
    "mul": r"\*",
    "div": r"/",
    "pow": r"\^",
    "comma": r",",
    "skip": r"\s+",
    "error": r".",
}
_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKENS.items()))


class Token(NamedTuple):
    type: str
    value: str
    where: int


class Num(NamedTuple):
    value: int


class Q(NamedTuple):
    pass


class Gen(NamedTuple):
    symbol: str
    args: tuple


class Call(NamedTuple):
    name: str
    args: tuple


class Neg(NamedTuple):
    arg: object


class BinOp(NamedTuple):
    op: str
    left: object
    right: object


class Pow(NamedTuple):
    base: object
    exponent: int


def tokenize(text: str) -> list[Token]:
    out = []
    for mo in _REGEX.finditer(text):
        kind = mo.lastgroup
        if kind == "skip":
            continue
        if kind == "error":
            raise ExprSyntaxError(f"unexpected character {mo.group()!r} at {mo.start()}",
                                  position=(mo.start(), mo.end()))
        out.append(Token(kind, mo.group(), mo.start()))
    out.append(Token("end", "", len(text)))
    return out


class Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, what: str):
        tok = self.peek
        found = tok.value or "end of input"
        span = (tok.where, tok.where + max(len(tok.value), 1))
        return ExprSyntaxError(f"expected {what} at {tok.where}, found {found!r}", position=span)

    def take(self, kind: str, value: str | None = None) -> Token:
        tok = self.peek
        if tok.type != kind or (value is not None and tok.value != value):
            raise self._error(value or kind)
        self.pos += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.peek.type == kind:
            self.pos += 1
            return self.tokens[self.pos - 1]
        return None

    def parse(self):
        node = self.expr()
        if self.peek.type != "end":
            raise self._error("an operator")
        return node

    def expr(self):
        node = self.term()
        while self.peek.type in ("plus", "minus"):
            op = self.take(self.peek.type).value
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.power()
        while self.peek.type in ("mul", "div"):
            op = self.take(self.peek.type).value
            node = BinOp(op, node, self.power())
        return node

    def power(self):
        node = self.unary()
        if self.accept("pow"):
            node = Pow(node, self.integer())
        return node

    def unary(self):
        if self.accept("minus"):
            return Neg(self.unary())
        return self.atom()

    def integer(self) -> int:
        sign = -1 if self.accept("minus") else 1
        return sign * int(self.take("num").value)

    def atom(self):
        tok = self.peek
        if tok.type == "num":
            self.pos += 1
            return Num(int(tok.value))
        if self.accept("lpar"):
            node = self.expr()
            self.take("rpar")
            return node
        if tok.type != "name":
            raise self._error("a number, q, a generator or a call")
        self.pos += 1
        name = tok.value
        if name == "q":
            return Q()
        if name in ("E", "F", "Er", "Fr"):
            self.take("lbr")
            index = int(self.take("num").value)
            self.take("rbr")
            return Gen(name, (index,))
        if name in ("L", "K"):
            self.take("lbr")
            coords = [self.integer()]
            while self.accept("comma"):
                coords.append(self.integer())
            self.take("rbr")
            return Gen(name, tuple(coords))
        if name == "dp":
            self.take("lpar")
            arg = self.expr()
            self.take("comma")
            n = int(self.take("num").value)
            self.take("rpar")
            return Call("dp", (arg, n))
        if name == "bar":
            self.take("lpar")
            arg = self.expr()
            self.take("rpar")
            return Call("bar", (arg,))
        if name == "binom":
            self.take("lpar")
            label = self.take("name").value
            index = self._toral_index(label)
            self.take("comma")
            c = self.integer()
            self.take("comma")
            t = int(self.take("num").value)
            self.take("rpar")
            return Call("binom", (index, c, t))
        self.pos -= 1
        raise self._error("a known symbol")

    def _toral_index(self, label: str) -> int:
        m = re.fullmatch(r"M_?(\d+)", label)
        if not m:
            self.pos -= 1
            raise self._error("M_i")
        return int(m.group(1))


def parse(text: str):
    return Parser(text).parse()


class Evaluator:
    """Evaluates parsed expressions to scalars or elements of one algebra."""

    def __init__(self, alg) -> None:
        self.alg = alg
        self.datum = alg.datum

    def __call__(self, node) -> AlgebraElement:
        value = self.eval(node)
        if not isinstance(value, AlgebraElement):
            value = self.alg.scalar(value)
        return value

    def _index(self, k: int, size: int, what: str) -> int:
        if not 1 <= k <= size:
            raise ExprIndexError(f"{what} index {k} out of range 1..{size}")
        return k - 1

    def _vector(self, coords: tuple, what: str) -> tuple:
        if len(coords) != self.alg.n:
            raise ExprIndexError(f"{what} needs {self.alg.n} coordinates, got {len(coords)}")
        return coords

    def _root(self, node) -> tuple:
        """(side, root position) of a node that is a single root vector."""
        if not isinstance(node, Gen) or node.symbol not in ("E", "F", "Er", "Fr"):
            raise ExprSyntaxError("dp and bar take a single root vector")
        if node.symbol in ("E", "F"):
            i = self._index(node.args[0], self.alg.n, "simple root")
            return node.symbol, self.datum.roots.simple_index(i)
        return node.symbol[0], self._index(node.args[0], self.alg.N, "root")

    def _root_vector(self, side: str, r: int) -> AlgebraElement:
        return self.alg.root_E(r) if side == "E" else self.alg.root_F(r)

    def eval(self, node):
        alg = self.alg
        if isinstance(node, Num):
            return coerce(node.value)
        if isinstance(node, Q):
            return q
        if isinstance(node, Neg):
            return -self.eval(node.arg)
        if isinstance(node, Gen):
            if node.symbol in ("E", "F", "Er", "Fr"):
                return self._root_vector(*self._root(node))
            coords = self._vector(node.args, node.symbol)
            return alg.L(coords) if node.symbol == "L" else alg.K(coords)
        if isinstance(node, Pow):
            base = self.eval(node.base)
            if node.exponent >= 0:
                return base ** node.exponent
            if not isinstance(base, AlgebraElement):
                return base ** node.exponent
            return self._toral_inverse(base) ** (-node.exponent)
        if isinstance(node, BinOp):
            left, right = self.eval(node.left), self.eval(node.right)
            if node.op == "/":
                if isinstance(right, AlgebraElement):
                    right = self._as_scalar(right)
                if not right:
                    raise ExprSyntaxError("division by zero")
                return left * (ONE / right)
            if isinstance(right, AlgebraElement) and not isinstance(left, AlgebraElement):
                # scalars are central, keep the element on the left
                if node.op == "-":
                    return -right + left
                left, right = right, left
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        if isinstance(node, Call):
            return self._call(node)
        raise ExprSyntaxError(f"cannot evaluate {node!r}")

    def _call(self, node: Call):
        alg = self.alg
        if node.name == "binom":
            index, c, t = node.args
            i = self._index(index, alg.n, "toral")
            out = alg.zero()
            for k, v in toral_binomial_poly(c, t, int(self.datum.d[i])).items():
                out = out + alg.L(tuple(k if j == i else 0 for j in range(alg.n))) * v
            return out
        side, r = self._root(node.args[0])
        d = int(self.datum.roots.d_alpha[r])
        x = self._root_vector(side, r)
        if node.name == "bar":
            return x * (qpow(d) - qpow(-d))
        n = node.args[1]
        return x ** n * (ONE / q_factorial(n, d))

    def _as_scalar(self, x: AlgebraElement):
        unit = self.alg.monomial()
        if set(x.terms) - {unit}:
            raise ExprSyntaxError("division is by scalars only")
        return x.terms.get(unit, coerce(0))

    def _toral_inverse(self, x: AlgebraElement) -> AlgebraElement:
        if len(x.terms) != 1:
            raise PresentationMismatch("negative powers are defined for toral monomials only", witness=x.render())
        (m, c), = x.terms.items()
        if not m.is_toral():
            raise PresentationMismatch("negative powers are defined for toral monomials only", witness=x.render())
        inv = m.replace(mu=tuple(-v for v in m.mu), kappa=tuple(-v for v in m.kappa))
        return self.alg.element({inv: ONE / c})


def evaluate(text: str, alg) -> AlgebraElement:
    return Evaluator(alg)(parse(text))


__all__ = ["tokenize", "parse", "Parser", "Evaluator", "evaluate", "TOKENS"]
