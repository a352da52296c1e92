"""Exact linear algebra over Q(q) on top of sympy's DomainMatrix."""
from sympy.polys.matrices import DomainMatrix

from .qcoeff import QFIELD, ZERO, coerce

DOMAIN = QFIELD.to_domain()


def matrix(rows) -> DomainMatrix:
    rows = [[coerce(c) for c in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), DOMAIN)


def columns_matrix(columns, nrows: int) -> DomainMatrix:
    """Matrix whose columns are the given sparse vectors (dicts row -> scalar)."""
    rows = [[ZERO] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, c in col.items():
            rows[i][j] = coerce(c)
    return matrix(rows) if nrows else DomainMatrix([], (0, len(columns)), DOMAIN)


def to_rows(m: DomainMatrix) -> list:
    return m.to_list()


def rref(m: DomainMatrix):
    reduced, pivots = m.rref()
    return reduced.to_list(), tuple(pivots)


def det(rows):
    if not rows:
        return QFIELD.one
    return matrix(rows).det()


def rank(rows) -> int:
    if not rows:
        return 0
    return matrix(rows).rank()


def inverse(rows) -> list:
    return matrix(rows).inv().to_list()


def solve(rows, rhs) -> list:
    """Unique solution of rows * x = rhs for a square invertible system."""
    inv = inverse(rows)
    return [sum((a * b for a, b in zip(row, rhs)), ZERO) for row in inv]


def mat_mul(a, b) -> list:
    return [[sum((x * b[k][j] for k, x in enumerate(row)), ZERO) for j in range(len(b[0]))] for row in a]
