"""Word polynomials in the free algebra on simple generators.

A word polynomial is a dict mapping a tuple of 0-based simple indices to a
scalar.  Concatenation is the product.
"""
from collections import defaultdict
from itertools import permutations

from .qcoeff import ONE, ZERO, q_binomial


def add_into(acc: dict, poly: dict, scale=ONE) -> dict:
    for w, c in poly.items():
        v = acc.get(w, ZERO) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


def word_mul(a: dict, b: dict) -> dict:
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            add_into(out, {w1 + w2: c1 * c2})
    return out


def word_power(a: dict, k: int) -> dict:
    out = {(): ONE}
    for _ in range(k):
        out = word_mul(out, a)
    return out


def word_weight(word, n: int) -> tuple:
    counts = [0] * n
    for i in word:
        counts[i] += 1
    return tuple(counts)


def words_of_weight(beta) -> list:
    letters = [i for i, k in enumerate(beta) for _ in range(k)]
    return sorted(set(permutations(letters)))


def serre_relation(datum, i: int, j: int) -> dict:
    """sum_s (-1)^s [1-a_ij choose s]_{q_i} X_i^{1-a_ij-s} X_j X_i^s"""
    m = 1 - datum.A[i][j]
    di = datum.d[i]
    out = {}
    for s in range(m + 1):
        coeff = q_binomial(m, s, di) * (-1) ** s
        add_into(out, {(i,) * (m - s) + (j,) + (i,) * s: coeff})
    return out


def serre_relations(datum) -> list:
    n = datum.n
    rels = []
    for i in range(n):
        for j in range(n):
            if i != j:
                beta = [0] * n
                beta[i] += 1 - datum.A[i][j]
                beta[j] += 1
                rels.append((tuple(beta), serre_relation(datum, i, j)))
    return rels


def split_weights(beta) -> list:
    """All ordered pairs (b1, b2) of nonnegative vectors with b1 + b2 = beta."""
    out = [()]
    for k in beta:
        out = [prev + (a,) for prev in out for a in range(k + 1)]
    return [(b1, tuple(x - y for x, y in zip(beta, b1))) for b1 in out]


def group_by_weight(poly: dict, n: int) -> dict:
    parts = defaultdict(dict)
    for w, c in poly.items():
        parts[word_weight(w, n)][w] = c
    return dict(parts)
