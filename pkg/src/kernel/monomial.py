from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """E^e . L_mu K_kappa . F^f with E descending and F ascending in the convex order.

    mu is in the basis of the lattice M, kappa in the basis of simple roots.
    """

    e: tuple
    mu: tuple
    kappa: tuple
    f: tuple

    @classmethod
    def unit(cls, N: int, n: int) -> "PBWMonomial":
        return cls((0,) * N, (0,) * n, (0,) * n, (0,) * N)

    @property
    def toral(self) -> tuple:
        return self.mu, self.kappa

    @property
    def e_degree(self) -> int:
        return sum(self.e)

    @property
    def f_degree(self) -> int:
        return sum(self.f)

    @property
    def degree(self) -> int:
        return self.e_degree + self.f_degree

    def is_toral(self) -> bool:
        return not any(self.e) and not any(self.f)

    def replace(self, **kw) -> "PBWMonomial":
        data = dict(e=self.e, mu=self.mu, kappa=self.kappa, f=self.f)
        data.update(kw)
        return PBWMonomial(**data)

    def to_json(self) -> dict:
        return {"e": list(self.e), "mu": list(self.mu), "kappa": list(self.kappa), "f": list(self.f)}


def bump(v: tuple, i: int, by: int = 1) -> tuple:
    return v[:i] + (v[i] + by,) + v[i + 1:]


def vec_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_neg(a: tuple) -> tuple:
    return tuple(-x for x in a)
