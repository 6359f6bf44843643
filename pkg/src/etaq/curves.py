"""Elliptic curves over Q in long Weierstrass form and their Hecke eigenvalues a(n).

a(p) comes from point counting at good primes and from the split/non-split
type of the node at primes of multiplicative reduction.  Only semistable
levels prime to 6 are handled.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import factorize, kronecker, primes_up_to


class UnsupportedCurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"{self} is singular")

    @classmethod
    def parse(cls, text: str) -> WeierstrassCurve:
        parts = [p for p in text.replace("[", "").replace("]", "").replace(",", " ").split()]
        if len(parts) != 5:
            raise ValueError(f"expected five coefficients a1,a2,a3,a4,a6, got {text!r}")
        return cls(*(int(p) for p in parts))

    @property
    def b2(self):
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @property
    def c4(self):
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2**2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    def __str__(self):
        return f"[{self.a1},{self.a2},{self.a3},{self.a4},{self.a6}]"


def reduction_type(E: WeierstrassCurve, p: int) -> str:
    if E.discriminant % p:
        return "good"
    if E.c4 % p:
        return "multiplicative"
    return "additive"


def count_points(E: WeierstrassCurve, p: int) -> int:
    """``#E(F_p)`` including the point at infinity (p of good reduction)."""
    if p == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + E.a1 * x * y + E.a3 * y - x**3 - E.a2 * x * x - E.a4 * x - E.a6) % 2 == 0:
                    n += 1
        return n
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6 = E.b2 % p, E.b4 % p, E.b6 % p
    n = 1 + p
    for x in range(p):
        n += kronecker((4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % p, p)
    return n


def node_is_split(E: WeierstrassCurve, p: int) -> bool:
    """At multiplicative reduction (p odd): are the node's tangent slopes defined over F_p?"""
    if p == 2:
        raise UnsupportedCurveError("split test at p = 2 is not supported")
    b2, b4, b6 = E.b2, E.b4, E.b6
    for x in range(p):
        g = (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % p
        dg = (12 * x * x + 2 * b2 * x + 2 * b4) % p
        if g == 0 and dg == 0:
            # y'^2 = (12 x0 + b2)(x - x0)^2 near the node
            cone = (12 * x + b2) % p
            if cone == 0:
                raise UnsupportedCurveError(f"cusp rather than node at p = {p}")
            return kronecker(cone, p) == 1
    raise AssertionError(f"no singular point mod {p}")


def hecke_eigenvalues(E: WeierstrassCurve, N: int, n_max: int) -> list[int]:
    """``[a(1), ..., a(n_max)]`` for the weight-2 newform of level N attached to E."""
    bad = factorize(N)
    if 2 in bad or 3 in bad:
        raise UnsupportedCurveError("levels divisible by 2 or 3 are not supported")
    if any(e > 1 for e in bad.values()):
        raise UnsupportedCurveError(f"level {N} is not squarefree")
    for p in bad:
        kind = reduction_type(E, p)
        if kind != "multiplicative":
            raise UnsupportedCurveError(f"reduction at {p} is {kind}, not multiplicative")
    for p in factorize(abs(E.discriminant)):
        if p not in bad:
            raise ValueError(f"bad reduction at {p}, which does not divide the claimed conductor {N}")

    ap: dict[int, int] = {}
    for p in primes_up_to(n_max):
        if p in bad:
            ap[p] = 1 if node_is_split(E, p) else -1
        else:
            ap[p] = p + 1 - count_points(E, p)
            assert ap[p] ** 2 <= 4 * p, (p, ap[p])

    a = [0] * (n_max + 1)
    if n_max >= 1:
        a[1] = 1
    # prime powers
    for p, value in ap.items():
        prev, cur = 1, value
        pk = p
        while pk <= n_max:
            a[pk] = cur
            if p in bad:
                prev, cur = cur, cur * value
            else:
                prev, cur = cur, value * cur - p * prev
            pk *= p
    # multiplicativity over coprime factorizations
    spf = list(range(n_max + 1))
    for p in range(2, isqrt(n_max) + 1):
        if spf[p] == p:
            for m in range(p * p, n_max + 1, p):
                if spf[m] == m:
                    spf[m] = p
    for n in range(2, n_max + 1):
        p = spf[n]
        pk = p
        while n % (pk * p) == 0:
            pk *= p
        if pk != n:
            a[n] = a[pk] * a[n // pk]
    return a[1:]
