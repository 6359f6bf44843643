"""Invariants of Gamma_0(N): cusps, index, elliptic points, genus, dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple

from .arith import divisors, euler_phi, factorize, kronecker


class Cusp(NamedTuple):
    """The cusp ``a/c`` with ``c | N``; ``c = N`` is identified with i*infinity."""

    a: int
    c: int

    def __str__(self):
        return f"{self.a}/{self.c}"

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.c)


@lru_cache(maxsize=None)
def cusp_reps(N: int) -> tuple[Cusp, ...]:
    """Complete, duplicate-free cusp representatives of Gamma_0(N).

    For each ``c | N`` one numerator ``a`` (smallest in ``1..N`` with
    ``gcd(a, N) = 1``) is taken per residue class modulo ``gcd(c, N/c)``.  For
    squarefree N this is exactly ``{1/d : d | N}``.
    """
    if N < 1:
        raise ValueError("level must be positive")
    reps = []
    for c in divisors(N):
        g = gcd(c, N // c)
        seen = set()
        for a in range(1, N + 1):
            if gcd(a, N) != 1 or a % g in seen:
                continue
            seen.add(a % g)
            reps.append(Cusp(a, c))
    return tuple(reps)


def index_gamma0(N: int) -> int:
    """``[SL_2(Z) : Gamma_0(N)] = N prod_{p|N} (1 + 1/p)``."""
    if N < 1:
        raise ValueError("level must be positive")
    mu = N
    for p in factorize(N):
        mu = mu // p * (p + 1)
    return mu


def sturm_bound(N: int, k) -> int:
    """``floor(k * index / 12)``: forms agreeing through ``q^bound`` coincide."""
    if k < 1:
        raise ValueError("weight must be at least 1")
    return int(Fraction(k) * index_gamma0(N) // 12)


def count_elliptic2(N: int) -> int:
    if N % 4 == 0:
        return 0
    out = 1
    for p in factorize(N):
        out *= 1 + kronecker(-4, p)
    return out


def count_elliptic3(N: int) -> int:
    if N % 9 == 0:
        return 0
    out = 1
    for p in factorize(N):
        out *= 1 + kronecker(-3, p)
    return out


def count_cusps(N: int) -> int:
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N))


def genus(N: int) -> int:
    g = 1 + Fraction(index_gamma0(N), 12) - Fraction(count_elliptic2(N), 4) \
        - Fraction(count_elliptic3(N), 3) - Fraction(count_cusps(N), 2)
    assert g.denominator == 1, g
    return int(g)


def dim_cusp_forms(N: int, k: int) -> int:
    """Dimension of S_k(Gamma_0(N)) for even ``k >= 2``."""
    if k % 2 or k < 2:
        raise NotImplementedError("only even weights k >= 2 are supported")
    g = genus(N)
    if k == 2:
        return g
    return ((k - 1) * (g - 1) + (k // 2 - 1) * count_cusps(N)
            + count_elliptic2(N) * (k // 4) + count_elliptic3(N) * (k // 3))


def dim_modular_forms(N: int, k: int) -> int:
    """Dimension of M_k(Gamma_0(N)) for even ``k >= 2`` (cusp forms plus Eisenstein part)."""
    eis = count_cusps(N) - (1 if k == 2 else 0)
    return dim_cusp_forms(N, k) + eis


@dataclass(frozen=True)
class LevelProfile:
    N: int
    prime_factorization: dict = field(compare=False)
    divisors: tuple
    cusp_reps: tuple
    index_mu: int
    eps2: int
    eps3: int
    eps_inf: int
    genus: int

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "prime_factorization": {str(p): e for p, e in self.prime_factorization.items()},
            "divisors": list(self.divisors),
            "cusp_reps": [str(c) for c in self.cusp_reps],
            "index_mu": self.index_mu,
            "eps2": self.eps2,
            "eps3": self.eps3,
            "eps_inf": self.eps_inf,
            "genus": self.genus,
        }


@lru_cache(maxsize=None)
def level_profile(N: int) -> LevelProfile:
    reps = cusp_reps(N)
    profile = LevelProfile(
        N=N,
        prime_factorization=factorize(N),
        divisors=divisors(N),
        cusp_reps=reps,
        index_mu=index_gamma0(N),
        eps2=count_elliptic2(N),
        eps3=count_elliptic3(N),
        eps_inf=count_cusps(N),
        genus=genus(N),
    )
    assert profile.eps_inf == len(reps)
    return profile
