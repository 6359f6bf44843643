"""Eta-quotients ``prod_{delta | N} eta(delta tau)^{r_delta}`` and their invariants."""

from __future__ import annotations

import cmath
import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
import numpy as np

from .arith import divisors, factorize, is_square, kronecker
from .gamma0 import Cusp, cusp_reps
from .qseries import DENOM, FracSeries, euler_power_coefficients


class NotModularError(ValueError):
    """The eta-quotient fails the mod-24 conditions for Gamma_0(N)."""


class FormClass(str, enum.Enum):
    NOT_MODULAR = "not_modular"
    WEAKLY_HOLOMORPHIC = "weakly_holomorphic"
    HOLOMORPHIC = "holomorphic"
    CUSP_FORM = "cusp_form"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EtaQuotient:
    """Level ``N`` together with exponents ``r_delta``; zero exponents are dropped."""

    level: int
    _exps: tuple

    def __init__(self, level: int, exponents=None):
        if level < 1:
            raise ValueError("level must be positive")
        items = dict(exponents or {})
        for delta, r in items.items():
            if level % delta:
                raise ValueError(f"{delta} does not divide the level {level}")
            if int(r) != r:
                raise ValueError(f"exponent {r} at {delta} is not an integer")
        clean = tuple(sorted((int(d), int(r)) for d, r in items.items() if r))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "_exps", clean)

    @classmethod
    def from_vector(cls, level: int, vector) -> EtaQuotient:
        """Exponents listed in ascending divisor order."""
        divs = divisors(level)
        if len(vector) != len(divs):
            raise ValueError(f"expected {len(divs)} exponents for level {level}")
        return cls(level, dict(zip(divs, vector)))

    @classmethod
    def parse(cls, text: str) -> EtaQuotient:
        """Parse ``"N; d1:r1, d2:r2"``."""
        head, sep, tail = text.partition(";")
        if not sep:
            raise ValueError(f"missing ';' in eta-quotient {text!r}")
        try:
            level = int(head.strip())
        except ValueError as exc:
            raise ValueError(f"bad level in {text!r}") from exc
        exps: dict[int, int] = {}
        for part in filter(None, (p.strip() for p in tail.split(","))):
            m = re.fullmatch(r"(\d+)\s*:\s*([+-]?\d+)", part)
            if not m:
                raise ValueError(f"bad factor {part!r} in {text!r}")
            delta, r = int(m.group(1)), int(m.group(2))
            if delta in exps:
                raise ValueError(f"divisor {delta} repeated in {text!r}")
            exps[delta] = r
        return cls(level, exps)

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exps)

    def exponent(self, delta: int) -> int:
        return dict(self._exps).get(delta, 0)

    @property
    def vector(self) -> tuple[int, ...]:
        e = dict(self._exps)
        return tuple(e.get(d, 0) for d in divisors(self.level))

    @property
    def weight(self) -> Fraction:
        return weight(self)

    def at_level(self, level: int) -> EtaQuotient:
        if level % self.level:
            raise ValueError(f"{level} is not a multiple of {self.level}")
        return EtaQuotient(level, dict(self._exps))

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        level = self.level * other.level // gcd(self.level, other.level)
        out = dict(self._exps)
        for d, r in other._exps:
            out[d] = out.get(d, 0) + r
        return EtaQuotient(level, out)

    def __truediv__(self, other: EtaQuotient) -> EtaQuotient:
        return self * other ** -1

    def __pow__(self, m: int) -> EtaQuotient:
        return EtaQuotient(self.level, {d: r * m for d, r in self._exps})

    def __str__(self):
        body = ", ".join(f"{d}:{r}" for d, r in self._exps)
        return f"{self.level}; {body}" if body else f"{self.level};"

    def __repr__(self):
        return f"EtaQuotient({self})"

    def pretty(self) -> str:
        if not self._exps:
            return "1"
        parts = []
        for d, r in self._exps:
            arg = "tau" if d == 1 else f"{d}tau"
            parts.append(f"eta({arg})" + ("" if r == 1 else f"^{r}"))
        return "*".join(parts)


def weight(f: EtaQuotient) -> Fraction:
    return Fraction(sum(r for _, r in f._exps), 2)


def newman_conditions(f: EtaQuotient) -> tuple[bool, bool]:
    N = f.level
    return (
        sum(d * r for d, r in f._exps) % 24 == 0,
        sum((N // d) * r for d, r in f._exps) % 24 == 0,
    )


def is_modular(f: EtaQuotient) -> bool:
    return all(newman_conditions(f))


@dataclass(frozen=True)
class NebentypusChar:
    """``d -> kronecker((-1)^k s, d)`` with ``s = s_numerator / s_denominator``."""

    modulus: int
    weight_parity_sign: int
    s_numerator: int
    s_denominator: int

    @property
    def discriminant(self) -> int:
        return self.weight_parity_sign * self.s_numerator * self.s_denominator

    def __call__(self, d: int) -> int:
        if gcd(d, self.modulus) != 1:
            return 0
        return kronecker(self.discriminant, d)

    def is_trivial(self) -> bool:
        return is_square(self.discriminant)

    def __str__(self):
        if self.is_trivial():
            return "trivial"
        D = self.discriminant
        core = 1 if D > 0 else -1
        for p, e in factorize(abs(D)).items():
            if e % 2:
                core *= p
        return f"kronecker({core}, .)"


def nebentypus(f: EtaQuotient) -> NebentypusChar:
    if not is_modular(f):
        raise NotModularError(f"{f} does not satisfy both mod-24 conditions")
    k = weight(f)
    if k.denominator != 1:
        raise NotModularError(f"{f} has non-integral weight {k}")
    s = Fraction(1)
    for d, r in f._exps:
        s *= Fraction(d) ** r
    return NebentypusChar(f.level, -1 if k % 2 else 1, s.numerator, s.denominator)


def cusp_order(f: EtaQuotient, d: int) -> Fraction:
    """Order of vanishing at the cusp ``c/d`` relative to Gamma_0(N); depends only on ``d``."""
    N = f.level
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide the level {N}")
    total = Fraction(0)
    g = gcd(d, N // d)
    for delta, r in f._exps:
        total += Fraction(gcd(d, delta) ** 2 * r, g * d * delta)
    return total * N / 24


@dataclass(frozen=True)
class CuspOrders:
    level: int
    orders: dict

    def __getitem__(self, key) -> Fraction:
        if isinstance(key, int):
            key = next(c for c in self.orders if c.c == key)
        return self.orders[key]

    def by_denominator(self) -> dict[int, Fraction]:
        return {c.c: v for c, v in self.orders.items()}

    def values(self):
        return self.orders.values()

    def vector(self) -> tuple[Fraction, ...]:
        """Orders listed by ascending cusp denominator (one per cusp class)."""
        return tuple(self.orders[c] for c in sorted(self.orders, key=lambda c: (c.c, c.a)))


def cusp_orders_all(f: EtaQuotient) -> CuspOrders:
    if not is_modular(f):
        raise NotModularError(f"{f} does not satisfy both mod-24 conditions")
    cache: dict[int, Fraction] = {}
    orders = {}
    for cusp in cusp_reps(f.level):
        if cusp.c not in cache:
            cache[cusp.c] = cusp_order(f, cusp.c)
        orders[cusp] = cache[cusp.c]
    return CuspOrders(f.level, orders)


def classify(f: EtaQuotient) -> FormClass:
    if not is_modular(f):
        return FormClass.NOT_MODULAR
    orders = cusp_orders_all(f).values()
    if any(v < 0 for v in orders):
        return FormClass.WEAKLY_HOLOMORPHIC
    if all(v > 0 for v in orders):
        return FormClass.CUSP_FORM
    return FormClass.HOLOMORPHIC


def _mul_trunc(a, b, n: int) -> list[int]:
    out = [0] * n
    nz = [(j, y) for j, y in enumerate(b[:n]) if y]
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        lim = n - i
        for j, y in nz:
            if j >= lim:
                break
            out[i + j] += x * y
    return out


def integral_product(f: EtaQuotient, n_terms: int) -> list[int]:
    """Integer coefficients of ``prod_delta prod_n (1 - q^(delta n))^{r_delta}`` modulo ``q^n_terms``."""
    prod = [1] + [0] * (n_terms - 1) if n_terms > 0 else []
    for delta, r in f._exps:
        prod = _mul_trunc(prod, euler_power_coefficients(delta, r, n_terms), n_terms)
    return prod


def leading_exponent(f: EtaQuotient) -> int:
    """Exponent of the leading term of the expansion, in units of 1/24."""
    return sum(d * r for d, r in f._exps)


def q_expansion(f: EtaQuotient, n_terms: int) -> FracSeries:
    """Expansion at i*infinity with ``n_terms`` integral steps known past the lead ``q^(sum delta r / 24)``."""
    return FracSeries.from_integral(integral_product(f, n_terms), shift=leading_exponent(f), prec=n_terms)


def expansion_through(f: EtaQuotient, n: int) -> list[int]:
    """Integer coefficients of ``q^0 .. q^n`` for an expansion on integral powers of q with lead >= 0."""
    lead = leading_exponent(f)
    if lead % DENOM or lead < 0:
        raise ValueError(f"{f} does not start at a nonnegative integral power of q")
    start = lead // DENOM
    if start > n:
        return [0] * (n + 1)
    return [0] * start + integral_product(f, n + 1 - start)


def rouse_webb_bound(N: int, k) -> Fraction:
    """``2k prod_{p|N} ((p+1)/(p-1))^min(2, ord_p N)``: bound on ``sum |r_delta|`` in M_k."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("weight must be positive")
    out = 2 * k
    for p, e in factorize(N).items():
        out *= Fraction(p + 1, p - 1) ** min(2, e)
    return out


@dataclass(frozen=True)
class UnimodularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def act(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)


def eta_multiplier(A: UnimodularMatrix) -> tuple[int, int]:
    """Eta multiplier ``v(A) = sign * exp(i pi m / 12)`` returned as ``(sign, m mod 24)``.

    The odd-``c`` branch is used whenever ``c`` is odd, otherwise ``d`` is odd.
    The ``b d (c^2 - 1)`` term enters with a minus sign in both branches; with
    a plus sign the result disagrees with direct evaluation of
    ``eta(A tau) / ((c tau + d)^(1/2) eta(tau))`` whenever ``c`` is even or
    divisible by 3.
    """
    a, b, c, d = A.a, A.b, A.c, A.d
    if a * d - b * c != 1:
        raise ValueError("determinant must be 1")
    if c % 2:
        sign = kronecker(d, abs(c))
        m = (a + d) * c - b * d * (c * c - 1) - 3 * c
    else:
        sign = kronecker(c, d)
        m = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d
    return sign, m % 24


def multiplier_value(A: UnimodularMatrix) -> complex:
    sign, m = eta_multiplier(A)
    return sign * cmath.exp(1j * math.pi * m / 12)


def _default_trunc(tau: complex) -> int:
    # |q|^(trunc/24) < 1e-17
    return DENOM * (math.ceil(17 * math.log(10) / (2 * math.pi * tau.imag)) + 1)


def log_eta(tau: complex, trunc: int | None = None) -> complex:
    """``log eta(tau)`` from the truncated product, exact up to a multiple of ``2 pi i``."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    if trunc is None:
        trunc = _default_trunc(tau)
    n = np.arange(1, max(1, -(-trunc // DENOM)))
    q_n = np.exp(2j * np.pi * n * tau)
    return 1j * math.pi * tau / 12 + complex(np.sum(np.log1p(-q_n)))


def numeric_eval(f: EtaQuotient, tau, trunc: int | None = None, dps: int | None = None):
    """Value of ``f(tau)`` from its truncated product expansion.

    With ``dps=None`` this is a float64 evaluation and ``trunc`` bounds the
    q-exponent (units of 1/24) of the factors kept; by default it is chosen so
    that ``|q|^(trunc/24) < 1e-17``.  Passing ``dps`` switches to mpmath at that
    many decimal digits, returns an ``mpc``, and truncates the product at the
    working precision instead.
    """
    if dps is not None:
        return _numeric_eval_mp(f, tau, dps)
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    if trunc is None:
        trunc = _default_trunc(tau)
    total = 0j
    for delta, r in f._exps:
        total += r * log_eta(delta * tau, -(-trunc // delta))
    return cmath.exp(total)


def _numeric_eval_mp(f: EtaQuotient, tau, dps: int):
    with mpmath.workdps(dps):
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        value = mpmath.mpc(1)
        for delta, r in f._exps:
            z = delta * tau
            eta = mpmath.exp(1j * mpmath.pi * z / 12) * mpmath.qp(mpmath.exp(2j * mpmath.pi * z))
            value *= eta**r
        return +value
