"""Truncated formal series in q^(1/24) with exact rational coefficients.

A :class:`FracSeries` stores a sparse map ``e -> c`` meaning ``c * q^(e/24)``
together with a truncation ``trunc``: the series is known modulo
``q^(trunc/24)``.  Every eta-quotient expansion lands on this lattice, so the
denominator 24 is fixed globally.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping

DENOM = 24


class FracSeries:
    """Immutable truncated series on the ``q^(1/24)`` exponent lattice."""

    __slots__ = ("_coeffs", "_trunc", "_lead")

    def __init__(self, coeffs: Mapping[int, Rational | int] | None = None, trunc: int = 0):
        if not isinstance(trunc, int):
            raise TypeError("trunc must be an integer (units of 1/24)")
        clean: dict[int, Fraction] = {}
        for e, c in (coeffs or {}).items():
            if e >= trunc or not c:
                continue
            clean[int(e)] = c if isinstance(c, Fraction) else Fraction(c)
        self._coeffs = dict(sorted(clean.items()))
        self._trunc = trunc
        self._lead = min(self._coeffs) if self._coeffs else trunc

    # construction helpers

    @classmethod
    def one(cls, trunc: int) -> FracSeries:
        return cls({0: 1}, trunc)

    @classmethod
    def monomial(cls, e: int, c=1, trunc: int | None = None) -> FracSeries:
        """``c * q^(e/24)``; exact up to ``trunc`` (default ``e + 24*64``)."""
        return cls({e: c}, e + DENOM * 64 if trunc is None else trunc)

    @classmethod
    def from_integral(cls, coeffs: Iterable, shift: int = 0, prec: int | None = None) -> FracSeries:
        """Build ``q^(shift/24) * sum_n coeffs[n] q^n`` known modulo ``q^(shift/24 + prec)``."""
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        return cls({shift + DENOM * n: c for n, c in enumerate(coeffs[:prec])}, shift + DENOM * prec)

    # accessors

    @property
    def trunc(self) -> int:
        return self._trunc

    @property
    def lead(self) -> int:
        """Smallest stored exponent; ``trunc`` when no coefficient is known to be nonzero."""
        return self._lead

    @property
    def lattice_denominator(self) -> int:
        return DENOM

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, e: int) -> Fraction:
        if e >= self._trunc:
            raise IndexError(f"coefficient of q^({e}/24) lies beyond truncation {self._trunc}/24")
        return self._coeffs.get(e, Fraction(0))

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of the integral power ``q^n``."""
        return self[DENOM * n]

    def integral_coefficients(self, start: int, stop: int) -> list[Fraction]:
        return [self.coefficient(n) for n in range(start, stop)]

    def lead_coefficient(self) -> Fraction:
        if not self._coeffs:
            raise ZeroDivisionError("series has no known nonzero coefficient")
        return self._coeffs[self._lead]

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, FracSeries):
            return self + FracSeries({0: other}, self._trunc)
        trunc = min(self._trunc, other._trunc)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return FracSeries(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return FracSeries({e: -c for e, c in self._coeffs.items()}, self._trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FracSeries):
            other = Fraction(other)
            return FracSeries({e: c * other for e, c in self._coeffs.items()}, self._trunc)
        trunc = min(self._trunc + other._lead, other._trunc + self._lead)
        out: dict[int, Fraction] = {}
        b_items = list(other._coeffs.items())
        for ea, ca in self._coeffs.items():
            limit = trunc - ea
            for eb, cb in b_items:
                if eb >= limit:
                    break
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return FracSeries(out, trunc)

    def __rmul__(self, other):
        return self * other

    def shift(self, e: int) -> FracSeries:
        """Multiply by ``q^(e/24)``."""
        return FracSeries({k + e: c for k, c in self._coeffs.items()}, self._trunc + e)

    def inverse(self) -> FracSeries:
        if not self._coeffs:
            raise ZeroDivisionError("cannot invert a series with zero leading coefficient")
        lead = self._lead
        u0 = self._coeffs[lead]
        rel = self._trunc - lead
        offsets = [(e - lead, c) for e, c in self._coeffs.items() if e != lead]
        step = 0
        for m, _ in offsets:
            step = gcd(step, m)
        inv0 = 1 / u0
        b = {0: inv0}
        if step:
            for n in range(step, rel, step):
                acc = Fraction(0)
                for m, c in offsets:
                    if m > n:
                        break
                    bn = b.get(n - m)
                    if bn:
                        acc += c * bn
                if acc:
                    b[n] = -acc * inv0
        return FracSeries({n - lead: c for n, c in b.items()}, rel - lead)

    def __pow__(self, m: int) -> FracSeries:
        if not isinstance(m, int):
            raise TypeError("only integer powers are supported")
        if m < 0:
            return self.inverse() ** (-m)
        if m == 0:
            return FracSeries.one(max(self._trunc - self._lead, 1))
        result = None
        base = self
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, FracSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    # comparison and display

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._trunc == other._trunc and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._trunc, tuple(self._coeffs.items())))

    def agrees_with(self, other: FracSeries) -> bool:
        """Equality of the two series modulo the smaller truncation."""
        t = min(self._trunc, other._trunc)
        return FracSeries(self._coeffs, t)._coeffs == FracSeries(other._coeffs, t)._coeffs

    def truncate(self, trunc: int) -> FracSeries:
        return FracSeries(self._coeffs, min(trunc, self._trunc))

    def __repr__(self):
        return f"FracSeries({format_series(self, max_terms=8)})"

    def to_text(self) -> str:
        lines = [f"{e}/{DENOM} {c}" for e, c in self._coeffs.items()]
        lines.append(f"TRUNC {self._trunc}/{DENOM}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> FracSeries:
        coeffs: dict[int, Fraction] = {}
        trunc = None
        last = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if trunc is not None:
                raise ValueError(f"line {lineno}: data after TRUNC line")
            head, _, tail = line.partition(" ")
            if head == "TRUNC":
                trunc = _parse_exponent(tail.strip(), lineno)
                continue
            e = _parse_exponent(head, lineno)
            if last is not None and e <= last:
                raise ValueError(f"line {lineno}: exponents must be strictly increasing")
            last = e
            try:
                coeffs[e] = Fraction(tail.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"line {lineno}: bad coefficient {tail!r}") from exc
        if trunc is None:
            raise ValueError("missing TRUNC line")
        if last is not None and last >= trunc:
            raise ValueError("stored exponent at or beyond truncation")
        return cls(coeffs, trunc)


def _parse_exponent(token: str, lineno: int) -> int:
    num, slash, den = token.partition("/")
    if slash != "/" or den != str(DENOM):
        raise ValueError(f"line {lineno}: exponent must be written as <n>/{DENOM}")
    try:
        return int(num)
    except ValueError as exc:
        raise ValueError(f"line {lineno}: bad exponent {token!r}") from exc


def format_series(s: FracSeries, max_terms: int | None = None, var: str = "q", big_o: bool = True) -> str:
    """Human readable rendering, e.g. ``q^3 - 2*q^4 + O(q^10)``."""
    parts = []
    for i, (e, c) in enumerate(s.items()):
        if max_terms is not None and i >= max_terms:
            parts.append("...")
            break
        parts.append(_term(e, c, var))
    if big_o:
        parts.append(f"O({_power(s.trunc, var)})")
    if not parts:
        return "0"
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def _power(e: int, var: str) -> str:
    if e % DENOM == 0:
        n = e // DENOM
        return "1" if n == 0 else var if n == 1 else f"{var}^{n}"
    f = Fraction(e, DENOM)
    return f"{var}^({f})"


def _term(e: int, c: Fraction, var: str) -> str:
    mono = _power(e, var)
    if mono == "1":
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"




def series_add(a: FracSeries, b: FracSeries) -> FracSeries:
    return a + b


def series_mul(a: FracSeries, b: FracSeries) -> FracSeries:
    return a * b


def series_inverse(a: FracSeries) -> FracSeries:
    return a.inverse()


def series_pow(a: FracSeries, m: int) -> FracSeries:
    return a**m


def pentagonal_terms(limit: int):
    """Yield ``(exponent, sign)`` of ``prod (1 - x^n)`` for exponents below ``limit``."""
    if limit <= 0:
        return
    yield 0, 1
    j = 1
    while True:
        sign = -1 if j % 2 else 1
        lo = j * (3 * j - 1) // 2
        hi = j * (3 * j + 1) // 2
        if lo >= limit:
            return
        yield lo, sign
        if hi < limit:
            yield hi, sign
        j += 1


@lru_cache(maxsize=4096)
def euler_power_coefficients(delta: int, r: int, prec: int) -> tuple[int, ...]:
    """Integer coefficients of ``prod_{n>=1} (1 - q^(delta*n))^r`` modulo ``q^prec``.

    Uses the logarithmic-derivative recurrence on the sparse pentagonal series,
    which is exact over the integers for every sign of ``r``.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    if prec <= 0:
        return ()
    m = (prec - 1) // delta + 1  # coefficients needed in x = q^delta
    penta = [(e, s) for e, s in pentagonal_terms(m) if e]
    g = [0] * m
    g[0] = 1
    if r:
        for n in range(1, m):
            acc = 0
            for e, s in penta:
                if e > n:
                    break
                acc += ((r + 1) * e - n) * s * g[n - e]
            g[n] = acc // n
    out = [0] * prec
    for i, c in enumerate(g):
        out[i * delta] = c
    return tuple(out)


def euler_product(delta: int, prec: int) -> FracSeries:
    """``prod_{n>=1} (1 - q^(delta n))`` known modulo ``q^prec``."""
    if delta < 1:
        raise ValueError("delta must be positive")
    coeffs = {DENOM * delta * e: s for e, s in pentagonal_terms((prec - 1) // delta + 1) if delta * e < prec}
    return FracSeries(coeffs, DENOM * prec)


def eta_power(delta: int, r: int, prec: int) -> FracSeries:
    """``eta(delta*tau)^r`` with ``prec`` integral powers of q known past its lead ``q^(delta r/24)``."""
    return FracSeries.from_integral(euler_power_coefficients(delta, r, prec), shift=delta * r, prec=prec)
