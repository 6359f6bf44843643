"""Exhaustive enumeration of eta-quotients in M_k / S_k at squarefree level.

Every eta-quotient f of squarefree level N is pinned down by its vector of
cusp orders ``(v_{1/d})_{d | N}``, and the orders of a modular f sum to
``k sigma_1(N) / 12``.  So enumerating the compositions of that total and
inverting the (integer) order map lists every candidate exactly once.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd

from .arith import divisors, factorize, is_squarefree
from .etaquot import EtaQuotient, FormClass, classify, cusp_orders_all, expansion_through, is_modular, nebentypus
from .gamma0 import dim_cusp_forms, dim_modular_forms, sturm_bound
from .linalg import EchelonBasis, inverse
from .spaces import h_invariant, vanishing_sum_expected

DEFAULT_MAX_TUPLES = 2_000_000


class SpaceKind(str, enum.Enum):
    CUSP = "cusp"
    HOLO = "holo"

    def __str__(self):
        return self.value


class TooManyTuplesError(RuntimeError):
    pass


@dataclass(frozen=True)
class VanishingTuple:
    level: int
    orders: tuple[int, ...]  # indexed by ascending divisors d of the level

    def as_dict(self) -> dict[int, int]:
        return dict(zip(divisors(self.level), self.orders))


@dataclass
class SearchReport:
    level: int
    weight: int
    space_kind: SpaceKind
    found: list[EtaQuotient]
    independent_count: int
    space_dim: int
    spans: bool
    basis: list[EtaQuotient] = field(default_factory=list)
    tuples_checked: int = 0


def _check_level(N: int) -> list[int]:
    if not is_squarefree(N):
        raise ValueError(f"{N} is not squarefree")
    primes = sorted(factorize(N))
    if any(p < 5 for p in primes):
        raise ValueError(f"{N} has a prime factor 2 or 3")
    return primes


def max_tuples() -> int:
    return int(os.environ.get("ETAQ_MAX_TUPLES", DEFAULT_MAX_TUPLES))


def count_vanishing_tuples(N: int, k: int, space_kind=SpaceKind.CUSP) -> int:
    total, parts, lower = _composition_shape(N, k, space_kind)
    free = total - parts * lower
    return comb(free + parts - 1, parts - 1) if free >= 0 else 0


def _composition_shape(N: int, k: int, space_kind) -> tuple[int, int, int]:
    primes = _check_level(N)
    if k % 2:
        raise ValueError(f"weight {k} is odd")
    if N > 1 and k % h_invariant(primes):
        raise ValueError(f"h = {h_invariant(primes)} does not divide k = {k}")
    total = vanishing_sum_expected(N, k)
    if total.denominator != 1:
        raise ValueError(f"k sigma_1(N)/12 = {total} is not an integer")
    lower = 1 if SpaceKind(space_kind) is SpaceKind.CUSP else 0
    return int(total), len(divisors(N)), lower


def enumerate_vanishing_tuples(N: int, k: int, space_kind=SpaceKind.CUSP, limit: int | None = None) -> list[VanishingTuple]:
    """All cusp-order vectors summing to ``k sigma_1(N)/12``, each entry >= 1 (cusp) or >= 0 (holo), in lexicographic order."""
    total, parts, lower = _composition_shape(N, k, space_kind)
    cap = max_tuples() if limit is None else limit
    count = count_vanishing_tuples(N, k, space_kind)
    if count > cap:
        raise TooManyTuplesError(f"{count} vanishing tuples exceed the cap {cap} (set ETAQ_MAX_TUPLES)")
    free = total - parts * lower
    if free < 0:
        return []
    out = []
    # stars and bars: bar positions in lexicographic order give lexicographic tuples
    for bars in combinations(range(free + parts - 1), parts - 1):
        prev = -1
        vals = []
        for b in bars:
            vals.append(b - prev - 1 + lower)
            prev = b
        vals.append(free + parts - 2 - prev + lower)
        out.append(VanishingTuple(N, tuple(vals)))
    return out


@lru_cache(maxsize=None)
def order_matrix(N: int) -> tuple[tuple[int, ...], ...]:
    """``M[d][delta] = N gcd(d, delta)^2 / (d delta)``, so that ``24 v = M r`` at squarefree N."""
    _check_level(N) if N > 1 else None
    divs = divisors(N)
    return tuple(tuple(N * gcd(d, e) ** 2 // (d * e) for e in divs) for d in divs)


@lru_cache(maxsize=None)
def _scaled_inverse(N: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    inv = inverse(order_matrix(N))
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    return tuple(tuple(int(x * den) for x in row) for row in inv), den


def solve_exponents(t: VanishingTuple) -> tuple[Fraction, ...]:
    """The unique rational exponent vector with the given cusp orders."""
    A, den = _scaled_inverse(t.level)
    assert len(t.orders) == len(A)
    return tuple(Fraction(24 * sum(a * v for a, v in zip(row, t.orders)), den) for row in A)


def _integral_solution(A, den, orders):
    out = []
    for row in A:
        num = 24 * sum(a * v for a, v in zip(row, orders))
        if num % den:
            return None
        out.append(num // den)
    return out


def _accepts(f: EtaQuotient, space_kind: SpaceKind, trivial_character: bool) -> bool:
    if not is_modular(f):
        return False
    cls = classify(f)
    if space_kind is SpaceKind.CUSP and cls is not FormClass.CUSP_FORM:
        return False
    if space_kind is SpaceKind.HOLO and cls not in (FormClass.HOLOMORPHIC, FormClass.CUSP_FORM):
        return False
    if trivial_character and not nebentypus(f).is_trivial():
        return False
    return True


def _scan(N: int, tuples: list[tuple[int, ...]], space_kind: SpaceKind, trivial_character: bool) -> list[EtaQuotient]:
    A, den = _scaled_inverse(N)
    found = []
    for orders in tuples:
        r = _integral_solution(A, den, orders)
        if r is None:
            continue
        f = EtaQuotient.from_vector(N, r)
        if _accepts(f, space_kind, trivial_character):
            found.append(f)
    return found


def find_eta_quotients(N: int, k: int, space_kind=SpaceKind.CUSP, jobs: int = 1,
                       trivial_character: bool = True) -> tuple[list[EtaQuotient], int]:
    """Eta-quotients of level N and weight k in the requested space, in tuple order."""
    space_kind = SpaceKind(space_kind)
    tuples = [t.orders for t in enumerate_vanishing_tuples(N, k, space_kind)]
    if jobs > 1 and len(tuples) > 1000:
        size = -(-len(tuples) // (4 * jobs))
        chunks = [tuples[i:i + size] for i in range(0, len(tuples), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_scan, [N] * len(chunks), chunks, [space_kind] * len(chunks),
                             [trivial_character] * len(chunks))
            found = [f for part in parts for f in part]
    else:
        found = _scan(N, tuples, space_kind, trivial_character)
    return found, len(tuples)


def coefficient_vector(f: EtaQuotient, N: int, k: int) -> list[int]:
    """Coefficients of ``q^0 .. q^B`` with B the Sturm bound of weight k at level N."""
    return expansion_through(f, sturm_bound(N, k))


def extract_basis(forms, N: int, k: int) -> tuple[list[EtaQuotient], list[list[int]]]:
    """Greedy left-to-right maximal independent subset, judged on coefficients through the Sturm bound."""
    B = sturm_bound(N, k)
    eb = EchelonBasis(B + 1)
    basis, rows = [], []
    for f in forms:
        v = expansion_through(f, B)
        if eb.add(v):
            basis.append(f)
            rows.append(v)
    return basis, rows


def space_dimension(N: int, k: int, space_kind) -> int:
    if SpaceKind(space_kind) is SpaceKind.CUSP:
        return dim_cusp_forms(N, k)
    return dim_modular_forms(N, k)


def enumerate_eta_quotients(N: int, k: int, space_kind=SpaceKind.CUSP, jobs: int = 1,
                            trivial_character: bool = True) -> SearchReport:
    space_kind = SpaceKind(space_kind)
    found, checked = find_eta_quotients(N, k, space_kind, jobs, trivial_character)
    basis, _ = extract_basis(found, N, k)
    dim = space_dimension(N, k, space_kind)
    return SearchReport(
        level=N,
        weight=k,
        space_kind=space_kind,
        found=found,
        independent_count=len(basis),
        space_dim=dim,
        spans=len(basis) == dim,
        basis=basis,
        tuples_checked=checked,
    )


def report_orders(f: EtaQuotient) -> list[int]:
    return [int(v) for v in cusp_orders_all(f).vector()]
