"""Spaces of eta-quotients on Gamma_0(N) / Gamma_1(N).

Existence of even-weight holomorphic eta-quotients at prime and semiprime
level, together with explicit witnesses, plus the squarefree-level identities
that drive the enumeration in :mod:`etaq.search`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .arith import divisors, factorize, is_prime, is_squarefree, sigma1
from .etaquot import EtaQuotient, FormClass, classify, weight
from .gamma0 import (  # noqa: F401  (re-exported)
    Cusp,
    LevelProfile,
    count_cusps,
    cusp_reps,
    dim_cusp_forms,
    dim_modular_forms,
    genus,
    index_gamma0,
    level_profile,
    sturm_bound,
)


class Reason(str, enum.Enum):
    H_DIVIDES_FAILS = "h_divides_fails"
    EXCLUDED_CASE_K2 = "excluded_case_k2"
    CONSTRUCTIVE = "constructive"
    NEGATIVE_WEIGHT = "negative_weight"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    reason: Reason
    h: int
    witness: EtaQuotient | None = None

    def __post_init__(self):
        if self.exists and self.witness is None:
            raise ValueError("a positive verdict needs a witness")


def _check_primes(primes) -> list[int]:
    primes = [int(p) for p in primes]
    if len(set(primes)) != len(primes):
        raise ValueError(f"primes must be distinct: {primes}")
    for p in primes:
        if p < 5 or not is_prime(p):
            raise ValueError(f"{p} is not a prime >= 5")
    return primes


def h_invariant(primes) -> int:
    """``h = gcd(p_1 - 1, ..., p_t - 1, 24) / 2``; h divides the weight of any modular eta-quotient."""
    primes = _check_primes(primes)
    g = 24
    for p in primes:
        g = gcd(g, p - 1)
    return g // 2


def vanishing_sum_expected(N: int, k) -> Fraction:
    """``k sigma_1(N) / 12``, the total order of vanishing over all cusps at squarefree level."""
    if not is_squarefree(N):
        raise ValueError(f"{N} is not squarefree")
    if any(p < 5 for p in factorize(N)):
        raise ValueError(f"{N} has a prime factor below 5")
    return Fraction(k) * sigma1(N) / 12


def balanced_construction(primes, k: int) -> EtaQuotient:
    """``prod_{delta | N} eta(delta tau)^(k / 2^(t-1))``, holomorphic with every cusp order ``k sigma_1(N) / (2^t 12)``."""
    primes = _check_primes(primes)
    t = len(primes)
    N = prod(primes)
    h = h_invariant(primes)
    total = Fraction(k * sigma1(N), 12)
    if k % h or k % 2 ** (t - 1) or total.denominator != 1 or total.numerator % 2**t:
        raise ValueError(f"balanced construction needs h | k, 2^(t-1) | k and 2^t | k sigma_1(N)/12 (primes={primes}, k={k})")
    r = k // 2 ** (t - 1)
    return EtaQuotient(N, {d: r for d in divisors(N)})


def _verdict(witness: EtaQuotient, k: int, h: int) -> ExistenceVerdict:
    assert weight(witness) == k, (witness, k)
    assert classify(witness) in (FormClass.HOLOMORPHIC, FormClass.CUSP_FORM), witness
    return ExistenceVerdict(True, Reason.CONSTRUCTIVE, h, witness)


def _check_weight(k: int) -> None:
    if k % 2:
        raise ValueError(f"weight {k} is odd; only even weights are classified")


def exists_prime_level(p: int, k: int) -> ExistenceVerdict:
    """Is there ``eta(tau)^r1 eta(p tau)^rp`` in M_k(Gamma_1(p))?  Witness included when yes."""
    (p,) = _check_primes([p])
    _check_weight(k)
    h = h_invariant([p])
    if k < 0:
        return ExistenceVerdict(False, Reason.NEGATIVE_WEIGHT, h)
    if k == 0:
        return ExistenceVerdict(True, Reason.CONSTRUCTIVE, h, EtaQuotient(p))
    if k % h:
        return ExistenceVerdict(False, Reason.H_DIVIDES_FAILS, h)
    if p != 5 and p % 24 == 5 and k == 2:
        return ExistenceVerdict(False, Reason.EXCLUDED_CASE_K2, h)
    if (k * (p + 1) // 12) % 2 == 0:
        return _verdict(balanced_construction([p], k), k, h)
    # k(p+1)/12 odd forces p = 5 mod 8
    if p % 24 == 13:
        return _verdict(EtaQuotient(p, {1: 9, p: 3}) ** (k // 6), k, h)
    if p == 5:
        return _verdict(EtaQuotient(5, {1: -1, 5: 5}) ** (k // 2), k, h)
    f4 = EtaQuotient(p, {1: 4, p: 4})
    f6 = EtaQuotient(p, {1: 9, p: 3})
    witness = f4 ** (k // 4) if k % 4 == 0 else f4 ** ((k - 6) // 4) * f6
    return _verdict(witness, k, h)


# eta-quotients in M_h(Gamma_1(pq)) by residues of (p, q) mod 24, p's residue <= q's;
# keys of the exponent maps: "1", "p", "q", "N"
_SEMIPRIME_TABLE = {
    (1, 13): {"1": 11, "q": 1},
    (5, 13): {"p": 1, "q": 2, "N": 1},
    (5, 17): {"p": 1, "q": 1, "N": 2},
    (13, 13): {"q": 1, "N": 11},
    (13, 17): {"p": 2, "q": 1, "N": 1},
}
_SEMIPRIME_F6 = {
    (1, 5): {"1": 3, "N": 9},
    (5, 5): {"q": 3, "N": 9},
}
_EXCLUDED_PAIRS = {(1, 5), (5, 1), (5, 5)}


def _semiprime_quotient(p: int, q: int, shape: dict) -> EtaQuotient:
    where = {"1": 1, "p": p, "q": q, "N": p * q}
    return EtaQuotient(p * q, {where[key]: r for key, r in shape.items()})


def exists_semiprime_level(p: int, q: int, k: int) -> ExistenceVerdict:
    """Is there an eta-quotient of level pq in M_k(Gamma_1(pq))?  Witness included when yes."""
    p, q = _check_primes([p, q])
    _check_weight(k)
    if p % 24 > q % 24:
        p, q = q, p
    N = p * q
    h = h_invariant([p, q])
    if k < 0:
        return ExistenceVerdict(False, Reason.NEGATIVE_WEIGHT, h)
    if k == 0:
        return ExistenceVerdict(True, Reason.CONSTRUCTIVE, h, EtaQuotient(N))
    if k % h:
        return ExistenceVerdict(False, Reason.H_DIVIDES_FAILS, h)
    residues = (p % 24, q % 24)
    if residues in _EXCLUDED_PAIRS and 5 not in (p, q) and k == 2:
        return ExistenceVerdict(False, Reason.EXCLUDED_CASE_K2, h)
    if (k * sigma1(N) // 12) % 4 == 0:
        return _verdict(balanced_construction([p, q], k), k, h)
    if residues in _SEMIPRIME_TABLE:
        base = _semiprime_quotient(p, q, _SEMIPRIME_TABLE[residues])
        return _verdict(base ** (k // h), k, h)
    if residues in _SEMIPRIME_F6:
        if 5 in (p, q):
            # the level-5 form eta(5 tau)^5 / eta(tau) is also modular at level N
            five = EtaQuotient(5, {1: -1, 5: 5}).at_level(N)
            return _verdict(five ** (k // 2), k, h)
        f4 = balanced_construction([p, q], 4)
        f6 = _semiprime_quotient(p, q, _SEMIPRIME_F6[residues])
        witness = f4 ** (k // 4) if k % 4 == 0 else f4 ** ((k - 6) // 4) * f6
        return _verdict(witness, k, h)
    raise AssertionError(f"no construction for p={p}, q={q}, k={k}")  # unreachable by the case analysis
