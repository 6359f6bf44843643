"""Write a weight-2 newform as an exact rational combination of eta-quotients.

If S_2(Gamma_0(N)) is spanned by eta-quotients the target is solved for
directly.  Otherwise the target is multiplied by an eta-quotient ``a`` of
weight ``k' - 2`` so that the product lands in a space S_k'(Gamma_0(N)) that
eta-quotients do span; the coefficients found there give the target as a
combination of the weakly holomorphic quotients ``g_i / a``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .curves import WeierstrassCurve, hecke_eigenvalues
from .etaquot import EtaQuotient, FormClass, classify, expansion_through, is_modular, nebentypus, weight
from .gamma0 import dim_cusp_forms, sturm_bound
from .linalg import EchelonBasis, solve
from .search import SpaceKind, enumerate_eta_quotients, find_eta_quotients

log = logging.getLogger(__name__)


class TargetParseError(ValueError):
    pass


class PrecisionError(ValueError):
    """Not enough target coefficients for a certified comparison."""


class DecompositionError(RuntimeError):
    pass


@dataclass
class TargetForm:
    level: int
    weight: int
    coefficients: list[int]  # a(1), ..., a(n_max)
    source: str = "file"
    curve: WeierstrassCurve | None = field(default=None, repr=False)

    @property
    def n_max(self) -> int:
        return len(self.coefficients)

    def through(self, n: int) -> list[int]:
        """Coefficients of ``q^0 .. q^n``; curve targets are extended on demand."""
        if n > self.n_max:
            if self.curve is None:
                raise PrecisionError(f"target has {self.n_max} coefficients but {n} are required")
            self.coefficients = hecke_eigenvalues(self.curve, self.level, n)
        return [0] + self.coefficients[:n]


_PRAGMA = re.compile(r"#\s*(level|weight)\s*[:=]?\s*(\d+)\s*$", re.I)


def parse_target(text: str, level: int | None = None, weight_: int | None = None) -> TargetForm:
    """Parse ``n a_n`` lines; ``# level: N`` / ``# weight: k`` comments set the level and weight."""
    coeffs: list[int] = []
    meta: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _PRAGMA.match(line)
            if m:
                meta[m.group(1).lower()] = int(m.group(2))
            continue
        line = line.split("#", 1)[0]
        parts = line.split()
        if len(parts) != 2:
            raise TargetParseError(f"line {lineno}: expected '<n> <a_n>', got {raw!r}")
        try:
            n, an = int(parts[0]), int(parts[1])
        except ValueError:
            raise TargetParseError(f"line {lineno}: non-integer entry in {raw!r}") from None
        expected = len(coeffs) + 1
        if n < expected:
            raise TargetParseError(f"line {lineno}: duplicate or decreasing index {n}")
        if n > expected:
            raise TargetParseError(f"line {lineno}: gap, expected index {expected} but got {n}")
        coeffs.append(an)
    if not coeffs:
        raise TargetParseError("no coefficients found")
    N = level if level is not None else meta.get("level")
    if N is None:
        raise TargetParseError("target level unknown: add '# level: N' or pass it explicitly")
    k = weight_ if weight_ is not None else meta.get("weight", 2)
    return TargetForm(N, k, coeffs, "file")


def load_target(path, level: int | None = None) -> TargetForm:
    return parse_target(Path(path).read_text(encoding="utf-8"), level)


def curve_coefficients(E: WeierstrassCurve, N: int, n_max: int) -> TargetForm:
    return TargetForm(N, 2, hecke_eigenvalues(E, N, n_max), "curve", E)


def _mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def target_vector(target: TargetForm, multiplier: EtaQuotient | None, n: int) -> list[int]:
    """Coefficients of ``q^0 .. q^n`` of ``multiplier * target``."""
    if multiplier is None:
        return target.through(n)
    a = expansion_through(multiplier, n)
    lead = next((i for i, x in enumerate(a) if x), n + 1)
    f = target.through(max(n - lead, 0))
    return _mul(a, f + [0] * (n + 1 - len(f)), n)


def express_in_basis(target: TargetForm, basis, N: int, k: int, multiplier: EtaQuotient | None = None,
                     pivot: str = "small") -> list[Fraction] | None:
    """Exact ``c`` with ``sum c_i g_i = target`` (times ``multiplier``) through the weight-k Sturm bound, or None."""
    B = sturm_bound(N, k)
    if multiplier is None and target.curve is None and target.n_max < B:
        raise PrecisionError(f"need a(1..{B}) for weight {k} at level {N}, target has {target.n_max}")
    columns = [expansion_through(g, B) for g in basis]
    rhs = target_vector(target, multiplier, B)
    return solve(columns, rhs, pivot=pivot)


@dataclass
class DecompositionResult:
    target: TargetForm
    stage_weight: int
    multiplier: EtaQuotient | None
    basis: list[EtaQuotient]
    coefficients: list[Fraction]

    def reduced_quotients(self) -> list[EtaQuotient]:
        """``g_i / a``: exponent vectors of the basis minus those of the multiplier."""
        if self.multiplier is None:
            return list(self.basis)
        return [g / self.multiplier for g in self.basis]

    def as_dict(self) -> dict:
        return {
            "level": self.target.level,
            "stage_weight": self.stage_weight,
            "multiplier": None if self.multiplier is None else str(self.multiplier),
            "entries": [
                {"coefficient": _rat(c), "quotient": str(q), "basis_element": str(g)}
                for c, q, g in zip(self.coefficients, self.reduced_quotients(), self.basis)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, target: TargetForm) -> DecompositionResult:
        mult = data.get("multiplier")
        return cls(
            target=target,
            stage_weight=int(data["stage_weight"]),
            multiplier=None if mult is None else EtaQuotient.parse(mult),
            basis=[EtaQuotient.parse(e["basis_element"]) for e in data["entries"]],
            coefficients=[Fraction(e["coefficient"]) for e in data["entries"]],
        )


def _rat(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _check_in_space(f: EtaQuotient, N: int, k: int, what: str) -> None:
    if f.level != N:
        raise DecompositionError(f"{what} {f} is not of level {N}")
    if weight(f) != k:
        raise DecompositionError(f"{what} {f} has weight {weight(f)}, expected {k}")
    if not is_modular(f) or classify(f) is not FormClass.CUSP_FORM or not nebentypus(f).is_trivial():
        raise DecompositionError(f"{what} {f} is not in S_{k}(Gamma_0({N}))")


def _certified_basis(basis, N: int, k: int) -> list[EtaQuotient]:
    for g in basis:
        _check_in_space(g, N, k, "basis element")
    B = sturm_bound(N, k)
    eb = EchelonBasis(B + 1)
    for g in basis:
        if not eb.add(expansion_through(g, B)):
            raise DecompositionError(f"basis element {g} is linearly dependent on the previous ones")
    return list(basis)


def escalate_and_decompose(target: TargetForm, multiplier: EtaQuotient | None = None, basis=None,
                           max_weight: int = 24, jobs: int = 1, pivot: str = "small") -> DecompositionResult:
    """Solve at weight 2, else lift by a multiplier to the least weight spanned by eta-quotients."""
    N = target.level
    if target.weight != 2:
        raise DecompositionError("only weight-2 targets are supported")
    if multiplier is not None:
        if multiplier.level != N:
            multiplier = multiplier.at_level(N)
        w = weight(multiplier)
        if w.denominator != 1:
            raise DecompositionError(f"multiplier {multiplier} has non-integral weight")
        k = int(w) + 2
        _check_in_space(multiplier, N, k - 2, "multiplier")
        if basis is None:
            report = enumerate_eta_quotients(N, k, SpaceKind.CUSP, jobs)
            if not report.spans:
                raise DecompositionError(f"eta-quotients do not span S_{k}(Gamma_0({N})); pass a basis")
            basis = report.basis
        basis = _certified_basis(basis, N, k)
        return _solve_stage(target, k, multiplier, basis, pivot, require_span=True)

    if basis is not None:
        basis = list(basis)
        k = int(weight(basis[0])) if basis else 2
        basis = _certified_basis(basis, N, k)
        if k == 2:
            return _solve_stage(target, 2, None, basis, pivot, require_span=False)
        lower, _ = find_eta_quotients(N, k - 2, SpaceKind.CUSP, jobs)
        if not lower:
            raise DecompositionError(f"no eta-quotient in S_{k - 2}(Gamma_0({N})) to use as multiplier")
        return _solve_stage(target, k, lower[0], basis, pivot, require_span=True)

    report = enumerate_eta_quotients(N, 2, SpaceKind.CUSP, jobs)
    c = express_in_basis(target, report.basis, N, 2, pivot=pivot)
    if c is not None:
        return DecompositionResult(target, 2, None, report.basis, c)
    log.info("weight 2: %d independent eta-quotients, dim %d; escalating", report.independent_count, report.space_dim)
    for k in range(4, max_weight + 1, 2):
        try:
            report = enumerate_eta_quotients(N, k, SpaceKind.CUSP, jobs)
        except ValueError as exc:
            log.info("weight %d skipped: %s", k, exc)
            continue
        if not report.spans:
            log.info("weight %d: %d of %d", k, report.independent_count, report.space_dim)
            continue
        lower, _ = find_eta_quotients(N, k - 2, SpaceKind.CUSP, jobs)
        if not lower:
            continue
        return _solve_stage(target, k, lower[0], report.basis, pivot, require_span=True)
    raise DecompositionError(f"no weight up to {max_weight} admits an eta-quotient basis and a multiplier at level {N}")


def _solve_stage(target, k, multiplier, basis, pivot, require_span) -> DecompositionResult:
    N = target.level
    if require_span and len(basis) != dim_cusp_forms(N, k):
        raise DecompositionError(f"basis has {len(basis)} elements but dim S_{k}(Gamma_0({N})) = {dim_cusp_forms(N, k)}")
    c = express_in_basis(target, basis, N, k, multiplier, pivot=pivot)
    if c is None:
        raise DecompositionError(f"target is not in the span of the weight-{k} basis")
    return DecompositionResult(target, k, multiplier, list(basis), c)


def verify_decomposition(result: DecompositionResult, precision_margin: int = 0) -> bool:
    """Recompute both sides through the Sturm bound plus ``precision_margin`` and compare exactly."""
    N = result.target.level
    n = sturm_bound(N, result.stage_weight) + precision_margin
    lhs = [Fraction(0)] * (n + 1)
    for c, g in zip(result.coefficients, result.basis):
        if c:
            for i, x in enumerate(expansion_through(g, n)):
                if x:
                    lhs[i] += c * x
    rhs = target_vector(result.target, result.multiplier, n)
    return lhs == rhs


def load_basis(path) -> list[EtaQuotient]:
    out = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(EtaQuotient.parse(line))
    return out


def load_coefficients(path) -> list[Fraction]:
    out = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            i, c = line.split()
            if int(i) != len(out) + 1:
                raise ValueError(f"coefficient index {i} out of order")
            out.append(Fraction(c))
    return out
