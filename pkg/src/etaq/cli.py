"""Command line interface: ``etaq <subcommand> ...``.

Exit codes: 0 success (or "exists"), 1 negative verdict or failed
computation, 2 usage / parse error, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .curves import UnsupportedCurveError, WeierstrassCurve
from .decompose import (
    DecompositionError,
    DecompositionResult,
    PrecisionError,
    TargetParseError,
    curve_coefficients,
    escalate_and_decompose,
    load_basis,
    load_target,
    verify_decomposition,
)
from .etaquot import (
    EtaQuotient,
    NotModularError,
    classify,
    cusp_order,
    is_modular,
    nebentypus,
    newman_conditions,
    q_expansion,
    weight,
)
from .gamma0 import cusp_reps, dim_cusp_forms, dim_modular_forms, level_profile, sturm_bound
from .qseries import DENOM, format_series
from .search import SpaceKind, TooManyTuplesError, enumerate_eta_quotients, report_orders
from .spaces import exists_prime_level, exists_semiprime_level

FIXTURES = Path(__file__).parent / "fixtures"

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _emit(args, text_lines, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _quotient(text: str) -> EtaQuotient:
    try:
        return EtaQuotient.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fixture_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    alt = FIXTURES / p.name
    if alt.exists():
        return alt
    raise UsageError(f"no such file: {name}")


# subcommands


def cmd_check(args) -> int:
    f = _quotient(args.quotient)
    c1, c2 = newman_conditions(f)
    k = weight(f)
    modular = is_modular(f)
    orders = {str(c): cusp_order(f, c.c) for c in cusp_reps(f.level)}
    char = str(nebentypus(f)) if modular and k.denominator == 1 else "n/a"
    cls = classify(f)
    lines = [
        f"quotient        {f}",
        f"product         {f.pretty()}",
        f"weight          {k}",
        f"sum delta r = 0 mod 24     {c1}",
        f"sum (N/delta) r = 0 mod 24 {c2}",
        f"character       {char}",
        "orders          " + ", ".join(f"{c}: {v}" for c, v in orders.items()),
        f"class           {cls}",
    ]
    payload = {
        "quotient": str(f),
        "weight": rat(k),
        "conditions": [c1, c2],
        "character": char,
        "orders": {c: rat(v) for c, v in orders.items()},
        "class": str(cls),
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_expand(args) -> int:
    f = _quotient(args.quotient)
    if args.terms < 1:
        raise UsageError("--terms must be positive")
    s = q_expansion(f, args.terms)
    text = format_series(s, big_o=not args.no_order)
    payload = {
        "quotient": str(f),
        "trunc": f"{s.trunc}/{DENOM}",
        "terms": [[f"{e}/{DENOM}", rat(c)] for e, c in s.items()],
    }
    _emit(args, [text], payload)
    return EXIT_OK


def cmd_cusps(args) -> int:
    f = _quotient(args.quotient)
    rows = [(c, cusp_order(f, c.c)) for c in cusp_reps(f.level)]
    lines = [f"{str(c):>8}  {v}" for c, v in rows]
    _emit(args, lines, {"quotient": str(f), "orders": [[str(c), rat(v)] for c, v in rows]})
    return EXIT_OK


def cmd_profile(args) -> int:
    if args.level < 1:
        raise UsageError("level must be positive")
    d = level_profile(args.level).as_dict()
    width = max(map(len, d))
    lines = [f"{key:<{width}}  {value}" for key, value in d.items()]
    _emit(args, lines, d)
    return EXIT_OK


def _level_weight(args) -> None:
    if args.level < 1:
        raise UsageError("level must be positive")
    if args.weight % 2:
        raise UsageError("weight must be even")


def cmd_dim(args) -> int:
    _level_weight(args)
    if args.weight < 2:
        raise UsageError("weight must be at least 2")
    kind = SpaceKind(args.space)
    fn = dim_cusp_forms if kind is SpaceKind.CUSP else dim_modular_forms
    n = fn(args.level, args.weight)
    _emit(args, [str(n)], {"level": args.level, "weight": args.weight, "space": str(kind), "dim": n})
    return EXIT_OK


def cmd_sturm(args) -> int:
    _level_weight(args)
    if args.weight < 2:
        raise UsageError("weight must be at least 2")
    b = sturm_bound(args.level, args.weight)
    _emit(args, [str(b)], {"level": args.level, "weight": args.weight, "sturm_bound": b})
    return EXIT_OK


def cmd_exists(args) -> int:
    nums = args.numbers
    if len(nums) == 2:
        (p, k), q = nums, None
        verdict = exists_prime_level(p, k)
    elif len(nums) == 3:
        p, q, k = nums
        verdict = exists_semiprime_level(p, q, k)
    else:
        raise UsageError("expected 'p k' or 'p q k'")
    w = verdict.witness
    lines = [f"{'YES' if verdict.exists else 'NO'}  ({verdict.reason}, h = {verdict.h})"]
    if w is not None:
        lines.append(f"witness  {w}   {w.pretty()}")
    payload = {
        "primes": [p] if q is None else [p, q],
        "weight": k,
        "exists": verdict.exists,
        "reason": str(verdict.reason),
        "h": verdict.h,
        "witness": None if w is None else str(w),
    }
    _emit(args, lines, payload)
    return EXIT_OK if verdict.exists else EXIT_NO


def cmd_enumerate(args) -> int:
    _level_weight(args)
    report = enumerate_eta_quotients(args.level, args.weight, args.space, args.jobs,
                                     trivial_character=not args.any_character)
    lines = [f"{f}    orders {tuple(report_orders(f))}" for f in report.found]
    lines.append(f"# found {len(report.found)}, independent {report.independent_count}, "
                 f"dim {report.space_dim}, spans {report.spans}")
    payload = {
        "level": report.level,
        "weight": report.weight,
        "space": str(report.space_kind),
        "quotients": [{"quotient": str(f), "orders": report_orders(f)} for f in report.found],
        "basis": [str(f) for f in report.basis],
        "independent_count": report.independent_count,
        "space_dim": report.space_dim,
        "spans": report.spans,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def _target(args):
    if args.curve:
        if args.conductor is None:
            raise UsageError("--curve needs --conductor")
        try:
            E = WeierstrassCurve.parse(args.curve)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return curve_coefficients(E, args.conductor, args.n_max)
    if not args.target:
        raise UsageError("give a target file or --curve/--conductor")
    try:
        return load_target(_fixture_path(args.target), args.level)
    except TargetParseError as exc:
        raise UsageError(f"{args.target}: {exc}") from None


def _decomposition_lines(result: DecompositionResult) -> list[str]:
    lines = [f"stage weight  {result.stage_weight}",
             f"multiplier    {result.multiplier if result.multiplier else 'none'}"]
    quots = result.reduced_quotients()
    width = max((len(rat(c)) for c in result.coefficients), default=1)
    for c, q in zip(result.coefficients, quots):
        lines.append(f"{rat(c):>{width}}  {q}")
    terms = [f"{c}*g{i}" if c != 1 else f"g{i}" for i, c in enumerate(result.coefficients, 1) if c]
    lines.append("f = " + (" + ".join(terms) if terms else "0") + ("" if result.multiplier is None else "   (g_i divided by the multiplier)"))
    return lines


def cmd_decompose(args) -> int:
    target = _target(args)
    multiplier = _quotient(args.multiplier) if args.multiplier else None
    basis = load_basis(_fixture_path(args.basis)) if args.basis else None
    bundled = FIXTURES / f"basis{target.level}.txt"
    if basis is None and multiplier is None and not args.enumeration_order and bundled.exists():
        # conventional labelling of the weight-2 basis
        basis = load_basis(bundled)
    result = escalate_and_decompose(target, multiplier=multiplier, basis=basis, max_weight=args.max_weight,
                                    jobs=args.jobs)
    ok = verify_decomposition(result, args.margin)
    payload = result.as_dict()
    payload["verified_margin"] = args.margin
    payload["verified"] = ok
    if args.output:
        Path(args.output).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    _emit(args, _decomposition_lines(result) + [f"verified through Sturm bound + {args.margin}: {ok}"], payload)
    return EXIT_OK if ok else EXIT_NO


def cmd_verify(args) -> int:
    target = _target(args)
    try:
        data = json.loads(Path(args.result).read_text(encoding="utf-8"))
        result = DecompositionResult.from_dict(data, target)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read result {args.result}: {exc}") from None
    ok = verify_decomposition(result, args.margin)
    _emit(args, [f"{'OK' if ok else 'MISMATCH'} through Sturm bound + {args.margin}"],
          {"verified": ok, "margin": args.margin})
    return EXIT_OK if ok else EXIT_NO


# parser


def _margin(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("margin must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="etaq", description="Eta-quotients, their spaces, and decompositions of weight-2 newforms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="modularity, character, cusp orders, class")
    p.add_argument("quotient", help='e.g. "35; 1:2, 35:2"')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("expand", parents=[common], help="q-expansion")
    p.add_argument("quotient")
    p.add_argument("-n", "--terms", type=int, default=20, help="integral steps past the leading power")
    p.add_argument("--no-order", action="store_true", help="omit the O(q^n) term")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("cusps", parents=[common], help="order of vanishing at each cusp")
    p.add_argument("quotient")
    p.set_defaults(func=cmd_cusps)

    p = sub.add_parser("profile", parents=[common], help="invariants of Gamma_0(N)")
    p.add_argument("level", type=int)
    p.set_defaults(func=cmd_profile)

    for name, func, text in (("dim", cmd_dim, "dimension of S_k or M_k on Gamma_0(N)"),
                             ("sturm", cmd_sturm, "Sturm bound")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("level", type=int)
        p.add_argument("weight", type=int)
        if name == "dim":
            p.add_argument("--space", choices=("cusp", "holo"), default="cusp")
        p.set_defaults(func=func)

    p = sub.add_parser("exists", parents=[common], help="existence of eta-quotients at level p or pq")
    p.add_argument("numbers", type=int, nargs="+", metavar="p [q] k")
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("enumerate", parents=[common], help="all eta-quotients in S_k / M_k")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--space", choices=("cusp", "holo"), default="cusp")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--any-character", action="store_true", help="keep quotients with nontrivial character")
    p.set_defaults(func=cmd_enumerate)

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("target", nargs="?", help="coefficient file with lines 'n a_n'")
    target.add_argument("--level", type=int, help="level of the target (overrides the file)")
    target.add_argument("--curve", help="Weierstrass coefficients a1,a2,a3,a4,a6")
    target.add_argument("--conductor", type=int)
    target.add_argument("--n-max", type=int, default=100, help="coefficients to compute from a curve")
    target.add_argument("--margin", type=_margin, default=10, help="extra coefficients checked past the Sturm bound")

    p = sub.add_parser("decompose", parents=[common, target], help="write a weight-2 newform in eta-quotients")
    p.add_argument("--multiplier", help='eta-quotient a, e.g. "55; 1:3,5:3,11:3,55:3"')
    p.add_argument("--basis", help="file listing the basis quotients in order")
    p.add_argument("--enumeration-order", action="store_true", help="ignore a bundled basis file for the level")
    p.add_argument("--max-weight", type=int, default=24)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", help="also write the JSON result here")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common, target], help="re-check a saved decomposition")
    p.add_argument("--result", required=True, help="JSON written by 'decompose --output'")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"etaq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DecompositionError, PrecisionError, NotModularError, TooManyTuplesError, UnsupportedCurveError) as exc:
        print(f"etaq: {exc}", file=sys.stderr)
        return EXIT_NO
    except AssertionError as exc:
        print(f"etaq: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"etaq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
