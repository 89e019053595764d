"""Command line entry point: ``u2slopes {slopes,verify,serre,mod2,cm}``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import modfunc
from .classical import cm_slope_crosscheck, dimension_cuspforms
from .exact import HalfVal, QuadRat
from .report import CheckReport
from .slopes import (
    CertificationError,
    ClassicalityError,
    classical_slopes,
    conductor_exponent,
    conjugated_matrix,
    overconvergent_slopes,
    serre_conditions_check,
)
from .umatrix import (
    UnrealizableWeightError,
    column_genfun_check,
    diamond_check,
    mod2_reduce,
    multiplier_congruence_check,
    realize,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_CERT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for certification failures here
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str, type(None))):
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, QuadRat, HalfVal)):
        return str(x)
    return str(x)


def _report(command: str, inputs: dict, **kw) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "slopes": [str(s) for s in kw.get("slopes", [])],
        "classical_dimension": kw.get("classical_dimension"),
        "checks": {},
        "q_precision_used": kw.get("q_precision_used"),
    }
    for r in kw.get("checks", []):
        out["checks"][r.name] = {"pass": bool(r.passed), "detail": r.detail}
    if "results" in kw:
        out["results"] = _jsonable(kw["results"])
    return out


def _emit(report: dict, fmt: str, started: float) -> None:
    report["timing"] = f"{time.perf_counter() - started:.3f}s"
    if fmt == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False))
        return
    print(f"{report['command']}  {' '.join(f'{k}={v}' for k, v in report['inputs'].items())}")
    if report["slopes"]:
        print("slopes:", ", ".join(report["slopes"]))
    res = report.get("results", {})
    if "classical_slopes" in res:
        print(f"classical dimension: {report['classical_dimension']}")
        print("classical slopes:", ", ".join(res["classical_slopes"]) or "(none)")
    if "provisional" in res and res["provisional"]:
        print("provisional:", ", ".join(res["provisional"]))
    for name, c in report["checks"].items():
        print(f"  [{'PASS' if c['pass'] else 'FAIL'}] {name}: {c['detail']}")
    if report["q_precision_used"] is not None:
        print(f"q-precision: {report['q_precision_used']}")
    print(f"time: {report['timing']}")


def _all_pass(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"].values())


# -- subcommands --------------------------------------------------------------


def cmd_slopes(a) -> dict:
    kappa = realize(a.level, a.weight)
    if a.count < 1:
        raise UsageError("--count must be >= 1")
    rep = overconvergent_slopes(a.level, kappa, a.count, P=a.precision)
    d = classical = None
    if a.weight >= 3:
        d = dimension_cuspforms(a.weight, conductor_exponent(kappa))
        classical = classical_slopes(a.level, kappa, P=a.precision)
    certified = rep.certified[: a.count]
    results = {
        "character": kappa.chi.label,
        "truncation_sizes": list(rep.sizes),
        "provisional": [str(s) for s in rep.certified[a.count:] + rep.provisional],
    }
    if classical is not None:
        results["classical_slopes"] = [str(s) for s in classical]
    return _report(
        "slopes",
        {"level": a.level, "weight": a.weight, "count": a.count, "precision": a.precision},
        slopes=certified,
        classical_dimension=d,
        q_precision_used=rep.q_precision,
        results=results,
    )


def _mutations(P: int) -> dict[str, tuple[str, Callable[[], list[CheckReport]]]]:
    """Mutation name -> (check it corrupts, thunk producing replacement reports)."""
    return {
        "j-numerator": ("j_identity", lambda: [modfunc.verify_j_identity(P, numerator=(1, 256, 5121, 32768, 65536))]),
        "j-without-j8-power": ("j_identity", lambda: [modfunc.verify_j_identity(P, j8_power=0)]),
        "j8-j16-coefficient": ("j8_j16_identity", lambda: [modfunc.verify_j8_j16_identity(P, coefficient=3)]),
        "eta-printed": ("eta_quotient", lambda: modfunc.verify_eta_quotients(P, printed=True)),
        "z4-shift": ("z4_closed_form", lambda: modfunc.verify_z_identities(P, z4_shift=2)[:1]),
        "uz2-sign": ("U(z4^2)_closed_form", lambda: modfunc.verify_uz2_closed_forms(P, sign=-1)[:1]),
        "e4chi-literal-z8": ("E4chi_ratio", lambda: [modfunc.verify_e4chi_ratio(P, variable="z8")]),
        "e4chi-coefficient": (
            "E4chi_ratio",
            lambda: [modfunc.verify_e4chi_ratio(P, numerator=(11, 2, 24, -47, -16, -352))],
        ),
    }


MUTATIONS = tuple(_mutations(2))


def cmd_verify(a) -> dict:
    P = a.depth
    if P < 4:
        raise UsageError("--depth must be >= 4")
    reports = modfunc.identity_suite(P)
    if a.mutate:
        target, thunk = _mutations(P)[a.mutate]
        bad = thunk()
        reports = [r for r in reports if not r.name.startswith(target)]
        for r in bad:
            r.name = f"{r.name} (mutated: {a.mutate})"
        reports = bad + reports
    levels = (a.level,) if a.level else (4, 8)
    for N in levels:
        reports += modfunc.verify_uniformizer_lemma(N, P=min(P, 100), powers=min(10, P // 10 + 1))
        reports.append(diamond_check(N, P))
    if 8 in levels:
        for k in (4, 8, 12):
            reports.append(multiplier_congruence_check(k))
    return _report(
        "verify",
        {"depth": P, "level": a.level, "mutate": a.mutate},
        checks=reports,
        q_precision_used=P,
        results={r.name: {"first_mismatch": r.first_mismatch} for r in reports if r.first_mismatch is not None},
    )


def cmd_serre(a) -> dict:
    kappa = realize(a.level, a.weight)
    r = Fraction(a.r) if a.r is not None else Fraction(8, a.level)
    M = conjugated_matrix(a.level, kappa, a.size)
    rep = serre_conditions_check(M, r)
    return _report(
        "serre",
        {"level": a.level, "weight": a.weight, "size": a.size, "r": str(r)},
        checks=[rep],
        q_precision_used=M.q_precision,
        results=rep.data,
    )


def cmd_mod2(a) -> dict:
    kappa = realize(a.level, a.weight)
    M = conjugated_matrix(a.level, kappa, a.size)
    red = mod2_reduce(M)
    dets = red.leading_dets()
    ok = all(d == 1 for d in dets)
    first_bad = next((m for m, d in enumerate(dets, start=1) if d != 1), None)
    checks = [CheckReport(
        "mod2_determinant",
        ok,
        f"det = {dets[-1]} mod 2 at size {a.size}; leading blocks "
        + ("all 1" if ok else f"first vanish at n = {first_bad}"),
    )]
    if a.level == 4:
        checks.append(column_genfun_check(a.size, (a.weight - 1) // 2))
    return _report(
        "mod2",
        {"level": a.level, "weight": a.weight, "size": a.size},
        checks=checks,
        q_precision_used=M.q_precision,
        results={"leading_determinants": dets},
    )


def cmd_cm(a) -> dict:
    P = a.precision or 8
    rep = cm_slope_crosscheck(a.level, a.weight, P)
    kappa = realize(a.level, a.weight)
    return _report(
        "cm",
        {"level": a.level, "weight": a.weight},
        slopes=[Fraction(rep.data["slope"])],
        classical_dimension=dimension_cuspforms(a.weight, conductor_exponent(kappa)),
        checks=[rep],
        q_precision_used=P,
        results=rep.data,
    )


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="u2slopes", description="Exact U_2 slope computations at levels 4 and 8.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--level", type=int, choices=(4, 8), required=True)
        sp.add_argument("--format", choices=("table", "json"), default="table")
        sp.add_argument("--precision", type=int, default=None, help="q-precision floor")

    sp = sub.add_parser("slopes", help="certified overconvergent and classical slopes")
    common(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--count", type=int, default=10)
    sp.set_defaults(func=cmd_slopes)

    sp = sub.add_parser("verify", help="q-expansion identity suite")
    sp.add_argument("--level", type=int, choices=(4, 8), default=None)
    sp.add_argument("--depth", type=int, default=modfunc.DEFAULT_DEPTH)
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.add_argument("--mutate", choices=MUTATIONS, default=None, help="corrupt one identity (testing hook)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("serre", help="Serre valuation conditions on the conjugated matrix")
    common(sp)
    sp.add_argument("--weight", type=int, default=3)
    sp.add_argument("--size", type=int, default=12)
    sp.add_argument("--r", type=Fraction, default=None, help="valuation constant (default 8/level)")
    sp.set_defaults(func=cmd_serre)

    sp = sub.add_parser("mod2", help="mod 2 determinants of the rescaled matrix")
    common(sp)
    sp.add_argument("--weight", type=int, default=3)
    sp.add_argument("--size", type=int, default=32)
    sp.set_defaults(func=cmd_mod2)

    sp = sub.add_parser("cm", help="CM form slope against the classical slope list")
    common(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.set_defaults(func=cmd_cm)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "size", 1) < 1:
            raise UsageError("--size must be >= 1")
        report = args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (UnrealizableWeightError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificationError, ClassicalityError) as e:
        print(f"certification failed: {e}", file=sys.stderr)
        return EXIT_CERT
    _emit(report, args.format, started)
    return EXIT_OK if _all_pass(report) else EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
