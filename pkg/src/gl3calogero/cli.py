"""Command-line entry point.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for invalid input.  Rational flags take ``num/den``; ``sym`` keeps a
parameter symbolic.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .exactnum import ParamPoly
from .fockrep import REP_CODES, NotInvariantError, RepError, rep_config
from .models import TRANSCRIPTIONS, build_model
from .ncalg import normal_order
from .spectra import char_poly, isospectrality_report, model_matrix, verify_sector
from .verify import CHECKS, run_checks

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SYM = "sym"
# rational sample points used for n >= 4 unless --symbolic is given
SAMPLE_TAU = Fraction(1)
SAMPLE_MU = Fraction(1, 3)


class InputError(ValueError):
    pass


def _rational_or_sym(text: str):
    if text == SYM:
        return SYM
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected num/den or '{SYM}', got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("n must be nonnegative")
    return n


def _add_lattice(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta1", type=_rational, default=Fraction(1, 2), help="uniform spacing on x (default 1/2)")
    p.add_argument("--delta2", type=_rational, default=Fraction(1, 3), help="uniform spacing on y (default 1/3)")
    p.add_argument("--q1", type=_rational, default=Fraction(2), help="exponential ratio on x for ee, on y for ue (default 2)")
    p.add_argument("--q2", type=_rational, default=Fraction(3, 2), help="exponential ratio on y for ee, on x for eu (default 3/2)")


def _add_params(p: argparse.ArgumentParser, with_lambda: bool = True) -> None:
    p.add_argument("--tau", type=_rational_or_sym, default=None,
                   help="num/den or sym (default sym; a rational sample for n >= 4)")
    p.add_argument("--mu", type=_rational_or_sym, default=None,
                   help="num/den or sym (default sym; a rational sample for n >= 4)")
    if with_lambda:
        p.add_argument("--lambda", dest="lam", type=_rational_or_sym, default=Fraction(0),
                       help="G2 coupling, num/den or sym (default 0)")
    p.add_argument("--nu", type=_rational, default=None, help="must equal -n/3 when given; pass negatives as --nu=-1/3")
    p.add_argument("--symbolic", action="store_true", help="keep tau and mu symbolic for every n")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", default=None, help="write the report to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gl3calogero", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run named verification checks")
    v.add_argument("checks", nargs="+", choices=["all", *CHECKS], help="checks to run, or 'all'")
    v.add_argument("--json", action="store_true", help="emit a JSON report")
    _add_output(v)

    m = sub.add_parser("matrix", help="operator matrix on the triangular polynomial space as JSON")
    m.add_argument("--model", required=True, choices=["hA2", "kA2", "hG2"])
    m.add_argument("--rep", required=True, choices=REP_CODES)
    m.add_argument("--n", required=True, type=_nonneg)
    _add_lattice(m)
    _add_params(m)
    _add_output(m)

    s = sub.add_parser("spectrum", help="characteristic polynomial and closed-form comparison")
    s.add_argument("--model", default="hA2", choices=["hA2", "kA2", "hG2"])
    s.add_argument("--rep", default="dd", choices=REP_CODES)
    s.add_argument("--n", required=True, type=_nonneg)
    _add_lattice(s)
    _add_params(s)
    _add_output(s)

    i = sub.add_parser("isospectral", help="compare characteristic polynomials across representations")
    i.add_argument("--n", required=True, type=_nonneg)
    i.add_argument("--model", default="hA2", choices=["hA2", "kA2", "hG2"])
    i.add_argument("--reps", default="dd,uu,ee,ue,eu", help="comma-separated codes from " + ",".join(REP_CODES))
    _add_lattice(i)
    _add_params(i)
    _add_output(i)

    d = sub.add_parser("dump-model", help="canonical text of a transcribed operator")
    d.add_argument("--model", required=True, choices=sorted(TRANSCRIPTIONS))
    d.add_argument("--normal", action="store_true", help="normal-order before printing")
    _add_output(d)
    return parser


def _param(value, n: int, symbolic: bool, sample: Fraction):
    if value is None:
        return None if (symbolic or n < 4) else sample
    return None if value == SYM else value


def _resolve(args) -> dict:
    if args.nu is not None and args.nu != Fraction(-args.n, 3):
        raise InputError(f"nu = {args.nu} is inconsistent with n = {args.n} (expected {Fraction(-args.n, 3)})")
    lam = getattr(args, "lam", Fraction(0))
    return {
        "tau": _param(args.tau, args.n, args.symbolic, SAMPLE_TAU),
        "mu": _param(args.mu, args.n, args.symbolic, SAMPLE_MU),
        "lam": None if lam == SYM else lam,
    }


def _rep(args, code: str):
    return rep_config(code, args.delta1, args.delta2, args.q1, args.q2)


def _binding_text(params: dict) -> dict:
    return {k: (SYM if v is None else str(v)) for k, v in params.items()}


def _emit(payload, args, as_json: bool = True) -> None:
    text = json.dumps(payload, indent=2) if as_json else payload
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _cmd_verify(args) -> int:
    names = list(CHECKS) if "all" in args.checks else list(dict.fromkeys(args.checks))
    reports = run_checks(names)
    ok = all(r.passed for r in reports)
    if args.json:
        _emit({"schema_version": SCHEMA_VERSION, "command": "verify", "all_passed": ok,
               "checks": [r.to_dict() for r in reports]}, args)
    else:
        lines = []
        for r in reports:
            lines.append(f"{r.name:<13} {r.verdict.upper():<5} {r.wall_time:8.3f}s")
            for note in r.details:
                lines.append(f"    {note}")
            if r.residual:
                lines.extend("    residual " + line for line in r.residual.splitlines())
        _emit("\n".join(lines), args, as_json=False)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_matrix(args) -> int:
    params = _resolve(args)
    rep = _rep(args, args.rep)
    m = model_matrix(args.model, args.n, rep, **params)
    _emit({
        "schema_version": SCHEMA_VERSION,
        "command": "matrix",
        "model": args.model,
        "rep": args.rep,
        "n": args.n,
        "params": _binding_text(params),
        "basis": [f"x^{a}*y^{b}" for a, b in m.basis.monomials],
        "entries": m.to_text(),
    }, args)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    params = _resolve(args)
    rep = _rep(args, args.rep)
    if args.model == "hA2":
        report = verify_sector(args.n, rep, tau=params["tau"], mu=params["mu"])
        cp, ref = report.char_poly, report.reference
        match = report.match if ref is not None else None
    else:
        cp = char_poly(model_matrix(args.model, args.n, rep, **params))
        ref, match = None, None
    _emit({
        "schema_version": SCHEMA_VERSION,
        "command": "spectrum",
        "model": args.model,
        "rep": args.rep,
        "n": args.n,
        "params": _binding_text(params),
        "char_poly": str(cp),
        "factored_reference": None if ref is None else str(ref),
        "match": match,
    }, args)
    return EXIT_FAIL if match is False else EXIT_OK


def _cmd_isospectral(args) -> int:
    params = _resolve(args)
    codes = [c.strip() for c in args.reps.split(",") if c.strip()]
    if not codes:
        raise InputError("no representations given")
    bad = [c for c in codes if c not in REP_CODES]
    if bad:
        raise InputError(f"unknown representation codes {bad}")
    reps = [_rep(args, c) for c in codes]
    rep = isospectrality_report(args.n, reps, model=args.model, **params)
    _emit({
        "schema_version": SCHEMA_VERSION,
        "command": "isospectral",
        "model": args.model,
        "n": args.n,
        "params": _binding_text(params),
        "char_polys": {k: str(v) for k, v in rep.char_polys.items()},
        "pairs": [{"a": a, "b": b, "difference": str(d), "equal": d.is_zero()}
                  for (a, b), d in rep.differences.items()],
        "all_equal": rep.all_equal,
    }, args)
    return EXIT_OK if rep.all_equal else EXIT_FAIL


def _cmd_dump(args) -> int:
    x = build_model(args.model)
    if args.normal:
        x = normal_order(x)
    _emit(str(x), args, as_json=False)
    return EXIT_OK


COMMANDS = {
    "verify": _cmd_verify,
    "matrix": _cmd_matrix,
    "spectrum": _cmd_spectrum,
    "isospectral": _cmd_isospectral,
    "dump-model": _cmd_dump,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (InputError, RepError, NotInvariantError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
