"""Command line front end: ``hyperfutaki <command> ...``.

Exit codes: 0 success, 1 bad input, 2 field not tangent, 3 numerical failure
(no convergence, sigma = 0, series budget), 4 a ``check`` comparison failed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import checks
from .errors import (
    BudgetExceeded,
    InputError,
    NotConverged,
    NotTangent,
    NumericalError,
    SigmaZero,
    ZeroScale,
)
from .hfuncs import SeriesControl, phi_bundle, phi_divdiff
from .invariant import futaki, tian_zhu
from .poly import (
    DiagonalField,
    format_complex,
    normalize_field,
    parse_polynomial,
    parse_vector,
    weight_of,
)
from .soliton import solve_soliton


def _add_common(p, poly=True, fields=""):
    if poly:
        p.add_argument("-F", "--poly", required=True,
                       help="polynomial text, JSON object, or @file.json")
    p.add_argument("-n", type=int, default=None, help="ambient dimension of CP^n")
    if "v" in fields:
        p.add_argument("-v", required="V" in fields, help="comma separated field v")
    if "X" in fields:
        p.add_argument("-X", required="R" in fields, help="comma separated field X")
    p.add_argument("--normalize", action="store_true",
                   help="subtract the mean of each field and report the shift")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=1e-12, help="series tail tolerance")
    p.add_argument("--max-terms", type=int, default=512)
    p.add_argument("--output", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfutaki",
        description="Tian-Zhu and Futaki invariants of hypersurfaces in CP^n.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("weights", help="weights kappa (and lambda) on F"), fields="vVX")
    _add_common(sub.add_parser("futaki", help="closed-form Futaki invariant"), fields="vV")
    _add_common(sub.add_parser("tianzhu", help="Tian-Zhu invariant F_X(v)"), fields="vVXR")
    p = sub.add_parser("soliton", help="search the X with F_X = 0")
    _add_common(p)
    p.add_argument("--max-iter", type=int, default=50)
    p = sub.add_parser("phi", help="phi(X) and its derivatives")
    _add_common(p, poly=False, fields="vXR")
    p.add_argument("-d", type=int, required=True, help="degree of the hypersurface")
    p = sub.add_parser("check", help="run the cross-check suite on F")
    _add_common(p, fields="X")
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _read_poly(args):
    text = args.poly
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    n = args.n
    if n is None and not text.lstrip().startswith("{"):
        for name in ("v", "X"):
            raw = getattr(args, name, None)
            if raw:
                n = len(parse_vector(raw)) - 1
                break
    return parse_polynomial(text, n)


def _field(args, name, extra):
    raw = getattr(args, name, None)
    if raw is None:
        return None
    vec = parse_vector(raw)
    if args.normalize:
        f, shift = normalize_field(vec)
        extra[f"shift_{name}"] = shift
        return f
    return DiagonalField(vec)


def _control(args, n, d):
    return SeriesControl.for_hypersurface(n, d, epsilon=args.epsilon,
                                          max_terms=args.max_terms)


def _jsonable(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict) and set(obj) == {"re", "im"}:
        yield f"{prefix}: {format_complex(complex(obj['re'], obj['im']))}"
    elif isinstance(obj, dict):
        for k, v in obj.items():
            yield from _text_lines(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            yield from _text_lines(v, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {json.dumps(obj)}"


def emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    report = _jsonable(report)
    if fmt == "json":
        out.write(json.dumps(report) + "\n")
    else:
        for line in _text_lines(report):
            out.write(line + "\n")


def _tol_kw(args):
    return {"tol": args.tol} if args.tol is not None else {}


def cmd_weights(args):
    extra = {}
    P = _read_poly(args)
    v = _field(args, "v", extra)
    w = weight_of(P, v, **_tol_kw(args))
    report = {"kappa": complex(w.value), "witness_exponent": list(w.witness_exponent)}
    X = _field(args, "X", extra)
    if X is not None:
        report["lambda"] = complex(weight_of(P, X, **_tol_kw(args)).value)
    report.update(extra)
    return report, 0


def cmd_futaki(args):
    extra = {}
    P = _read_poly(args)
    v = _field(args, "v", extra)
    value = futaki(P, v, **_tol_kw(args))
    report = {"value_re": value.real, "value_im": value.imag,
              "kappa": complex(weight_of(P, v, **_tol_kw(args)).value),
              "n": P.n, "d": P.degree}
    report.update(extra)
    return report, 0


def cmd_tianzhu(args):
    extra = {}
    P = _read_poly(args)
    v = _field(args, "v", extra)
    X = _field(args, "X", extra)
    rep = tian_zhu(P, v, X, _control(args, P.n, P.degree), tol=args.tol)
    report = rep.to_dict()
    report.update(extra)
    return report, 0


def cmd_soliton(args):
    P = _read_poly(args)
    tol = args.tol if args.tol is not None else 1e-10
    try:
        res = solve_soliton(P, tol=tol, max_iter=args.max_iter,
                            ctl=_control(args, P.n, P.degree))
    except NotConverged as exc:
        emit(exc.result.to_dict(), args.output)
        raise
    return res.to_dict(), 0


def cmd_phi(args):
    extra = {}
    X = _field(args, "X", extra)
    n = X.n if args.n is None else args.n
    v = _field(args, "v", extra)
    b = phi_bundle(X, v, n, args.d, _control(args, n, args.d))
    report = {"phi": b.phi, "dphi_v": b.dphi_v, "euler": b.euler,
              "deuler_v": b.deuler_v, "terms_used": b.terms_used,
              "tail_bound": b.tail_bound}
    if n - args.d + 1 != 0:
        report["phi_divdiff"] = phi_divdiff(X, n, args.d)
    report.update(extra)
    return report, 0


def cmd_check(args):
    extra = {}
    P = _read_poly(args)
    X = _field(args, "X", extra)
    results = checks.run_checks(P, X=X, samples=args.samples, seed=args.seed,
                                ctl=_control(args, P.n, P.degree))
    ok = all(r["passed"] for r in results)
    report = {"passed": ok, "checks": results}
    report.update(extra)
    return report, 0 if ok else 4


COMMANDS = {
    "weights": cmd_weights,
    "futaki": cmd_futaki,
    "tianzhu": cmd_tianzhu,
    "soliton": cmd_soliton,
    "phi": cmd_phi,
    "check": cmd_check,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except (InputError, OSError) as exc:
        print(f"InputError: {exc}", file=sys.stderr)
        return 1
    except NotTangent as exc:
        print(f"NotTangent: {exc}", file=sys.stderr)
        return 2
    except (NotConverged, SigmaZero, BudgetExceeded, ZeroScale, NumericalError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    emit(report, args.output)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
