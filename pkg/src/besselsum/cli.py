"""Command-line front end.

Every number is written as a decimal string with ``--digits`` significant
figures (zero is written ``"0"``), so output never passes through binary
floats and is byte-for-byte reproducible.

Exit codes: 0 success, 1 a table cell outside tolerance, 2 invalid input or
domain error, 3 insufficient precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import tables
from .coefficients import build_coefficients
from .errors import (
    CoefficientUnavailableError,
    DomainError,
    PlanExhaustedError,
    PrecisionError,
)
from .expansion import Params, evaluate, plan_truncation, stokes_erf_argument, stokes_multiplier, to_fraction
from .kernel import Polar, PrecisionContext, is_complex
from .oracle import digits_needed, s_direct, s_hat
from .terminant import connection_residual, terminant_exact

EXIT_OK, EXIT_TABLE, EXIT_DOMAIN, EXIT_PRECISION = 0, 1, 2, 3


def fmt(x, ctx: PrecisionContext) -> str:
    """Decimal string with ``ctx.digits`` significant figures; complex as ``re+imj``."""
    mp = ctx.mp
    if isinstance(x, int):
        return str(x)
    if is_complex(x):
        re, im = mp.re(x), mp.im(x)
        if im == 0:
            return fmt(re, ctx)
        sign = "-" if im < 0 else "+"
        return f"{fmt(re, ctx)}{sign}{fmt(abs(im), ctx)}j"
    if x == 0:
        return "0"
    return mp.nstr(x, ctx.digits)


def _decimal(text: str) -> str:
    try:
        to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal or p/q number: {text!r}")
    return text


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _digits(text: str) -> int:
    value = int(text)
    if value < 30:
        raise argparse.ArgumentTypeError("need at least 30 digits")
    return value


def _add_common(p: argparse.ArgumentParser, params: bool = True):
    if params:
        p.add_argument("--nu", type=_decimal, required=True, help="order nu >= 0 (decimal or p/q)")
        p.add_argument("--a", dest="a_mod", type=_decimal, required=True, help="|a| > 0")
        p.add_argument("--a-arg", type=_decimal, default="0", help="arg a in radians, |arg a| < pi/2")
    p.add_argument("--digits", type=_digits, default=120, help="significant digits (default 120)")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--output", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselsum",
        description="Asymptotics of sum_n (a n^2/2)^-nu K_nu(a n^2) as a -> 0",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="assemble the asymptotic expansion")
    _add_common(p)
    p.add_argument("--M", type=_nonneg_int, default=5, help="terms per exponential (default 5)")
    p.add_argument("--k-max", type=_nonneg_int, default=1, help="exponentials kept (default 1)")
    p.add_argument("--mode", choices=("auto", "theorem", "terminant"), default="auto")
    p.add_argument("--source", choices=("auto", "closed", "generated", "printed"), default="auto")
    p.add_argument("--with-oracle", action="store_true", help="also sum the series directly")

    p = sub.add_parser("hat", help="S-hat: direct sum minus H and the algebraic sum")
    _add_common(p)
    p.add_argument("--M", type=_nonneg_int, default=5)
    p.add_argument("--source", choices=("auto", "closed", "generated", "printed"), default="auto")

    p = sub.add_parser("coeffs", help="c_j, D_{r,j} and B_j for one (nu, alpha)")
    _add_common(p)
    p.add_argument("--alpha", type=_decimal, help="override alpha (default: from N_1 at the given a)")
    p.add_argument("--M", type=_nonneg_int, default=5)
    p.add_argument("--source", choices=("auto", "closed", "generated", "printed"), default="auto")

    p = sub.add_parser("terminant", help="T_order(z) and the connection-formula residual at |z|")
    _add_common(p, params=False)
    p.add_argument("--order", type=_decimal, required=True)
    p.add_argument("--z", dest="z_mod", type=_decimal, required=True, help="|z| > 0")
    p.add_argument("--z-arg", type=_decimal, default="0", help="arg z in radians, |arg z| < 3 pi/2")

    p = sub.add_parser("tables", help="regenerate the three reference tables as CSV")
    _add_common(p, params=False)
    p.add_argument("--table", type=int, choices=(1, 2, 3), action="append", help="restrict to a table")

    p = sub.add_parser("stokes", help="leading-order Stokes multiplier across arg a = 0")
    _add_common(p)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--theta-min", type=_decimal)
    p.add_argument("--theta-max", type=_decimal)
    p.add_argument("--steps", type=_positive_int, default=41)
    return parser


def _params(args) -> Params:
    return Params(args.nu, args.a_mod, args.a_arg)


def _params_json(args, params: Params, ctx) -> dict:
    return {
        "nu": args.nu,
        "a_mod": args.a_mod,
        "a_arg": args.a_arg,
        "m": str(params.m),
        "nu_prime": fmt(ctx.mpf(params.nu_prime), ctx),
        "digits": str(ctx.digits),
    }


def cmd_eval(args, ctx) -> str:
    params = _params(args)
    b = evaluate(params, args.M, args.k_max, ctx, mode=args.mode, source=args.source)
    out = {
        "params": {**_params_json(args, params, ctx), "M": str(args.M), "k_max": str(args.k_max), "mode": b.mode},
        "breakdown": {
            "h_term": fmt(b.h_term, ctx),
            "algebraic": fmt(b.algebraic_sum, ctx),
            "exp_terms": [fmt(x, ctx) for x in b.exp_terms],
            "total": fmt(b.total, ctx),
            "error_model": fmt(b.error_model, ctx),
        },
        "plans": [
            {"k": str(p.k), "N": str(p.N), "alpha": fmt(p.alpha, ctx), "X": fmt(p.X, ctx)}
            for p in b.plans[: max(args.k_max, 1)]
        ],
    }
    if args.with_oracle:
        direct = s_direct(params, ctx)
        diff = abs(b.total - direct.value)
        oracle = {
            "s_direct": fmt(direct.value, ctx),
            "terms_used": str(direct.terms_used),
            "tail_bound": fmt(direct.tail_bound, ctx),
            "abs_difference": fmt(diff, ctx),
        }
        if b.exp_terms and b.exp_terms[0] != 0:
            oracle["difference_over_first_exponential"] = fmt(diff / abs(b.exp_terms[0]), ctx)
        out["oracle"] = oracle
    if args.format == "csv":
        rows = [["part", "value"], ["h_term", out["breakdown"]["h_term"]], ["algebraic", out["breakdown"]["algebraic"]]]
        rows += [[f"exp_term_{k}", v] for k, v in enumerate(out["breakdown"]["exp_terms"], start=1)]
        rows += [["total", out["breakdown"]["total"]], ["error_model", out["breakdown"]["error_model"]]]
        return _csv(rows)
    return _json(out)


def cmd_hat(args, ctx) -> str:
    params = _params(args)
    value = s_hat(params, None, ctx)
    out = {
        "params": {**_params_json(args, params, ctx), "M": str(args.M)},
        "s_hat": fmt(value, ctx),
        "working_digits": str(digits_needed(params, ctx)),
    }
    if params.on_stokes_line and args.M > 0:
        b = evaluate(params, args.M, 1, ctx, source=args.source)
        asym = b.exp_terms[0]
        out["asymptotic"] = fmt(asym, ctx)
        out["relative_error"] = fmt(abs(asym - value) / abs(value), ctx)
    if args.format == "csv":
        return _csv([list(k for k in out if k != "params"), [out[k] for k in out if k != "params"]])
    return _json(out)


def cmd_coeffs(args, ctx) -> str:
    params = _params(args)
    nu = params.nu_value(ctx)
    plan = plan_truncation(params, 1, ctx)[0]
    alpha = ctx.mpf(to_fraction(args.alpha)) if args.alpha is not None else plan.alpha
    cs = build_coefficients(nu, alpha, args.M, ctx, args.source)
    if args.format == "csv":
        rows = [["j", "gamma_j", "c_j", "B_j"]]
        rows += [[str(j), fmt(cs.gamma_j[j], ctx), fmt(cs.c[j], ctx), fmt(cs.B[j], ctx)] for j in range(cs.M)]
        return _csv(rows)
    out = {
        "params": {**_params_json(args, params, ctx), "M": str(args.M), "source": args.source},
        "N_1": str(plan.N),
        "alpha": fmt(alpha, ctx),
        "gamma_j": [fmt(g, ctx) for g in cs.gamma_j],
        "c": [fmt(x, ctx) for x in cs.c],
        "D": [[fmt(x, ctx) for x in row] for row in cs.D],
        "B": [fmt(x, ctx) for x in cs.B],
    }
    return _json(out)


def cmd_terminant(args, ctx) -> str:
    order = ctx.mpf(to_fraction(args.order))
    r = ctx.mpf(to_fraction(args.z_mod))
    phi = ctx.mpf(to_fraction(args.z_arg))
    if r <= 0:
        raise DomainError("|z| must be positive")
    value = terminant_exact(order, Polar(r, phi), ctx)
    out = {
        "order": args.order,
        "z_mod": args.z_mod,
        "z_arg": args.z_arg,
        "digits": str(ctx.digits),
        "value": fmt(value, ctx),
        "connection_residual": fmt(abs(connection_residual(order, r, ctx)), ctx),
    }
    if args.format == "csv":
        return _csv([list(out), list(out.values())])
    return _json(out)


def cmd_stokes(args, ctx) -> str:
    mp = ctx.mp
    params = _params(args)
    x_abs = mp.pi**2 * args.k**2 / ctx.mpf(params.a_mod)
    width = mp.sqrt(2 / x_abs)
    half_pi = mp.pi / 2
    lo = ctx.mpf(to_fraction(args.theta_min)) if args.theta_min is not None else -min(5 * width, half_pi * 0.99)
    hi = ctx.mpf(to_fraction(args.theta_max)) if args.theta_max is not None else min(5 * width, half_pi * 0.99)
    if not (-half_pi < lo <= hi < half_pi):
        raise DomainError("theta sweep must satisfy -pi/2 < theta_min <= theta_max < pi/2")
    rows = [["theta", "re_multiplier", "im_multiplier", "erf_argument"]]
    n = args.steps
    for i in range(n):
        theta = lo if n == 1 else lo + (hi - lo) * i / (n - 1)
        p = Params(params.nu, params.a_mod, to_fraction(theta))
        mult = stokes_multiplier(p, args.k, ctx)
        arg = stokes_erf_argument(p, args.k, ctx)
        rows.append([fmt(theta, ctx), fmt(mp.re(mult), ctx), fmt(mp.im(mult), ctx), fmt(arg, ctx)])
    if args.format == "json":
        return _json({"params": _params_json(args, params, ctx), "k": str(args.k), "rows": [dict(zip(rows[0], r)) for r in rows[1:]]})
    return _csv(rows)


def cmd_tables(args, ctx) -> tuple:
    wanted = sorted(set(args.table or (1, 2, 3)))
    builders = {1: tables.table1, 2: tables.table2, 3: tables.table3}
    cells = {t: builders[t](ctx) for t in wanted}
    failed = any(c.counts and c.status != "pass" for t in wanted for c in cells[t])
    if args.output and os.path.isdir(args.output):
        for t in wanted:
            path = os.path.join(args.output, f"table{t}.csv")
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(tables.cells_to_csv(cells[t], ctx))
        text = None
    else:
        text = tables.cells_to_csv([c for t in wanted for c in cells[t]], ctx)
    diff = tables.summary([c for t in wanted for c in cells[t]])
    return text, diff, failed


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: List[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = PrecisionContext(digits=args.digits)
    if args.format is None:
        args.format = "csv" if args.command in ("stokes", "tables") else "json"
    try:
        if args.command == "tables":
            text, diff, failed = cmd_tables(args, ctx)
            if text is not None:
                _emit(text, args.output)
            sys.stderr.write(diff + "\n")
            return EXIT_TABLE if failed else EXIT_OK
        handler = {
            "eval": cmd_eval,
            "hat": cmd_hat,
            "coeffs": cmd_coeffs,
            "terminant": cmd_terminant,
            "stokes": cmd_stokes,
        }[args.command]
        _emit(handler(args, ctx), args.output)
        return EXIT_OK
    except (DomainError, CoefficientUnavailableError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (PrecisionError, PlanExhaustedError) as exc:
        sys.stderr.write(f"precision: {exc}\n")
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
