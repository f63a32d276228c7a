"""Command line front end.  JSON on stdout by default; exit 2 on usage errors, 3 on numeric failures."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import expr as ex
from . import meijer as mg
from . import special as sp
from .errors import (
    ExprSyntaxError,
    FracdiffError,
    ParamError,
    UnknownFormError,
    UnknownFunctionError,
    UnknownIdentifierError,
)
from .grunwald import GlConfig, gl_differint
from .operator import fracdiff_closed_form, fracdiff_power_log, fracdiff_series, format_power_result
from .series import PowerLogSeries

USAGE_ERRORS = (ExprSyntaxError, UnknownIdentifierError, UnknownFunctionError,
                UnknownFormError, ParamError, OSError, json.JSONDecodeError)


class UsageError(Exception):
    pass


def pair(z) -> list:
    z = sp.as_complex(z)
    return [z.real, z.imag]


def _num(x: float) -> str:
    return str(int(x)) if x == int(x) and abs(x) < 1e15 else repr(x)


def _cnum(z: complex) -> str:
    z = sp.as_complex(z)
    if z.imag == 0:
        return _num(z.real)
    return f"({_num(z.real)}{'+' if z.imag >= 0 else '-'}{_num(abs(z.imag))}i)"


def power_form(lam: complex, k: int, alpha: complex, s: PowerLogSeries) -> str:
    """Symbolic result for the plain gamma-ratio case, else the term listing."""
    m = sp.nearest_int(alpha)
    x = lam + 1 - alpha
    simple = (k == 0 and (m is None or alpha != m) and len(s.terms) == 1
              and s.terms[0].log_pow == 0 and not sp.is_nonpositive_int(lam + 1)
              and not sp.is_nonpositive_int(x))
    if not simple:
        return format_power_result(s)
    n = sp.nearest_int(lam)
    num = _cnum(sp.gamma(lam + 1)) if n is not None and n >= 0 and lam == n else f"Γ({_cnum(lam + 1)})"
    head = "" if num == "1" else f"{num}*"
    return f"{head}z^{{{_cnum(lam - alpha)}}}/Γ({_cnum(x)})"


def _complex_arg(text: str) -> complex:
    try:
        return ex.parse_complex(text)
    except ExprSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _real_at(z: complex) -> float:
    if z.imag != 0 or not z.real > 0:
        raise UsageError("--at must be a positive real number for the GL oracle")
    return z.real


def _load_params(args) -> mg.GParams:
    if args.params is not None:
        return mg.GParams.from_json(json.loads(Path(args.params).read_text()))
    if args.form is not None:
        return mg.builtin_gform(args.form, args.nu).params
    raise UsageError("one of --params or --form is required")


# subcommands


def cmd_series(args) -> dict:
    s = ex.compile_expr(args.expr, args.terms)
    if args.alpha is not None:
        s = fracdiff_series(s, args.alpha)
    out = {"series": s.to_json()}
    if args.at is not None:
        out["value"] = pair(s(args.at))
        tail = s.tail_estimate(args.at)
        out["tail"] = tail if math.isfinite(tail) else None
    return out


def cmd_power(args) -> dict:
    s = fracdiff_power_log(args.lam, args.log_power, args.alpha)
    out = {}
    if args.at is not None:
        out["value"] = pair(s(args.at))
    out["form"] = power_form(args.lam, args.log_power, args.alpha, s)
    out["approximate"] = s.approximate
    return out


def _gl(ast, x: float, alpha: complex, h: float, n: int | None):
    if alpha.imag != 0:
        raise UsageError("the GL oracle needs a real order")

    def f(t):
        return ex.evaluate(ast, float(t)).real

    return gl_differint(f, x, alpha.real, GlConfig(h=h, n_terms=n, x=x))


def cmd_gl(args) -> dict:
    ast = ex.parse(args.expr)
    r = _gl(ast, _real_at(args.at), args.alpha, args.h, args.n)
    return {"value": pair(r.value), "error": r.error, "h": r.h, "n_terms": r.n_terms}


def _reference(ast, alpha):
    """Closed-form differintegral when the expression is one of the known shapes."""
    z = ex.Var()
    if isinstance(ast, ex.Call) and ast.arg == z and ast.name in ("exp", "sin", "sqrt"):
        return fracdiff_closed_form(ast.name, alpha)
    if isinstance(ast, ex.Call) and ast.name == "exp" and ast.arg == ex.Pow(z, 2):
        return fracdiff_closed_form("exp_sq", alpha)
    if isinstance(ast, ex.Pow) and ast.base == z:
        return fracdiff_closed_form("power", alpha, {"lam": ast.exponent})
    return None


def cmd_compare(args) -> dict:
    ast = ex.parse(args.expr)
    x = _real_at(args.at)
    s = fracdiff_series(ex.compile_expr(ast, args.terms), args.alpha)
    sv = s(x)
    g = _gl(ast, x, args.alpha, args.h, args.n)
    ref = _reference(ast, args.alpha)
    out = {"series": pair(sv), "gl": pair(g.value), "gl_step_error": g.error,
           "reference": None, "formula": None, "series_error": None, "gl_error": None}
    if ref is not None:
        rv = ref(x)
        out.update(reference=pair(rv), formula=ref.formula,
                   series_error=abs(sv - rv), gl_error=abs(g.value - rv))
    return out


def cmd_closed_form(args) -> dict:
    params = {"lam": args.lam} if args.lam is not None else None
    cf = fracdiff_closed_form(args.name, args.alpha, params)
    out = {"formula": cf.formula}
    if args.at is not None:
        out = {"value": pair(cf(args.at)), **out}
    return out


def cmd_meijer_shift(args) -> dict:
    gp = _load_params(args)
    if args.general:
        return mg.fracdiff_shift_general(gp, args.alpha).to_json()
    return mg.fracdiff_shift(gp, args.alpha).to_json()


def cmd_meijer_frint(args) -> dict:
    gp = _load_params(args)
    if args.fox:
        return mg.frint_fox(gp, args.alpha, args.beta).to_json()
    fr = mg.frint_params(gp, args.alpha, args.beta)
    out = fr.to_json()
    if args.at is not None:
        out = {"value": pair(fr(args.at)), **out}
    return out


def cmd_meijer_check(args) -> dict:
    gp = _load_params(args)
    z = args.at if args.at is not None else 1.0
    return mg.check_convergence(gp, args.alpha, args.beta, z).to_json()


def cmd_meijer_asym(args) -> dict:
    return mg.asymptotic_class(_load_params(args), args.point).to_json()


# parser


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracdiff", description="Differintegrals of power-log series "
                                "and Meijer G-functions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def order_args(sp_, alpha_required=True, beta=False):
        sp_.add_argument("--alpha", type=_complex_arg, required=alpha_required)
        if beta:
            sp_.add_argument("--beta", type=_complex_arg, required=True)

    def at_arg(sp_, required=False):
        sp_.add_argument("--at", type=_complex_arg, required=required)

    def g_args(sp_):
        src = sp_.add_mutually_exclusive_group()
        src.add_argument("--params", help="JSON file with m,n,p,q,a,b,w,g,r")
        src.add_argument("--form", help="builtin form name instead of a file")
        sp_.add_argument("--nu", type=float, default=0.0)

    s = sub.add_parser("series", parents=[common], help="series of an expression")
    s.add_argument("expr")
    order_args(s, alpha_required=False)
    s.add_argument("--terms", type=int, default=ex.DEFAULT_ORDER)
    at_arg(s)
    s.set_defaults(fn=cmd_series)

    s = sub.add_parser("power", parents=[common], help="d^alpha z^lambda log^k z")
    s.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    s.add_argument("--log-power", type=int, default=0)
    order_args(s)
    at_arg(s)
    s.set_defaults(fn=cmd_power)

    s = sub.add_parser("gl", parents=[common], help="Grünwald-Letnikov oracle")
    s.add_argument("expr")
    order_args(s)
    at_arg(s, required=True)
    s.add_argument("--h", type=float, default=1e-3)
    s.add_argument("--n", type=int, default=None)
    s.set_defaults(fn=cmd_gl)

    s = sub.add_parser("compare", parents=[common], help="series route vs GL vs closed form")
    s.add_argument("expr")
    order_args(s)
    at_arg(s, required=True)
    s.add_argument("--terms", type=int, default=ex.DEFAULT_ORDER)
    s.add_argument("--h", type=float, default=1e-3)
    s.add_argument("--n", type=int, default=None)
    s.set_defaults(fn=cmd_compare)

    s = sub.add_parser("closed-form", parents=[common], help="closed-form differintegral")
    s.add_argument("name", choices=("exp", "sin", "sqrt", "power", "exp_sq"))
    order_args(s)
    s.add_argument("--lambda", dest="lam", type=_complex_arg, default=None)
    at_arg(s)
    s.set_defaults(fn=cmd_closed_form)

    s = sub.add_parser("meijer-shift", parents=[common], help="differintegral of a G-function")
    g_args(s)
    order_args(s)
    s.add_argument("--general", action="store_true", help="Fox H form for any w, g, r")
    s.set_defaults(fn=cmd_meijer_shift)

    s = sub.add_parser("meijer-frint", parents=[common], help="fractional integral with a G kernel")
    g_args(s)
    order_args(s, beta=True)
    s.add_argument("--fox", action="store_true", help="Fox H form")
    at_arg(s)
    s.set_defaults(fn=cmd_meijer_frint)

    s = sub.add_parser("meijer-check", parents=[common], help="convergence of the kernel integral")
    g_args(s)
    order_args(s, beta=True)
    at_arg(s)
    s.set_defaults(fn=cmd_meijer_check)

    s = sub.add_parser("meijer-asym", parents=[common], help="asymptotic class at a point")
    g_args(s)
    s.add_argument("--point", choices=("zero", "unit", "infinity"), required=True)
    s.set_defaults(fn=cmd_meijer_asym)
    return p


def _text(obj, indent="") -> str:
    lines = []
    for k, v in obj.items():
        if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
            lines.append(f"{indent}{k}: {_cnum(complex(*v))}")
        elif isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines)


def _fail(code: int, exc: BaseException) -> int:
    diag = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("line", "column"):
        if getattr(exc, attr, None) is not None:
            diag[attr] = getattr(exc, attr)
    print(json.dumps(diag, ensure_ascii=False), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        out = args.fn(args)
    except (UsageError, *USAGE_ERRORS) as exc:
        return _fail(2, exc)
    except (FracdiffError, ArithmeticError, ValueError) as exc:
        return _fail(3, exc)
    if args.format == "text":
        print(_text(out))
    else:
        print(json.dumps(out, ensure_ascii=False, allow_nan=False, default=_json_default))
    return 0


def _json_default(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float) and not math.isfinite(x):
        return None
    raise TypeError(type(x).__name__)


if __name__ == "__main__":
    sys.exit(main())
