"""Expression language: tokenizer, recursive-descent parser, printer, series compiler.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | IMAG | COMPLEX | 'z' | 'i' | 'pi'
            | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Exponents and function parameters must fold to constants.  A literal
``a+bi`` is read as one complex number where that cannot change the value:
at the start, after ``(``, after ``,`` and after ``+``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Union

from scipy import special as _ss

from . import special as sp
from .errors import (
    ExprSyntaxError,
    UnknownIdentifierError,
    UnsupportedCompositionError,
)
from .series import PowerLogSeries, PowerLogTerm, build, multiply, scale

DEFAULT_ORDER = 30


# AST


@dataclass(frozen=True)
class Const:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", sp.as_complex(self.value))


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Add:
    items: tuple


@dataclass(frozen=True)
class Mul:
    items: tuple


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: complex

    def __post_init__(self):
        object.__setattr__(self, "exponent", sp.as_complex(self.exponent))


@dataclass(frozen=True)
class Call:
    name: str
    params: tuple
    arg: "Node"

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(sp.as_complex(x) for x in self.params))


Node = Union[Const, Var, Add, Mul, Neg, Pow, Call]

# name -> number of constant parameters before the argument
FUNCTIONS = {
    "exp": 0, "sin": 0, "cos": 0, "log": 0, "sqrt": 0,
    "bessel_j": 1, "bessel_k0": 0, "mittag_leffler": 2, "heun": 6,
}


# tokens

_COMPLEX = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i"
_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"(?P<ws>\s+)|(?P<complex>{_COMPLEX})(?![A-Za-z_0-9])|(?P<imag>{_NUMBER}i)(?![A-Za-z_0-9])"
    rf"|(?P<num>{_NUMBER})|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^(),])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            line, col = _line_col(text, pos)
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", line, col, text)
        kind = mt.lastgroup
        if kind == "complex":
            prev = out[-1].text if out else None
            if prev not in (None, "(", ",", "+"):
                # re-scan as a plain number so the operator keeps its precedence
                mt = re.compile(_NUMBER).match(text, pos)
                kind = "num"
        if kind != "ws":
            out.append(Token(kind, mt.group(0), pos))
        pos = mt.end()
    out.append(Token("end", "", len(text)))
    return out


def parse_complex(text: str) -> complex:
    """Read ``a``, ``bi``, ``a+bi`` (also with ``j``)."""
    s = text.strip().replace("i", "j")
    try:
        val = complex(s)
    except ValueError:
        raise ExprSyntaxError(f"not a complex number: {text!r}", 1, 1, text) from None
    return sp.as_complex(val)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        line, col = _line_col(self.text, tok.pos)
        raise ExprSyntaxError(msg, line, col, self.text)

    def expect(self, text: str):
        t = self.peek()
        if t.text != text or t.kind == "end":
            what = "end of input" if t.kind == "end" else repr(t.text)
            self.error(f"expected {text!r}, found {what}")
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        pos = [self.term()]
        neg = []
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            (pos if op == "+" else neg).append(self.term())
        if neg:
            pos.append(Neg(neg[0] if len(neg) == 1 else Add(tuple(neg))))
        return pos[0] if len(pos) == 1 else Add(tuple(pos))

    def term(self) -> Node:
        items = [self.unary()]
        while self.peek().text == "*":
            self.take()
            items.append(self.unary())
        return items[0] if len(items) == 1 else Mul(tuple(items))

    def unary(self) -> Node:
        if self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().text == "^":
            tok = self.take()
            e = self.unary()
            return Pow(base, self.constant(e, tok, "exponent"))
        return base

    def constant(self, node: Node, tok: Token, what: str) -> complex:
        try:
            return fold(node)
        except _NotConstant:
            self.error(f"{what} must be a constant", tok)

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Const(float(t.text))
        if t.kind == "imag":
            self.take()
            return Const(complex(0, float(t.text[:-1])))
        if t.kind == "complex":
            self.take()
            return Const(parse_complex(t.text))
        if t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            self.take()
            if t.text == "z":
                return Var()
            if t.text == "i":
                return Const(1j)
            if t.text == "pi":
                return Const(math.pi)
            if t.text == "pow":
                self.expect("(")
                base = self.expr()
                self.expect(",")
                etok = self.peek()
                e = self.expr()
                self.expect(")")
                return Pow(base, self.constant(e, etok, "exponent"))
            if t.text in FUNCTIONS:
                return self.call(t)
            line, col = _line_col(self.text, t.pos)
            raise UnknownIdentifierError(t.text, line, col)
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")

    def call(self, name_tok: Token) -> Node:
        self.expect("(")
        args = []
        toks = []
        while True:
            toks.append(self.peek())
            args.append(self.expr())
            if self.peek().text == ",":
                self.take()
                continue
            self.expect(")")
            break
        need = FUNCTIONS[name_tok.text] + 1
        if len(args) != need:
            self.error(f"{name_tok.text} takes {need} argument(s), got {len(args)}", name_tok)
        params = tuple(self.constant(a, tk, "parameter") for a, tk in zip(args[:-1], toks[:-1]))
        return Call(name_tok.text, params, args[-1])


def parse(text: str) -> Node:
    """Parse ``text`` into an AST; errors carry line and column."""
    return _Parser(text).parse()


# constant folding and direct evaluation


class _NotConstant(Exception):
    pass


def fold(node: Node) -> complex:
    """Value of a z-free expression."""
    if isinstance(node, Var):
        raise _NotConstant
    return evaluate(node, None)


def _ml(alpha, beta, x) -> complex:
    total = 0j
    term_scale = 1 + 0j
    for k in range(2000):
        t = term_scale * sp.rgamma(alpha * k + beta)
        total += t
        if k > 5 and abs(t) < 1e-17 * max(abs(total), 1e-300):
            return total
        term_scale *= x
    return total


def _heun_direct(params, x) -> complex:
    cs = sp_heun(params, 400)
    total = 0j
    xp = 1 + 0j
    for c in cs:
        total += c * xp
        xp *= x
    return total


def sp_heun(params, n):
    from .series import heun_coeffs
    return heun_coeffs(*params, n)


def evaluate(node: Node, z) -> complex:
    """Direct numeric evaluation on principal branches."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        if z is None:
            raise _NotConstant
        return sp.as_complex(z)
    if isinstance(node, Add):
        return sum((evaluate(x, z) for x in node.items), 0j)
    if isinstance(node, Mul):
        out = 1 + 0j
        for x in node.items:
            out *= evaluate(x, z)
        return out
    if isinstance(node, Neg):
        return -evaluate(node.arg, z)
    if isinstance(node, Pow):
        return sp.cpow(evaluate(node.base, z), node.exponent)
    if isinstance(node, Call):
        x = sp.as_complex(evaluate(node.arg, z))
        name = node.name
        if name == "exp":
            return cmath.exp(x)
        if name == "sin":
            return cmath.sin(x)
        if name == "cos":
            return cmath.cos(x)
        if name == "log":
            return sp.clog(x)
        if name == "sqrt":
            return cmath.sqrt(x)
        if name == "bessel_j":
            return complex(_ss.jv(node.params[0].real if node.params[0].imag == 0
                                  else node.params[0], x))
        if name == "bessel_k0":
            return complex(_ss.kv(0, x))
        if name == "mittag_leffler":
            return _ml(node.params[0], node.params[1], x)
        if name == "heun":
            return _heun_direct(node.params, x)
    raise TypeError(f"not an expression node: {node!r}")


# printer


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _const_text(c: complex) -> str:
    if c.imag == 0:
        return _num(c.real) if c.real >= 0 else f"(-{_num(-c.real)})"
    if c.real == 0:
        return f"{_num(c.imag)}i" if c.imag > 0 else f"(-{_num(-c.imag)}i)"
    sign = "+" if c.imag > 0 else "-"
    body = f"{_num(abs(c.real))}{sign}{_num(abs(c.imag))}i"
    return f"({body})" if c.real > 0 else f"(-{body})"


_PREC = {Add: 1, Mul: 2, Neg: 3, Pow: 4}


def _prec(node: Node) -> int:
    return _PREC.get(type(node), 5)


def to_text(node: Node) -> str:
    """Print so that :func:`parse` gives back the same tree."""
    if isinstance(node, Const):
        return _const_text(node.value)
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Add):
        parts = []
        for k, x in enumerate(node.items):
            if k == len(node.items) - 1 and isinstance(x, Neg) and k > 0:
                inner = x.arg
                if isinstance(inner, Add):
                    parts.append(" - " + " - ".join(_wrap(y, 2) for y in inner.items))
                else:
                    parts.append(" - " + _wrap(inner, 2))
            else:
                parts.append((" + " if k else "") + _wrap(x, 2))
        return "".join(parts)
    if isinstance(node, Mul):
        return "*".join(_wrap(x, 3) for x in node.items)
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, 4)
    if isinstance(node, Pow):
        e = node.exponent
        es = _const_text(e)
        if e.imag == 0 and e.real < 0:
            es = f"(-{_num(-e.real)})"
        return f"{_wrap(node.base, 5)}^{es}"
    if isinstance(node, Call):
        args = [_const_text(p) for p in node.params] + [to_text(node.arg)]
        return f"{node.name}({', '.join(args)})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node: Node, min_prec: int) -> str:
    s = to_text(node)
    if _prec(node) < min_prec:
        return f"({s})"
    if isinstance(node, Const) and min_prec >= 5 and not s.startswith("("):
        return f"({s})" if "i" in s or "." in s or "e" in s else s
    return s


# compiler


def _single_term(s: PowerLogSeries):
    if len(s.terms) == 1 and s.terms[0].log_pow == 0:
        return s.terms[0]
    return None


def _is_const(s: PowerLogSeries) -> complex | None:
    if not s.terms:
        return 0j
    t = _single_term(s)
    if t is not None and t.exponent == 0:
        return t.coeff
    return None


def _affine(s: PowerLogSeries):
    """(d, c) when ``s`` is exactly d + c z with c != 0."""
    d = c = 0j
    for t in s.terms:
        if t.log_pow:
            return None
        e = sp.nearest_int(t.exponent)
        if e == 0 and t.exponent == 0:
            d += t.coeff
        elif e == 1 and t.exponent == 1:
            c += t.coeff
        else:
            return None
    return (d, c) if c != 0 else None


def _substitute(s: PowerLogSeries, c: complex, m: int, order: int) -> PowerLogSeries:
    """``f(c z^m)`` from the series of ``f``."""
    powers = [sp.nearest_int(t.exponent) if t.log_pow == 0 else None for t in s.terms]
    if all(n is not None and n >= 0 and t.exponent == n for n, t in zip(powers, s.terms)):
        # entire, e.g. J_n for integer n: plain substitution
        terms = [PowerLogTerm(t.coeff * c**n, 0, m * n) for n, t in zip(powers, s.terms)]
        return PowerLogSeries.from_terms(terms, order, s.source_tag, s.approximate)
    if m != 1 or c.imag != 0 or c.real <= 0:
        raise UnsupportedCompositionError(
            "branch-point functions only accept c*z with real c > 0")
    lc = math.log(c.real)
    terms = []
    for t in s.terms:
        base = t.coeff * sp.cpow(c, t.exponent)
        for j in range(t.log_pow + 1):
            terms.append(PowerLogTerm(base * math.comb(t.log_pow, j) * lc ** (t.log_pow - j),
                                      t.base_exp, t.offset, j))
    return PowerLogSeries.from_terms(terms, order, s.source_tag, s.approximate)


def _binomial_series(lam: complex, d: complex, c: complex, order: int) -> PowerLogSeries:
    """(d + c z)^lam about 0 for real d > 0."""
    if d.imag != 0 or d.real <= 0:
        raise UnsupportedCompositionError("(d + c z)^lam needs real d > 0")
    u = c / d
    coef = sp.cpow(d, lam)
    terms = []
    for n in range(order + 1):
        terms.append(PowerLogTerm(coef, 0, n))
        coef *= (lam - n) / (n + 1) * u
    return PowerLogSeries.from_terms(terms, order, "")


def _power(s: PowerLogSeries, e: complex, order: int) -> PowerLogSeries:
    k = sp.nearest_int(e)
    if k is not None and k >= 0 and e == k:
        out = PowerLogSeries.monomial(1, 0)
        for _ in range(k):
            out = multiply(out, s)
        return out
    t = _single_term(s)
    if t is not None:
        if t.exponent == 0:
            return PowerLogSeries.monomial(sp.cpow(t.coeff, e), 0)
        if t.exponent == 1 and t.coeff.imag == 0 and t.coeff.real > 0:
            return PowerLogSeries.monomial(t.coeff.real ** e if e.imag == 0 else
                                           sp.cpow(t.coeff, e), e)
    aff = _affine(s)
    if aff is not None and aff[0] != 0:
        return _binomial_series(e, aff[0], aff[1], order)
    raise UnsupportedCompositionError(
        "non-integer powers are supported for c*z (c > 0) and d + c*z (d > 0) only")


def _call(node: Call, arg: PowerLogSeries, order: int) -> PowerLogSeries:
    name = node.name
    const = _is_const(arg)
    if const is not None and node.name != "mittag_leffler":
        return PowerLogSeries.monomial(evaluate(Call(name, node.params, Const(const)), None), 0)
    if name == "sqrt":
        return _power(arg, 0.5 + 0j, order)
    if name == "mittag_leffler":
        alpha, beta = node.params
        t = _single_term(arg)
        if t is None or abs(t.exponent - alpha) > 1e-14:
            raise UnsupportedCompositionError("mittag_leffler(alpha, beta, c*z^alpha) only")
        return build("mittag_leffler", {"alpha": alpha, "beta": beta, "lam": t.coeff}, order)
    params = {}
    if name == "bessel_j":
        params = {"nu": node.params[0]}
    elif name == "heun":
        params = dict(zip("abcdpq", node.params))
    t = _single_term(arg)
    if t is not None:
        mm = sp.nearest_int(t.exponent)
        if mm is not None and mm >= 1 and t.exponent == mm:
            base = build(name, params, order // mm)
            return _substitute(base, t.coeff, mm, order)
    aff = _affine(arg)
    if aff is not None:
        d, c = aff
        if name == "exp":
            return scale(_substitute(build("exp", None, order), c, 1, order), cmath.exp(d))
        if name in ("sin", "cos"):
            sn = _substitute(build("sin", None, order), c, 1, order)
            cs = _substitute(build("cos", None, order), c, 1, order)
            if name == "sin":
                return scale(cs, cmath.sin(d)) + scale(sn, cmath.cos(d))
            return scale(cs, cmath.cos(d)) + scale(sn, -cmath.sin(d))
        if name == "log" and d.imag == 0 and d.real > 0:
            u = c / d
            terms = [PowerLogTerm(math.log(d.real), 0, 0)]
            terms += [PowerLogTerm((-1) ** (n + 1) * u**n / n, 0, n) for n in range(1, order + 1)]
            return PowerLogSeries.from_terms(terms, order, "")
    raise UnsupportedCompositionError(f"{name} of this argument is outside the series closure")


def _compile(node: Node, order: int) -> PowerLogSeries:
    if isinstance(node, Const):
        return PowerLogSeries.monomial(node.value, 0)
    if isinstance(node, Var):
        return PowerLogSeries.monomial(1, 1)
    if isinstance(node, Add):
        out = _compile(node.items[0], order)
        for x in node.items[1:]:
            out = out + _compile(x, order)
        return out
    if isinstance(node, Mul):
        out = _compile(node.items[0], order)
        for x in node.items[1:]:
            out = multiply(out, _compile(x, order))
        return out
    if isinstance(node, Neg):
        return scale(_compile(node.arg, order), -1)
    if isinstance(node, Pow):
        return _power(_compile(node.base, order), node.exponent, order)
    if isinstance(node, Call):
        return _call(node, _compile(node.arg, order), order)
    raise TypeError(f"not an expression node: {node!r}")


def compile_expr(node: Node | str, truncation_order: int = DEFAULT_ORDER) -> PowerLogSeries:
    """Power-log series of an expression; the tag records the printed expression."""
    if isinstance(node, str):
        node = parse(node)
    s = _compile(node, int(truncation_order))
    return PowerLogSeries(s.terms, s.truncation_order, to_text(node), s.approximate)
