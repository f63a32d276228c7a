r"""Truncated generalized power-logarithmic series.

A series is a finite sum of terms :math:`c\, z^{b+n} \log^k z`.  The split of
the exponent into a base ``b`` and an integer offset ``n`` is kept on purpose:
operators shift ``b`` and leave ``n`` alone, so truncation bookkeeping survives
differintegration.

``truncation_order`` is the largest offset that is complete.  ``None`` marks a
finite expression that is exact as written (``log z``, ``z**0.5``, ...).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Mapping

from . import special as sp
from .errors import (
    BranchPointError,
    DomainError,
    ParamError,
    RecurrenceBreakdownError,
    UnknownFunctionError,
)

KEY_DIGITS = 12


def _rkey(x: complex) -> tuple[float, float]:
    return (round(x.real, KEY_DIGITS) + 0.0, round(x.imag, KEY_DIGITS) + 0.0)


@dataclass(frozen=True)
class PowerLogTerm:
    coeff: complex
    base_exp: complex = 0j
    offset: int = 0
    log_pow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", sp.as_complex(self.coeff))
        object.__setattr__(self, "base_exp", sp.as_complex(self.base_exp))
        if int(self.offset) != self.offset or self.offset < 0:
            raise ParamError(f"offset must be a non-negative integer, got {self.offset}")
        if int(self.log_pow) != self.log_pow or self.log_pow < 0:
            raise ParamError(f"log_pow must be a non-negative integer, got {self.log_pow}")
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "log_pow", int(self.log_pow))

    @property
    def exponent(self) -> complex:
        return self.base_exp + self.offset

    def key(self):
        return (_rkey(self.base_exp), self.offset, self.log_pow)

    def is_analytic_at_zero(self) -> bool:
        if self.log_pow:
            return False
        k = sp.nearest_int(self.exponent)
        return k is not None and k >= 0

    def eval(self, z: complex) -> complex:
        if z == 0:
            if not self.is_analytic_at_zero():
                raise BranchPointError(
                    f"term z^{self.exponent} log^{self.log_pow} z is singular at 0")
            return self.coeff if sp.nearest_int(self.exponent) == 0 else 0j
        val = self.coeff * sp.cpow(z, self.exponent)
        if self.log_pow:
            val *= cmath.log(z) ** self.log_pow
        return val

    def to_json(self) -> dict:
        return {
            "coeff": [self.coeff.real, self.coeff.imag],
            "base": [self.base_exp.real, self.base_exp.imag],
            "offset": self.offset,
            "logpow": self.log_pow,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "PowerLogTerm":
        return cls(sp.as_complex(obj["coeff"]), sp.as_complex(obj["base"]),
                   int(obj.get("offset", 0)), int(obj.get("logpow", 0)))


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _sort_key(t: PowerLogTerm):
    e = t.exponent
    return (round(e.real, KEY_DIGITS), t.log_pow, round(e.imag, KEY_DIGITS),
            t.offset)


@dataclass(frozen=True)
class PowerLogSeries:
    terms: tuple[PowerLogTerm, ...] = ()
    truncation_order: int | None = None
    source_tag: str = ""
    approximate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.truncation_order is not None:
            if int(self.truncation_order) != self.truncation_order or self.truncation_order < 0:
                raise ParamError("truncation_order must be a non-negative integer or None")
            for t in self.terms:
                if t.offset > self.truncation_order:
                    raise ParamError(
                        f"offset {t.offset} exceeds truncation order {self.truncation_order}")

    # construction helpers

    @classmethod
    def monomial(cls, coeff=1, exponent=0, log_pow: int = 0, tag: str = "") -> "PowerLogSeries":
        return cls((PowerLogTerm(coeff, exponent, 0, log_pow),), None, tag)

    @classmethod
    def from_terms(cls, terms: Iterable[PowerLogTerm], order: int | None = None,
                   tag: str = "", approximate: bool = False) -> "PowerLogSeries":
        terms = list(terms)
        if order is not None:
            terms = [t for t in terms if t.offset <= order]
        return normalize(cls(tuple(terms), order, tag, approximate))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def eval(self, z) -> complex:
        return eval_series(self, z)

    def __call__(self, z) -> complex:
        return eval_series(self, z)

    def coefficients(self) -> dict:
        return coefficient_map(self)

    def tail_estimate(self, z) -> float:
        return tail_estimate(self, z)

    def to_json(self) -> dict:
        return to_json(self)

    def __add__(self, other):
        if isinstance(other, PowerLogSeries):
            return add(self, other)
        return add(self, PowerLogSeries.monomial(other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerLogSeries) else -complex(other))

    def __mul__(self, other):
        if isinstance(other, PowerLogSeries):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__


def normalize(s: PowerLogSeries) -> PowerLogSeries:
    """Merge duplicate keys, drop exact zeros, sort by real exponent then log power."""
    merged: dict = {}
    order = []
    for t in s.terms:
        k = t.key()
        if k in merged:
            merged[k] = replace(merged[k], coeff=merged[k].coeff + t.coeff)
        else:
            merged[k] = t
            order.append(k)
    terms = [merged[k] for k in order if merged[k].coeff != 0]
    terms.sort(key=_sort_key)
    return PowerLogSeries(tuple(terms), s.truncation_order, s.source_tag, s.approximate)


def eval_series(s: PowerLogSeries, z) -> complex:
    z = sp.as_complex(z)
    if z == 0:
        for t in s.terms:
            if not t.is_analytic_at_zero():
                raise BranchPointError("series has a branch point or pole at z = 0")
    vals = [t.eval(z) for t in s.terms]
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def add(s1: PowerLogSeries, s2: PowerLogSeries) -> PowerLogSeries:
    order = _min_order(s1.truncation_order, s2.truncation_order)
    tag = s1.source_tag if s1.source_tag == s2.source_tag else f"({s1.source_tag})+({s2.source_tag})"
    return PowerLogSeries.from_terms(s1.terms + s2.terms, order, tag,
                                     s1.approximate or s2.approximate)


def scale(s: PowerLogSeries, c) -> PowerLogSeries:
    c = sp.as_complex(c)
    return normalize(PowerLogSeries(tuple(replace(t, coeff=t.coeff * c) for t in s.terms),
                                    s.truncation_order, s.source_tag, s.approximate))


def multiply(s1: PowerLogSeries, s2: PowerLogSeries) -> PowerLogSeries:
    """Cauchy product: offsets and log powers add, bases add."""
    order = _min_order(s1.truncation_order, s2.truncation_order)
    out = []
    for t1 in s1.terms:
        for t2 in s2.terms:
            n = t1.offset + t2.offset
            if order is not None and n > order:
                continue
            out.append(PowerLogTerm(t1.coeff * t2.coeff, t1.base_exp + t2.base_exp, n,
                                    t1.log_pow + t2.log_pow))
    tag = f"({s1.source_tag})*({s2.source_tag})"
    return PowerLogSeries.from_terms(out, order, tag, s1.approximate or s2.approximate)


def coefficient_map(s: PowerLogSeries) -> dict:
    """Coefficients keyed by (rounded total exponent, log power)."""
    out: dict = {}
    for t in s.terms:
        k = (_rkey(t.exponent), t.log_pow)
        out[k] = out.get(k, 0j) + t.coeff
    return {k: v for k, v in out.items() if v != 0}


def coeff_distance(s1: PowerLogSeries, s2: PowerLogSeries, relative: bool = False) -> float:
    """Largest coefficientwise difference over the union of monomials."""
    c1, c2 = coefficient_map(s1), coefficient_map(s2)
    worst = 0.0
    for k in set(c1) | set(c2):
        a, b = c1.get(k, 0j), c2.get(k, 0j)
        d = abs(a - b)
        if relative:
            d /= max(abs(a), abs(b), 1e-300)
        worst = max(worst, d)
    return worst


def tail_estimate(s: PowerLogSeries, z) -> float:
    """Rough bound on the omitted tail at ``z``.

    Uses the geometric ratio of the two highest populated offsets; 0 for an
    exact series and ``inf`` when that ratio is not below one.
    """
    if s.truncation_order is None or not s.terms:
        return 0.0
    z = sp.as_complex(z)
    if z == 0:
        return 0.0
    mags: dict[int, float] = {}
    lz = abs(cmath.log(z))
    for t in s.terms:
        mags[t.offset] = mags.get(t.offset, 0.0) + abs(t.coeff) * abs(
            sp.cpow(z, t.exponent)) * (lz ** t.log_pow)
    offs = sorted(k for k, v in mags.items() if v > 0)
    if len(offs) < 2:
        return mags[offs[0]] if offs else 0.0
    hi, lo = offs[-1], offs[-2]
    ratio = (mags[hi] / mags[lo]) ** (1.0 / (hi - lo))
    if ratio >= 1:
        return math.inf
    step = hi - lo
    return mags[hi] * ratio**step / (1 - ratio**step)


def to_json(s: PowerLogSeries) -> dict:
    return {
        "terms": [t.to_json() for t in s.terms],
        "order": s.truncation_order,
        "tag": s.source_tag,
        "approximate": s.approximate,
    }


def from_json(obj: Mapping) -> PowerLogSeries:
    try:
        terms = [PowerLogTerm.from_json(t) for t in obj["terms"]]
    except (KeyError, TypeError) as exc:
        raise ParamError(f"malformed series JSON: {exc}") from exc
    return PowerLogSeries.from_terms(terms, obj.get("order"), obj.get("tag", ""),
                                     bool(obj.get("approximate", False)))


# builders


def heun_coeffs(a, b, c, d, p, q, n_max: int) -> list[complex]:
    r"""Taylor coefficients of the local Heun solution normalised by ``c_0 = 1``.

    Three-term recurrence with :math:`P_j = (c+j)(d+j)`,
    :math:`Q_j = -j(a(j+p+q-1)+c+d+j-q)-b`, :math:`R_j = a j (j+p-1)`.
    """
    a, b, c, d, p, q = (sp.as_complex(x) for x in (a, b, c, d, p, q))
    if a == 0:
        raise ParamError("heun requires a != 0")
    out = [1 + 0j]
    prev2 = 0j
    for j in range(1, n_max + 1):
        R = a * j * (j + p - 1)
        if abs(R) <= sp.POLE_TOL:
            raise RecurrenceBreakdownError(f"R_{j} = 0 (p = {p})")
        Pm2 = (c + j - 2) * (d + j - 2)
        Qm1 = -(j - 1) * (a * (j + p + q - 2) + c + d + j - 1 - q) - b
        cj = -(prev2 * Pm2 + out[-1] * Qm1) / R
        prev2 = out[-1]
        out.append(cj)
    return out


def _taylor(coeffs: Iterable[tuple[int, complex]], order: int | None, tag: str,
            base=0, log_pow: int = 0) -> PowerLogSeries:
    return PowerLogSeries.from_terms(
        (PowerLogTerm(c, base, n, log_pow) for n, c in coeffs if c != 0), order, tag)


def _exp(order, **_):
    return _taylor(((n, 1 / math.factorial(n)) for n in range(order + 1)), order, "exp")


def _sin(order, **_):
    return _taylor(((n, (-1) ** (n // 2) / math.factorial(n)) for n in range(1, order + 1, 2)),
                   order, "sin")


def _cos(order, **_):
    return _taylor(((n, (-1) ** (n // 2) / math.factorial(n)) for n in range(0, order + 1, 2)),
                   order, "cos")


def _log(order, **_):
    return PowerLogSeries.monomial(1, 0, 1, "log")


def _power(order, lam=None, **_):
    if lam is None:
        raise ParamError("power requires parameter lam")
    return PowerLogSeries.monomial(1, lam, 0, f"power({lam})")


def _bessel_j(order, nu=None, **_):
    if nu is None:
        raise ParamError("bessel_j requires parameter nu")
    nu = sp.as_complex(nu)
    terms = []
    for m in range(order // 2 + 1):
        c = (-1) ** m * sp.rgamma(m + nu + 1) / math.factorial(m) * sp.cpow(0.5, 2 * m + nu)
        if c != 0:
            terms.append(PowerLogTerm(c, nu, 2 * m))
    return PowerLogSeries.from_terms(terms, order, f"bessel_j({nu})")


def _bessel_k0(order, **_):
    terms = []
    shift = math.log(2) - sp.EULER_GAMMA
    for m in range(order // 2 + 1):
        w = 0.25**m / math.factorial(m) ** 2
        terms.append(PowerLogTerm(-w, 0, 2 * m, 1))
        terms.append(PowerLogTerm(w * (shift + sp.harmonic(m).real), 0, 2 * m, 0))
    return PowerLogSeries.from_terms(terms, order, "bessel_k0")


def _mittag_leffler(order, alpha=None, beta=1, lam=1, **_):
    if alpha is None:
        raise ParamError("mittag_leffler requires parameter alpha")
    alpha, beta, lam = (sp.as_complex(x) for x in (alpha, beta, lam))
    if alpha.real <= 0:
        raise ParamError("mittag_leffler requires Re alpha > 0")
    terms = [PowerLogTerm(lam**k * sp.rgamma(alpha * k + beta), alpha * k, 0)
             for k in range(order + 1)]
    return PowerLogSeries.from_terms(
        [t for t in terms if t.coeff != 0], order, f"mittag_leffler({alpha},{beta},{lam})")


def _heun(order, a=None, b=None, c=None, d=None, p=None, q=None, **_):
    if None in (a, b, c, d, p, q):
        raise ParamError("heun requires parameters a, b, c, d, p, q")
    cs = heun_coeffs(a, b, c, d, p, q, order)
    return _taylor(enumerate(cs), order, "heun")


def _exp_sq(order, **_):
    return _taylor(((2 * n, 1 / math.factorial(n)) for n in range(order // 2 + 1)),
                   order, "exp_sq")


def _reciprocal(order, **_):
    return _taylor(((n, (-1) ** n) for n in range(order + 1)), order, "reciprocal_one_plus_z")


BUILDERS: dict[str, Callable[..., PowerLogSeries]] = {
    "exp": _exp,
    "sin": _sin,
    "cos": _cos,
    "log": _log,
    "power": _power,
    "bessel_j": _bessel_j,
    "bessel_k0": _bessel_k0,
    "mittag_leffler": _mittag_leffler,
    "heun": _heun,
    "exp_sq": _exp_sq,
    "reciprocal_one_plus_z": _reciprocal,
}

RADIUS = {"heun": None, "reciprocal_one_plus_z": 1.0}


def build(name: str, params: Mapping | None = None, truncation_order: int = 30) -> PowerLogSeries:
    """Series of a catalogue function about ``z = 0``.

    ``params`` by name: ``power`` takes ``lam``; ``bessel_j`` takes ``nu``;
    ``mittag_leffler`` takes ``alpha``, ``beta`` (1) and ``lam`` (1) and
    expands :math:`E_{\\alpha,\\beta}(\\lambda z^\\alpha)` with one term per
    power :math:`z^{\\alpha k}`, ``k <= truncation_order``; ``heun`` takes
    ``a, b, c, d, p, q``.
    """
    try:
        fn = BUILDERS[name]
    except KeyError:
        raise UnknownFunctionError(name) from None
    if int(truncation_order) != truncation_order or truncation_order < 0:
        raise ParamError("truncation_order must be a non-negative integer")
    params = dict(params or {})
    try:
        return fn(int(truncation_order), **params)
    except DomainError as exc:
        raise ParamError(str(exc)) from exc
