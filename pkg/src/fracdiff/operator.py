r"""Riemann-Liouville-Hadamard differintegral on power-log terms.

The operator is tied to the origin, and every divergent integral is replaced
by its Hadamard finite part.  On a single term the rule is

.. math::

    \frac{d^\alpha}{dz^\alpha} z^\lambda \log^k z
        = z^{\lambda-\alpha} \sum_j C_j \log^j z ,

and :func:`term_rule` returns the ``C_j``.  Integer orders are handled exactly
(repeated differentiation, or repeated finite-part antiderivatives).  For
non-integer orders ``k = 0`` and ``k = 1`` use closed forms; ``k >= 2`` falls
back to Laurent coefficients of :math:`\Gamma(\zeta+1)/\Gamma(\zeta+1-\alpha)`
about :math:`\zeta=\lambda`, computed by the trapezoid rule on a small circle,
and the result is flagged approximate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Mapping

from . import special as sp
from .errors import DomainError, ParamError, UnknownFunctionError
from .series import PowerLogSeries, PowerLogTerm, multiply, normalize

LAURENT_POINTS = 64


@dataclass(frozen=True)
class FracOrder:
    """Order of differintegration with its branch classification."""

    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", sp.as_complex(self.alpha))

    @property
    def integer(self) -> int | None:
        return sp.nearest_int(self.alpha)

    @property
    def kind(self) -> str:
        a = self.alpha
        k = self.integer
        if k == 0:
            return "zero"
        if k is not None:
            return "positive-integer" if k > 0 else "negative-integer"
        if a.real > 0:
            return "re-positive"
        if a.real < 0:
            return "re-negative"
        return "imaginary"

    @property
    def n(self) -> int:
        """``floor(Re alpha) + 1``: the number of classical derivatives applied."""
        return math.floor(self.alpha.real) + 1


def _order(alpha) -> FracOrder:
    return alpha if isinstance(alpha, FracOrder) else FracOrder(alpha)


# helpers on log polynomials: {log power: coefficient}


def _lpoly_add(acc: dict, j: int, c: complex):
    if c != 0:
        acc[j] = acc.get(j, 0j) + c


def _differentiate(mu: complex, poly: dict) -> dict:
    out: dict = {}
    for j, c in poly.items():
        _lpoly_add(out, j, c * mu)
        if j:
            _lpoly_add(out, j - 1, c * j)
    return out


def _antiderivative(mu: complex, poly: dict) -> dict:
    """Finite-part antiderivative from 0 of ``z^mu * poly(log z)``, divided by z^(mu+1)."""
    out: dict = {}
    k = sp.nearest_int(mu)
    if k == -1:
        for j, c in poly.items():
            _lpoly_add(out, j + 1, c / (j + 1))
        return out
    s = mu + 1
    for j, c in poly.items():
        # int t^mu log^j t = z^s sum_i (-1)^i j!/(j-i)! log^(j-i) z / s^(i+1)
        fall = 1
        for i in range(j + 1):
            _lpoly_add(out, j - i, c * (-1) ** i * fall / s ** (i + 1))
            fall *= j - i
    return out


def _psi_rgamma(x: complex) -> complex:
    """``digamma(x) / gamma(x)`` continued through the poles of gamma."""
    m = sp.nearest_int(x)
    if m is not None and m <= 0:
        return complex((-1) ** (-m + 1) * math.factorial(-m))
    return sp.digamma(x) * sp.rgamma(x)


def laurent_coefficients(lam, alpha, jmax: int, points: int = LAURENT_POINTS) -> dict:
    r"""Laurent coefficients ``c_j`` (``-1 <= j <= jmax``) of
    :math:`\Gamma(\zeta+1)/\Gamma(\zeta+1-\alpha)` about ``zeta = lam``."""
    lam = sp.as_complex(lam)
    alpha = sp.as_complex(alpha)
    # nearest pole of Gamma(zeta + 1) other than lam itself
    here = sp.nearest_int(lam)
    dist = math.inf
    start = min(-1, math.floor(lam.real) - 2)
    for p in range(start, min(-1, math.ceil(lam.real) + 2) + 1):
        if here is not None and p == here:
            continue
        dist = min(dist, abs(lam - p))
    rho = min(0.5, 0.5 * dist)
    total = {j: 0j for j in range(-1, jmax + 1)}
    for i in range(points):
        u = cmath.exp(2j * math.pi * (i + 0.5) / points)
        zeta = lam + rho * u
        g = sp.gamma(zeta + 1) * sp.rgamma(zeta + 1 - alpha)
        for j in total:
            total[j] += g * (rho * u) ** (-j)
    return {j: v / points for j, v in total.items()}


def _laurent_rule(lam, k: int, alpha) -> dict:
    c = laurent_coefficients(lam, alpha, k)
    out: dict = {}
    pole = sp.is_nonpositive_int(lam + 1)
    for j in range(-1 if pole else 0, k + 1):
        _lpoly_add(out, k - j, math.factorial(k) * c[j] / math.factorial(k - j))
    return out


def _power_rule_nonint(lam: complex, alpha: complex) -> dict:
    if sp.is_nonpositive_int(lam + 1):
        lam_i = sp.nearest_int(lam)
        x = 1 - alpha + lam_i
        pref = (-1) ** ((lam_i - 1) % 2) / math.factorial(-lam_i - 1)
        c1 = pref * sp.rgamma(x)
        c0 = pref * (sp.digamma(-lam_i) * sp.rgamma(x) - _psi_rgamma(x))
        out: dict = {}
        _lpoly_add(out, 1, c1)
        _lpoly_add(out, 0, c0)
        return out
    c = sp.gamma_ratio(lam + 1, lam + 1 - alpha)
    return {0: c} if c != 0 else {}


def _log_rule_nonint(lam: complex, alpha: complex) -> dict:
    out: dict = {}
    x = lam - alpha + 1
    lam_i = sp.nearest_int(lam)
    if lam_i is not None and lam_i < 0:
        big = (-1) ** ((lam_i + 1) % 2) / (2 * math.factorial(-lam_i - 1))
        rg = sp.rgamma(x)
        d0 = sp.digamma(-lam_i)
        psx_rg = _psi_rgamma(x)  # psi(x)/Gamma(x)
        # (psi(-lam) - psi(x))^2 / Gamma(x) needs psi(x)^2/Gamma(x); x is not a pole here
        psx = sp.digamma(x)
        _lpoly_add(out, 2, big * rg)
        _lpoly_add(out, 1, big * 2 * (d0 * rg - psx_rg))
        const = (math.pi**2 / 3 - sp.polygamma(1, x) - sp.polygamma(1, -lam_i)
                 + (d0 - psx) ** 2)
        _lpoly_add(out, 0, big * const * rg)
        return out
    g = sp.gamma(lam + 1)
    rg = sp.rgamma(x)
    _lpoly_add(out, 1, g * rg)
    _lpoly_add(out, 0, g * (sp.digamma(lam + 1) * rg - _psi_rgamma(x)))
    return out


def term_rule(lam, k: int, alpha, numeric_fallback: bool = True) -> tuple[dict, bool]:
    r"""Coefficients of :math:`d^\alpha (z^\lambda \log^k z) / z^{\lambda-\alpha}`.

    Returns ``({log power: coefficient}, approximate)``.
    """
    lam = sp.as_complex(lam)
    order = _order(alpha)
    alpha = order.alpha
    if int(k) != k or k < 0:
        raise ParamError("log power must be a non-negative integer")
    k = int(k)
    m = order.integer
    if m is not None:
        poly = {k: 1 + 0j}
        mu = lam
        if m > 0:
            for _ in range(m):
                poly = _differentiate(mu, poly)
                mu -= 1
        else:
            for _ in range(-m):
                poly = _antiderivative(mu, poly)
                mu += 1
        return {j: c for j, c in poly.items() if c != 0}, False
    if k == 0:
        return _power_rule_nonint(lam, alpha), False
    if k == 1:
        return _log_rule_nonint(lam, alpha), False
    if not numeric_fallback:
        raise NotImplementedError("log powers k >= 2 need the numeric fallback")
    return _laurent_rule(lam, k, alpha), True


def _rule_series(lam, k, alpha, numeric_fallback=True, tag="") -> PowerLogSeries:
    lam = sp.as_complex(lam)
    alpha = _order(alpha).alpha
    poly, approx = term_rule(lam, k, alpha, numeric_fallback)
    terms = [PowerLogTerm(c, lam - alpha, 0, j) for j, c in poly.items()]
    return PowerLogSeries.from_terms(terms, None, tag, approx)


def fracdiff_power(lam, alpha) -> PowerLogSeries:
    r"""Differintegral of :math:`z^\lambda` (one or two terms)."""
    return _rule_series(lam, 0, alpha, tag=f"d^{_fmt(alpha)} z^{_fmt(lam)}")


def fracdiff_power_log(lam, k: int, alpha, numeric_fallback: bool = True) -> PowerLogSeries:
    r"""Differintegral of :math:`z^\lambda \log^k z`."""
    return _rule_series(lam, k, alpha, numeric_fallback,
                        tag=f"d^{_fmt(alpha)} z^{_fmt(lam)} log^{k} z")


def fracdiff_series(s: PowerLogSeries, alpha, numeric_fallback: bool = True) -> PowerLogSeries:
    """Termwise differintegral; keeps offsets and the truncation order."""
    alpha = _order(alpha).alpha
    out = []
    approx = s.approximate
    for t in s.terms:
        poly, a = term_rule(t.exponent, t.log_pow, alpha, numeric_fallback)
        approx = approx or a
        base = t.base_exp - alpha
        for j, c in poly.items():
            out.append(PowerLogTerm(t.coeff * c, base, t.offset, j))
    return PowerLogSeries.from_terms(out, s.truncation_order,
                                     f"d^{_fmt(alpha)}[{s.source_tag}]", approx)


def binomial(alpha, k: int) -> complex:
    """Generalized binomial coefficient by the product recurrence."""
    alpha = sp.as_complex(alpha)
    c = 1 + 0j
    for j in range(1, k + 1):
        c *= (alpha - j + 1) / j
    return c


def fracdiff_product(f: PowerLogSeries, g: PowerLogSeries, alpha, k_max: int = 40,
                     numeric_fallback: bool = True) -> PowerLogSeries:
    r"""Generalized Leibniz rule :math:`\sum_k \binom{\alpha}{k} f^{(\alpha-k)} g^{(k)}`.

    A non-negative integer order gives the finite sum; otherwise the sum is cut
    at ``k_max``.
    """
    alpha = _order(alpha).alpha
    m = sp.nearest_int(alpha)
    top = m if m is not None and m >= 0 else int(k_max)
    acc = None
    gk = g
    for k in range(top + 1):
        if k:
            gk = fracdiff_series(gk, 1)
        if not gk.terms:
            break
        part = multiply(fracdiff_series(f, alpha - k, numeric_fallback), gk)
        part = PowerLogSeries(tuple(PowerLogTerm(t.coeff * binomial(alpha, k), t.base_exp,
                                                 t.offset, t.log_pow) for t in part.terms),
                              part.truncation_order, part.source_tag, part.approximate)
        acc = part if acc is None else acc + part
    if acc is None:
        acc = PowerLogSeries((), f.truncation_order, "", False)
    return PowerLogSeries(normalize(acc).terms, acc.truncation_order,
                          f"d^{_fmt(alpha)}[({f.source_tag})*({g.source_tag})]", acc.approximate)


# literal textbook branches, kept for cross-checks


def power_rule_branch1(lam, alpha) -> complex:
    r""":math:`(-1)^\alpha (-\lambda)_\alpha` for integer ``alpha`` and ``lam``."""
    a = sp.nearest_int(alpha)
    lam_i = sp.nearest_int(lam)
    if a is None or lam_i is None:
        raise DomainError("branch needs integer lam and alpha")
    return (-1) ** (a % 2) * sp.pochhammer(-lam_i, a)


def power_rule_branch2(lam, alpha) -> dict:
    """Log-producing rule for a negative integer ``lam``, any order."""
    lam_i = sp.nearest_int(lam)
    if lam_i is None or lam_i >= 0:
        raise DomainError("branch needs a negative integer lam")
    alpha = sp.as_complex(alpha)
    x = 1 - alpha + lam_i
    pref = (-1) ** ((lam_i - 1) % 2) / math.factorial(-lam_i - 1)
    out: dict = {}
    _lpoly_add(out, 1, pref * sp.rgamma(x))
    _lpoly_add(out, 0, pref * (sp.digamma(-lam_i) * sp.rgamma(x) - _psi_rgamma(x)))
    return out


def log_rule_branch1(lam, alpha) -> dict:
    r""":math:`(-1)^\alpha(-\lambda)_\alpha(\psi(-\lambda)-\psi(\alpha-\lambda)+\log z)`."""
    a = sp.nearest_int(alpha)
    lam_i = sp.nearest_int(lam)
    if a is None or lam_i is None or lam_i >= 0:
        raise DomainError("branch needs integer alpha and a negative integer lam")
    c = (-1) ** (a % 2) * sp.pochhammer(-lam_i, a)
    out: dict = {}
    _lpoly_add(out, 1, c)
    _lpoly_add(out, 0, c * (sp.digamma(-lam_i) - sp.digamma(a - lam_i)))
    return out


# closed forms


@dataclass(frozen=True)
class ClosedForm:
    """A differintegral in closed form, evaluable at any ``z``."""

    name: str
    alpha: complex
    formula: str
    _fn: Callable[[complex], complex]

    def __call__(self, z) -> complex:
        return self._fn(sp.as_complex(z))

    def eval(self, z) -> complex:
        return self(z)


def _fmt(x) -> str:
    x = sp.as_complex(x.alpha if isinstance(x, FracOrder) else x)
    if x.imag == 0:
        r = x.real
        return str(int(r)) if r == int(r) else repr(r)
    return f"({x.real!r}{x.imag:+}i)"


def fracdiff_closed_form(name: str, alpha, params: Mapping | None = None) -> ClosedForm:
    """Closed-form differintegral of ``exp``, ``sin``, ``sqrt``, ``power`` or ``exp_sq``."""
    alpha = _order(alpha).alpha
    m = sp.nearest_int(alpha)
    params = dict(params or {})
    a = _fmt(alpha)
    if name == "exp":
        if m is not None and m >= 0:
            return ClosedForm(name, alpha, "e^z", cmath.exp)
        return ClosedForm(name, alpha, f"e^z*(1-Q({_fmt(-alpha)},z))",
                          lambda z: cmath.exp(z) * (1 - sp.regularized_q(-alpha, z)))
    if name == "sin":
        if m is not None and m >= 0:
            return ClosedForm(name, alpha, f"sin(z+pi*{a}/2)",
                              lambda z: cmath.sin(z + math.pi * m / 2))

        def sin_fn(z):
            f = sp.pfq_regularized([1], [1 - alpha / 2, (3 - alpha) / 2], -z * z / 4).value
            return sp.cpow(2, alpha - 1) * math.sqrt(math.pi) * sp.cpow(z, 1 - alpha) * f

        return ClosedForm(name, alpha,
                          f"2^({a}-1)*sqrt(pi)*z^(1-{a})*1F2~(1;1-{a}/2,(3-{a})/2;-z^2/4)",
                          sin_fn)
    if name == "sqrt":
        c = math.sqrt(math.pi) / 2 * sp.rgamma(1.5 - alpha)
        return ClosedForm(name, alpha, f"sqrt(pi)*z^(1/2-{a})/(2*Gamma(3/2-{a}))",
                          lambda z: c * sp.cpow(z, 0.5 - alpha))
    if name == "power":
        lam = params.get("lam", params.get("b"))
        if lam is None:
            raise ParamError("power closed form requires lam")
        s = fracdiff_power(lam, alpha)
        return ClosedForm(name, alpha, format_power_result(s), s.eval)
    if name == "exp_sq":
        def exp_sq_fn(z):
            f = sp.pfq_regularized([0.5, 1], [(1 - alpha) / 2, 1 - alpha / 2], z * z).value
            return math.sqrt(math.pi) * sp.cpow(2, alpha) * sp.cpow(z, -alpha) * f

        return ClosedForm(name, alpha,
                          f"sqrt(pi)*2^{a}*z^(-{a})*2F2~(1/2,1;(1-{a})/2,1-{a}/2;z^2)",
                          exp_sq_fn)
    raise UnknownFunctionError(name)


def format_power_result(s: PowerLogSeries) -> str:
    """Human-readable form of a one- or two-term power result."""
    parts = []
    for t in s.terms:
        parts.append(_format_term(t))
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _format_term(t: PowerLogTerm) -> str:
    parts = []
    if t.exponent != 0:
        parts.append(f"z^{{{_fmt(t.exponent)}}}")
    if t.log_pow == 1:
        parts.append("log(z)")
    elif t.log_pow > 1:
        parts.append(f"log(z)^{t.log_pow}")
    c = t.coeff
    if not parts:
        return _fmt(c)
    if c == 1:
        return "*".join(parts)
    if c == -1:
        return "-" + "*".join(parts)
    return "*".join([_fmt(c)] + parts)


# differential constants

_KINDS = ("sqrt_sq_over_z", "log_sq_minus_2log")


def _sector_sign(z: complex) -> int:
    """+1 when -pi/2 < arg z <= pi/2, else -1."""
    th = cmath.phase(sp.as_complex(z))
    return 1 if -math.pi / 2 < th <= math.pi / 2 else -1


def _log_constant(z: complex) -> complex:
    th = cmath.phase(sp.as_complex(z))
    if -math.pi / 2 < th <= math.pi / 2:
        return 0j
    if -math.pi < th <= -math.pi / 2:
        return 2j * math.pi
    return -2j * math.pi


@dataclass(frozen=True)
class DiffConstExpr:
    r"""Piecewise constant expression: :math:`\sqrt{z^2}/z` or :math:`\log z^2 - 2\log z`."""

    kind: str
    factor: complex = 1 + 0j

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParamError(f"unknown differential constant {self.kind!r}")
        object.__setattr__(self, "factor", sp.as_complex(self.factor))

    def __call__(self, z) -> complex:
        """Piecewise value on the argument sectors."""
        z = sp.as_complex(z)
        if z == 0:
            raise DomainError("differential constant undefined at 0")
        if self.kind == "sqrt_sq_over_z":
            return self.factor * _sector_sign(z)
        return self.factor * _log_constant(z)

    def direct(self, z) -> complex:
        """Value from the defining expression with principal branches."""
        z = sp.as_complex(z)
        zz = sp.as_complex(z * z)
        if self.kind == "sqrt_sq_over_z":
            return self.factor * cmath.sqrt(zz) / z
        return self.factor * (sp.clog(zz) - 2 * sp.clog(z))


@dataclass(frozen=True)
class DiffConstDerivative:
    """Differintegral of a :class:`DiffConstExpr`."""

    source: DiffConstExpr
    alpha: complex
    formula: str

    def __call__(self, z) -> complex:
        """Piecewise evaluation: the sector constant times the power part."""
        z = sp.as_complex(z)
        rg = sp.rgamma(1 - self.alpha)
        return self.source(z) * sp.cpow(z, -self.alpha) * rg

    def direct(self, z) -> complex:
        """Principal-branch evaluation of the formula."""
        z = sp.as_complex(z)
        rg = sp.rgamma(1 - self.alpha)
        f = self.source.factor
        if self.source.kind == "sqrt_sq_over_z":
            return f * cmath.sqrt(sp.as_complex(z * z)) * sp.cpow(z, -self.alpha - 1) * rg
        s = sp.clog(sp.as_complex(-1j * z)) + sp.clog(sp.as_complex(1j * z)) - 2 * sp.clog(z)
        return f * sp.cpow(z, -self.alpha) * s * rg


def diffconst_fracdiff(d: DiffConstExpr, alpha) -> DiffConstDerivative:
    """Differintegral of a differential constant.

    The constant multiplies ``z^0``, so the result is that constant times
    ``z^(-alpha)/Gamma(1-alpha)`` on each sector.
    """
    alpha = _order(alpha).alpha
    a = _fmt(alpha)
    if d.kind == "sqrt_sq_over_z":
        formula = f"sqrt(z^2)*z^(-{a}-1)/Gamma(1-{a})"
    else:
        formula = f"z^(-{a})*(log(-i*z)+log(i*z)-2*log(z))/Gamma(1-{a})"
    return DiffConstDerivative(d, alpha, formula)
