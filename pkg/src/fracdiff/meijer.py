r"""Parameter algebra for generalized Meijer G-functions.

:class:`GParams` describes

.. math::

    G^{m,n}_{p,q}\left(w z^g, r \,\middle|\, a; b\right)
      = \frac{1}{2\pi i}\int_L
        \frac{\prod_{j\le m}\Gamma(b_j+s)\prod_{j\le n}\Gamma(1-a_j-s)}
             {\prod_{j>n}\Gamma(a_j+s)\prod_{j>m}\Gamma(1-b_j-s)}
        (w z^g)^{-s/r}\, ds ,

which is the classical G-function of :math:`x^{1/r}`, ``x = w z^g``.  Numeric
values only come from the Slater sum (:func:`slater_expand`); everything else
works on parameter lists.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import special as sp
from .errors import (
    DegenerateError,
    DivergenceError,
    ParamError,
    PreconditionError,
    UnknownFormError,
    UnsupportedError,
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ParamError(f"expected [num, den], got {x!r}")
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x)).limit_denominator(10**6)


def _ints(z: complex) -> bool:
    return sp.nearest_int(z) is not None


@dataclass(frozen=True)
class GParams:
    m: int
    n: int
    p: int
    q: int
    a: tuple[complex, ...] = ()
    b: tuple[complex, ...] = ()
    w: complex = 1 + 0j
    g: Fraction = Fraction(1)
    r: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(sp.as_complex(x) for x in self.a))
        object.__setattr__(self, "b", tuple(sp.as_complex(x) for x in self.b))
        object.__setattr__(self, "w", sp.as_complex(self.w))
        object.__setattr__(self, "g", _frac(self.g))
        object.__setattr__(self, "r", _frac(self.r))
        for name in ("m", "n", "p", "q"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ParamError(f"{name} must be a non-negative integer")
        if len(self.a) != self.p or len(self.b) != self.q:
            raise ParamError("list lengths must match p and q")
        if self.m > self.q or self.n > self.p:
            raise ParamError("need m <= q and n <= p")
        if self.r == 0:
            raise ParamError("r must be nonzero")

    @property
    def valid(self) -> bool:
        """No pole of ``Gamma(b_j + s)`` (j <= m) meets one of ``Gamma(1 - a_k - s)`` (k <= n)."""
        for ak in self.a[: self.n]:
            for bj in self.b[: self.m]:
                k = sp.nearest_int(ak - bj)
                if k is not None and k >= 1:
                    return False
        return True

    @property
    def classical(self) -> bool:
        return self.r == 1

    def to_json(self) -> dict:
        return {
            "m": self.m, "n": self.n, "p": self.p, "q": self.q,
            "a": [[x.real, x.imag] for x in self.a],
            "b": [[x.real, x.imag] for x in self.b],
            "w": [self.w.real, self.w.imag],
            "g": [self.g.numerator, self.g.denominator],
            "r": [self.r.numerator, self.r.denominator],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GParams":
        try:
            return cls(int(obj["m"]), int(obj["n"]), int(obj["p"]), int(obj["q"]),
                       tuple(sp.as_complex(x) for x in obj.get("a", [])),
                       tuple(sp.as_complex(x) for x in obj.get("b", [])),
                       sp.as_complex(obj.get("w", [1, 0])),
                       _frac(obj.get("g", [1, 1])), _frac(obj.get("r", [1, 1])))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParamError):
                raise
            raise ParamError(f"malformed G parameters: {exc}") from exc

    def shifted(self, c) -> "GParams":
        """All ``a`` and ``b`` moved by ``c``."""
        c = sp.as_complex(c)
        return GParams(self.m, self.n, self.p, self.q, tuple(x + c for x in self.a),
                       tuple(x + c for x in self.b), self.w, self.g, self.r)


@dataclass(frozen=True)
class GForm:
    """A function written as ``prefactor * G(w z^g, r | a; b)``."""

    name: str
    params: GParams
    prefactor: complex = 1 + 0j

    def __call__(self, z) -> complex:
        return self.prefactor * slater_expand(self.params, z).value


def builtin_gform(name: str, nu=0) -> GForm:
    """Table forms: ``exp``, ``bessel_j_sq``, ``bessel_j_half``, ``bessel_k``, ``reciprocal_one_plus_z``."""
    nu = sp.as_complex(nu)
    if name == "exp":
        return GForm(name, GParams(1, 0, 0, 1, (), (0,), -1, 1, 1))
    if name == "bessel_j_sq":
        return GForm(name, GParams(1, 0, 0, 2, (), (nu / 2, -nu / 2), 0.25, 2, 1))
    if name == "bessel_j_half":
        return GForm(name, GParams(1, 0, 0, 2, (), (nu / 2, -nu / 2), 0.5, 1, Fraction(1, 2)))
    if name == "bessel_k":
        return GForm(name, GParams(2, 0, 0, 2, (), (nu / 2, -nu / 2), 0.5, 1, Fraction(1, 2)), 0.5)
    if name == "reciprocal_one_plus_z":
        return GForm(name, GParams(1, 1, 1, 1, (0,), (0,), 1, 1, 1))
    raise UnknownFormError(name)


# fractional derivative shifts


def fracdiff_shift(gp: GParams, alpha) -> GParams:
    r"""Differintegral of :math:`G^{m,n}_{p,q}(z|a;b)` as a G-function of ``z``.

    Upper list :math:`\{-\alpha, a-\alpha\}` (``n+1``, ``p+1``), lower list
    :math:`\{b_{\le m}-\alpha, 0, b_{>m}-\alpha\}` (``q+1``); ``m`` unchanged.
    """
    if gp.r != 1 or gp.g != 1 or gp.w != 1:
        raise PreconditionError("fracdiff_shift needs a classical G with argument exactly z")
    alpha = sp.as_complex(alpha)
    a = (-alpha,) + tuple(x - alpha for x in gp.a)
    bs = [x - alpha for x in gp.b]
    b = tuple(bs[: gp.m]) + (0j,) + tuple(bs[gp.m:])
    return GParams(gp.m, gp.n + 1, gp.p + 1, gp.q + 1, a, b, 1, 1, 1)


def unshift(gp: GParams) -> GParams:
    """Drop the pair inserted by :func:`fracdiff_shift` (for alpha = 0)."""
    a = gp.a[1:]
    b = gp.b[: gp.m] + gp.b[gp.m + 1:]
    return GParams(gp.m, gp.n - 1, gp.p - 1, gp.q - 1, a, b, gp.w, gp.g, gp.r)


@dataclass(frozen=True)
class Prefactor:
    r"""``const * z^z_power * (inner_w z^inner_g)^inner_power`` on principal branches."""

    const: complex = 1 + 0j
    z_power: complex = 0j
    inner_w: complex = 1 + 0j
    inner_g: Fraction = Fraction(1)
    inner_power: complex = 0j

    def __call__(self, z) -> complex:
        z = sp.as_complex(z)
        val = self.const * sp.cpow(z, self.z_power)
        if self.inner_power != 0:
            x = self.inner_w * sp.cpow(z, float(self.inner_g))
            val *= sp.cpow(x, self.inner_power)
        return val

    def to_json(self) -> dict:
        return {
            "const": [self.const.real, self.const.imag],
            "z_power": [self.z_power.real, self.z_power.imag],
            "inner_w": [self.inner_w.real, self.inner_w.imag],
            "inner_g": [self.inner_g.numerator, self.inner_g.denominator],
            "inner_power": [self.inner_power.real, self.inner_power.imag],
        }


@dataclass(frozen=True)
class FoxHParams:
    """Fox H-function ``H^{m,n}_{p,q}(w z^g | (a, A); (b, B))`` at the parameter level."""

    m: int
    n: int
    p: int
    q: int
    upper: tuple[tuple[complex, Fraction], ...]
    lower: tuple[tuple[complex, Fraction], ...]
    w: complex
    g: Fraction
    prefactor: Prefactor = field(default_factory=Prefactor)

    def to_json(self) -> dict:
        def pairs(xs):
            return [[[c.real, c.imag], [f.numerator, f.denominator]] for c, f in xs]

        return {
            "m": self.m, "n": self.n, "p": self.p, "q": self.q,
            "upper": pairs(self.upper), "lower": pairs(self.lower),
            "w": [self.w.real, self.w.imag],
            "g": [self.g.numerator, self.g.denominator],
            "prefactor": self.prefactor.to_json(),
        }


def fracdiff_shift_general(gp: GParams, alpha) -> FoxHParams:
    r"""Differintegral of :math:`G(w z^g, r|a;b)` as a Fox H-function of ``w z^g``.

    Upper pairs :math:`(-\alpha, g), (a_i - \tfrac{r}{g}\alpha, r)`, lower pairs
    :math:`(b_j - \tfrac{r}{g}\alpha, r)` with :math:`(0, g)` inserted after the
    first ``m``; prefactor :math:`r z^{-\alpha} (w z^g)^{\alpha/g}`.
    """
    alpha = sp.as_complex(alpha)
    g, r = gp.g, gp.r
    if g == 0:
        raise PreconditionError("argument exponent g must be nonzero")
    sh = float(r / g) * alpha
    upper = ((-alpha, g),) + tuple((x - sh, r) for x in gp.a)
    low = [(x - sh, r) for x in gp.b]
    lower = tuple(low[: gp.m]) + ((0j, g),) + tuple(low[gp.m:])
    pre = Prefactor(complex(float(r)), -alpha, gp.w, g, alpha / float(g))
    return FoxHParams(gp.m, gp.n + 1, gp.p + 1, gp.q + 1, upper, lower, gp.w, g, pre)


# Slater expansion


@dataclass(frozen=True)
class SlaterTerm:
    k: int
    coeff: complex
    exponent: complex
    upper: tuple[complex, ...]
    lower: tuple[complex, ...]
    sign: int


@dataclass(frozen=True)
class SlaterResult:
    value: complex
    terms: tuple[SlaterTerm, ...]
    tol: float


def slater_terms(gp: GParams) -> tuple[SlaterTerm, ...]:
    """Descriptors of the hypergeometric terms, one per ``b_k`` with ``k <= m``."""
    m, n, p, q = gp.m, gp.n, gp.p, gp.q
    if p > q:
        raise PreconditionError("Slater sum in this form needs p <= q")
    if not gp.valid:
        raise PreconditionError("a_k - b_j is a positive integer for k <= n, j <= m")
    bm = gp.b[:m]
    for i in range(m):
        for j in range(i + 1, m):
            if _ints(bm[i] - bm[j]):
                raise DegenerateError(
                    f"b_{i + 1} - b_{j + 1} = {bm[i] - bm[j]} is an integer: logarithmic case")
    sign = -1 if (p - m - n) % 2 else 1
    out = []
    for k in range(m):
        bk = gp.b[k]
        # coefficient in front of the regularized pFq; gamma factors of the
        # lower parameters with j <= m are put back explicitly
        c = 1 + 0j
        for j in range(m):
            if j != k:
                c *= sp.gamma(gp.b[j] - bk) * sp.gamma(1 + bk - gp.b[j])
        for j in range(n):
            c *= sp.gamma(1 + bk - gp.a[j])
        for j in range(n, p):
            c *= sp.rgamma(gp.a[j] - bk)
        upper = tuple(1 + bk - x for x in gp.a)
        lower = tuple(1 + bk - gp.b[j] for j in range(q) if j != k)
        out.append(SlaterTerm(k + 1, c, bk, upper, lower, sign))
    return tuple(out)


def slater_expand(gp: GParams, z, tol: float | None = None) -> SlaterResult:
    r"""Value of the G-function at ``z`` as a finite sum of :math:`{}_pF_{q-1}`.

    Powers of the argument ``x = w z^g`` are formed as
    :math:`\exp(c \log x / r)` on the principal branch.
    """
    z = sp.as_complex(z)
    terms = slater_terms(gp)
    x = gp.w * sp.cpow(z, float(gp.g))
    if x == 0:
        raise DivergenceError("G argument is zero")
    lx = cmath.log(sp.as_complex(x)) / float(gp.r)
    X = cmath.exp(lx)
    total = 0j
    worst = 0.0
    for t in terms:
        res = sp.pfq_regularized(t.upper, t.lower, t.sign * X, tol)
        total += t.coeff * cmath.exp(t.exponent * lx) * res.value
        worst = max(worst, res.tol)
    return SlaterResult(total, terms, worst)


# Gauss multiplication


@dataclass(frozen=True)
class GaussFactors:
    r""":math:`\Gamma(b \pm r\zeta) = (2\pi)^{(1-r)/2} r^{b \pm r\zeta - 1/2} \prod_j \Gamma(\tfrac{b+j}{r} \pm \zeta)`."""

    b: complex
    r: int
    const: float
    params: tuple[complex, ...]
    sign: int = 1

    def lhs(self, zeta) -> complex:
        return sp.gamma(self.b + self.sign * self.r * sp.as_complex(zeta))

    def rhs(self, zeta) -> complex:
        zeta = sp.as_complex(zeta)
        val = self.const * sp.cpow(self.r, self.b + self.sign * self.r * zeta - 0.5)
        for c in self.params:
            val *= sp.gamma(c + self.sign * zeta)
        return val


def gauss_expand(b, r: int, mirror: bool = False) -> GaussFactors:
    if int(r) != r or r < 1:
        raise PreconditionError("r must be a positive integer")
    r = int(r)
    b = sp.as_complex(b)
    params = tuple((b + j) / r for j in range(r))
    return GaussFactors(b, r, (2 * math.pi) ** ((1 - r) / 2), params, -1 if mirror else 1)


# fractional integral of G


@dataclass(frozen=True)
class FrIntParams:
    prefactor: Prefactor
    delta1: tuple[complex, ...]
    delta2: tuple[complex, ...]
    delta3: tuple[complex, ...]
    delta4: tuple[complex, ...]
    params: GParams

    def __call__(self, z) -> complex:
        return self.prefactor(z) * slater_expand(self.params, z).value

    def to_json(self) -> dict:
        def cl(xs):
            return [[x.real, x.imag] for x in xs]

        return {
            "prefactor": self.prefactor.to_json(),
            "delta1": cl(self.delta1), "delta2": cl(self.delta2),
            "delta3": cl(self.delta3), "delta4": cl(self.delta4),
            "params": self.params.to_json(),
        }


def _int_pair(gp: GParams) -> tuple[int, int]:
    if gp.g.denominator != 1 or gp.r.denominator != 1 or gp.g <= 0 or gp.r <= 0:
        raise PreconditionError("g and r must be positive integers")
    g, r = int(gp.g), int(gp.r)
    if math.gcd(g, r) != 1:
        raise PreconditionError("g and r must be coprime")
    return g, r


def frint_params(gp: GParams, alpha, beta) -> FrIntParams:
    r"""Parameters of :math:`\frac{1}{\Gamma(\beta)}\int_0^z (z-\tau)^{\beta-1}\tau^{\alpha-1} G(w\tau^g, r|a;b)\,d\tau`
    as a classical G-function of :math:`w z^g / r^{r(q-p)}`.
    """
    g, r = _int_pair(gp)
    alpha = sp.as_complex(alpha)
    beta = sp.as_complex(beta)
    m, n, p, q = gp.m, gp.n, gp.p, gp.q

    def spread(xs):
        return tuple((x + i) / r for x in xs for i in range(r))

    d1 = tuple((1 - alpha + j) / g for j in range(g)) + spread(gp.a[:n])
    d2 = spread(gp.a[n:])
    d3 = spread(gp.b[:m])
    d4 = spread(gp.b[m:]) + tuple((1 - alpha - beta + j) / g for j in range(g))
    expo = sum(gp.b, 0j) - sum(gp.a, 0j) + (p - q) / 2 + 1
    const = sp.cpow(r, expo) / ((2 * math.pi) ** ((r - 1) * (m + n - (p + q) / 2))
                                * sp.cpow(g, beta))
    w_new = gp.w / float(r) ** (r * (q - p))
    new = GParams(r * m, r * n + g, r * p + g, r * q + g, d1 + d2, d3 + d4, w_new, g, 1)
    return FrIntParams(Prefactor(const, alpha + beta - 1), d1, d2, d3, d4, new)


def frint_fox(gp: GParams, alpha, beta) -> FoxHParams:
    r"""Same integral as a Fox H-function of :math:`w^{1/r} z^{g/r}`.

    Upper pairs :math:`(1-\alpha, g/r), (a_k, 1)`, lower pairs
    :math:`(b_k, 1), (1-\alpha-\beta, g/r)`; orders ``(m, n+1, p+1, q+1)``.
    """
    alpha = sp.as_complex(alpha)
    beta = sp.as_complex(beta)
    gr = gp.g / gp.r
    one = Fraction(1)
    upper = ((1 - alpha, gr),) + tuple((x, one) for x in gp.a)
    lower = tuple((x, one) for x in gp.b) + ((1 - alpha - beta, gr),)
    w = cmath.exp(cmath.log(gp.w) / float(gp.r))
    return FoxHParams(gp.m, gp.n + 1, gp.p + 1, gp.q + 1, upper, lower, w, gr,
                      Prefactor(1, alpha + beta - 1))


# asymptotics


def chi(gp: GParams) -> complex | None:
    if gp.p == gp.q:
        return None
    return (sum(gp.b, 0j) - sum(gp.a, 0j) + (gp.p - gp.q + 1) / 2) / (gp.q - gp.p)


def psi_p(gp: GParams) -> complex | None:
    if gp.p != gp.q:
        return None
    return sum((a - b for a, b in zip(gp.a, gp.b)), 0j) - 1


@dataclass(frozen=True)
class AsymTerm:
    kind: str  # power | power_exp | power_cos | log | const
    exponent: complex | None = None
    detail: str = ""

    def to_json(self) -> dict:
        e = None if self.exponent is None else [self.exponent.real, self.exponent.imag]
        return {"kind": self.kind, "exponent": e, "detail": self.detail}


@dataclass(frozen=True)
class AsymptoticClass:
    point: str
    leading_terms: tuple[AsymTerm, ...]
    row: str

    def to_json(self) -> dict:
        return {"point": self.point, "row": self.row,
                "leading_terms": [t.to_json() for t in self.leading_terms]}


def asymptotic_class(gp: GParams, point: str) -> AsymptoticClass:
    """Leading Big-O terms of the G-function of its (classical) argument."""
    m, n, p, q = gp.m, gp.n, gp.p, gp.q
    inv_r = 1 / complex(float(gp.r))
    c = chi(gp)
    if point == "zero":
        terms = [AsymTerm("power", bk * inv_r) for bk in gp.b[:m]]
        if p <= q:
            row = "p<=q"
        elif p == q + 1:
            row = "p=q+1"
            terms.append(AsymTerm("power_exp", c, f"exp((-1)^{(q - m - n)}/z)"))
        elif p == q + 2:
            row = "p=q+2"
            terms.append(AsymTerm("power_cos", c, f"cos(2*sqrt((-1)^{(q - m - n - 1)}/z))"))
        else:
            row = "p>=q+3"
            terms.append(AsymTerm("power_exp", c, f"exp({p - q}*(-z)^(1/{q - p}))"))
        return AsymptoticClass(point, tuple(terms), row)
    if point == "unit":
        if p == q:
            ps = psi_p(gp)
            s = (p - m - n) % 2
            base = f"1-(-1)^{s}*z"
            if abs(ps) > sp.POLE_TOL:
                return AsymptoticClass(point, (AsymTerm("const"), AsymTerm("power", ps, base)),
                                       "q=p,psi!=0")
            return AsymptoticClass(point, (AsymTerm("const"), AsymTerm("log", None, base)),
                                   "q=p,psi=0")
        return AsymptoticClass(point, (AsymTerm("const"),), "q!=p")
    if point == "infinity":
        terms = [AsymTerm("power", (ak - 1) * inv_r) for ak in gp.a[:n]]
        if q <= p:
            row = "q<=p"
        elif q == p + 1:
            row = "q=p+1"
            terms.append(AsymTerm("power_exp", c, f"exp((-1)^{(p - m - n)}*z)"))
        elif q == p + 2:
            row = "q=p+2"
            terms.append(AsymTerm("power_cos", c, f"cos(2*sqrt((-1)^{(p - m - n - 1)}*z))"))
        else:
            row = "q>=p+3"
            terms.append(AsymTerm("power_exp", c, f"exp({q - p}*(-z)^(1/{q - p}))"))
        return AsymptoticClass(point, tuple(terms), row)
    raise ParamError(f"unknown point {point!r}; use zero, unit or infinity")


# convergence of the Riemann-Liouville integral of G


@dataclass(frozen=True)
class ConvergenceReport:
    chi: complex | None
    psi_p: complex | None
    min_q: float
    tau0: complex | None
    branch: str
    checks: tuple[tuple[str, bool], ...]
    annulated: tuple[str, ...]
    verdict: str

    def to_json(self) -> dict:
        def c(x):
            return None if x is None else [x.real, x.imag]

        return {
            "verdict": self.verdict,
            "branch": self.branch,
            "chi": c(self.chi),
            "psi_p": c(self.psi_p),
            "min": None if math.isinf(self.min_q) else self.min_q,
            "tau0": c(self.tau0),
            "checks": [[k, v] for k, v in self.checks],
            "annulated": list(self.annulated),
        }


def _is_real(x: complex) -> bool:
    return abs(x.imag) < 1e-12 * (1 + abs(x))


def check_convergence(gp: GParams, alpha, beta, z=1.0) -> ConvergenceReport:
    r"""Decide convergence of :math:`\int_0^z (z-\tau)^{\beta-1}\tau^{\alpha-1}G(w\tau^g, r|a;b)\,d\tau`.

    ``z`` is the (real, positive) upper limit, needed to place the interior
    singular point ``tau0`` when ``p = q``.
    """
    alpha = sp.as_complex(alpha)
    beta = sp.as_complex(beta)
    z = sp.as_complex(z)
    gr = gp.g / gp.r
    if gr <= 0:
        raise UnsupportedError("the analysis at tau = 0 assumes g/r > 0")
    m, n, p, q = gp.m, gp.n, gp.p, gp.q
    gr_f = float(gr)
    r_f = float(gp.r)
    ch = chi(gp)
    ps = psi_p(gp)
    mn = (alpha.real + gr_f * min(b.real for b in gp.b[:m])) if m else math.inf
    lw = cmath.log(gp.w)
    w_inv_r = cmath.exp(-lw / r_f)
    w_r = cmath.exp(lw / r_f)
    beta_ok = beta.real > 0
    min_ok = mn > 0
    checks: list[tuple[str, bool]] = []
    annulated: list[str] = []
    tau0 = None
    if p < q:
        branch = "p<q"
        checks += [("re_beta>0", beta_ok), ("min>0", min_ok)]
    elif p == q:
        branch = "p=q"
        s = -1 if (m + n - p) % 2 else 1
        tau0 = sp.as_complex(cmath.exp(float(1 / gr) * cmath.log(s * w_inv_r)))
        real = _is_real(tau0)
        checks += [("min>0", min_ok)]
        if real and abs(tau0 - z) <= 1e-12 * (1 + abs(z)):
            checks += [("tau0_real", True), ("tau0=z", True),
                       ("re(beta+psi_p)>0", (beta + ps).real > 0)]
            annulated.append("re_beta>0")
        elif real and 0 < tau0.real < z.real:
            checks += [("tau0_real", True), ("0<tau0<z", True), ("re_beta>0", beta_ok),
                       ("re_psi_p>-1", ps.real > -1)]
        else:
            checks += [("re_beta>0", beta_ok)]
    elif p == q + 1:
        branch = "p=q+1"
        sgn = -1 if (q - m - n) % 2 else 1
        checks += [("re_beta>0", beta_ok), ("min>0", min_ok)]
        if gr < 0:
            checks.append(("re(alpha+g/r*chi)>0", (alpha + gr_f * ch).real > 0))
        else:
            checks.append(("re((-1)^(q-m-n)*w^(-1/r))<=0", (sgn * w_inv_r).real <= 1e-15))
    elif p == q + 2:
        branch = "p=q+2"
        sgn = -1 if (q - m - n - 1) % 2 else 1
        root = cmath.sqrt(sp.as_complex(sgn * w_inv_r))
        checks += [("re_beta>0", beta_ok), ("min>0", min_ok),
                   ("sqrt_real", _is_real(root)), ("g/r_real", True),
                   ("re(alpha*r/g+chi)<1/2", (alpha / gr_f + ch).real < 0.5)]
    else:
        branch = "p>q+2"
        checks += [("re_beta>0", beta_ok), ("min>0", min_ok)]
        if gr / (q - p) > 0:
            checks.append(("re(alpha+g/r*chi)>0", (alpha + gr_f * ch).real > 0))
        else:
            val = (p - q) * cmath.exp(cmath.log(sp.as_complex(-w_r)) / (q - p))
            checks.append(("re((p-q)*(-w^(1/r))^(1/(q-p)))<=0", val.real <= 1e-15))
    verdict = "converges" if all(v for _, v in checks) else "diverges"
    if gp.r != 1 and gp.w.imag == 0 and gp.w.real < 0:
        verdict = "undetermined"
    return ConvergenceReport(ch, ps, mn, tau0, branch, tuple(checks), tuple(annulated), verdict)
