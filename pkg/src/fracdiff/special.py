r"""Complex special-function kernel.

Every routine takes and returns builtin ``complex`` (ints and floats are
promoted).  Arguments, logarithms and powers follow the principal branch
:math:`-\pi < \arg z \le \pi`; a negative zero imaginary part is treated as
``+0`` so that ``log(-1)`` is always :math:`i\pi`.
"""

from __future__ import annotations

import cmath
import math
import os
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    BranchPointError,
    DivergenceError,
    DomainError,
    IndeterminateError,
    NoConvergenceError,
    PoleError,
)

EULER_GAMMA = 0.57721566490153286061
POLE_TOL = 1e-12
PFQ_CAP = 10_000

# Lanczos, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2, B_4, ..., B_20
_BERNOULLI = tuple(
    Fraction(n, d)
    for n, d in (
        (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730),
        (7, 6), (-3617, 510), (43867, 798), (-174611, 330),
    )
)


def default_tol() -> float:
    """Series tolerance, overridable through ``FRACDIFF_TOL``."""
    raw = os.environ.get("FRACDIFF_TOL")
    if raw:
        try:
            val = float(raw)
        except ValueError:
            return 1e-13
        if val > 0:
            return val
    return 1e-13


def as_complex(x) -> complex:
    """Coerce numbers and ``[re, im]`` pairs to ``complex`` with clean zeros."""
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise DomainError(f"expected [re, im], got {x!r}")
        x = complex(float(x[0]), float(x[1]))
    else:
        x = complex(x)
    if not (math.isfinite(x.real) and math.isfinite(x.imag)):
        raise DomainError(f"non-finite value {x!r}")
    return complex(x.real + 0.0, x.imag + 0.0)


def _finite(x: complex, what: str) -> complex:
    if not (math.isfinite(x.real) and math.isfinite(x.imag)):
        raise DomainError(f"{what} is not finite")
    return complex(x.real + 0.0, x.imag + 0.0)


def nearest_int(z) -> int | None:
    """The integer ``z`` equals within :data:`POLE_TOL`, or None."""
    z = complex(z)
    k = round(z.real)
    if abs(z - k) <= POLE_TOL * max(1.0, abs(k)):
        return int(k)
    return None


def is_nonpositive_int(z) -> bool:
    k = nearest_int(z)
    return k is not None and k <= 0


def clog(z) -> complex:
    """Principal logarithm."""
    z = as_complex(z)
    if z == 0:
        raise BranchPointError("log(0)")
    return cmath.log(z)


def cpow(z, a) -> complex:
    """Principal power ``exp(a log z)``; integer exponents are exact."""
    z = as_complex(z)
    a = as_complex(a)
    if a.imag == 0 and a.real == int(a.real) and abs(a.real) <= 64:
        n = int(a.real)
        if z == 0:
            if n > 0:
                return 0j
            if n == 0:
                return 1 + 0j
            raise BranchPointError("0 to a negative power")
        return _finite(z**n, "power")
    if z == 0:
        if a.real > 0:
            return 0j
        raise BranchPointError("0 to a non-positive complex power")
    return _finite(cmath.exp(a * cmath.log(z)), "power")


def _lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    z = z - 1
    x = _LANCZOS[0]
    for i in range(1, 9):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def gamma(z) -> complex:
    """Euler gamma function."""
    z = as_complex(z)
    if is_nonpositive_int(z):
        raise PoleError(f"gamma has a pole at {z}")
    if z.imag == 0 and z.real == int(z.real) and 0 < z.real <= 30:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        val = math.pi / (cmath.sin(math.pi * z) * _lanczos(1 - z))
    else:
        val = _lanczos(z)
    return _finite(val, "gamma")


def rgamma(z) -> complex:
    """Reciprocal gamma, entire: zero at the poles of gamma."""
    z = as_complex(z)
    if is_nonpositive_int(z):
        return 0j
    if z.real < 0.5:
        return _finite(cmath.sin(math.pi * z) * _lanczos(1 - z) / math.pi, "rgamma")
    return _finite(1 / gamma(z), "rgamma")


def _stirling_loggamma(z: complex) -> complex:
    s = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi)
    zz = z * z
    zp = z
    for k, b in enumerate(_BERNOULLI[:8], start=1):
        s += float(b) / ((2 * k) * (2 * k - 1) * zp)
        zp *= zz
    return s


def log_gamma(z) -> complex:
    """Log-gamma as the analytic continuation from the positive axis.

    Off the negative real axis this equals ``scipy.special.loggamma``; on it
    the imaginary part is the limit from above.  ``exp(log_gamma(z))`` is
    always ``gamma(z)``.
    """
    z = as_complex(z)
    if is_nonpositive_int(z):
        raise PoleError(f"log_gamma has a pole at {z}")
    if z.imag == 0 and z.real in (1.0, 2.0):
        return 0j
    shift = 0
    w = z
    while abs(w) < 15 or w.real < 8:
        w += 1
        shift += 1
    acc = _stirling_loggamma(w)
    for k in range(shift):
        acc -= cmath.log(z + k)
    return _finite(acc, "log_gamma")


def gamma_ratio(num, den, coupled: bool = True) -> complex:
    r"""``gamma(num) / gamma(den)`` with limits at poles.

    * pole in ``den`` only: 0;
    * pole in ``num`` only: :class:`PoleError`;
    * poles in both (integers ``-m``, ``-n``): the limit along the common
      shift ``num+e, den+e``, equal to
      :math:`(-1)^{m-n}\Gamma(1-\mathrm{den})/\Gamma(1-\mathrm{num})`.
      With ``coupled=False`` that limit is refused with
      :class:`IndeterminateError`.
    """
    num = as_complex(num)
    den = as_complex(den)
    pn = is_nonpositive_int(num)
    pd = is_nonpositive_int(den)
    if pn and pd:
        if not coupled:
            raise IndeterminateError(
                f"gamma({num})/gamma({den}): double pole without a coupling path")
        a = nearest_int(num)
        b = nearest_int(den)
        sign = -1 if (a - b) % 2 else 1
        return complex(sign * math.factorial(-b) / math.factorial(-a))
    if pd:
        return 0j
    if pn:
        raise PoleError(f"gamma ratio has a pole: numerator {num}")
    if abs(num) < 60 and abs(den) < 60:
        return _finite(gamma(num) * rgamma(den), "gamma_ratio")
    return _finite(cmath.exp(log_gamma(num) - log_gamma(den)), "gamma_ratio")


def digamma(z) -> complex:
    """Logarithmic derivative of gamma."""
    z = as_complex(z)
    if is_nonpositive_int(z):
        raise PoleError(f"digamma has a pole at {z}")
    if z.imag == 0 and z.real == int(z.real) and z.real <= 60:
        return complex(-EULER_GAMMA + math.fsum(1.0 / k for k in range(1, int(z.real))))
    acc = 0j
    while abs(z) < 20 or z.real < 10:
        acc -= 1 / z
        z += 1
    zi2 = 1 / (z * z)
    s = cmath.log(z) - 0.5 / z
    zp = zi2
    for k, b in enumerate(_BERNOULLI, start=1):
        s -= float(b) / (2 * k) * zp
        zp *= zi2
    return _finite(acc + s, "digamma")


def polygamma(m: int, z) -> complex:
    """``m``-th derivative of digamma."""
    if int(m) != m or m < 0:
        raise DomainError("polygamma order must be a non-negative integer")
    m = int(m)
    if m == 0:
        return digamma(z)
    z = as_complex(z)
    if is_nonpositive_int(z):
        raise PoleError(f"polygamma has a pole at {z}")
    sign = -1 if m % 2 == 0 else 1  # (-1)^(m+1)
    mfact = math.factorial(m)
    acc = 0j
    while abs(z) < 25 or z.real < 12:
        acc += sign * mfact / z ** (m + 1)
        z += 1
    s = math.factorial(m - 1) / z**m + mfact / (2 * z ** (m + 1))
    for k, b in enumerate(_BERNOULLI, start=1):
        s += float(b) * math.factorial(2 * k + m - 1) / (
            math.factorial(2 * k) * z ** (2 * k + m))
    return _finite(acc + sign * s, "polygamma")


def harmonic(s) -> complex:
    """Harmonic number ``H_s = gamma + psi(s + 1)``."""
    s = as_complex(s)
    if s.imag == 0 and s.real == int(s.real) and 0 <= s.real <= 10_000:
        return complex(math.fsum(1.0 / k for k in range(1, int(s.real) + 1)))
    if is_nonpositive_int(s + 1):
        raise PoleError(f"harmonic number has a pole at {s}")
    return EULER_GAMMA + digamma(s + 1)


def pochhammer(x, n) -> complex:
    """Rising factorial ``(x)_n``; integer ``n`` uses the finite product."""
    x = as_complex(x)
    nc = as_complex(n)
    k = nearest_int(nc)
    if k is None:
        return gamma_ratio(x + nc, x)
    acc = 1 + 0j
    if k >= 0:
        for j in range(k):
            acc *= x + j
        return acc
    for j in range(1, -k + 1):
        f = x - j
        if abs(f) <= POLE_TOL:
            raise PoleError(f"pochhammer({x}, {k}) hits a zero factor")
        acc /= f
    return acc


def _lower_series(a: complex, z: complex) -> complex:
    """Lower incomplete gamma by its everywhere-convergent series."""
    term = 1 / a
    total = term
    for n in range(1, 4000):
        term *= z / (a + n)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    else:
        raise NoConvergenceError("lower incomplete gamma series")
    return cmath.exp(a * cmath.log(z) - z) * total


def _upper_cf(a: complex, z: complex) -> complex:
    """Upper incomplete gamma by Legendre's continued fraction (modified Lentz)."""
    tiny = 1e-300
    b = z + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, 2000):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < 1e-16:
            break
    else:
        raise NoConvergenceError("incomplete gamma continued fraction")
    return cmath.exp(a * cmath.log(z) - z) * h


def _use_cf(a: complex, z: complex) -> bool:
    return z.real > 0 and abs(z) > 1.5 + abs(a)


def _upper_positive(a: complex, z: complex) -> complex:
    # Re a > 0, z != 0
    if _use_cf(a, z):
        return _upper_cf(a, z)
    return gamma(a) - _lower_series(a, z)


def _e1(z: complex) -> complex:
    """Exponential integral E1, principal branch."""
    if z.real > 0 and abs(z) > 2.5:
        return _upper_cf(0j, z)
    total = 0j
    term = 1 + 0j
    for k in range(1, 4000):
        term *= -z / k
        add = term / k
        total += add
        if abs(add) <= 1e-17 * max(abs(total), 1e-300):
            break
    return -EULER_GAMMA - cmath.log(z) - total


def upper_incomplete_gamma(a, z) -> complex:
    r"""Upper incomplete gamma :math:`\Gamma(a, z) = \int_z^\infty t^{a-1}e^{-t}dt`.

    ``a`` may be any complex number.  For ``Re a <= 0`` the value at a shifted
    order is brought down by :math:`\Gamma(a,z) = (\Gamma(a+1,z) - z^a e^{-z})/a`
    when ``Re z > 0``; otherwise the series about zero is used.  Nonpositive
    integer ``a`` starts the recurrence from :math:`E_1(z)`.
    """
    a = as_complex(a)
    z = as_complex(z)
    if z == 0:
        if a.real > 0:
            return gamma(a)
        raise DomainError(f"upper incomplete gamma({a}, 0) diverges")
    if a.real > 0:
        return _finite(_upper_positive(a, z), "upper_incomplete_gamma")
    k = nearest_int(a)
    if k is not None:
        val = _e1(z)
        for j in range(-1, k - 1, -1):
            val = (val - cmath.exp(j * cmath.log(z) - z)) / j
        return _finite(val, "upper_incomplete_gamma")
    if z.real > 0:
        shift = int(math.floor(-a.real)) + 1
        val = _upper_positive(a + shift, z)
        for j in range(shift - 1, -1, -1):
            aj = a + j
            val = (val - cmath.exp(aj * cmath.log(z) - z)) / aj
        return _finite(val, "upper_incomplete_gamma")
    # Re z <= 0: Gamma(a) minus the lower series
    return _finite(gamma(a) - _lower_series(a, z), "upper_incomplete_gamma")


def regularized_q(a, z) -> complex:
    """``Q(a, z) = Gamma(a, z) / Gamma(a)``; 0 at nonpositive integer ``a``."""
    a = as_complex(a)
    z = as_complex(z)
    if is_nonpositive_int(a):
        if z == 0:
            raise DomainError(f"Q({a}, 0) undefined")
        return 0j
    if z == 0:
        return 1 + 0j
    if a.real > 0 and not _use_cf(a, z):
        # 1 - gamma*(a, z), avoids forming Gamma(a) twice
        return _finite(1 - _lower_series(a, z) * rgamma(a), "regularized_q")
    return _finite(upper_incomplete_gamma(a, z) * rgamma(a), "regularized_q")


class PfqResult(NamedTuple):
    value: complex
    tol: float
    terms: int


def _pfq_sum(first_index: int, first_term: complex, ratio, z_is_zero: bool,
             tol: float, cap: int) -> PfqResult:
    total = first_term
    term = first_term
    if z_is_zero or term == 0:
        return PfqResult(total, 0.0, first_index + 1)
    biggest = abs(term)
    small_run = 0
    n = first_index
    while n < cap:
        term = term * ratio(n)
        n += 1
        total += term
        at = abs(term)
        biggest = max(biggest, at)
        if at == 0:
            return PfqResult(total, 2.2e-16 * biggest / max(abs(total), 1e-300), n + 1)
        if at <= tol * abs(total):
            small_run += 1
            if small_run >= 2:
                achieved = max(at / abs(total), 2.2e-16 * biggest / abs(total))
                return PfqResult(total, achieved, n + 1)
        else:
            small_run = 0
    raise NoConvergenceError(f"pFq series did not converge within {cap} terms")


def _check_pfq(p: int, q: int, z: complex):
    if p > q + 1 and z != 0:
        raise DivergenceError(f"{p}F{q} diverges for z != 0")
    if p == q + 1 and abs(z) >= 1:
        raise DivergenceError(f"{p}F{q} requires |z| < 1")


def pfq(a_list: Sequence, b_list: Sequence, z, tol: float | None = None,
        cap: int = PFQ_CAP) -> PfqResult:
    r"""Generalized hypergeometric series :math:`{}_pF_q(a; b; z)`.

    Summation stops once two consecutive terms fall below ``tol`` relative to
    the partial sum.  Returns the value, the achieved relative tolerance and
    the number of terms used.
    """
    a = [as_complex(x) for x in a_list]
    b = [as_complex(x) for x in b_list]
    z = as_complex(z)
    tol = default_tol() if tol is None else tol
    _check_pfq(len(a), len(b), z)
    for bj in b:
        if is_nonpositive_int(bj):
            raise PoleError(f"pFq lower parameter {bj} is a nonpositive integer")

    def ratio(n):
        r = z / (n + 1)
        for x in a:
            r *= x + n
        for y in b:
            r /= y + n
        return r

    return _pfq_sum(0, 1 + 0j, ratio, z == 0, tol, cap)


def pfq_regularized(a_list: Sequence, b_list: Sequence, z, tol: float | None = None,
                    cap: int = PFQ_CAP) -> PfqResult:
    r"""Regularized series :math:`\sum_n \prod (a)_n / \prod \Gamma(b+n)\, z^n/n!`.

    Entire in every ``b``; terms where some ``b + n`` is a pole of gamma
    vanish.
    """
    a = [as_complex(x) for x in a_list]
    b = [as_complex(x) for x in b_list]
    z = as_complex(z)
    tol = default_tol() if tol is None else tol
    _check_pfq(len(a), len(b), z)
    n0 = 0
    for bj in b:
        k = nearest_int(bj)
        if k is not None and k <= 0:
            n0 = max(n0, 1 - k)
    for x in a:
        k = nearest_int(x)
        if k is not None and k <= 0 and -k < n0:
            return PfqResult(0j, 0.0, 0)
    if n0 > 0 and z == 0:
        return PfqResult(0j, 0.0, 0)
    first = cpow(z, n0) / math.factorial(n0) if n0 else 1 + 0j
    for x in a:
        first *= pochhammer(x, n0)
    for y in b:
        first *= rgamma(y + n0)

    def ratio(n):
        r = z / (n + 1)
        for x in a:
            r *= x + n
        for y in b:
            r /= y + n
        return r

    return _pfq_sum(n0, first, ratio, z == 0, tol, cap)
