r"""Numerical oracles independent of the rule engine.

* :func:`gl_differint` -- Grünwald-Letnikov differintegral tied to the origin,
  with the function extended by zero on :math:`(-\infty, 0]`.
* :func:`fp_power_integral` -- finite-part Riemann-Liouville integral of a
  power, by subtracting the divergent part and integrating the rest.
* :func:`hadamard_fp_demo` -- finite part of :math:`\int_0^\infty x^{-n} f(x)dx`
  by extrapolation in the cut-off.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import integrate

from . import special as sp
from .errors import (
    DomainError,
    ExtrapolationError,
    QuadratureError,
    StepError,
    SupportError,
)


@dataclass(frozen=True)
class GlConfig:
    h: float = 1e-3
    n_terms: int | None = None
    x: float | None = None

    def __post_init__(self):
        if not (self.h > 0) or not math.isfinite(self.h):
            raise StepError(f"step must be positive, got {self.h}")
        if self.n_terms is not None and self.n_terms < 1:
            raise SupportError("n_terms must be positive")
        if self.n_terms is not None and self.x is not None and self.h * self.n_terms < self.x * (1 - 1e-12):
            raise SupportError(f"h*n_terms = {self.h * self.n_terms} does not cover [0, {self.x}]")

    def terms_for(self, x: float) -> int:
        need = math.ceil(x / self.h - 1e-9)
        if self.n_terms is None:
            return need
        if self.h * self.n_terms < x * (1 - 1e-12):
            raise SupportError(f"h*n_terms = {self.h * self.n_terms} does not cover [0, {x}]")
        return self.n_terms


class GlResult(NamedTuple):
    value: float
    error: float
    h: float
    n_terms: int


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """``(-1)^k binom(alpha, k)`` for ``k = 0..n`` by the product recurrence."""
    k = np.arange(1, n + 1, dtype=float)
    w = np.empty(n + 1)
    w[0] = 1.0
    w[1:] = np.cumprod(1.0 - (alpha + 1.0) / k)
    return w


def _samples(f: Callable, t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t)
    mask = t > 0
    tt = t[mask]
    try:
        vals = np.asarray(f(tt), dtype=float)
        if vals.shape != tt.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(f(v)) for v in tt])
    out[mask] = vals
    return out


def _gl_sum(f: Callable, x: float, alpha: float, h: float, n: int) -> float:
    w = gl_weights(alpha, n)
    t = x - h * np.arange(n + 1)
    prod = w * _samples(f, t)
    return math.fsum(prod.tolist()) * h ** (-alpha)


def gl_differint(f: Callable, x: float, alpha: float, cfg: GlConfig | None = None) -> GlResult:
    r"""Grünwald-Letnikov differintegral of ``f`` at ``x``.

    :math:`h^{-\alpha}\sum_{k=0}^{n} (-1)^k \binom{\alpha}{k} f(x-kh)` with
    ``f`` read as zero for arguments ``<= 0``.  The reported error is the
    change under halving ``h``.
    """
    cfg = cfg or GlConfig()
    if not x > 0:
        raise DomainError("evaluation point must be positive")
    n = cfg.terms_for(x)
    coarse = _gl_sum(f, x, alpha, cfg.h, n)
    fine = _gl_sum(f, x, alpha, cfg.h / 2, 2 * n)
    return GlResult(coarse, abs(fine - coarse), cfg.h, n)


def _quad(fn, a, b, what: str) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fn, a, b, epsabs=0.0, epsrel=1e-13, limit=400)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"{what}: {exc}") from exc
    if not math.isfinite(val):
        raise QuadratureError(f"{what}: non-finite value")
    return val, err


def _endpoint_integral(a: float, c: float, z: float) -> float:
    r""":math:`\int_0^z t^a (z-t)^c dt` for ``a, c > -1``.

    Each half is mapped so that the endpoint singularity disappears:
    :math:`t = (z/2) v^{1/(a+1)}` on the left, the mirror on the right.
    """
    half = z / 2

    def left(v):
        t = half * v ** (1.0 / (a + 1))
        return (z - t) ** c

    def right(v):
        s = half * v ** (1.0 / (c + 1))
        return (z - s) ** a

    lv, le = _quad(left, 0.0, 1.0, "left half")
    rv, re = _quad(right, 0.0, 1.0, "right half")
    total = half ** (a + 1) / (a + 1) * lv + half ** (c + 1) / (c + 1) * rv
    err = half ** (a + 1) / (a + 1) * le + half ** (c + 1) / (c + 1) * re
    if err > 1e-10 * max(abs(total), 1e-300):
        raise QuadratureError(f"error estimate {err:g} too large for value {total:g}")
    return total


def fp_power_integral(lam: float, alpha: float, z: float) -> float:
    r"""Finite part of :math:`\int_0^z t^\lambda (z-t)^{-\alpha-1} dt`, ``alpha < 0``.

    With ``n`` the least integer such that :math:`\lambda > -n-1`,
    :math:`1/(z-t)` is split into ``n`` geometric terms plus a remainder.
    The remainder integral converges and is done by quadrature; the ``n``
    subtracted pieces are beta integrals continued analytically.
    """
    lam = float(lam)
    alpha = float(alpha)
    z = float(z)
    if not alpha < 0:
        raise DomainError("fp_power_integral needs alpha < 0")
    if not z > 0:
        raise DomainError("fp_power_integral needs z > 0")
    if lam <= -1 and lam == int(lam):
        raise DomainError(f"lambda = {lam} is a negative integer")
    n = max(0, math.floor(-lam - 1) + 1)
    rem = _endpoint_integral(lam + n, -alpha - 1, z) / z**n
    corr = 0.0
    g1 = sp.gamma(1 - alpha).real
    for k in range(1, n + 1):
        corr += g1 * sp.gamma_ratio(lam + k, lam + k + 1 - alpha).real
    return rem + corr * z ** (lam - alpha)


def fp_power_closed(lam: float, alpha: float, z: float) -> float:
    r""":math:`\Gamma(-\alpha)\Gamma(\lambda+1)/\Gamma(\lambda+1-\alpha)\, z^{\lambda-\alpha}`."""
    return (sp.gamma(-alpha) * sp.gamma_ratio(lam + 1, lam + 1 - alpha)).real * z ** (lam - alpha)


class FpResult(NamedTuple):
    value: float
    change: float
    levels: int


def _cutoff_integral(f: Callable, n: int, eps: float) -> float:
    def near(u):
        return math.exp(u * (1 - n)) * f(math.exp(u))

    a, _ = _quad(near, math.log(eps), 0.0, "[eps, 1]")
    b, _ = _quad(lambda x: x ** (-n) * f(x), 1.0, math.inf, "[1, inf)")
    return a + b


def hadamard_fp_demo(f: Callable[[float], float], n: int, derivs: Sequence[float],
                     eps: Sequence[float] | None = None, tol: float = 1e-8) -> FpResult:
    r"""Finite part of :math:`\int_0^\infty x^{-n} f(x)\,dx`.

    ``derivs[k]`` is :math:`f^{(k)}(0)` for ``k < n``.  For each cut-off the
    divergent terms :math:`\varepsilon^{k+1-n} f^{(k)}(0)/(k!(n-1-k))` are
    removed and :math:`\log\varepsilon\, f^{(n-1)}(0)/(n-1)!` is added back;
    the remainder is a power series in the cut-off, so Richardson
    extrapolation over halving cut-offs converges quickly.  Accepts when two
    successive extrapolants differ by less than ``tol``.  The default cut-offs
    start large because the divergent part grows like ``eps^(1-n)`` and eats
    the quadrature accuracy; with them ``n <= 4`` is reliable.
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    if len(derivs) < n:
        raise DomainError(f"need {n} Taylor coefficients, got {len(derivs)}")
    eps = list(eps) if eps is not None else [0.25 / 2**j for j in range(8)]
    ests = []
    for e in eps:
        val = _cutoff_integral(f, n, e)
        for k in range(n - 1):
            val -= e ** (k + 1 - n) * derivs[k] / (math.factorial(k) * (n - 1 - k))
        val += math.log(e) * derivs[n - 1] / math.factorial(n - 1)
        ests.append(val)
    # Neville table for error terms in powers of eps; ratio between cut-offs
    table = [ests]
    diag = [ests[0]]
    for level in range(1, len(ests)):
        prev = table[-1]
        row = []
        for i in range(len(prev) - 1):
            r = eps[i] / eps[i + level]
            row.append(prev[i + 1] + (prev[i + 1] - prev[i]) / (r - 1))
        table.append(row)
        diag.append(row[-1])
        if abs(diag[-1] - diag[-2]) < tol:
            return FpResult(diag[-1], abs(diag[-1] - diag[-2]), level + 1)
    raise ExtrapolationError(
        f"cut-off sequence did not stabilise (last change {abs(diag[-1] - diag[-2]):.3g})")
