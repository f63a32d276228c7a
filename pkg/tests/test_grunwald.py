import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate

from fracdiff import grunwald as gl
from fracdiff.errors import DomainError, ExtrapolationError, StepError, SupportError
from fracdiff.expr import compile_expr
from fracdiff.operator import fracdiff_series

mp.mp.dps = 30


def closed_power(p, alpha, x):
    return float(mp.gamma(p + 1) / mp.gamma(p + 1 - alpha)) * x ** (p - alpha)


def test_weights_match_binomials():
    w = gl.gl_weights(0.7, 30)
    for k in range(31):
        assert abs(w[k] - (-1) ** k * float(mp.binomial(0.7, k))) < 1e-15


def test_weights_large_n_finite():
    w = gl.gl_weights(-0.5, 200_000)
    assert np.all(np.isfinite(w))


@pytest.mark.parametrize("p", [0.7, 2.0])
def test_first_order_convergence(p):
    x, alpha = 1.0, 0.5
    ref = closed_power(p, alpha, x)
    f = lambda t: t**p  # noqa: E731
    e1 = abs(gl.gl_differint(f, x, alpha, gl.GlConfig(h=1e-3)).value - ref)
    e2 = abs(gl.gl_differint(f, x, alpha, gl.GlConfig(h=5e-4)).value - ref)
    assert 0.4 <= e2 / e1 <= 0.6


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_order_minus_one_is_quadrature(x):
    t = np.linspace(0, x, 20001)
    trap = integrate.trapezoid(np.exp(t), t)
    # the GL sum is a rectangle rule, off by about h*f(x)/2
    assert abs(gl.gl_differint(np.exp, x, -1.0).value - trap) < 1e-3 * trap


def test_config_errors():
    with pytest.raises(StepError):
        gl.GlConfig(h=0)
    with pytest.raises(StepError):
        gl.GlConfig(h=-1e-3)
    with pytest.raises(SupportError):
        gl.GlConfig(h=1e-3, n_terms=10, x=1.0)
    with pytest.raises(SupportError):
        gl.gl_differint(np.exp, 1.0, 0.5, gl.GlConfig(h=1e-3, n_terms=10))
    with pytest.raises(DomainError):
        gl.gl_differint(np.exp, -1.0, 0.5)


def test_scalar_only_function():
    def f(t):
        return math.exp(float(t))

    r = gl.gl_differint(f, 1.0, 0.5, gl.GlConfig(h=1e-2))
    assert r.n_terms == 100 and r.error > 0


ENGINE = ["z^0.7", "exp(z)", "sin(z)", "z^1.3*log(z)"]


@pytest.mark.parametrize("expr", ENGINE)
@pytest.mark.parametrize("alpha", [0.3, -0.3, 0.5, -0.5, 1.5])
def test_engine_agrees_with_gl(expr, alpha):
    s = fracdiff_series(compile_expr(expr, 40), alpha)
    f = {"z^0.7": lambda t: t**0.7, "exp(z)": np.exp, "sin(z)": np.sin,
         "z^1.3*log(z)": lambda t: t**1.3 * np.log(t)}[expr]
    for x in (0.5, 1.0, 2.0):
        eng = s(x).real
        g = gl.gl_differint(f, x, alpha).value
        assert abs(g - eng) < 1e-2 * max(abs(eng), 1e-2), (x, g, eng)


FP_GRID = [(lam, a, z) for lam in (-2.5, -1.3, -0.2, 0.5, 2) for a in (-0.3, -0.7, -1.5)
           for z in (0.5, 1, 2)]


@pytest.mark.parametrize("lam,alpha,z", FP_GRID)
def test_fp_power_integral(lam, alpha, z):
    ref = float(mp.gamma(-alpha) * mp.gamma(lam + 1) * mp.rgamma(lam + 1 - alpha)) * z ** (lam - alpha)
    got = gl.fp_power_integral(lam, alpha, z)
    assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))
    assert abs(gl.fp_power_closed(lam, alpha, z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_fp_power_integral_domain():
    with pytest.raises(DomainError):
        gl.fp_power_integral(0.5, 0.3, 1)
    with pytest.raises(DomainError):
        gl.fp_power_integral(-2, -0.5, 1)
    with pytest.raises(DomainError):
        gl.fp_power_integral(0.5, -0.5, 0)


def hadamard_exp_ref(n):
    m = n - 1
    return float((-1) ** m * mp.digamma(m + 1) / mp.factorial(m))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hadamard_exp(n):
    derivs = [(-1.0) ** k for k in range(n)]
    r = gl.hadamard_fp_demo(lambda x: math.exp(-x), n, derivs)
    assert abs(r.value - hadamard_exp_ref(n)) < 1e-7
    if n == 1:
        assert abs(r.value + float(mp.euler)) < 1e-7


def test_hadamard_convergent_case():
    r = gl.hadamard_fp_demo(lambda x: x * math.exp(-x), 1, [0.0])
    assert abs(r.value - 1.0) < 1e-8


def test_hadamard_short_sequence():
    r = gl.hadamard_fp_demo(lambda x: math.exp(-x), 1, [1.0], eps=[1e-2, 5e-3, 2.5e-3], tol=1e-4)
    assert r.change < 1e-4


def test_hadamard_gives_up():
    with pytest.raises(ExtrapolationError):
        gl.hadamard_fp_demo(lambda x: math.exp(-x), 1, [1.0], eps=[1e-1, 5e-2], tol=1e-14)
    with pytest.raises(DomainError):
        gl.hadamard_fp_demo(lambda x: math.exp(-x), 2, [1.0])
