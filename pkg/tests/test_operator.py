import cmath
import math

import mpmath as mp
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdiff import operator as op
from fracdiff import special as sp
from fracdiff.errors import UnknownFunctionError
from fracdiff.series import PowerLogSeries, PowerLogTerm, build, coeff_distance, scale

mp.mp.dps = 40


def only(s: PowerLogSeries) -> dict:
    """{log power: coefficient} of a single-exponent result."""
    return {t.log_pow: t.coeff for t in s.terms}


def fp_oracle(lam, k, alpha, z):
    """Finite part at the pole of the gamma-ratio family, via mpmath Taylor coefficients.

    z^lam log^k z = d^k/dlam^k z^lam, so the regular part of the k-th derivative
    of Gamma(lam+1)/Gamma(lam+1-alpha) z^(lam-alpha) is k! times the e^k Laurent
    coefficient.  Off the poles this is just the derivative.
    """
    z = mp.mpf(z)

    def F(e):
        x = lam + e
        return mp.gamma(x + 1) * mp.rgamma(x + 1 - alpha) * z ** (x - alpha)

    if lam + 1 > 0 or lam != int(lam):
        return complex(mp.diff(F, 0, k))

    def G(e):
        return e * F(e) if e != 0 else mp.limit(lambda t: t * F(t), 0)

    # Taylor coefficients of e*F(e) by Cauchy integral on a small circle
    n = 64
    rad = mp.mpf("0.25")
    coef = mp.mpf(0)
    for j in range(n):
        e = rad * mp.expjpi(2 * mp.mpf(j) / n)
        coef += G(e) / e ** (k + 1)
    return complex(mp.factorial(k) * coef / n)


# power rule

GRID_LAM = [0.6, 1.3, 2.0, -0.4, 3.7]
GRID_ALPHA = [0.3, -0.6, 1.5, -2.2, 0.75]


@pytest.mark.parametrize("lam", GRID_LAM)
@pytest.mark.parametrize("alpha", GRID_ALPHA)
def test_power_rule_grid(lam, alpha):
    s = op.fracdiff_power(lam, alpha)
    assert len(s.terms) == 1
    t = s.terms[0]
    ref = complex(mp.gamma(lam + 1) / mp.gamma(lam + 1 - alpha))
    assert abs(t.coeff - ref) <= 1e-12 * abs(ref)
    assert t.exponent == pytest.approx(lam - alpha, abs=1e-15)


def test_power_rule_pole_in_denominator():
    # d^3 z^2 = 0, d^0.5 z^-0.5 = 0
    assert op.fracdiff_power(2, 3).terms == ()
    assert op.fracdiff_power(-0.5, 0.5).terms == ()


def test_power_rule_complex_order():
    s = op.fracdiff_power(1.5, 0.5j)
    ref = complex(mp.gamma(2.5) / mp.gamma(2.5 - 0.5j))
    assert abs(s.terms[0].coeff - ref) < 1e-12 * abs(ref)


def test_goldens():
    s = op.fracdiff_power(2, 0.5)
    assert abs(only(s)[0] - 2 / complex(mp.gamma(2.5))) < 1e-12
    assert only(op.fracdiff_power(-1, -1)) == {1: 1}
    assert only(op.fracdiff_power(-2, -1)) == {0: -1}
    assert only(op.fracdiff_power(0, 1)) == {}
    s = op.fracdiff_power(-2, -7)
    z = sympy.symbols("z", positive=True)
    f = z**-2
    for _ in range(7):
        f = sympy.integrate(f, z)
    poly = sympy.Poly(sympy.expand(f / z**5).subs(sympy.log(z), sympy.Symbol("L")), sympy.Symbol("L"))
    ref = {deg[0]: complex(c) for deg, c in zip(poly.monoms(), poly.coeffs())}
    got = only(s)
    assert set(got) == set(ref)
    for j in ref:
        assert abs(got[j] - ref[j]) < 1e-15
    assert abs(got[0] - 137 / 7200) < 1e-16 and abs(got[1] + 1 / 120) < 1e-16


def test_literal_branch2_differs():
    # the printed power-law branch drops the harmonic-number part
    lit = op.power_rule_branch2(-2, -7)
    assert abs(lit[0] - 77 / 7200) < 1e-15
    assert abs(only(op.fracdiff_power(-2, -7))[0] - 137 / 7200) < 1e-15


@pytest.mark.parametrize("lam,alpha", [(-1, 0.5), (-2, -0.3), (-3, 1.7), (-1, -2.5)])
def test_log_producing_power_rule(lam, alpha):
    z = 1.7
    got = op.fracdiff_power(lam, alpha)(z)
    assert abs(got - fp_oracle(lam, 0, alpha, z)) < 1e-11 * max(1, abs(got))


@pytest.mark.parametrize("lam,alpha", [(0.5, 0.3), (-0.5, -0.7), (2, 1.5), (-1, -0.3), (-2, 0.4),
                                       (-1, 0.5), (1.2, -2.4)])
def test_log_rule_k1(lam, alpha):
    z = 1.7
    got = op.fracdiff_power_log(lam, 1, alpha)
    assert not got.approximate
    assert abs(got(z) - fp_oracle(lam, 1, alpha, z)) < 1e-10 * max(1, abs(got(z)))


def test_log_rule_frozen_value():
    # lam = -1, alpha = -0.3, z = 1.7 [frozen from the mpmath Laurent oracle]
    assert abs(op.fracdiff_power_log(-1, 1, -0.3)(1.7) - 0.154829952041381) < 1e-12


@pytest.mark.parametrize("lam,k,alpha", [(0.5, 2, 0.3), (-1, 2, -0.3), (1.5, 3, -0.5), (-2, 2, 0.6)])
def test_log_rule_higher_k(lam, k, alpha):
    z = 1.3
    got = op.fracdiff_power_log(lam, k, alpha)
    assert got.approximate
    assert abs(got(z) - fp_oracle(lam, k, alpha, z)) < 1e-7 * max(1, abs(got(z)))


def test_log_rule_integer_orders_exact():
    # d/dz (z^2 log z) = 2 z log z + z
    assert only(op.fracdiff_power_log(2, 1, 1)) == {1: 2, 0: 1}
    # d^-1 log z = z log z - z
    assert only(op.fracdiff_power_log(0, 1, -1)) == {1: 1, 0: -1}


def test_laurent_matches_closed_forms():
    for lam, alpha in [(0.3, 0.4), (-1, -0.3), (-2, 0.7)]:
        closed, _ = op.term_rule(lam, 1, alpha)
        num = op._laurent_rule(lam, 1, alpha)
        for j in set(closed) | set(num):
            assert abs(closed.get(j, 0) - num.get(j, 0)) < 1e-12


def test_numeric_fallback_off():
    with pytest.raises(NotImplementedError):
        op.fracdiff_power_log(0.5, 2, 0.3, numeric_fallback=False)


# criteria properties

polys = st.lists(st.floats(-3, 3), min_size=1, max_size=6)


def poly_series(cs, base=0.0):
    return PowerLogSeries.from_terms([PowerLogTerm(c, base, n) for n, c in enumerate(cs)], len(cs))


@settings(max_examples=40, deadline=None)
@given(polys, st.sampled_from([0.0, 0.5, -0.3, 1.7]))
def test_identity(cs, base):
    s = poly_series(cs, base)
    assert op.fracdiff_series(s, 0) == PowerLogSeries(s.terms, s.truncation_order, "d^0[]")


@settings(max_examples=40, deadline=None)
@given(polys, polys, st.floats(-2, 2), st.floats(-2, 2), st.sampled_from([0.3, -0.7, 1.5, 2.5]))
def test_linearity(c1, c2, a, b, alpha):
    f = poly_series(c1, 0.5)
    g = poly_series(c2, 0.5)
    lhs = op.fracdiff_series(scale(f, a) + scale(g, b), alpha)
    rhs = scale(op.fracdiff_series(f, alpha), a) + scale(op.fracdiff_series(g, alpha), b)
    assert coeff_distance(lhs, rhs) < 1e-13 * 100


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("lam", [0.5, 2.3, -1.5, 3.0, 7.25])
def test_integer_consistency(m, lam):
    got = only(op.fracdiff_power(lam, m)).get(0, 0)
    ref = math.prod(lam - j for j in range(m))
    assert abs(got - ref) < 1e-13 * max(1, abs(ref))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_negative_integer_is_iterated_antiderivative(m):
    cs = [1, -2, 0.5, 3]
    z = sympy.symbols("z")
    f = sum(sympy.Rational(c).limit_denominator() * z**n for n, c in enumerate(cs))
    for _ in range(m):
        f = sympy.integrate(f, (z, 0, z))
    ref = sympy.Poly(f, z)
    got = op.fracdiff_series(poly_series(cs), -m)
    got_map = {int(t.exponent.real): t.coeff for t in got.terms}
    for (deg,), c in zip(ref.monoms(), ref.coeffs()):
        assert abs(got_map[deg] - float(c)) < 1e-13


SEMI = [(lam, mu, a) for lam in (0.5, 1.3, 2.0) for mu in (0.4, -0.3, 1.2) for a in (0.25, -0.6, 0.8)]


@pytest.mark.parametrize("lam,mu,alpha", SEMI)
def test_semigroup(lam, mu, alpha):
    for x in (lam, lam - mu, lam - mu - alpha):
        assert not (x < 0 and x == int(x))
    two = op.fracdiff_series(op.fracdiff_power(lam, mu), alpha)
    one = op.fracdiff_power(lam, mu + alpha)
    assert coeff_distance(two, one) < 1e-12 * max(1, abs(one.terms[0].coeff))


def test_product_rule_matches_direct():
    f = PowerLogSeries.monomial(1, 0.5)
    g = build("exp", None, 12)
    direct = op.fracdiff_series(f * g, 0.4)
    leib = op.fracdiff_product(f, g, 0.4, k_max=30)
    assert coeff_distance(direct, leib) < 1e-12


def test_product_rule_integer_order_finite():
    f = build("sin", None, 10)
    g = PowerLogSeries.monomial(1, 2)
    assert coeff_distance(op.fracdiff_product(f, g, 2), op.fracdiff_series(f * g, 2)) < 1e-13


def test_binomial():
    assert op.binomial(0.5, 0) == 1
    assert abs(op.binomial(0.5, 3) - complex(mp.binomial(0.5, 3))) < 1e-16


# closed forms


@pytest.mark.parametrize("z", [0.25, 1.0, 4.0])
def test_closed_form_exp(z):
    half = op.fracdiff_closed_form("exp", -0.5)
    assert abs(half(z) - math.exp(z) * math.erf(math.sqrt(z))) < 1e-12 * math.exp(z)
    three = op.fracdiff_closed_form("exp", -3)
    assert abs(three(z) - (math.exp(z) - z * z / 2 - z - 1)) < 1e-12 * math.exp(z)


@pytest.mark.parametrize("alpha", [0.3, 0.7, 1.5, -0.4])
def test_closed_form_sin(alpha):
    cf = op.fracdiff_closed_form("sin", alpha)
    s = op.fracdiff_series(build("sin", None, 40), alpha)
    for z in (0.25, 1.0, 2.5):
        assert abs(cf(z) - s(z)) < 1e-10


def test_closed_form_sin_at_order_zero():
    cf = op.fracdiff_closed_form("sin", 0)
    assert cf(0.7) == pytest.approx(math.sin(0.7), rel=1e-15)


def test_closed_form_exp_sq_identity():
    cf = op.fracdiff_closed_form("exp_sq", 1e-300)
    assert abs(cf(0.5) - math.exp(0.25)) < 1e-12


def test_closed_form_sqrt_and_power():
    cf = op.fracdiff_closed_form("sqrt", 0.3)
    assert abs(cf(2.0) - op.fracdiff_power(0.5, 0.3)(2.0)) < 1e-14
    assert op.fracdiff_closed_form("power", 0.5, {"lam": 2}).formula.startswith("1.50")
    with pytest.raises(UnknownFunctionError):
        op.fracdiff_closed_form("tan", 0.5)


# differential constants

# interior points of each sector plus the four boundary rays, exactly representable
SECTOR_POINTS = [cmath.rect(1.3, th) for th in (0.7, 2.0, -2.5, -0.4, -3.0, 1.9)]
SECTOR_POINTS += [1.3 + 0j, 1.3j, -1.3 + 0j, -1.3j]


@pytest.mark.parametrize("kind", ["sqrt_sq_over_z", "log_sq_minus_2log"])
def test_diffconst_sectors(kind):
    d = op.DiffConstExpr(kind)
    for z in SECTOR_POINTS:
        assert abs(d(z) - d.direct(z)) < 1e-14


def test_diffconst_examples():
    assert op.DiffConstExpr("sqrt_sq_over_z")(-1) == -1
    assert op.DiffConstExpr("sqrt_sq_over_z").direct(-1) == -1
    assert op.DiffConstExpr("sqrt_sq_over_z")(-1j) == -1
    assert op.DiffConstExpr("log_sq_minus_2log")(-1j) == 2j * math.pi
    assert op.DiffConstExpr("log_sq_minus_2log")(1j) == 0
    assert op.DiffConstExpr("log_sq_minus_2log")(cmath.rect(1, -2.5)) == 2j * math.pi
    assert op.DiffConstExpr("log_sq_minus_2log")(cmath.rect(1, 2.5)) == -2j * math.pi


@pytest.mark.parametrize("kind", ["sqrt_sq_over_z", "log_sq_minus_2log"])
@pytest.mark.parametrize("alpha", [0, 0.5, -0.7, 1.3])
def test_diffconst_derivative(kind, alpha):
    d = op.DiffConstExpr(kind, 2.0)
    dd = op.diffconst_fracdiff(d, alpha)
    for z in SECTOR_POINTS:
        assert abs(dd(z) - dd.direct(z)) <= 1e-14 * max(1, abs(dd(z)))
        if alpha == 0:
            assert dd(z) == d(z)
            assert abs(dd.direct(z) - d.direct(z)) < 1e-14
