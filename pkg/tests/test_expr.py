import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdiff import expr as ex
from fracdiff.errors import ExprSyntaxError, UnknownIdentifierError, UnsupportedCompositionError
from fracdiff.expr import Add, Call, Const, Mul, Neg, Pow, Var


def test_parse_power():
    assert ex.parse("z^2") == Pow(Var(), 2)


def test_parse_subtraction():
    assert ex.parse("exp(z) - z - 1") == Add((Call("exp", (), Var()), Neg(Add((Var(), Const(1))))))


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as e:
        ex.parse("sin(2*z")
    assert (e.value.line, e.value.column) == (1, 8)


def test_multiline_position():
    with pytest.raises(ExprSyntaxError) as e:
        ex.parse("z +\n  * 2")
    assert (e.value.line, e.value.column) == (2, 3)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as e:
        ex.parse("z + foo(z)")
    assert e.value.column == 5


@pytest.mark.parametrize("text,want", [
    ("2+3i", Const(2 + 3j)),
    ("z*(1.5-2i)", Mul((Var(), Const(1.5 - 2j)))),
    ("2i*z", Mul((Const(2j), Var()))),
    ("pow(z, -1)", Pow(Var(), -1)),
    ("z^-0.5", Pow(Var(), -0.5)),
    ("bessel_j(1/3, z)", None),
    ("pi*z", Mul((Const(math.pi), Var()))),
])
def test_parse_literals(text, want):
    if want is None:
        with pytest.raises(ExprSyntaxError):
            ex.parse(text)
    else:
        assert ex.parse(text) == want


def test_call_arity_and_constant_params():
    assert ex.parse("mittag_leffler(0.5, 1, 2*z^0.5)").params == (0.5, 1)
    with pytest.raises(ExprSyntaxError):
        ex.parse("bessel_j(z)")
    with pytest.raises(ExprSyntaxError):
        ex.parse("z^z")


def test_parse_complex_helper():
    assert ex.parse_complex("1-2i") == 1 - 2j
    assert ex.parse_complex("3") == 3


# compiler


def test_compile_z_exp():
    s = ex.compile_expr("z*exp(z)", 20)
    for t in s.terms:
        n = int((t.base_exp + t.offset).real)
        assert abs(t.coeff - 1 / math.factorial(n - 1)) < 1e-15


def test_compile_sqrt_monomial():
    s = ex.compile_expr("z^0.5")
    assert len(s.terms) == 1 and s.terms[0].base_exp + s.terms[0].offset == 0.5


def test_compile_log_term():
    s = ex.compile_expr("log(z)*z^2")
    assert [(t.base_exp + t.offset, t.log_pow) for t in s.terms] == [(2, 1)]


def test_source_tag():
    assert ex.compile_expr("exp(z) - z - 1").source_tag == "exp(z) - z - 1"


@pytest.mark.parametrize("text", ["exp(exp(z))", "sin(z^0.5 + 1)", "log(z - 1)", "z^z"])
def test_unsupported(text):
    with pytest.raises((UnsupportedCompositionError, ExprSyntaxError)):
        ex.compile_expr(text)


def test_affine_and_binomial():
    z = 0.3 + 0.2j
    for text, f in [("exp(1+2*z)", lambda z: cmath.exp(1 + 2 * z)),
                    ("cos(0.5+z)", lambda z: cmath.cos(0.5 + z)),
                    ("sqrt(2+z)", lambda z: cmath.sqrt(2 + z)),
                    ("log(1+0.5*z)", lambda z: cmath.log(1 + 0.5 * z)),
                    ("(1+z)^(-1)", lambda z: 1 / (1 + z))]:
        assert abs(ex.compile_expr(text, 50)(z) - f(z)) < 1e-12


# round trip and compile/evaluate agreement on random trees

small = st.one_of(
    st.floats(0, 3, allow_nan=False).map(lambda x: round(x, 3)),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)
    .map(lambda c: complex(round(c.real, 2), round(c.imag, 2))),
)


def leaf():
    return st.one_of(st.just(Var()), small.map(Const))


def any_tree():
    return st.recursive(
        leaf(),
        lambda ch: st.one_of(
            st.lists(ch, min_size=2, max_size=3).map(lambda xs: Add(tuple(xs))),
            st.lists(ch, min_size=2, max_size=3).map(lambda xs: Mul(tuple(xs))),
            ch.map(Neg),
            st.tuples(ch, st.sampled_from([2, 0.5, -1, 1.5 + 1j])).map(lambda t: Pow(*t)),
            st.tuples(st.sampled_from(["exp", "sin", "log", "bessel_k0"]), ch)
            .map(lambda t: Call(t[0], (), t[1])),
            st.tuples(small, ch).map(lambda t: Call("bessel_j", (t[0],), t[1])),
        ),
        max_leaves=8,
    )


@settings(max_examples=200, deadline=None)
@given(any_tree())
def test_round_trip(tree):
    canonical = ex.parse(ex.to_text(tree))
    assert ex.parse(ex.to_text(canonical)) == canonical


# arguments each builder accepts: c*z, or d + c*z with d > 0 where needed
arg_z = st.sampled_from([1, 0.5, 2, -1, 0.5j]).map(lambda c: Mul((Const(c), Var())) if c != 1 else Var())
pos_arg = st.sampled_from([0.5, 1, 2]).map(lambda c: Mul((Const(c), Var())) if c != 1 else Var())
affine = st.tuples(st.sampled_from([1, 2]), st.sampled_from([0.5, -0.5, 1])).map(
    lambda t: Add((Const(t[0]), Mul((Const(t[1]), Var())))))

call = st.one_of(
    st.tuples(st.sampled_from(["exp", "sin", "cos"]), st.one_of(arg_z, affine))
    .map(lambda t: Call(t[0], (), t[1])),
    st.tuples(st.sampled_from(["log", "sqrt"]), st.one_of(pos_arg, affine))
    .map(lambda t: Call(t[0], (), t[1])),
    st.tuples(st.sampled_from([0.5, 1 / 3]), pos_arg).map(lambda t: Call("bessel_j", (t[0],), t[1])),
    arg_z.map(lambda a: Call("bessel_j", (2,), a)),
    pos_arg.map(lambda a: Call("bessel_k0", (), a)),
    st.just(Call("mittag_leffler", (0.5, 1), Mul((Const(2), Pow(Var(), 0.5))))),
    st.sampled_from([0.5, 1.5, -0.5]).map(lambda e: Pow(Var(), e)),
)
factor = st.one_of(call, small.map(Const), st.just(Var()))
product = st.lists(factor, min_size=1, max_size=3).map(lambda xs: xs[0] if len(xs) == 1 else Mul(tuple(xs)))
compilable = st.recursive(
    product,
    lambda ch: st.one_of(
        st.lists(ch, min_size=2, max_size=3).map(lambda xs: Add(tuple(xs))),
        ch.map(Neg),
        st.tuples(ch, st.sampled_from([0, 1, 2])).map(lambda t: Pow(*t)),
    ),
    max_leaves=5,
)


@settings(max_examples=200, deadline=None)
@given(compilable, st.sampled_from([0.3, 0.2 + 0.15j, 0.4 - 0.1j]))
def test_compile_matches_direct_evaluation(tree, z):
    direct = ex.evaluate(tree, z)
    got = ex.compile_expr(tree, 40)(z)
    assert abs(got - direct) < 1e-9 * max(1.0, abs(direct))
