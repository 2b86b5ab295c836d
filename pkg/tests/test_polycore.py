from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgering.polycore import (
    MonomialOrder,
    NotHomogeneousError,
    Polynomial,
    PolynomialSyntaxError,
    Q,
    UnknownVariableError,
    dehomogenize,
    euler_check,
    format_polynomial,
    homogenize,
    linear_change,
    monomials_of_degree,
    parse_polynomial,
    partial_derivative,
    rational_str,
    translate_to_origin,
)

V = ["x", "y", "z"]


def P(s, names=V):
    return parse_polynomial(s, names)


# strategies

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def polys(nvars=3, max_deg=4, max_terms=6):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)])
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(d, nvars))


def homogeneous_polys(nvars=4, deg=3):
    monos = monomials_of_degree(deg, nvars)
    return st.dictionaries(st.sampled_from(monos), coeffs.filter(bool), min_size=1, max_size=8).map(
        lambda d: Polynomial(d, nvars))


points = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=4) for _ in range(3)])


def test_rational_is_canonical():
    q = Q(Fraction(6, -4))
    assert q == mpq(-3, 2)
    assert q.denominator > 0
    assert rational_str(q) == "-3/2"
    assert rational_str(Q(4)) == "4"
    with pytest.raises(TypeError):
        Q(0.5)


def test_parse_examples():
    f = P("x^2+y^2+z^2")
    assert len(f.terms) == 3 and f.degree == 2
    g = P("x^7+x^4*y^2+x^2*y^4+y^7+z^2")
    assert len(g.terms) == 5 and g.degree == 7


def test_parse_coefficients_and_implicit_product():
    f = P("3/2 x^2 - 2*x*y - 1/3*z")
    assert f.coefficient((2, 0, 0)) == mpq(3, 2)
    assert f.coefficient((1, 1, 0)) == -2
    assert f.coefficient((0, 0, 1)) == mpq(-1, 3)
    assert P("2x y") == P("2*x*y")
    assert P("x*x*y") == P("x^2*y")
    assert P("0") == Polynomial.zero(3)


def test_parse_errors():
    with pytest.raises(UnknownVariableError) as e:
        P("x^2+q", ["x", "y"])
    assert "q" in str(e.value)
    with pytest.raises(PolynomialSyntaxError) as e:
        P("x^2+")
    assert e.value.position == 4
    with pytest.raises(PolynomialSyntaxError):
        P("x^1.5")
    with pytest.raises(PolynomialSyntaxError):
        P("x^-2")
    with pytest.raises(PolynomialSyntaxError):
        P("(x+y)")


def test_canonical_printing():
    assert format_polynomial(P("y - x^2 + 3/2*x*z"), V) == "-x^2+3/2*x*z+y"
    assert format_polynomial(Polynomial.zero(3), V) == "0"


@settings(max_examples=150, deadline=None)
@given(polys())
def test_parse_print_round_trip(f):
    assert parse_polynomial(format_polynomial(f, V), V) == f


def test_partial_derivatives():
    assert partial_derivative(P("x^2+y^3", ["x", "y"]), 0) == P("2*x", ["x", "y"])
    assert partial_derivative(P("x^7+x^4*y^2+x^2*y^4+y^7+z^2"), 2) == P("2*z")
    assert partial_derivative(P("y^3", ["x", "y"]), 0).is_zero()
    with pytest.raises(IndexError):
        partial_derivative(P("x"), 3)


@settings(max_examples=100, deadline=None)
@given(polys(max_terms=4), polys(max_terms=4), st.integers(0, 2))
def test_leibniz_rule(f, g, i):
    assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@settings(max_examples=100, deadline=None)
@given(polys(max_terms=5), st.integers(0, 2))
def test_derivative_drops_degree_by_one(f, i):
    d = f.diff(i)
    if not d.is_zero():
        # the top-degree part may differentiate to zero, never raise the degree
        assert d.degree <= f.degree - 1
        top = f.homogeneous_part(f.degree).diff(i)
        if not top.is_zero():
            assert d.degree == f.degree - 1


def test_euler_examples():
    assert euler_check(P("X0^4+X1^4+X2^4+X3^4", ["X0", "X1", "X2", "X3"]))
    assert euler_check(P("X0*X1^3", ["X0", "X1"]))
    with pytest.raises(NotHomogeneousError):
        euler_check(P("X0^2+X1^3", ["X0", "X1"]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda d: homogeneous_polys(deg=d)))
def test_euler_identity_random(F):
    lhs = Polynomial.zero(F.nvars)
    for i in range(F.nvars):
        lhs = lhs + Polynomial.variable(i, F.nvars) * F.diff(i)
    assert lhs == F * F.degree
    assert euler_check(F)


def test_translate_examples():
    assert translate_to_origin(P("x^2", ["x"]), [1]) == P("x^2+2*x+1", ["x"])
    f = P("x^2+y^2", ["x", "y"])
    assert translate_to_origin(f, [0, 0]) == f
    # direct expansion of (x+1)(y-1)
    assert translate_to_origin(P("x*y", ["x", "y"]), [1, -1]) == P("x*y-x+y-1", ["x", "y"])


@settings(max_examples=100, deadline=None)
@given(polys(max_deg=3, max_terms=5), points)
def test_translate_round_trip(f, p):
    g = translate_to_origin(f, p)
    assert translate_to_origin(g, [-c for c in p]) == f
    assert g.constant_term() == f.evaluate(p)


def test_dehomogenize_examples():
    W = ["X0", "X1", "X2"]
    assert dehomogenize(P("X0^2+X1^2", W[:2]), 0) == P("1+x^2", ["x"])
    assert dehomogenize(P("X0*X1-X2^2", W), 0) == P("x-y^2", ["x", "y"])
    assert dehomogenize(P("X1^3", W[:2]), 1) == Polynomial.constant(1, 1)
    with pytest.raises(NotHomogeneousError):
        dehomogenize(P("X0+X1^2", W[:2]), 0)


@settings(max_examples=60, deadline=None)
@given(homogeneous_polys(), st.integers(0, 3))
def test_homogenize_inverts_dehomogenize(F, chart):
    f = dehomogenize(F, chart)
    assert homogenize(f, chart, F.degree) == F


def test_linear_change_substitutes_columns():
    f = P("x^2-y^2", ["x", "y"])
    # x -> x + y, y -> x - y turns x^2 - y^2 into 4xy
    assert linear_change(f, [[1, 1], [1, -1]]) == P("4*x*y", ["x", "y"])


def test_monomial_orders():
    glob = MonomialOrder.grevlex(2)
    loc = MonomialOrder.local(2)
    one, x, y2 = (0, 0), (1, 0), (0, 2)
    assert glob.key(one) < glob.key(x) < glob.key(y2)
    assert loc.key(one) > loc.key(x) > loc.key(y2)
    w = MonomialOrder.local(2, [3, 2])
    assert w.degree((1, 1)) == 5
    with pytest.raises(ValueError):
        MonomialOrder.local(2, [0, 1])


def test_monomials_of_degree_count():
    from math import comb

    for n in range(1, 5):
        for k in range(6):
            monos = monomials_of_degree(k, n)
            assert len(monos) == comb(k + n - 1, n - 1)
            assert len(set(monos)) == len(monos)
