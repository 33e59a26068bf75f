from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lnd_lab import Polynomial, RingDesc, print_poly, substitute, univariate_ext_gcd
from lnd_lab.errors import (
    ExponentOverflowError,
    InvertibleVariableError,
    NegativePowerOfNonInvertibleError,
    NonUnitImageForInvertibleError,
    NotUnivariateError,
    PolySyntaxError,
    RingMismatchError,
    UnknownVariableError,
)
from lnd_lab.poly import GREVLEX, LEX, dense_divmod, partial_derivative, to_dense
from strategies import nonzero_polys, polys

XY = RingDesc(("x", "y"), order=LEX)
XYZ = RingDesc(("x", "y", "z"), order=LEX)
XYZ_G = RingDesc(("x", "y", "z"), order=GREVLEX)
LAURENT = RingDesc(("x", "z", "w"), invertible=frozenset({"x"}), order=LEX)
UNI = RingDesc(("x",), order=LEX)


def test_parse_three_terms():
    f = XY.parse("x^2 + y^2 - 1")
    assert len(f) == 3
    assert f.coefficient((0, 0)) == -1


def test_parse_zero():
    f = XY.parse("0")
    assert f.is_zero() and len(f) == 0
    assert print_poly(f) == "0"


def test_parse_laurent_expansion():
    # x^-2*(z^2+w^3) = x^-2 z^2 + x^-2 w^3
    f = LAURENT.parse("x^-2*(z^2+w^3)")
    assert dict(f.terms()) == {(-2, 2, 0): Fraction(1), (-2, 0, 3): Fraction(1)}


def test_parse_rationals_and_parentheses():
    f = XY.parse("3/2*x*y - (x - 1)^2")
    assert f == Polynomial(XY, {(1, 1): Fraction(3, 2), (2, 0): -1, (1, 0): 2, (0, 0): -1})


@pytest.mark.parametrize(
    "text, pos",
    [("x +", 3), ("x ** 2", 3), ("2x", 1), ("x^", 2), ("(x + y", 6), ("x / 0", 2)],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(PolySyntaxError) as info:
        XY.parse(text)
    assert info.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        XY.parse("x + q")


def test_negative_power_needs_invertible():
    with pytest.raises(NegativePowerOfNonInvertibleError):
        XY.parse("x^-1")
    with pytest.raises(NegativePowerOfNonInvertibleError):
        LAURENT.parse("z^-1")


def test_printer_canonical_forms():
    assert str(XY.parse("y^2 + x^2 - 1")) == "x^2 + y^2 - 1"
    assert str(XY.parse("3/2*y*x")) == "3/2*x*y"
    assert str(XY.parse("-x + 1/3")) == "-x + 1/3"
    assert str(LAURENT.parse("-x^-2*z^2")) == "-x^-2*z^2"


def test_grevlex_order_prints_by_total_degree():
    assert str(XYZ_G.parse("x^2 + y*z^2")) == "y*z^2 + x^2"
    assert str(XYZ.parse("x^2 + y*z^2")) == "x^2 + y*z^2"


def test_ring_ops_examples():
    x, y = XY.gens()
    assert (x + y) * (x - y) == x**2 - y**2
    f = XY.parse("x^3 - 2*y")
    assert f + 0 == f and f + XY.zero == f


def test_fm_square_has_three_terms():
    R = RingDesc(("x1", "x2", "y1", "y2"))
    f = R.parse("(x2*y1 - x1*y2)^2")
    # x2^2 y1^2 - 2 x1 x2 y1 y2 + x1^2 y2^2
    assert f == R.parse("x2^2*y1^2 - 2*x1*x2*y1*y2 + x1^2*y2^2")
    assert len(f) == 3


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        XY.var("x") + XYZ.var("x")


def test_exponent_overflow():
    with pytest.raises(ExponentOverflowError):
        Polynomial(XY, {(2**31, 0): 1})
    with pytest.raises(ExponentOverflowError):
        XY.var("x") ** (2**31)


def test_partial_derivative_examples():
    assert partial_derivative(XY.parse("x^3"), "x") == XY.parse("3*x^2")
    assert partial_derivative(XY.parse("y^2 + 1"), "y") == XY.parse("2*y")
    with pytest.raises(InvertibleVariableError):
        partial_derivative(LAURENT.parse("x*z"), "x")
    with pytest.raises(UnknownVariableError):
        partial_derivative(XY.parse("x"), "q")


def test_substitute_examples():
    f = XYZ.parse("x^2*z - (y^2 + x^2*y + 1)")
    shifted = substitute(f, {"z": XYZ.parse("z + y")})
    assert shifted == XYZ.parse("x^2*z - (y^2 + 1)")
    assert substitute(f, {}) == f
    p = XY.parse("x*y + y^3 - 2")
    assert substitute(p, {"x": XY.zero}) == XY.parse("y^3 - 2")


def test_substitute_invertible_needs_unit():
    f = LAURENT.parse("x^-1*z")
    assert substitute(f, {"x": LAURENT.parse("2*x")}) == LAURENT.parse("1/2*x^-1*z")
    with pytest.raises(NonUnitImageForInvertibleError):
        substitute(f, {"x": LAURENT.parse("x + 1")})


def test_ext_gcd_examples():
    x = UNI.var("x")
    g, u, v = univariate_ext_gcd(x**2, x + 1)
    # x^2 - (x - 1)(x + 1) = 1
    assert (g, u, v) == (UNI.one, UNI.one, UNI.parse("1 - x"))
    f = UNI.parse("2*x^2 + 4")
    g, u, v = univariate_ext_gcd(f, UNI.zero)
    assert g == UNI.parse("x^2 + 2") and u == UNI.const(Fraction(1, 2)) and v.is_zero()
    g, _, _ = univariate_ext_gcd(x**2 - 1, x - 1)
    assert g == x - 1


def test_ext_gcd_not_univariate():
    with pytest.raises(NotUnivariateError):
        univariate_ext_gcd(XY.parse("x*y"), XY.parse("x"))
    with pytest.raises(NotUnivariateError):
        univariate_ext_gcd(XY.parse("x"), XY.parse("y"))


# properties

@given(polys(XYZ))
def test_print_parse_roundtrip(f):
    assert XYZ.parse(print_poly(f)) == f
    assert print_poly(XYZ.parse(print_poly(f))) == print_poly(f)


@given(polys(LAURENT, laurent=True))
def test_print_parse_roundtrip_laurent(f):
    assert LAURENT.parse(str(f)) == f


@given(polys(XYZ), polys(XYZ), polys(XYZ))
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f and f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f * 1 == f and f + 0 == f and f - f == 0


@given(polys(XYZ), polys(XYZ), st.sampled_from(["x", "y", "z"]))
def test_partial_leibniz(f, g, v):
    d = lambda p: partial_derivative(p, v)  # noqa: E731
    assert d(f * g) == f * d(g) + g * d(f)
    assert d(f + 3 * g) == d(f) + 3 * d(g)


@given(polys(XYZ), polys(XYZ), polys(XYZ, max_terms=2), polys(XYZ, max_terms=2))
def test_substitute_is_a_ring_map(f, g, a, b):
    s = {"x": a, "z": b}
    assert substitute(f + g, s) == substitute(f, s) + substitute(g, s)
    assert substitute(f * g, s) == substitute(f, s) * substitute(g, s)


@given(polys(XYZ, max_terms=3), polys(XYZ, max_terms=3))
def test_multiplication_matches_sympy(f, g):
    sx = sympy.symbols("x y z")

    def to_sym(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(sx, m)]) for m, c in p.terms())

    prod = sympy.Poly(sympy.expand(to_sym(f) * to_sym(g)), *sx)
    ours = {m: c for m, c in (f * g).terms()}
    theirs = {m: Fraction(int(c.p), int(c.q)) for m, c in prod.terms() if c != 0}
    assert ours == theirs


@given(nonzero_polys(UNI, max_exp=5), nonzero_polys(UNI, max_exp=5))
def test_ext_gcd_bezout(a, b):
    g, u, v = univariate_ext_gcd(a, b)
    assert u * a + v * b == g
    assert g.lc == 1
    for p in (a, b):
        _, r = dense_divmod(to_dense(p, "x"), to_dense(g, "x") if not g.is_constant() else [Fraction(1)])
        assert not r
