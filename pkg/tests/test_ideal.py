import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lnd_lab import RingDesc, groebner, in_ideal, irreducible_q, normal_form
from lnd_lab.errors import ConstantInputError, LaurentUnsupportedError, NotUnivariateError, RingMismatchError
from lnd_lab.ideal import DEFAULT_PRIMES, _spoly
from lnd_lab.poly import GREVLEX, LEX
from strategies import polys

XY = RingDesc(("x", "y"), order=LEX)
XYZ = RingDesc(("x", "y", "z"), order=LEX)
XYZW = RingDesc(("x", "y", "z", "w"), order=LEX)
Y = RingDesc(("y",), order=LEX)


def _sympy_gb(ring, gens):
    syms = sympy.symbols(ring.variables)
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(ring.variables, syms))) for g in gens]
    order = "lex" if ring.order == LEX else "grevlex"
    G = sympy.groebner(exprs, *syms, order=order, domain="QQ")
    out = set()
    for g in G.exprs:
        p = sympy.Poly(g, *syms)
        out.add(frozenset((m, Fraction(int(c.p), int(c.q))) for m, c in p.terms()))
    return out


def _ours(gb):
    return {frozenset(g.terms()) for g in gb}


def test_single_generator_is_its_own_basis():
    f = XY.parse("x^2 + y^2 - 1")
    assert list(groebner([f])) == [f]
    g = XYZW.parse("x*z - y*w - 1")
    assert list(groebner([g])) == [g]


def test_basis_is_made_monic():
    gb = groebner([XY.parse("2*x - 4*y")])
    assert [str(g) for g in gb] == ["x - 2*y"]


def test_two_generator_basis_has_univariate_element():
    # x^2 - y, y^2 - x under lex x > y: x = y^2 and y^4 - y
    gb = groebner([XY.parse("x^2 - y"), XY.parse("y^2 - x")])
    assert [str(g) for g in gb] == ["x - y^2", "y^4 - y"]
    assert gb.generators[-1].support_variables() == ["y"]


def test_normal_form_single_step():
    gb = groebner([XYZ.parse("x*z - y^2 - 1")])
    assert normal_form(XYZ.parse("x*z"), gb) == XYZ.parse("y^2 + 1")


def test_membership_examples():
    gb = groebner([XYZW.parse("x*z - y*w - 1")])
    assert in_ideal(XYZW.parse("x*z - y*w - 1"), gb)
    # stability sum of the printed first table: nonzero remainder
    assert not in_ideal(XYZW.parse("x*y + z*w"), gb)
    assert in_ideal(XYZW.zero, gb)


def test_laurent_rejected():
    R = RingDesc(("x", "y"), invertible=frozenset({"x"}))
    with pytest.raises(LaurentUnsupportedError):
        groebner([R.parse("x*y - 1")])


def test_ring_mismatch():
    gb = groebner([XY.parse("x - y")])
    with pytest.raises(RingMismatchError):
        normal_form(XYZ.parse("x"), gb)


@pytest.mark.parametrize(
    "ring, gens",
    [
        (XY, ["x^2 - y", "y^2 - x"]),
        (XYZ, ["x*z - y^2 - 1", "x^2 - y"]),
        (XYZ, ["x^2 + y*z - 2", "y^2 - x*z + 1", "x*y*z - 1"]),
        (RingDesc(("x", "y", "z"), order=GREVLEX), ["x^2 + y*z - 2", "y^2 - x*z + 1"]),
        (XYZW, ["x*z - y*w - 1", "x - w"]),
    ],
)
def test_groebner_matches_sympy(ring, gens):
    polys_ = [ring.parse(g) for g in gens]
    assert _ours(groebner(polys_)) == _sympy_gb(ring, polys_)


def test_irreducible_examples():
    assert irreducible_q(Y.parse("y^2 + 1")).kind == "irreducible"
    v = irreducible_q(Y.parse("y^2 - 1"))
    assert v.kind == "reducible"
    assert str(v.witness) in ("y - 1", "y + 1")


def _has_factor_mod(coeffs, p):
    """Brute force: does the monic quartic/quadratic have a proper factor mod p?"""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = [c % p for c in coeffs]
            for shift in range(deg - d, -1, -1):
                q = rem[shift + d]
                for k, b in enumerate(divisor):
                    rem[shift + k] = (rem[shift + k] - q * b) % p
            if not any(rem[:d]):
                return True
    return False


def test_quartic_is_indeterminate_and_reducible_mod_every_prime():
    # oracle first: y^4 + 1 splits mod every prime below 50
    coeffs = [1, 0, 0, 0, 1]
    assert all(_has_factor_mod(coeffs, p) for p in DEFAULT_PRIMES)
    v = irreducible_q(Y.parse("y^4 + 1"))
    assert v.kind == "indeterminate"
    assert v.primes == tuple(DEFAULT_PRIMES)


def test_irreducible_errors():
    with pytest.raises(ConstantInputError):
        irreducible_q(Y.parse("3"))
    with pytest.raises(NotUnivariateError):
        irreducible_q(XY.parse("x*y + 1"))


# properties

REL = [XYZ.parse("x^2*z - y^2 - 1"), XYZ.parse("y^3 - x*z")]
GB = groebner(REL)


@given(polys(XYZ), polys(XYZ))
def test_normal_form_idempotent_linear_multiplicative(f, g):
    nf = lambda p: normal_form(p, GB)  # noqa: E731
    assert nf(nf(f)) == nf(f)
    assert nf(f + 2 * g) == nf(f) + 2 * nf(g)
    assert nf(f * g) == nf(nf(f) * nf(g))


def test_generators_and_spolys_reduce_to_zero():
    for r in REL:
        assert in_ideal(r, GB)
    for a, b in itertools.combinations(GB.generators, 2):
        assert in_ideal(_spoly(a, b), GB)
    # reduced: no term of one generator is divisible by another's leading monomial
    for a, b in itertools.permutations(GB.generators, 2):
        for m in a.monomials():
            assert not all(x >= y for x, y in zip(m, b.lm))


@given(st.permutations([XYZ.parse("x^2 + y*z - 2"), XYZ.parse("y^2 - x*z + 1"), XYZ.parse("x*y - z")]))
def test_groebner_permutation_invariant(gens):
    assert list(groebner(gens)) == list(groebner([XYZ.parse("x^2 + y*z - 2"), XYZ.parse("y^2 - x*z + 1"), XYZ.parse("x*y - z")]))


def _rational_roots(coeffs):
    """All rational roots p/q with p | a0, q | an of an integer polynomial."""
    a0 = next(c for c in coeffs if c)
    an = coeffs[-1]
    roots = {Fraction(0)} if coeffs[0] == 0 else set()
    for p in range(1, abs(a0) + 1):
        if a0 % p:
            continue
        for q in range(1, abs(an) + 1):
            if an % q:
                continue
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r**k for k, c in enumerate(coeffs)) == 0:
                    roots.add(r)
    return roots


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda c: c[-1] != 0 and any(c[1:])))
def test_irreducible_never_claimed_with_rational_root(coeffs):
    p = sum((Y.const(c) * Y.var("y") ** k for k, c in enumerate(coeffs)), Y.zero)
    v = irreducible_q(p)
    if _rational_roots(coeffs) and p.degree("y") > 1:
        assert v.kind == "reducible"
    if v.kind == "reducible":
        from lnd_lab.poly import dense_divmod, to_dense

        _, r = dense_divmod(to_dense(p, "y"), to_dense(v.witness, "y"))
        assert not r
