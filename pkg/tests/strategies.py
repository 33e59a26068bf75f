"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from lnd_lab import Polynomial, RingDesc

SMALL_INTS = st.integers(min_value=-4, max_value=4)
RATIONALS = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=4),
)


def exponents(n, max_exp=3, min_exp=0):
    return st.tuples(*[st.integers(min_value=min_exp, max_value=max_exp)] * n)


def polys(ring: RingDesc, max_terms=4, max_exp=3, coeffs=RATIONALS, laurent=False):
    """Random polynomials of ``ring``; negative exponents only on invertible variables."""
    mins = [-2 if (laurent and inv) else 0 for inv in ring.invertible_mask]
    exps = st.tuples(*[st.integers(min_value=lo, max_value=max_exp) for lo in mins])
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: Polynomial(ring, t))


def nonzero_polys(ring: RingDesc, **kw):
    return polys(ring, **kw).filter(lambda f: not f.is_zero())


def weight_vectors(n, d=1, lo=-3, hi=3):
    return st.lists(
        st.tuples(*[st.integers(min_value=lo, max_value=hi)] * d),
        min_size=n,
        max_size=n,
    )


def int_vectors(dim, lo=-6, hi=6):
    return st.tuples(*[st.integers(min_value=lo, max_value=hi)] * dim)
