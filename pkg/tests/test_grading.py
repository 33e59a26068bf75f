import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lnd_lab import (
    NEG_INFINITY,
    DanielewskiSpec,
    Grading,
    KorasRussellSpec,
    Polynomial,
    RingDesc,
    affine,
    danielewski,
    danielewski_std_lnds,
    define_derivation,
    deg_g,
    deg_g_derivation,
    induced_derivation,
    is_homogeneous,
    kernel_basis_bounded,
    present,
    top_summand,
)
from lnd_lab.catalog import KR_AMBIENT, kr_graded_generation_check, kr_grading, kr_identity_residue, kr_y_lift
from lnd_lab.errors import RingMismatchError, ZeroDerivationError
from lnd_lab.grading import scale
from lnd_lab.poly import LEX
from strategies import nonzero_polys, polys, weight_vectors

XY = RingDesc(("x", "y"), order=LEX)
XYZ = RingDesc(("x", "y", "z"), order=LEX)
KR = KorasRussellSpec(2, 2, 3)
G = kr_grading(KR)


def std(ring):
    return Grading(ring, {v: (1,) for v in ring.variables})


def test_kr_degrees():
    assert deg_g(kr_y_lift(KR), G) == (2, -6, 0)
    assert deg_g(KR_AMBIENT.var("x"), G) == (-1, 0, 0)
    assert deg_g(KR_AMBIENT.zero, G) is NEG_INFINITY


def test_homogeneity():
    assert is_homogeneous(KR_AMBIENT.parse("z^2 + w^3"), G)
    assert not is_homogeneous(KR_AMBIENT.parse("x + z^2"), G)
    assert is_homogeneous(KR_AMBIENT.parse("-5*x^-3*z*t^2"), G)


def test_kr_top_summand():
    assert top_summand(kr_y_lift(KR), G) == KR_AMBIENT.parse("-x^-2*(z^2 + w^3)")
    f = KR_AMBIENT.parse("z^2 + w^3")
    assert top_summand(f, G) == f
    assert top_summand(KR_AMBIENT.zero, G).is_zero()


def test_kr_identity_and_generation():
    assert kr_identity_residue(KR).is_zero()
    report = kr_graded_generation_check(KR, N=2, samples=10)
    assert report["all_in_generated"] and report["ybar_outside_A"]


def test_grading_ring_mismatch():
    with pytest.raises(RingMismatchError):
        deg_g(XYZ.parse("x"), std(XY))


def test_derivation_degree_examples():
    A, parts = affine(2)
    assert deg_g_derivation(parts["dx"], std(XY)) == (-1,)
    spec = DanielewskiSpec(1, "y^2 + 1")
    D1, _ = danielewski_std_lnds(spec)
    assert deg_g_derivation(D1, std(XYZ)) == (0,)
    assert deg_g_derivation(D1, scale(std(XYZ), 2)) == (0,)
    assert deg_g_derivation(parts["dx"], scale(std(XY), 2)) == (-2,)


def test_zero_derivation():
    A, _ = affine(2)
    with pytest.raises(ZeroDerivationError):
        deg_g_derivation(define_derivation(A, {"x": "0", "y": "0"}), std(XY))


def test_induced_derivation_examples():
    D1, _ = danielewski_std_lnds(DanielewskiSpec(1, "y^2 + 1"))
    bar = induced_derivation(D1, std(XYZ))
    assert bar.table() == D1.table()
    A, _ = affine(2)
    D = define_derivation(A, {"x": "x^2", "y": "1"})
    bar = induced_derivation(D, std(XY))
    assert bar.table() == "x -> x^2; y -> 0"
    assert bar.degree == (1,)


# properties

LAURENT = RingDesc(("x", "y", "z"), invertible=frozenset({"x"}), order=LEX)


@st.composite
def graded_pair(draw):
    d = draw(st.integers(1, 2))
    gr = Grading(LAURENT, draw(weight_vectors(3, d)))
    f = draw(nonzero_polys(LAURENT, laurent=True))
    g = draw(nonzero_polys(LAURENT, laurent=True))
    return gr, f, g


@given(graded_pair())
def test_degree_additive_and_ultrametric(data):
    gr, f, g = data
    assert deg_g(f * g, gr) == tuple(a + b for a, b in zip(deg_g(f, gr), deg_g(g, gr)))
    s = f + g
    if not s.is_zero():
        assert deg_g(s, gr) <= max(deg_g(f, gr), deg_g(g, gr))


@given(graded_pair())
def test_top_summand_multiplicative_idempotent(data):
    gr, f, g = data
    assert top_summand(f * g, gr) == top_summand(f, gr) * top_summand(g, gr)
    t = top_summand(f, gr)
    assert top_summand(t, gr) == t
    assert deg_g(t, gr) == deg_g(f, gr)


def _triangular(seed):
    rng = random.Random(seed)

    def rand_poly(allowed):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            m = tuple(rng.randint(0, 2) if i in allowed else 0 for i in range(3))
            terms[m] = rng.choice([-2, -1, 1, 2, 3])
        return Polynomial(XYZ, terms)

    A = present(XYZ, [])
    return define_derivation(A, {"x": XYZ.zero, "y": rand_poly({0}), "z": rand_poly({0, 1})})


@given(st.integers(0, 10**6), weight_vectors(3, 1, -2, 3), polys(XYZ, max_exp=2))
def test_derivation_degree_bounds_every_element(seed, weights, f):
    D = _triangular(seed)
    gr = Grading(XYZ, weights)
    assume(not D.is_zero())
    Df = D(f).rep
    assume(not Df.is_zero() and not f.is_zero())
    gap = tuple(a - b for a, b in zip(deg_g(Df, gr), deg_g(f, gr)))
    assert gap <= deg_g_derivation(D, gr)


@given(st.integers(0, 10**6), weight_vectors(3, 2, -2, 3), st.randoms(use_true_random=False))
def test_kernel_lands_in_induced_kernel(seed, weights, rnd):
    D = _triangular(seed)
    assume(not D.is_zero())
    gr = Grading(XYZ, weights)
    bar = induced_derivation(D, gr)
    basis = [e.rep for e in kernel_basis_bounded(D, 3).basis]
    for _ in range(3):
        f = sum((rnd.randint(-3, 3) * b for b in basis), XYZ.zero)
        f = f * basis[rnd.randrange(len(basis))]
        assert D(f).is_zero()
        assert bar(top_summand(f, gr)).is_zero()
