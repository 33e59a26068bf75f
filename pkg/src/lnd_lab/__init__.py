"""Exact computations with locally nilpotent derivations of affine domains."""

from .algebra import Algebra, Element, coordinates, elem, present, std_monomials
from .catalog import (
    DanielewskiSpec,
    FinstonMaubachSpec,
    KorasRussellSpec,
    affine,
    cusp,
    danielewski,
    danielewski_normalize,
    danielewski_std_lnds,
    finston_maubach,
    koras_russell,
    quadric,
    resolve,
    sl2_quadric,
)
from .derivation import (
    INDETERMINATE,
    NEG_INFINITY,
    Derivation,
    NilpotencyCertificate,
    apply,
    certify_lnd,
    define_derivation,
    deg_d,
    in_kernel,
)
from .errors import *  # noqa: F401,F403
from .grading import (
    Grading,
    deg_g,
    deg_g_derivation,
    induced_derivation,
    is_homogeneous,
    top_summand,
)
from .ideal import GroebnerBasis, groebner, in_ideal, irreducible_q, normal_form
from .invariants import (
    KernelSlice,
    LinearMap,
    derivation_matrix,
    kernel_basis_bounded,
    lnd_search,
    ml_bounded,
)
from .lattice import Lattice, lattice_proper_in, lattice_span
from .poly import GREVLEX, LEX, Polynomial, RingDesc, print_poly, substitute, univariate_ext_gcd

__version__ = "0.1.0"
