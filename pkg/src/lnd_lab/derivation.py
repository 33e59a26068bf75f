"""Derivations of presented algebras given by generator images."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ._refute import refuted_within
from .algebra import Algebra, Element, elem
from .errors import AlgebraMismatchError, RingMismatchError, WellDefinednessError
from .ideal import normal_form
from .poly import Polynomial, formal_partial

DEFAULT_BOUND = 64


class Special(enum.Enum):
    NEG_INFINITY = "neg-infinity"
    INDETERMINATE = "indeterminate"

    def __str__(self):
        return self.value


NEG_INFINITY = Special.NEG_INFINITY
INDETERMINATE = Special.INDETERMINATE


def _lift_apply(images: list[Polynomial], f: Polynomial) -> Polynomial:
    """sum_i df/dx_i * images[i] in the ambient ring (no reduction)."""
    ring = f.ring
    acc = ring.zero
    for i, img in enumerate(images):
        if img.is_zero():
            continue
        d = formal_partial(f, i)
        if d:
            acc = acc + d * img
    return acc


def stability_residues(algebra: Algebra, images: Mapping[str, Polynomial]) -> list[tuple[Polynomial, Polynomial]]:
    """(relation, normal form of its stability sum) for every relation."""
    imgs = [images[v] for v in algebra.variables]
    return [(g, normal_form(_lift_apply(imgs, g), algebra.gb)) for g in algebra.relations]


class Derivation:
    """A derivation fixed by the images of the generators.

    Construction checks that every relation is sent into the ideal, so the
    action on normal-form representatives is well defined.
    """

    def __init__(self, algebra: Algebra, images: Mapping, label: str | None = None, check: bool = True):
        ring = algebra.ring
        polys = {}
        for v in algebra.variables:
            if v not in images:
                raise ValueError(f"no image given for generator {v!r}")
            img = images[v]
            if isinstance(img, Element):
                if img.algebra != algebra:
                    raise AlgebraMismatchError(f"image of {v} lives in another algebra")
                img = img.rep
            elif isinstance(img, str):
                img = ring.parse(img)
            elif not isinstance(img, Polynomial):
                img = ring.const(img)
            if img.ring != ring:
                raise RingMismatchError(f"image of {v} is not in {ring}")
            polys[v] = img
        for v in images:
            ring.index(v)
        if check:
            for g, residue in stability_residues(algebra, polys):
                if residue:
                    raise WellDefinednessError(g, residue)
        self.algebra = algebra
        self.images = {v: elem(algebra, p) for v, p in polys.items()}
        self.label = label
        self._imgs = [self.images[v].rep for v in algebra.variables]

    def image(self, var: str) -> Element:
        return self.images[var]

    def is_zero(self) -> bool:
        return all(not e for e in self.images.values())

    def __call__(self, a) -> Element:
        return apply(self, a)

    def table(self) -> str:
        return "; ".join(f"{v} -> {self.images[v]}" for v in self.algebra.variables)

    def __repr__(self):
        name = f"{self.label} " if self.label else ""
        return f"<Derivation {name}{self.table()}>"

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.algebra == other.algebra and self._imgs == other._imgs

    def __hash__(self):
        return hash((self.algebra, tuple(self._imgs)))


def define_derivation(algebra: Algebra, images: Mapping, label: str | None = None) -> Derivation:
    """Build a derivation, raising WellDefinednessError if the ideal is not preserved."""
    return Derivation(algebra, images, label)


def _as_element(D: Derivation, a) -> Element:
    if isinstance(a, Element):
        if a.algebra is not D.algebra and a.algebra != D.algebra:
            raise AlgebraMismatchError("element and derivation live in different algebras")
        return a
    return elem(D.algebra, a)


def apply(D: Derivation, a) -> Element:
    """D(a), computed on the normal-form lift and reduced."""
    a = _as_element(D, a)
    return Element(D.algebra.reduce(_lift_apply(D._imgs, a.rep)), D.algebra)


def in_kernel(D: Derivation, a) -> bool:
    return apply(D, a).is_zero()


def deg_d(D: Derivation, a, bound: int = DEFAULT_BOUND):
    """Largest n <= bound with D^n(a) != 0, when D^(n+1)(a) = 0.

    NEG_INFINITY for a = 0, INDETERMINATE if no zero shows up in time.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    a = _as_element(D, a)
    if a.is_zero():
        return NEG_INFINITY
    cur = a
    for n in range(bound + 1):
        nxt = apply(D, cur)
        if nxt.is_zero():
            return n
        cur = nxt
    return INDETERMINATE


@dataclass(frozen=True)
class NilpotencyCertificate:
    """Per-generator chains [Dx, D^2x, ..., 0] that all end in zero."""

    chains: dict
    bound_used: int

    def max_length(self) -> int:
        return max((len(c) for c in self.chains.values()), default=0)

    def verify(self, D: Derivation) -> bool:
        """Replay every chain and check it is reproduced exactly."""
        for v, chain in self.chains.items():
            cur = D.algebra.var(v)
            for entry in chain:
                cur = apply(D, cur)
                if cur != entry:
                    return False
            if chain and not chain[-1].is_zero():
                return False
        return True


def _normalized(p: Polynomial):
    # key identifying p up to a nonzero scalar
    lc = p.lc
    return frozenset((m, c / lc) for m, c in p.terms())


def _chain(D: Derivation, var: str, bound: int):
    """Chain of var up to ``bound`` applications, or None if it never hits zero.

    Stops early when D^k(x) is a nonzero multiple of an earlier D^j(x): the
    span of D^j(x)..D^(k-1)(x) is then stable and D acts invertibly on it.
    """
    cur = D.algebra.var(var)
    chain = []
    seen = {}
    for _ in range(bound):
        cur = apply(D, cur)
        chain.append(cur)
        if cur.is_zero():
            return chain
        k = _normalized(cur.rep)
        if k in seen:
            return None
        seen[k] = True
    return None


def certify_lnd(D: Derivation, bound: int = DEFAULT_BOUND):
    """A NilpotencyCertificate if every generator chain dies within ``bound``.

    Local nilpotency on generators spreads to the whole algebra because the
    nilpotent elements form a subalgebra.  Otherwise INDETERMINATE; this
    never claims that D is not locally nilpotent.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if refuted_within(D, bound):
        return INDETERMINATE
    chains = {}
    for v in D.algebra.variables:
        chain = _chain(D, v, bound)
        if chain is None:
            return INDETERMINATE
        chains[v] = tuple(chain)
    return NilpotencyCertificate(chains, bound)


def is_certified(D: Derivation, bound: int = DEFAULT_BOUND) -> bool:
    return certify_lnd(D, bound) is not INDETERMINATE
