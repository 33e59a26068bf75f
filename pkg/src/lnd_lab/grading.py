"""Z^d gradings with the lexicographic order.

Degrees of non-homogeneous polynomials are filtration degrees: the
lex-maximum over their monomials.  Induced derivations are kept as
generator tables over the ambient (possibly Laurent) ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import Element
from .derivation import NEG_INFINITY, Derivation
from .errors import RingMismatchError, ZeroDerivationError
from .linalg import solve
from .poly import Polynomial, RingDesc, formal_partial


@dataclass(frozen=True)
class Grading:
    ring: RingDesc
    degrees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        degrees = self.degrees
        if isinstance(degrees, Mapping):
            missing = [v for v in self.ring.variables if v not in degrees]
            if missing:
                raise ValueError(f"no degree given for {missing}")
            degrees = tuple(tuple(int(x) for x in degrees[v]) for v in self.ring.variables)
        else:
            degrees = tuple(tuple(int(x) for x in d) for d in degrees)
        if len(degrees) != self.ring.nvars:
            raise ValueError("one degree vector per variable is required")
        dims = {len(d) for d in degrees}
        if len(dims) > 1:
            raise ValueError(f"degree vectors of mixed lengths {sorted(dims)}")
        object.__setattr__(self, "degrees", degrees)

    @property
    def d(self) -> int:
        return len(self.degrees[0]) if self.degrees else 0

    def degree_of(self, var: str) -> tuple[int, ...]:
        return self.degrees[self.ring.index(var)]

    def monomial_degree(self, m) -> tuple[int, ...]:
        out = [0] * self.d
        for e, deg in zip(m, self.degrees):
            if e:
                for k, x in enumerate(deg):
                    out[k] += e * x
        return tuple(out)

    def table(self) -> dict[str, tuple[int, ...]]:
        return dict(zip(self.ring.variables, self.degrees))


def _poly_of(f, gr: Grading) -> Polynomial:
    if isinstance(f, Element):
        f = f.rep
    if isinstance(f, str):
        f = gr.ring.parse(f)
    if f.ring.variables != gr.ring.variables:
        raise RingMismatchError(f"{f.ring} is not graded by a grading of {gr.ring}")
    return f


def deg_g(f, gr: Grading):
    """Lex-largest monomial degree of ``f``; NEG_INFINITY for zero."""
    f = _poly_of(f, gr)
    if f.is_zero():
        return NEG_INFINITY
    return max(gr.monomial_degree(m) for m in f.monomials())


def is_homogeneous(f, gr: Grading) -> bool:
    f = _poly_of(f, gr)
    return len({gr.monomial_degree(m) for m in f.monomials()}) <= 1


def homogeneous_components(f, gr: Grading) -> dict[tuple[int, ...], Polynomial]:
    f = _poly_of(f, gr)
    parts: dict = {}
    for m, c in f.terms():
        parts.setdefault(gr.monomial_degree(m), {})[m] = c
    return {k: Polynomial._raw(f.ring, v) for k, v in sorted(parts.items(), reverse=True)}


def top_summand(f, gr: Grading) -> Polynomial:
    """Highest-degree homogeneous summand; zero maps to zero."""
    f = _poly_of(f, gr)
    if f.is_zero():
        return f
    top = deg_g(f, gr)
    return Polynomial._raw(f.ring, {m: c for m, c in f.terms() if gr.monomial_degree(m) == top})


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _gaps(images: Mapping[str, Polynomial], gr: Grading):
    gaps = {}
    for v in gr.ring.variables:
        img = images[v]
        if img:
            gaps[v] = _sub(deg_g(img, gr), gr.degree_of(v))
    return gaps


def _images_of(D) -> dict[str, Polynomial]:
    if isinstance(D, Derivation):
        return {v: D.images[v].rep for v in D.algebra.variables}
    return dict(D.images)


def deg_g_derivation(D, gr: Grading) -> tuple[int, ...]:
    """Lex-max over generators x with Dx != 0 of deg(Dx) - deg(x)."""
    images = _images_of(D)
    if set(images) != set(gr.ring.variables):
        raise RingMismatchError("derivation and grading have different generators")
    gaps = _gaps(images, gr)
    if not gaps:
        raise ZeroDerivationError("derivation sends every generator to zero")
    return max(gaps.values())


@dataclass(frozen=True)
class InducedDerivation:
    """Generator table of the induced homogeneous derivation.

    Evaluation uses formal partials, so Laurent ambient rings are fine.
    """

    ring: RingDesc
    images: dict
    degree: tuple[int, ...]

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        acc = self.ring.zero
        for i, v in enumerate(self.ring.variables):
            img = self.images[v]
            if img:
                d = formal_partial(f, i)
                if d:
                    acc = acc + d * img
        return acc

    __call__ = apply

    def table(self) -> str:
        return "; ".join(f"{v} -> {self.images[v]}" for v in self.ring.variables)


def induced_derivation(D, gr: Grading) -> InducedDerivation:
    """Keep the top summand of Dx where the degree gap attains deg_G D, else 0."""
    images = _images_of(D)
    top = deg_g_derivation(D, gr)
    gaps = _gaps(images, gr)
    table = {}
    for v in gr.ring.variables:
        img = images[v]
        if v in gaps and gaps[v] == top:
            table[v] = top_summand(img, gr).with_ring(gr.ring) if img.ring != gr.ring else top_summand(img, gr)
        else:
            table[v] = gr.ring.zero
    return InducedDerivation(gr.ring, table, top)


def scale(gr: Grading, k: int) -> Grading:
    return Grading(gr.ring, tuple(tuple(k * x for x in deg) for deg in gr.degrees))


def format_degree(deg) -> str:
    if deg is NEG_INFINITY:
        return str(deg)
    return "(" + ",".join(str(x) for x in deg) + ")"


def graded_membership(target: Polynomial, candidates: list[Polynomial]) -> list[Fraction] | None:
    """Coefficients writing ``target`` as a combination of ``candidates``, or None."""
    monos = sorted({m for c in candidates for m in c.monomials()} | set(target.monomials()))
    index = {m: i for i, m in enumerate(monos)}
    rows = [[Fraction(0)] * len(candidates) for _ in monos]
    for j, c in enumerate(candidates):
        for m, v in c.terms():
            rows[index[m]][j] = v
    rhs = [target.coefficient(m) for m in monos]
    return solve(rows, rhs, len(candidates))
