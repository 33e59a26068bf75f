"""Finitely presented algebras k[x1..xn]/I with normal-form elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import AlgebraMismatchError, LaurentUnsupportedError, RingMismatchError, ZeroRelationError
from .ideal import GroebnerBasis, groebner, normal_form
from .poly import Polynomial, RingDesc


class Algebra:
    """A presentation plus the reduced Groebner basis of its relations.

    Two algebras compare equal when they share ring and basis; isomorphic
    presentations are distinct algebras.
    """

    def __init__(self, ring: RingDesc, relations=(), name: str | None = None):
        if ring.invertible:
            raise LaurentUnsupportedError(f"cannot present a quotient of {ring}")
        relations = tuple(ring.parse(r) if isinstance(r, str) else r for r in relations)
        for r in relations:
            if r.ring != ring:
                raise RingMismatchError(f"relation {r} is not in {ring}")
            if r.is_zero():
                raise ZeroRelationError("zero relation in presentation")
        self.ring = ring
        self.relations = relations
        self.gb = groebner(relations) if relations else GroebnerBasis((), ring)
        self.name = name
        self._lms = self.gb.leading_monomials()
        self._std_cache: dict[int, list[tuple[int, ...]]] = {}

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.ring == other.ring and self.gb.generators == other.gb.generators

    def __hash__(self):
        return hash((self.ring, self.gb.generators))

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        label = f"{self.name}: " if self.name else ""
        return f"<Algebra {label}Q[{', '.join(self.variables)}]/({rels})>"

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb)

    def elem(self, f) -> Element:
        return elem(self, f)

    __call__ = elem

    def var(self, name: str) -> Element:
        return Element(self.ring.var(name), self)

    def gens(self) -> list[Element]:
        return [self.var(v) for v in self.variables]

    @property
    def one(self) -> Element:
        return Element(self.ring.one, self)

    @property
    def zero(self) -> Element:
        return Element(self.ring.zero, self)

    def is_standard(self, m) -> bool:
        return not any(all(a <= b for a, b in zip(lm, m)) for lm in self._lms)

    def std_exponents(self, N: int) -> list[tuple[int, ...]]:
        """Exponent tuples of :func:`std_monomials`, in the same order."""
        if N not in self._std_cache:
            n = self.ring.nvars
            key = self.ring.key
            out = []
            for d in range(N + 1):
                layer = [m for m in _exponents_of_degree(n, d) if self.is_standard(m)]
                layer.sort(key=key, reverse=True)
                out.extend(layer)
            self._std_cache[N] = out
        return list(self._std_cache[N])


def _exponents_of_degree(n: int, d: int):
    # compositions of d into n nonnegative parts
    for cuts in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        parts = []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(d + n - 1 - prev - 1)
        yield tuple(parts)


def present(ring: RingDesc, relations=(), name: str | None = None) -> Algebra:
    """Algebra ``ring / (relations)``; an empty list gives the polynomial ring."""
    return Algebra(ring, relations, name)


class Element:
    """An algebra element, stored as the normal form of any lift."""

    __slots__ = ("rep", "algebra")

    def __init__(self, rep: Polynomial, algebra: Algebra):
        # trusted: callers pass a normal form
        self.rep = rep
        self.algebra = algebra

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")
            return other
        if isinstance(other, (int, Rational)):
            return Element(self.algebra.ring.const(other), self.algebra)
        if isinstance(other, Polynomial):
            return elem(self.algebra, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.rep + other.rep, self.algebra)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.rep - other.rep, self.algebra)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Element(-self.rep, self.algebra)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Element(self.rep * other, self.algebra)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.algebra.reduce(self.rep * other.rep), self.algebra)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.algebra.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __bool__(self):
        return not self.rep.is_zero()

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.rep == other.rep
        if isinstance(other, (int, Rational)):
            return self.rep == other
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def total_degree(self) -> int:
        return self.rep.total_degree()

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"Element({self.rep})"


def elem(algebra: Algebra, f) -> Element:
    """Element of ``algebra`` represented by the polynomial (or text) ``f``."""
    if isinstance(f, str):
        f = algebra.ring.parse(f)
    elif isinstance(f, (int, Rational)):
        f = algebra.ring.const(f)
    if f.ring != algebra.ring:
        raise RingMismatchError(f"{f} is not in {algebra.ring}")
    return Element(algebra.reduce(f), algebra)


def std_monomials(algebra: Algebra, N: int) -> list[Element]:
    """Standard monomials of total degree <= N.

    Sorted by total degree, then descending in the ring's order.  They form
    a basis of the degree-<=N slice of the algebra.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    ring = algebra.ring
    return [Element(Polynomial._raw(ring, {m: Fraction(1)}), algebra) for m in algebra.std_exponents(N)]


def coordinates(e: Element, N: int) -> list[Fraction] | None:
    """Coordinates of ``e`` in std_monomials(algebra, N), or None if outside."""
    index = {m: i for i, m in enumerate(e.algebra.std_exponents(N))}
    out = [Fraction(0)] * len(index)
    for m, c in e.rep.terms():
        i = index.get(m)
        if i is None:
            return None
        out[i] = c
    return out
