"""Groebner bases, normal forms and a univariate irreducibility test."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

from . import _gfp
from .errors import (
    ConstantInputError,
    LaurentUnsupportedError,
    RingMismatchError,
)
from .poly import GREVLEX, LEX, Polynomial, RingDesc, dense_divmod, from_dense, to_dense, univariate_variable

DEFAULT_PRIMES = tuple(p for p in range(2, 50) if all(p % d for d in range(2, isqrt(p) + 1)))


def _neg_key(ring: RingDesc):
    # ascending under this key == descending monomial order
    if ring.order == LEX:
        return lambda m: tuple(-e for e in m)
    return lambda m: (-sum(m), tuple(reversed(m)))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis sorted by descending leading monomial."""

    generators: tuple[Polynomial, ...]
    ring: RingDesc
    _reducers: tuple = field(default=(), repr=False, compare=False)

    @property
    def order(self) -> str:
        return self.ring.order

    def __post_init__(self):
        reducers = tuple(
            (g.lm, tuple((m, c) for m, c in g.terms() if m != g.lm)) for g in self.generators
        )
        object.__setattr__(self, "_reducers", reducers)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.lm for g in self.generators]

    def is_trivial(self) -> bool:
        """True for the zero ideal."""
        return not self.generators

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.generators) + "]"


def _reduce_terms(terms: dict, ring: RingDesc, reducers) -> dict:
    """Full reduction of a term map; reducers are monic (lm, tail) pairs."""
    if not reducers or not terms:
        return dict(terms)
    nk = _neg_key(ring)
    p = dict(terms)
    heap = [(nk(m), m) for m in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for lm, tail in reducers:
            if _divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                for tm, tc in tail:
                    mm = tuple(a + b for a, b in zip(q, tm))
                    old = p.get(mm)
                    if old is None:
                        p[mm] = -c * tc
                        heapq.heappush(heap, (nk(mm), mm))
                    else:
                        v = old - c * tc
                        if v:
                            p[mm] = v
                        else:
                            del p[mm]
                break
        else:
            rem[m] = c
    return rem


def _reducers_of(polys) -> list:
    return [(g.lm, tuple((m, c) for m, c in g.terms() if m != g.lm)) for g in polys]


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    lm = tuple(max(a, b) for a, b in zip(f.lm, g.lm))
    ring = f.ring
    acc: dict = {}
    for poly, sign in ((f, 1), (g, -1)):
        q = tuple(a - b for a, b in zip(lm, poly.lm))
        inv = sign / poly.lc
        for m, c in poly.terms():
            mm = tuple(a + b for a, b in zip(q, m))
            v = acc.get(mm, 0) + c * inv
            if v:
                acc[mm] = v
            else:
                acc.pop(mm, None)
    return Polynomial._raw(ring, acc)


def _common_ring(polys) -> RingDesc:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise RingMismatchError("generators live in different rings")
    return rings.pop()


def groebner(gens, order: str | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Buchberger's algorithm with normal pair selection and the coprime
    leading monomial criterion.  ``order`` overrides the ring's own order.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("groebner needs at least one generator")
    ring = _common_ring(gens)
    if ring.invertible:
        raise LaurentUnsupportedError(f"ideal computations in {ring} with invertible variables")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [g.with_ring(ring) for g in gens]
    key = ring.key
    basis: list[Polynomial] = []
    for g in gens:
        if g:
            g = Polynomial._raw(ring, _reduce_terms(dict(g.terms()), ring, _reducers_of(basis)))
            if g:
                basis.append(g.monic())
    if not basis:
        return GroebnerBasis((), ring)
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}

    def pair_key(pr):
        i, j = pr
        lcm_ = tuple(max(a, b) for a, b in zip(basis[i].lm, basis[j].lm))
        return (key(lcm_), pr)

    reducers = _reducers_of(basis)
    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        f, g = basis[pr[0]], basis[pr[1]]
        if all(not (a and b) for a, b in zip(f.lm, g.lm)):
            continue
        s = _spoly(f, g)
        r = _reduce_terms(dict(s.terms()), ring, reducers)
        if r:
            h = Polynomial._raw(ring, r).monic()
            n = len(basis)
            basis.append(h)
            reducers.append((h.lm, tuple((m, c) for m, c in h.terms() if m != h.lm)))
            pairs.update((n, i) for i in range(n))

    # minimize, then interreduce
    basis.sort(key=lambda p: key(p.lm))
    minimal = []
    for i, g in enumerate(basis):
        if not any(_divides(h.lm, g.lm) for h in basis[:i]) and not any(
            _divides(h.lm, g.lm) and h.lm != g.lm for h in basis[i + 1:]
        ):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = _reducers_of(minimal[:i] + minimal[i + 1:])
        tail = {m: c for m, c in g.terms() if m != g.lm}
        tail = _reduce_terms(tail, ring, others)
        tail[g.lm] = Fraction(1)
        reduced.append(Polynomial._raw(ring, tail))
    reduced.sort(key=lambda p: key(p.lm), reverse=True)
    return GroebnerBasis(tuple(reduced), ring)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the basis."""
    if f.ring != gb.ring:
        if f.ring.variables == gb.ring.variables and f.ring.invertible == gb.ring.invertible:
            f = f.with_ring(gb.ring)
        else:
            raise RingMismatchError(f"{f.ring} vs {gb.ring}")
    if not gb.generators:
        return f
    return Polynomial._raw(gb.ring, _reduce_terms(dict(f.terms()), gb.ring, gb._reducers))


def in_ideal(f: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero()


# irreducibility over the rationals

@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Three-valued answer of :func:`irreducible_q`.

    ``kind`` is "irreducible", "reducible" or "indeterminate".  A reducible
    verdict carries an exact ``witness`` factor; an irreducible one names its
    ``certificate`` ("degree<=3, no rational root" or "irreducible mod q").
    """

    kind: str
    witness: Polynomial | None = None
    primes: tuple[int, ...] = ()
    certificate: str = ""

    @property
    def is_irreducible(self) -> bool:
        return self.kind == "irreducible"

    @property
    def is_reducible(self) -> bool:
        return self.kind == "reducible"

    def __str__(self):
        if self.kind == "reducible":
            return f"reducible (factor {self.witness})"
        if self.kind == "irreducible":
            return f"irreducible ({self.certificate})"
        return f"indeterminate (primes tried: {list(self.primes)})"


def _primitive_integer(coeffs) -> list[int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _int_eval(coeffs, num, den):
    # den^deg * f(num/den)
    deg = len(coeffs) - 1
    return sum(c * num**k * den ** (deg - k) for k, c in enumerate(coeffs))


def _exact_int_division(a, b):
    """a / b over Z for dense integer polys, or None when it is not exact."""
    q, r = _dense_divmod_fraction(a, b)
    if any(x for x in r):
        return None
    return q


def _dense_divmod_fraction(a, b):
    return dense_divmod([Fraction(x) for x in a], [Fraction(x) for x in b])


def _rational_root(coeffs):
    if coeffs[0] == 0:
        return Fraction(0)
    for s in _divisors(coeffs[-1]):
        for r in _divisors(coeffs[0]):
            for num in (r, -r):
                if gcd(num, s) == 1 and _int_eval(coeffs, num, s) == 0:
                    return Fraction(num, s)
    return None


def _quadratic_factor(coeffs, b_bound=16):
    for a in _divisors(coeffs[-1]):
        for c0 in _divisors(coeffs[0]):
            for c in (c0, -c0):
                for b in range(-b_bound, b_bound + 1):
                    if _exact_int_division(coeffs, [c, b, a]) is not None:
                        return [c, b, a]
    return None


def irreducible_q(p: Polynomial, primes=DEFAULT_PRIMES) -> IrreducibilityVerdict:
    """Sound, possibly inconclusive irreducibility test over the rationals.

    Order of attempts: rational roots, degree <= 3, a bounded search for
    integer quadratic factors, then irreducibility modulo each prime that
    does not divide the leading coefficient.
    """
    var = univariate_variable(p)
    if var is None or p.degree(var) < 1:
        raise ConstantInputError(f"{p} is constant")
    coeffs = _primitive_integer(to_dense(p, var))
    ring = p.ring
    root = _rational_root(coeffs)
    if root is not None:
        witness = ring.var(var) - root
        return IrreducibilityVerdict("reducible", witness=witness)
    deg = len(coeffs) - 1
    if deg <= 3:
        return IrreducibilityVerdict("irreducible", certificate="degree<=3, no rational root")
    quad = _quadratic_factor(coeffs)
    if quad is not None:
        witness = from_dense([Fraction(x, quad[-1]) for x in quad], ring, var)
        return IrreducibilityVerdict("reducible", witness=witness)
    tried = []
    for q in primes:
        if coeffs[-1] % q == 0:
            continue
        tried.append(q)
        if _gfp.is_irreducible(_gfp.reduce_mod(coeffs, q), q):
            return IrreducibilityVerdict(
                "irreducible", primes=tuple(tried), certificate=f"irreducible mod {q}"
            )
    return IrreducibilityVerdict("indeterminate", primes=tuple(tried))


__all__ = [
    "DEFAULT_PRIMES",
    "GREVLEX",
    "LEX",
    "GroebnerBasis",
    "IrreducibilityVerdict",
    "groebner",
    "in_ideal",
    "irreducible_q",
    "normal_form",
]
