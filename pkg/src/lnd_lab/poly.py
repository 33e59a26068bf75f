"""Sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero ``Fraction`` values,
tied to a :class:`RingDesc` that fixes the variable names, which variables
may carry negative exponents, and the monomial order used for printing and
for leading terms.  Term maps are stored sorted in descending order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping

from .errors import (
    ExponentOverflowError,
    InvertibleVariableError,
    NegativePowerOfNonInvertibleError,
    NonUnitImageForInvertibleError,
    NotUnivariateError,
    RingMismatchError,
    UnknownVariableError,
)

EXPONENT_LIMIT = 2**31

LEX = "lex"
GREVLEX = "grevlex"
ORDERS = (LEX, GREVLEX)

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _lex_key(m):
    return m


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class RingDesc:
    """Variables, invertible subset and monomial order of a polynomial ring.

    Variable order doubles as precedence: the first variable is the largest.
    """

    variables: tuple[str, ...]
    invertible: frozenset[str] = frozenset()
    order: str = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "invertible", frozenset(self.invertible))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if not self.invertible <= set(self.variables):
            extra = sorted(self.invertible - set(self.variables))
            raise ValueError(f"invertible variables {extra} are not ring variables")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    @cached_property
    def key(self):
        """Sort key on exponent tuples; larger key means larger monomial."""
        return _lex_key if self.order == LEX else _grevlex_key

    @cached_property
    def invertible_mask(self) -> tuple[bool, ...]:
        return tuple(v in self.invertible for v in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name, self.variables) from None

    def with_order(self, order: str) -> RingDesc:
        return RingDesc(self.variables, self.invertible, order)

    def zero_exponent(self) -> tuple[int, ...]:
        return (0,) * len(self.variables)

    def const(self, c) -> Polynomial:
        c = Fraction(c)
        return Polynomial._raw(self, {self.zero_exponent(): c} if c else {})

    @property
    def zero(self) -> Polynomial:
        return Polynomial._raw(self, {})

    @property
    def one(self) -> Polynomial:
        return self.const(1)

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial._raw(self, {tuple(e): Fraction(1)})

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps) -> Polynomial:
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def parse(self, text: str) -> Polynomial:
        from .grammar import parse_poly

        return parse_poly(text, self)

    def __str__(self):
        names = [v + ("^±" if v in self.invertible else "") for v in self.variables]
        return f"Q[{', '.join(names)}] ({self.order})"


def _check_exponents(ring: RingDesc, terms) -> None:
    mask = ring.invertible_mask
    for m in terms:
        for e, inv in zip(m, mask):
            if e < 0 and not inv:
                raise NegativePowerOfNonInvertibleError(
                    f"negative exponent on non-invertible variable in {m}"
                )
            if e >= EXPONENT_LIMIT or -e >= EXPONENT_LIMIT:
                raise ExponentOverflowError(f"exponent {e} exceeds the bound 2^31")


def _check_overflow(terms) -> None:
    for m in terms:
        for e in m:
            if e >= EXPONENT_LIMIT or -e >= EXPONENT_LIMIT:
                raise ExponentOverflowError(f"exponent {e} exceeds the bound 2^31")


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; see the module docstring."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingDesc, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        n = ring.nvars
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != n:
                raise ValueError(f"monomial {m} has wrong length for {ring}")
            acc[m] = acc.get(m, 0) + Fraction(c)
        acc = {m: c for m, c in acc.items() if c}
        _check_exponents(ring, acc)
        self._init(ring, acc)

    def _init(self, ring, terms):
        key = ring.key
        self.ring = ring
        self._terms = dict(sorted(terms.items(), key=lambda kv: key(kv[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingDesc, terms: dict) -> Polynomial:
        # trusted constructor: no zero coefficients, exponents already valid
        obj = cls.__new__(cls)
        obj._init(ring, terms)
        return obj

    # inspection

    def terms(self):
        """(exponent tuple, coefficient) pairs in descending order."""
        return self._terms.items()

    def monomials(self):
        return list(self._terms)

    def coefficient(self, m) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        return self._terms.get(self.ring.zero_exponent(), Fraction(0))

    @property
    def lm(self) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return next(iter(self._terms))

    @property
    def lc(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return next(iter(self._terms.values()))

    def total_degree(self) -> int:
        """Largest exponent sum; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree(self, var: str) -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        i = self.ring.index(var)
        return max((m[i] for m in self._terms), default=-1)

    def support_variables(self) -> list[str]:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return [self.ring.variables[i] for i in sorted(used)]

    def is_monomial_unit(self) -> bool:
        """True for c*m with c != 0 and m a monomial in invertible variables."""
        if len(self._terms) != 1:
            return False
        m = next(iter(self._terms))
        return all(e == 0 or inv for e, inv in zip(m, self.ring.invertible_mask))

    def monic(self) -> Polynomial:
        if not self._terms:
            return self
        return self * (1 / self.lc)

    def with_ring(self, ring: RingDesc) -> Polynomial:
        """Reinterpret in a ring with the same variables (e.g. another order)."""
        if ring.variables != self.ring.variables:
            raise RingMismatchError(f"cannot move {self} from {self.ring} to {ring}")
        if ring == self.ring:
            return self
        _check_exponents(ring, self._terms)
        return Polynomial._raw(ring, dict(self._terms))

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial._raw(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            c = Fraction(other)
            if not c:
                return self.ring.zero
            return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        acc = {m: c for m, c in acc.items() if c}
        _check_overflow(acc)
        return Polynomial._raw(self.ring, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial_unit():
                raise NegativePowerOfNonInvertibleError(f"({self})^{n} is not a polynomial")
            (m, c), = self._terms.items()
            return Polynomial(self.ring, {tuple(e * n for e in m): c**n})
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            mm = tuple(e * n for e in m)
            _check_overflow([mm])
            return Polynomial._raw(self.ring, {mm: c**n})
        if n and self._terms:
            top = max(abs(e) for m in self._terms for e in m)
            if top * n >= EXPONENT_LIMIT:
                raise ExponentOverflowError(f"power {n} overflows exponents")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            return self._terms == ({self.ring.zero_exponent(): c} if c else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return print_poly(self)

    def __repr__(self):
        return f"Polynomial({print_poly(self)!r})"


# printing

def _format_monomial(ring: RingDesc, m) -> str:
    parts = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def print_poly(f: Polynomial) -> str:
    """Canonical text: descending terms, reduced fractions, unit coefficients elided."""
    if not f._terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(f._terms.items()):
        mono = _format_monomial(f.ring, m)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# calculus and substitution

def formal_partial(f: Polynomial, i: int) -> Polynomial:
    """Derivative in the i-th variable; negative exponents allowed."""
    acc = {}
    for m, c in f._terms.items():
        e = m[i]
        if e:
            mm = m[:i] + (e - 1,) + m[i + 1:]
            acc[mm] = c * e
    return Polynomial._raw(f.ring, acc)


def partial_derivative(f: Polynomial, v: str) -> Polynomial:
    """Formal partial derivative of ``f`` with respect to the variable ``v``."""
    i = f.ring.index(v)
    if v in f.ring.invertible:
        raise InvertibleVariableError(f"partial derivative in invertible variable {v!r}")
    return formal_partial(f, i)


def substitute(f: Polynomial, assignments: Mapping[str, Polynomial], target: RingDesc | None = None) -> Polynomial:
    """Simultaneously replace variables of ``f`` by polynomials.

    Images live in ``target`` (inferred from the images when omitted); any
    variable without an assignment maps to the same-named variable of the
    target ring.  Invertible variables with negative exponents in ``f`` must
    map to units (nonzero constant times a monomial in invertible variables).
    """
    ring = f.ring
    for v in assignments:
        ring.index(v)
    if target is None:
        rings = {g.ring for g in assignments.values() if isinstance(g, Polynomial)}
        if len(rings) > 1:
            raise RingMismatchError("substitution images live in different rings")
        target = rings.pop() if rings else ring
    images = []
    for v in ring.variables:
        if v in assignments:
            g = assignments[v]
            if not isinstance(g, Polynomial):
                g = target.const(g)
            elif g.ring != target:
                raise RingMismatchError(f"image of {v} is not in {target}")
        else:
            if v not in target._index:
                raise RingMismatchError(f"variable {v} has no image in {target}")
            g = target.var(v)
        images.append(g)
    needs_unit = [any(m[i] < 0 for m in f._terms) for i in range(ring.nvars)]
    for i, g in enumerate(images):
        if needs_unit[i] and not g.is_monomial_unit():
            raise NonUnitImageForInvertibleError(
                f"{ring.variables[i]} has negative exponents but maps to non-unit {g}"
            )
    cache: dict[tuple[int, int], Polynomial] = {}

    def power(i, e):
        k = (i, e)
        if k not in cache:
            cache[k] = images[i] ** e
        return cache[k]

    result = target.zero
    for m, c in f._terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


# univariate helpers

def univariate_variable(f: Polynomial) -> str | None:
    """The single variable ``f`` depends on, or None for constants.

    Raises NotUnivariateError when two or more variables occur, or when an
    exponent is negative.
    """
    used = f.support_variables()
    if len(used) > 1:
        raise NotUnivariateError(f"{f} involves {used}")
    if any(e < 0 for m in f._terms for e in m):
        raise NotUnivariateError(f"{f} has negative exponents")
    return used[0] if used else None


def to_dense(f: Polynomial, var: str) -> list[Fraction]:
    """Coefficient list, lowest degree first, of a polynomial in ``var`` only."""
    i = f.ring.index(var)
    deg = max((m[i] for m in f._terms), default=-1)
    out = [Fraction(0)] * (deg + 1)
    for m, c in f._terms.items():
        out[m[i]] = c
    return out


def from_dense(coeffs, ring: RingDesc, var: str) -> Polynomial:
    i = ring.index(var)
    n = ring.nvars
    acc = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = k
            acc[tuple(e)] = Fraction(c)
    return Polynomial._raw(ring, acc)


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def dense_divmod(a, b):
    """Quotient and remainder of dense rational polynomials (low-first lists)."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / Fraction(b[-1])
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = c
        for k, bk in enumerate(b):
            a[shift + k] -= c * bk
        a.pop()
        _trim(a)
    return _trim(q), a


def _dense_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def _dense_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def univariate_ext_gcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Monic gcd ``g`` with Bezout cofactors: ``u*a + v*b == g``."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    va, vb = univariate_variable(a), univariate_variable(b)
    if va and vb and va != vb:
        raise NotUnivariateError(f"{a} and {b} are in different variables")
    var = va or vb
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    ring = a.ring
    if var is None:
        # both constant, at least one nonzero
        if a:
            return ring.one, ring.const(1 / a.constant_value()), ring.zero
        return ring.one, ring.zero, ring.const(1 / b.constant_value())
    r0, r1 = to_dense(a, var), to_dense(b, var)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = dense_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _dense_sub(s0, _dense_mul(q, s1))
        t0, t1 = t1, _dense_sub(t0, _dense_mul(q, t1))
    lc = r0[-1]
    g = [c / lc for c in r0]
    u = [c / lc for c in s0]
    v = [c / lc for c in t0]
    return from_dense(g, ring, var), from_dense(u, ring, var), from_dense(v, ring, var)
