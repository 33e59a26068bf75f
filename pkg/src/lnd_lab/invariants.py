"""Bounded kernels, Makar-Limanov intersections and a grid search for LNDs.

Everything works on the degree-<=N slice V_N of an algebra, with the
standard monomials as basis.  Results are exact and deterministic.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, Element, present, std_monomials
from .derivation import (
    DEFAULT_BOUND,
    Derivation,
    _lift_apply,
    is_certified,
)
from .errors import MixedAlgebrasError, SearchSpaceTooLargeError, UncertifiedDerivationError
from .ideal import normal_form
from .linalg import nullspace, rank, rref
from .poly import Polynomial, RingDesc, formal_partial, substitute

MAX_CANDIDATES = 10**6
DEFAULT_IMAGE_DEGREE = 2
DEFAULT_COEFFS = tuple(range(-2, 3))
DEFAULT_SEARCH_BOUND = 32


def _mono(ring: RingDesc, m) -> Polynomial:
    return Polynomial._raw(ring, {m: Fraction(1)})


@dataclass(frozen=True)
class LinearMap:
    """Matrix of a derivation from V_N into V_(N+r); rows index the codomain."""

    domain: tuple
    codomain: tuple
    matrix: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.matrix]

    def rank(self) -> int:
        return rank(self.matrix, len(self.domain))


def _jump(D: Derivation) -> int:
    return max((img.total_degree() - 1 for img in D._imgs if img), default=0)


def derivation_matrix(D: Derivation, N: int) -> LinearMap:
    """Exact matrix of D on the standard-monomial basis of V_N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    A = D.algebra
    dom = A.std_exponents(N)
    images = [A.reduce(_lift_apply(D._imgs, _mono(A.ring, m))) for m in dom]
    # normal forms may climb above N + jump under elimination orders
    top = max([N + max(_jump(D), 0)] + [img.total_degree() for img in images])
    cod = A.std_exponents(top)
    index = {m: i for i, m in enumerate(cod)}
    rows = [[Fraction(0)] * len(dom) for _ in cod]
    for j, img in enumerate(images):
        for m, c in img.terms():
            rows[index[m]][j] = c
    return LinearMap(tuple(dom), tuple(cod), tuple(tuple(r) for r in rows))


def _canonical_basis(vectors, algebra: Algebra, dom) -> list[Element]:
    """RREF of a spanning set with columns in descending monomial order."""
    if not vectors:
        return []
    key = algebra.ring.key
    order = sorted(range(len(dom)), key=lambda i: (sum(dom[i]), key(dom[i])), reverse=True)
    perm = [[v[i] for i in order] for v in vectors]
    red, pivots = rref(perm, len(dom))
    out = []
    for row, p in zip(red, pivots):
        terms = {dom[order[k]]: x for k, x in enumerate(row) if x}
        out.append((order[p], Element(Polynomial._raw(algebra.ring, terms), algebra)))
    out.sort(key=lambda t: t[0])
    return [e for _, e in out]


@dataclass
class KernelSlice:
    """Basis of a common kernel inside V_N, in canonical echelon form."""

    derivations: list
    N: int
    basis: list

    @property
    def algebra(self) -> Algebra:
        return self.derivations[0].algebra

    def dim(self) -> int:
        return len(self.basis)

    def is_constants(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].rep == 1

    def _vectors(self, dom):
        index = {m: i for i, m in enumerate(dom)}
        out = []
        for e in self.basis:
            v = [Fraction(0)] * len(dom)
            for m, c in e.rep.terms():
                v[index[m]] = c
            out.append(v)
        return out

    def contains(self, e) -> bool:
        """Exact membership of ``e`` in the span of the basis."""
        A = self.algebra
        if not isinstance(e, Element):
            e = A.elem(e)
        top = max(self.N, e.total_degree())
        dom = A.std_exponents(top)
        index = {m: i for i, m in enumerate(dom)}
        vecs = self._vectors(dom)
        target = [Fraction(0)] * len(dom)
        for m, c in e.rep.terms():
            target[index[m]] = c
        return rank(vecs + [target], len(dom)) == rank(vecs, len(dom))

    def same_span(self, other: KernelSlice) -> bool:
        return all(other.contains(e) for e in self.basis) and all(self.contains(e) for e in other.basis)

    def strings(self) -> list[str]:
        return [str(e) for e in self.basis]

    def __str__(self):
        return "{" + ", ".join(self.strings()) + "}"


def _kernel(Ds: list[Derivation], N: int) -> KernelSlice:
    A = Ds[0].algebra
    dom = A.std_exponents(N)
    rows = []
    for D in Ds:
        rows.extend(derivation_matrix(D, N).matrix)
    vecs = nullspace(rows, len(dom))
    return KernelSlice(list(Ds), N, _canonical_basis(vecs, A, dom))


def kernel_basis_bounded(D: Derivation, N: int) -> KernelSlice:
    """Ker(D) intersected with V_N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return _kernel([D], N)


def ml_bounded(Ds, N: int, bound: int = DEFAULT_BOUND) -> KernelSlice:
    """Common kernel of a finite family of certified LNDs, inside V_N."""
    Ds = list(Ds)
    if not Ds:
        raise ValueError("need at least one derivation")
    if N < 0:
        raise ValueError("N must be nonnegative")
    A = Ds[0].algebra
    for D in Ds[1:]:
        if D.algebra is not A and D.algebra != A:
            raise MixedAlgebrasError("derivations live on different algebras")
    for D in Ds:
        if not is_certified(D, bound):
            raise UncertifiedDerivationError(f"{D.label or D.table()} is not certified locally nilpotent within {bound}")
    return _kernel(Ds, N)


def max_candidates() -> int:
    raw = os.environ.get("LND_LAB_MAX_CANDIDATES")
    return int(raw) if raw else MAX_CANDIDATES


@dataclass(frozen=True)
class SearchGrid:
    """Coefficient slots of the candidate tables and the linear stability constraint."""

    slots: tuple          # (generator index, exponent)
    free: tuple           # slot indices left free by the constraint
    pivots: tuple         # (slot index, {free slot index: coefficient})
    coeffs: tuple

    def count(self) -> int:
        return len(self.coeffs) ** len(self.free)


def search_grid(A: Algebra, image_degree: int, coeff_set) -> SearchGrid:
    ring = A.ring
    coeffs = tuple(sorted({Fraction(c) for c in coeff_set}))
    monos = A.std_exponents(image_degree)
    slots = tuple((i, m) for i in range(ring.nvars) for m in monos)
    columns = []
    for i, m in slots:
        col = {}
        for k, g in enumerate(A.relations):
            r = normal_form(formal_partial(g, i) * _mono(ring, m), A.gb)
            for mm, c in r.terms():
                col[(k, mm)] = c
        columns.append(col)
    keys = sorted({k for col in columns for k in col})
    rows = [[col.get(k, Fraction(0)) for col in columns] for k in keys]
    red, pivcols = rref(rows, len(slots)) if rows else ([], [])
    pivset = set(pivcols)
    free = tuple(j for j in range(len(slots)) if j not in pivset)
    pivots = tuple((p, {f: -row[f] for f in free if row[f]}) for row, p in zip(red, pivcols))
    return SearchGrid(slots, free, pivots, coeffs)


def lnd_search(
    A: Algebra,
    image_degree: int = DEFAULT_IMAGE_DEGREE,
    coeff_set=DEFAULT_COEFFS,
    bound: int = DEFAULT_SEARCH_BOUND,
    limit: int | None = None,
) -> list[Derivation]:
    """Every nonzero certified LND whose images lie on the declared grid.

    Each generator image is a combination of standard monomials of degree
    <= image_degree with coefficients from coeff_set.  The stability
    condition is linear in those coefficients, so it is solved first and
    only its free coordinates are enumerated; the guard applies to that
    count.  An empty result means no LND on this grid, nothing more.
    """
    limit = max_candidates() if limit is None else limit
    grid = search_grid(A, image_degree, coeff_set)
    if grid.count() > limit:
        raise SearchSpaceTooLargeError(grid.count(), limit)
    allowed = set(grid.coeffs)
    ring = A.ring
    found = []
    for values in itertools.product(grid.coeffs, repeat=len(grid.free)):
        vec = dict(zip(grid.free, values))
        ok = True
        for p, combo in grid.pivots:
            x = sum((c * vec[f] for f, c in combo.items()), Fraction(0))
            if x not in allowed:
                ok = False
                break
            vec[p] = x
        if not ok or not any(vec.values()):
            continue
        terms = [dict() for _ in ring.variables]
        for j, x in vec.items():
            if x:
                i, m = grid.slots[j]
                terms[i][m] = x
        images = {v: Polynomial._raw(ring, t) for v, t in zip(ring.variables, terms)}
        D = Derivation(A, images, label="found")
        if is_certified(D, bound):
            found.append(D)
    return found


def adjoin_variable(A: Algebra, name: str = "t") -> Algebra:
    """A[t]: the same relations in one more variable."""
    ring = RingDesc(A.variables + (name,), order=A.ring.order)
    rels = [substitute(r, {}, target=ring) for r in A.relations]
    label = f"{A.name}[{name}]" if A.name else None
    return present(ring, rels, name=label)


def extend_derivation(D: Derivation, B: Algebra, image=0) -> Derivation:
    """Extend D to B = A[t] by sending the new variable to ``image``."""
    new = [v for v in B.variables if v not in D.algebra.variables]
    images = {v: substitute(D.images[v].rep, {}, target=B.ring) for v in D.algebra.variables}
    for v in new:
        images[v] = image
    return Derivation(B, images, label=D.label)
