"""Subgroups of Z^d in Hermite normal form."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError


def hnf(vectors, dim: int) -> tuple[tuple[int, ...], ...]:
    """Row Hermite normal form of the integer span of ``vectors``.

    Rows are in echelon form with positive pivots; entries above a pivot
    lie in [0, pivot).  Zero rows are dropped.
    """
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    for col in range(dim):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(rows[i][col]), i))
            rows[r], rows[p] = rows[p], rows[r]
            piv = rows[r]
            clean = True
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // piv[col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], piv)]
                    if rows[i][col]:
                        clean = False
            if clean:
                break
        if r < len(rows) and rows[r][col]:
            if rows[r][col] < 0:
                rows[r] = [-a for a in rows[r]]
            piv = rows[r]
            for i in range(r):
                q = rows[i][col] // piv[col]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], piv)]
            r += 1
        rows = rows[:r] + [row for row in rows[r:] if any(row)]
    return tuple(tuple(row) for row in rows[:r])


@dataclass(frozen=True)
class Lattice:
    """Integer span of vectors in Z^dim, stored by its HNF basis."""

    basis: tuple[tuple[int, ...], ...]
    dim: int

    @classmethod
    def full(cls, dim: int) -> Lattice:
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)), dim)

    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        if len(vec) != self.dim:
            raise DimensionMismatchError(f"vector of length {len(vec)} in Z^{self.dim}")
        v = list(vec)
        for row in self.basis:
            c = next(j for j, a in enumerate(row) if a)
            if any(v[:c]):
                return False
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    __contains__ = contains

    def __str__(self):
        return "[" + ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis) + "]"


def lattice_span(vectors, dim: int | None = None) -> Lattice:
    vectors = [tuple(int(x) for x in v) for v in vectors]
    dims = {len(v) for v in vectors}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise DimensionMismatchError(f"vectors of lengths {sorted(dims)}")
    if not dims:
        raise DimensionMismatchError("dimension of an empty span must be given")
    d = dims.pop()
    return Lattice(hnf(vectors, d), d)


def lattice_proper_in(sub: Lattice, amb: Lattice) -> bool:
    """True iff ``sub`` is a subgroup of ``amb`` and not all of it."""
    if sub.dim != amb.dim:
        raise DimensionMismatchError(f"Z^{sub.dim} vs Z^{amb.dim}")
    if not all(amb.contains(r) for r in sub.basis):
        return False
    return any(not sub.contains(r) for r in amb.basis)


def lattice_equal(a: Lattice, b: Lattice) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"Z^{a.dim} vs Z^{b.dim}")
    return a.basis == b.basis


def lattice_conditions(degrees) -> list[int]:
    """Indices i whose complement span H_i is a proper subgroup of the full span.

    For a homogeneous LND of a graded domain generated by elements of these
    degrees, such generators satisfy D^2 x_i = 0, and any two of them cannot
    both have nonzero image.
    """
    degrees = [tuple(d) for d in degrees]
    if not degrees:
        return []
    dim = len(degrees[0])
    full = lattice_span(degrees, dim)
    out = []
    for i in range(len(degrees)):
        h = lattice_span(degrees[:i] + degrees[i + 1:], dim)
        if h.basis != full.basis:
            out.append(i)
    return out
