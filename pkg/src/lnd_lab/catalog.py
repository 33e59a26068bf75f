"""Constructors for the domain families: Danielewski surfaces, Koras-Russell
threefolds, Finston-Maubach domains, quadrics, plus their standard
derivations and grading presets.

Catalog entries are addressable by strings such as
``"danielewski(n=1,p=y^2+1)"``, ``"kr(2,2,3)"``, ``"fm(n=3,d=15,e=15)"``,
``"quadric(2)"``, ``"sl2"``, ``"cusp"`` and ``"affine(2)"``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import Algebra, _exponents_of_degree, present
from .derivation import Derivation, define_derivation
from .errors import (
    ConstraintViolationError,
    ExponentTooSmallError,
    GcdViolationError,
    NotInSError,
    WellDefinednessError,
)
from .grading import Grading, deg_g, graded_membership, top_summand
from .poly import LEX, Polynomial, RingDesc, partial_derivative, substitute, univariate_ext_gcd

XY = RingDesc(("x", "y"), order=LEX)
XYZ = RingDesc(("x", "y", "z"), order=LEX)


def _to_poly(p, ring: RingDesc) -> Polynomial:
    if isinstance(p, str):
        return ring.parse(p)
    if p.ring.variables != ring.variables:
        raise ValueError(f"{p} must be a polynomial in {ring.variables}")
    return p.with_ring(ring)


# Danielewski surfaces x^n z - p(x, y)

@dataclass(frozen=True)
class DanielewskiSpec:
    n: int
    p: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "p", _to_poly(self.p, XY))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        deg_p = self.p.degree("y")
        deg_p0 = substitute(self.p, {"x": XY.zero}).degree("y")
        if deg_p < 1 or deg_p != deg_p0:
            raise NotInSError(f"deg_y p = {deg_p} but deg_y p(0,y) = {deg_p0}")

    @property
    def deg_y(self) -> int:
        return self.p.degree("y")

    def relation(self) -> Polynomial:
        return XYZ.var("x") ** self.n * XYZ.var("z") - substitute(self.p, {}, target=XYZ)

    def __str__(self):
        return f"danielewski(n={self.n},p={self.p})"


def danielewski(spec: DanielewskiSpec) -> Algebra:
    return present(XYZ, [spec.relation()], name=str(spec))


@dataclass(frozen=True)
class ZShift:
    """Coordinate change z_new = z - coeff * x^x_power * y^y_power."""

    coeff: Fraction
    x_power: int
    y_power: int

    def shift(self) -> Polynomial:
        return self.coeff * XYZ.var("x") ** self.x_power * XYZ.var("y") ** self.y_power

    def __str__(self):
        mono = XYZ.var("x") ** self.x_power * XYZ.var("y") ** self.y_power
        sign, c = ("+", -self.coeff) if self.coeff < 0 else ("-", self.coeff)
        return f"z -> z {sign} {c * mono}"


def danielewski_normalize(spec: DanielewskiSpec) -> tuple[DanielewskiSpec, list[ZShift]]:
    """Drop every monomial x^s y^t of p with s >= n, recording the z shifts."""
    xi = XY.index("x")
    kept, record = {}, []
    for m, c in spec.p.terms():
        if m[xi] >= spec.n:
            record.append(ZShift(c, m[xi] - spec.n, m[1 - xi]))
        else:
            kept[m] = c
    return DanielewskiSpec(spec.n, Polynomial(XY, kept)), record


def transport_relation(relation: Polynomial, record: list[ZShift]) -> Polynomial:
    """Rewrite a relation in the shifted coordinate: z_old = z_new + sum of shifts."""
    z = XYZ.var("z")
    for s in record:
        z = z + s.shift()
    return substitute(relation, {"z": z})


def untransport_relation(relation: Polynomial, record: list[ZShift]) -> Polynomial:
    """Inverse of :func:`transport_relation`: apply z -> z - shift for every entry."""
    z = XYZ.var("z")
    for s in record:
        z = z - s.shift()
    return substitute(relation, {"z": z})


def danielewski_lnd(spec: DanielewskiSpec, algebra: Algebra | None = None) -> Derivation:
    """x -> 0, y -> x^n, z -> dp/dy; kills x for every n."""
    A = algebra or danielewski(spec)
    dp = substitute(partial_derivative(spec.p, "y"), {}, target=XYZ)
    return define_derivation(A, {"x": XYZ.zero, "y": XYZ.var("x") ** spec.n, "z": dp}, label="D1")


def danielewski_std_lnds(spec: DanielewskiSpec, algebra: Algebra | None = None) -> tuple[Derivation, Derivation]:
    """The two standard derivations of xz - p(y)."""
    if spec.n != 1:
        raise ValueError("the standard pair needs n = 1")
    if spec.p.degree("x") > 0:
        raise ValueError(f"p = {spec.p} depends on x; normalize first")
    A = algebra or danielewski(spec)
    dp = substitute(partial_derivative(spec.p, "y"), {}, target=XYZ)
    x, y, z = XYZ.gens()
    D1 = define_derivation(A, {"x": XYZ.zero, "y": x, "z": dp}, label="D1")
    D2 = define_derivation(A, {"x": dp, "y": z, "z": XYZ.zero}, label="D2")
    return D1, D2


def danielewski_linear_certificate(spec: DanielewskiSpec) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Bezout data u*x^n + v*a(x) = 1 for p = a(x) y + b(x)."""
    if spec.deg_y != 1:
        raise ValueError("the linear case needs deg_y p = 1")
    X = RingDesc(("x",), order=LEX)
    yi = XY.index("y")
    a = Polynomial(X, {(m[0],): c for m, c in spec.p.terms() if m[yi] == 1})
    return univariate_ext_gcd(X.var("x") ** spec.n, a)


# Koras-Russell threefolds x + x^d y + z^u + w^v

KR_RING = RingDesc(("x", "y", "z", "w"), order=LEX)
KR_T_RING = RingDesc(("x", "y", "z", "w", "t"), order=LEX)
KR_AMBIENT = RingDesc(("x", "z", "w", "t"), invertible={"x"}, order=LEX)


@dataclass(frozen=True)
class KorasRussellSpec:
    d: int
    u: int
    v: int

    def __post_init__(self):
        if min(self.d, self.u, self.v) < 2:
            raise ExponentTooSmallError(f"d, u, v = {self.d}, {self.u}, {self.v} must all be >= 2")
        if gcd(self.u, self.v) != 1:
            raise GcdViolationError(f"gcd(u, v) = gcd({self.u}, {self.v}) = {gcd(self.u, self.v)}")

    def relation(self) -> Polynomial:
        x, y, z, w = KR_RING.gens()
        return x + x**self.d * y + z**self.u + w**self.v

    def __str__(self):
        return f"kr({self.d},{self.u},{self.v})"


def kr_grading(spec: KorasRussellSpec) -> Grading:
    """Z^3 grading of Q[x, 1/x, z, w, t] used for the associated graded ring."""
    return Grading(
        KR_AMBIENT,
        ((-1, 0, 0), (0, -spec.v, 0), (0, -spec.u, 0), (0, 0, -1)),
    )


def koras_russell(spec: KorasRussellSpec) -> tuple[Algebra, Grading]:
    return present(KR_RING, [spec.relation()], name=str(spec)), kr_grading(spec)


def kr_y_lift(spec: KorasRussellSpec) -> Polynomial:
    """y written in the Laurent ring: -x^(-d) (x + z^u + w^v)."""
    x, z, w, t = KR_AMBIENT.gens()
    return -(x ** -spec.d) * (x + z**spec.u + w**spec.v)


def kr_embed(spec: KorasRussellSpec, f: Polynomial) -> Polynomial:
    """Image of f in Q[x, 1/x, z, w, t] for f over x, y, z, w (and t)."""
    return substitute(f, {"y": kr_y_lift(spec)}, target=KR_AMBIENT)


def kr_ybar(spec: KorasRussellSpec) -> Polynomial:
    return top_summand(kr_y_lift(spec), kr_grading(spec))


def kr_identity_residue(spec: KorasRussellSpec) -> Polynomial:
    """x^d * ybar + z^u + w^v, which vanishes identically."""
    x, z, w, t = KR_AMBIENT.gens()
    return x**spec.d * kr_ybar(spec) + z**spec.u + w**spec.v


def kr_generation_candidates(spec: KorasRussellSpec, degree) -> list[Polynomial]:
    """All x^a z^b w^c t^e ybar^j of the given Z^3 degree (a finite list)."""
    d, u, v = spec.d, spec.u, spec.v
    d1, d2, d3 = degree
    e = -d3
    if e < 0 or d2 > 0:
        return []
    x, z, w, t = KR_AMBIENT.gens()
    ybar = kr_ybar(spec)
    out = []
    total = -d2
    for j in range(total // (u * v) + 1):
        a = j * d - d1
        if a < 0:
            continue
        rest = total - j * u * v
        for b in range(rest // v + 1):
            r2 = rest - b * v
            if r2 % u:
                continue
            c = r2 // u
            out.append(x**a * z**b * w**c * t**e * ybar**j)
    return out


def kr_graded_generation_check(spec: KorasRussellSpec, N: int = 3, samples: int = 40, seed: int = 0) -> dict:
    """Bounded check that top summands of R[t] lie in Q[x, z, w, t, ybar].

    Tests every monomial of total degree <= N in x, y, z, w, t together with
    ``samples`` seeded random combinations of them.  Also reports whether
    ybar itself lies outside Q[x, z, w, t], i.e. that it is really needed.
    """
    gr = kr_grading(spec)
    monos = [m for k in range(N + 1) for m in _exponents_of_degree(5, k)]
    rng = random.Random(seed)
    elements = [KR_T_RING.monomial(m) for m in monos]
    for _ in range(samples):
        picks = rng.sample(monos, min(4, len(monos)))
        elements.append(Polynomial(KR_T_RING, {m: rng.randint(-3, 3) or 1 for m in picks}))
    failures = []
    for f in elements:
        top = top_summand(kr_embed(spec, f), gr)
        if top.is_zero():
            continue
        cands = kr_generation_candidates(spec, deg_g(top, gr))
        if not cands or graded_membership(top, cands) is None:
            failures.append(f)
    ybar = kr_ybar(spec)
    ybar_outside = any(e < 0 for m in ybar.monomials() for e in m)
    return {
        "checked": len(elements),
        "failures": failures,
        "all_in_generated": not failures,
        "ybar_outside_A": ybar_outside,
    }


# Finston-Maubach domains

@dataclass(frozen=True)
class FinstonMaubachSpec:
    n: int
    d_list: tuple[int, ...]
    e_list: tuple[int, ...]

    def __post_init__(self):
        d_list = tuple(self.d_list) if not isinstance(self.d_list, int) else (self.d_list,) * self.n
        e_list = tuple(self.e_list) if not isinstance(self.e_list, int) else (self.e_list,) * (self.n - 1)
        object.__setattr__(self, "d_list", d_list)
        object.__setattr__(self, "e_list", e_list)
        if self.n < 3:
            raise ValueError("order n must be at least 3")
        if len(d_list) != self.n or len(e_list) != self.n - 1:
            raise ValueError(f"need {self.n} d-exponents and {self.n - 1} e-exponents")
        if min(d_list + e_list) < 1:
            raise ValueError("exponents must be positive")
        if self.reciprocal_sum() > self.bound():
            raise ConstraintViolationError(self.reciprocal_sum(), self.bound())

    def reciprocal_sum(self) -> Fraction:
        return sum((Fraction(1, k) for k in self.d_list + self.e_list), Fraction(0))

    def bound(self) -> Fraction:
        return Fraction(1, 2 * self.n - 3)

    def ring(self) -> RingDesc:
        return fm_ring(self.n)

    def relation(self) -> Polynomial:
        R = self.ring()
        xs = [R.var(f"x{i}") for i in range(1, self.n + 1)]
        F = sum((x**k for x, k in zip(xs, self.d_list)), R.zero)
        for i in range(2, self.n + 1):
            F = F + fm_l(R, i) ** self.e_list[i - 2]
        return F

    def __str__(self):
        return f"fm(n={self.n},d={list(self.d_list)},e={list(self.e_list)})"


def fm_ring(n: int) -> RingDesc:
    return RingDesc([f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)], order=LEX)


def fm_l(ring: RingDesc, i: int) -> Polynomial:
    """x_i y_1 - x_1 y_i."""
    return ring.var(f"x{i}") * ring.var("y1") - ring.var("x1") * ring.var(f"y{i}")


def finston_maubach(spec: FinstonMaubachSpec) -> tuple[Algebra, Derivation]:
    R = spec.ring()
    A = present(R, [spec.relation()], name=str(spec))
    images = {f"x{i}": R.zero for i in range(1, spec.n + 1)}
    images.update({f"y{i}": R.var(f"x{i}") for i in range(1, spec.n + 1)})
    return A, define_derivation(A, images, label="D0")


# quadrics and friends

def quadric(n: int) -> Algebra:
    """Q[x1..xn]/(x1^2 + ... + xn^2 - 1); n = 2 uses the names x, y."""
    if n < 2:
        raise ValueError("quadric needs n >= 2")
    names = ("x", "y") if n == 2 else tuple(f"x{i}" for i in range(1, n + 1))
    R = RingDesc(names, order=LEX)
    return present(R, [sum((v**2 for v in R.gens()), R.zero) - 1], name=f"quadric({n})")


SL2_RING = RingDesc(("x", "y", "z", "w"), order=LEX)

SL2_PRINTED = {
    "D1": {"x": "0", "y": "z", "z": "0", "w": "x"},
    "D2": {"x": "0", "y": "w", "z": "x", "w": "0"},
    "D3": {"x": "z", "y": "0", "z": "0", "w": "y"},
    "D4": {"x": "w", "y": "0", "z": "y", "w": "0"},
}

# repaired tables: each kills two generators and preserves xz - yw - 1
SL2_CORRECTED = {
    "D1c": {"x": "0", "y": "x", "z": "w", "w": "0"},
    "D2c": {"x": "y", "y": "0", "z": "0", "w": "z"},
    "D3c": {"x": "0", "y": "0", "z": "y", "w": "x"},
    "D4c": {"x": "w", "y": "z", "z": "0", "w": "0"},
}


@dataclass
class SL2Family:
    algebra: Algebra
    printed: dict
    corrected: dict

    def printed_failures(self) -> dict[str, WellDefinednessError]:
        out = {}
        for name, table in self.printed.items():
            try:
                define_derivation(self.algebra, table, label=name)
            except WellDefinednessError as exc:
                out[name] = exc
        return out


def sl2_quadric() -> SL2Family:
    A = present(SL2_RING, ["x*z - y*w - 1"], name="sl2")
    printed = {k: {v: SL2_RING.parse(s) for v, s in t.items()} for k, t in SL2_PRINTED.items()}
    corrected = {k: define_derivation(A, t, label=k) for k, t in SL2_CORRECTED.items()}
    return SL2Family(A, printed, corrected)


def cusp() -> Algebra:
    return present(XY, ["x^3 - y^2"], name="cusp")


_LETTERS = ("x", "y", "z", "w")


def affine(n: int) -> tuple[Algebra, dict[str, Derivation]]:
    """Polynomial ring in n variables with all partial derivatives."""
    names = _LETTERS[:n] if n <= len(_LETTERS) else tuple(f"x{i}" for i in range(1, n + 1))
    R = RingDesc(names, order=LEX)
    A = present(R, [], name=f"affine({n})")
    partials = {}
    for v in names:
        images = {u: (R.one if u == v else R.zero) for u in names}
        partials[f"d{v}"] = define_derivation(A, images, label=f"d{v}")
    return A, partials


# name resolution

@dataclass
class CatalogEntry:
    name: str
    algebra: Algebra
    derivations: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    gradings: dict = field(default_factory=dict)
    annotations: list = field(default_factory=list)
    spec: object = None


_CALL = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*\Z", re.S)


def _split_args(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    return parts


def parse_call(text: str) -> tuple[str, list[str], dict[str, str]]:
    """Split ``name(a, k=v, ...)`` into name, positional and keyword args."""
    m = _CALL.match(text)
    if not m:
        raise ValueError(f"malformed catalog reference {text!r}")
    name, inner = m.group(1), m.group(2) or ""
    pos, kw = [], {}
    for part in _split_args(inner):
        if "=" in part:
            k, v = part.split("=", 1)
            kw[k.strip()] = v.strip()
        else:
            pos.append(part)
    return name, pos, kw


def _int_list(text: str):
    text = text.strip()
    if text.startswith("["):
        return tuple(int(x) for x in _split_args(text[1:-1]))
    return int(text)


def resolve(text: str) -> CatalogEntry:
    """Build the catalog entry named by ``text``."""
    name, pos, kw = parse_call(text)
    args = dict(kw)
    if name == "danielewski":
        keys = ["n", "p"]
        args.update({k: v for k, v in zip(keys, pos)})
        spec = DanielewskiSpec(int(args["n"]), args["p"])
        A = danielewski(spec)
        ders = {}
        if spec.n == 1 and spec.p.degree("x") <= 0:
            ders["D1"], ders["D2"] = danielewski_std_lnds(spec, A)
        else:
            ders["D1"] = danielewski_lnd(spec, A)
        grading = Grading(XYZ, ((1,), (1,), (1,)))
        return CatalogEntry(text, A, ders, gradings={"std": grading}, spec=spec)
    if name == "kr":
        keys = ["d", "u", "v"]
        args.update({k: v for k, v in zip(keys, pos)})
        spec = KorasRussellSpec(int(args["d"]), int(args["u"]), int(args["v"]))
        A, G = koras_russell(spec)
        return CatalogEntry(text, A, gradings={"G": G}, spec=spec)
    if name == "fm":
        keys = ["n", "d", "e"]
        args.update({k: v for k, v in zip(keys, pos)})
        n = int(args["n"])
        spec = FinstonMaubachSpec(n, _int_list(args["d"]), _int_list(args["e"]))
        A, D0 = finston_maubach(spec)
        return CatalogEntry(text, A, {"D0": D0}, spec=spec)
    if name == "quadric":
        n = int(pos[0] if pos else args["n"])
        return CatalogEntry(text, quadric(n))
    if name == "sl2":
        fam = sl2_quadric()
        return CatalogEntry(text, fam.algebra, dict(fam.corrected), tables=dict(fam.printed), spec=fam)
    if name == "cusp":
        return CatalogEntry(text, cusp())
    if name == "affine":
        n = int(pos[0] if pos else args["n"])
        A, partials = affine(n)
        return CatalogEntry(text, A, partials)
    raise ValueError(f"unknown catalog entry {name!r}")
