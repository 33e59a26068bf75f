"""Cheap, sound refutations of "certifies within bound".

Both tests work modulo a prime and only ever rule a derivation out when
some generator chain is provably still nonzero after ``bound`` steps.
They need a monic basis and images with p-integral coefficients; a
reduction mod p of an exact identity is then an identity mod p.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction

from .ideal import _neg_key

_FILTER_PRIME = 2**31 - 1


def _modp(c: Fraction, p: int):
    if c.denominator % p == 0:
        return None
    return c.numerator * pow(c.denominator, -1, p) % p


def _modp_terms(poly: Polynomial, p: int):
    out = {}
    for m, c in poly.terms():
        v = _modp(c, p)
        if v is None:
            return None
        if v:
            out[m] = v
    return out


def _modp_survivor(D, bound: int, p: int = _FILTER_PRIME):
    """A generator whose chain provably outlives ``bound``, found mod p.

    The basis is monic, so when every coefficient is p-integral the
    reduction mod p of each exact chain entry is computed faithfully.  A
    chain that is nonzero mod p after ``bound`` steps is nonzero over Q.
    Returns None when no generator is ruled out (or p is unusable).
    """
    A = D.algebra
    ring = A.ring
    imgs = [_modp_terms(img, p) for img in D._imgs]
    reducers = []
    for g in A.gb.generators:
        tail = _modp_terms(g, p)
        if tail is None:
            return None
        del tail[g.lm]
        reducers.append((g.lm, tuple(tail.items())))
    if any(t is None for t in imgs):
        return None
    nk = _neg_key(ring)
    n = ring.nvars

    def step(f):
        acc = {}
        for m, c in f.items():
            for i, img in enumerate(imgs):
                e = m[i]
                if not e or not img:
                    continue
                base = m[:i] + (e - 1,) + m[i + 1:]
                k = c * e % p
                for mm, cc in img.items():
                    t = tuple(a + b for a, b in zip(base, mm))
                    acc[t] = (acc.get(t, 0) + k * cc) % p
        acc = {m: c for m, c in acc.items() if c}
        return _reduce_modp(acc, reducers, nk, p) if reducers else acc

    for v in range(n):
        cur = {tuple(int(i == v) for i in range(n)): 1}
        for _ in range(bound):
            cur = step(cur)
            if not cur:
                break
        else:
            return ring.variables[v]
    return None


def _reduce_modp(terms: dict, reducers, nk, p: int) -> dict:
    heap = [(nk(m), m) for m in terms]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = terms.pop(m, None)
        if not c:
            continue
        for lm, tail in reducers:
            if all(a <= b for a, b in zip(lm, m)):
                q = tuple(a - b for a, b in zip(m, lm))
                for tm, tc in tail:
                    mm = tuple(a + b for a, b in zip(q, tm))
                    old = terms.get(mm)
                    v = ((old or 0) - c * tc) % p
                    if old is None:
                        heapq.heappush(heap, (nk(mm), mm))
                    terms[mm] = v
                break
        else:
            rem[m] = c
    return rem



_POINT_PRIME = 1009
_POINT_COUNT = 3
_POINT_TRIES = 40


def _eval(terms, point, p: int) -> int:
    acc = 0
    for m, c in terms.items():
        v = c
        for x, e in zip(point, m):
            if e:
                v = v * pow(x, e, p) % p
        acc += v
    return acc % p


def _points(A, p: int):
    """A few F_p points of the reduced basis, found by a seeded search."""
    cache = A.__dict__.setdefault("_fp_points", {})
    if p in cache:
        return cache[p]
    gens = [_modp_terms(g, p) for g in A.gb.generators]
    pts = []
    if all(g is not None for g in gens):
        n = A.ring.nvars
        rng = random.Random(n * 7919 + p)
        for _ in range(_POINT_TRIES):
            prefix = [rng.randrange(p) for _ in range(n - 1)]
            for last in range(p):
                pt = prefix + [last]
                if all(_eval(g, pt, p) == 0 for g in gens):
                    pts.append(tuple(pt))
                    break
            if len(pts) >= _POINT_COUNT:
                break
    cache[p] = pts
    return pts


def _taylor_survivor(D, bound: int, p: int = _POINT_PRIME):
    """Index of a generator with D^bound(x)(P) != 0 at some F_p point P.

    Along the formal flow x(t) = sum D^k(x)(P) t^k / k!, whose coefficients
    follow from x' = F(x) with F the lifted images.  The lift preserves the
    ideal, so these are the values of the chain entries at P.
    """
    if bound + 1 >= p:
        return None
    A = D.algebra
    imgs = [_modp_terms(img, p) for img in D._imgs]
    if any(t is None for t in imgs):
        return None
    pts = _points(A, p)
    if not pts:
        return None
    n = A.ring.nvars
    monos = sorted({m for img in imgs for m in img})
    # every monomial is a variable times a smaller monomial
    parents = {}
    todo = list(monos)
    while todo:
        m = todo.pop()
        if m in parents or not any(m):
            continue
        v = next(i for i, e in enumerate(m) if e)
        rest = m[:v] + (m[v] - 1,) + m[v + 1:]
        parents[m] = (v, rest)
        todo.append(rest)
    order = sorted(parents, key=sum)
    zero = (0,) * n
    invs = [0] + [pow(k, -1, p) for k in range(1, bound + 2)]
    for pt in pts:
        xs = [[c % p] for c in pt]
        ser = {zero: [1]}
        for k in range(bound):
            for m in order:
                v, rest = parents[m]
                a, b = xs[v], ser[rest]
                ser.setdefault(m, []).append(sum(a[j] * b[k - j] for j in range(k + 1)) % p)
            for i, img in enumerate(imgs):
                c = 0
                for m, cc in img.items():
                    c += cc * ser[m][k]
                xs[i].append(c * invs[k + 1] % p)
            ser[zero].append(0)
        fact = 1
        for k in range(2, bound + 1):
            fact = fact * k % p
        for i in range(n):
            if xs[i][bound] * fact % p:
                return i
    return None


def refuted_within(D, bound: int) -> bool:
    """True only if some generator chain cannot reach zero within ``bound``."""
    return _taylor_survivor(D, bound) is not None or _modp_survivor(D, bound) is not None
