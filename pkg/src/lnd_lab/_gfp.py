# Dense polynomials over GF(q): lists of ints in [0, q), lowest degree first,
# no trailing zeros.


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def reduce_mod(coeffs, q):
    return trim([c % q for c in coeffs])


def rem(a, b, q):
    a = list(a)
    inv = pow(b[-1], -1, q)
    db = len(b) - 1
    while len(a) > db:
        c = a[-1] * inv % q
        shift = len(a) - len(b)
        if c:
            for k, bk in enumerate(b):
                a[shift + k] = (a[shift + k] - c * bk) % q
        a.pop()
    return trim(a)


def mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return trim(out)


def sub(a, b, q):
    n = max(len(a), len(b))
    return trim([((a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0)) % q for k in range(n)])


def gcd(a, b, q):
    while b:
        a, b = b, rem(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def powmod(base, e, f, q):
    result = [1]
    base = rem(base, f, q)
    while e:
        if e & 1:
            result = rem(mul(result, base, q), f, q)
        e >>= 1
        if e:
            base = rem(mul(base, base, q), f, q)
    return result


def is_irreducible(f, q):
    """Distinct-degree test: f has no irreducible factor of degree <= deg/2.

    ``f`` must have a leading coefficient that is a unit mod q.
    """
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = powmod(h, q, f, q)
        if len(gcd(f, sub(h, x, q), q)) > 1:
            return False
    return True
