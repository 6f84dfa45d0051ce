"""Dense univariate helpers over Q or F_p.

Polynomials are coefficient lists, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).  Used by the gcd fast path and for
root finding when sampling finite-field points.
"""

from __future__ import annotations

from .fields import FieldSpec


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list) -> int:
    return len(a) - 1


def divmod_(a: list, b: list, field: FieldSpec):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    P = field.p
    a = list(a)
    q = [field.zero] * max(len(a) - len(b) + 1, 0)
    inv = field.inv(b[-1])
    db = len(b) - 1
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + db] * inv
        if P:
            c %= P
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                v = a[i + j] - c * bj
                a[i + j] = v % P if P else v
    return trim(q), trim(a[:db] if db else [])


def gcd(a: list, b: list, field: FieldSpec) -> list:
    """Monic gcd by the Euclidean algorithm."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_(a, b, field)[1]
    if not a:
        return a
    inv = field.inv(a[-1])
    P = field.p
    return [(c * inv) % P if P else c * inv for c in a]


def mul(a: list, b: list, field: FieldSpec) -> list:
    if not a or not b:
        return []
    P = field.p
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if P:
        out = [c % P for c in out]
    return trim(out)


def evaluate(a: list, x, field: FieldSpec):
    P = field.p
    acc = field.zero
    for c in reversed(a):
        acc = acc * x + c
        if P:
            acc %= P
    return acc


def powmod(base: list, e: int, mod: list, field: FieldSpec) -> list:
    result = [field.one]
    base = divmod_(base, mod, field)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, field), mod, field)[1]
        e >>= 1
        if e:
            base = divmod_(mul(base, base, field), mod, field)[1]
    return result


SCAN_LIMIT = 1 << 12


def roots_mod_p(a: list, field: FieldSpec, rng) -> list:
    """Distinct roots in F_p of a nonzero polynomial, sorted.

    Small fields are scanned exhaustively; larger ones split
    ``gcd(a, x^p - x)`` with random Cantor-Zassenhaus shifts.
    """
    P = field.p
    a = trim(list(a))
    if not a:
        raise ValueError("the zero polynomial has every element as a root")
    if len(a) == 1:
        return []
    if P <= SCAN_LIMIT:
        return [x for x in range(P) if evaluate(a, x, field) == 0]
    xp = powmod([0, 1], P, a, field)
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % P
    g = gcd(a, trim(xp), field)
    roots: list = []
    _split(g, field, rng, roots)
    return sorted(roots)


def _split(g: list, field: FieldSpec, rng, out: list):
    P = field.p
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append((-g[0] * field.inv(g[1])) % P)
        return
    while True:
        shift = rng.randrange(P)
        h = powmod([shift, 1], (P - 1) // 2, g, field)
        h = h + [0] * max(0, 1 - len(h))
        h[0] = (h[0] - 1) % P
        d = gcd(g, trim(h), field)
        if 1 < len(d) < len(g):
            _split(d, field, rng, out)
            _split(divmod_(g, d, field)[0], field, rng, out)
            return
