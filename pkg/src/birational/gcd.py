"""Multivariate gcd over Q and F_p.

The general path is a recursive primitive PRS: pick a main variable, strip
contents (gcds of coefficients, computed recursively in fewer variables) and
run pseudo-remainders until the sequence terminates.  Two shortcuts run first:

* monomial contents are split off directly, and
* an evaluation test proves coprimality.  If for every shared variable ``v``
  some specialisation of the other variables keeps ``deg_v f`` and gives
  coprime univariate images, then ``deg_v gcd(f, g) = 0`` for all ``v``, so
  the gcd is a constant.

The shortcut only ever *proves* coprimality; inconclusive evaluations fall
through to the PRS, so results are exact regardless of the random choices.
"""

from __future__ import annotations

import random
from functools import reduce

from . import univariate as uni
from .errors import ZeroPolynomialError
from .poly import Polynomial, pack, unpack

_EVAL_ATTEMPTS = 3


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor; ``gcd(f, 0)`` is ``f`` made monic."""
    if f.field != g.field or f.nvars != g.nvars:
        f._coerce(g)
    if f.is_zero and g.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    return _gcd(f, g).monic()


def gcd_list(polys) -> Polynomial:
    """Monic gcd of a sequence, skipping zeros."""
    polys = list(polys)
    nonzero = [q for q in polys if q]
    if not nonzero:
        raise ZeroPolynomialError("gcd of an all-zero tuple is undefined")
    for q in nonzero:
        if q.is_constant:
            return Polynomial.one(q.field, q.nvars)
    nonzero.sort(key=lambda q: (q.degree, len(q)))
    g = nonzero[0]
    rest = nonzero[1:]
    if rest:
        combo = reduce(lambda a, b: a + b, (q.scale(i + 2) for i, q in enumerate(rest)))
        if combo:
            g = _gcd(g, combo)
        for q in rest:
            if g.is_constant:
                break
            if q.divmod(g)[1]:
                g = _gcd(g, q)
    return g.monic()


def lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero or g.is_zero:
        return Polynomial.zero(f.field, f.nvars)
    return (f * g).exact_div(gcd(f, g)).monic()


def content_in(f: Polynomial, v: int) -> Polynomial:
    """Gcd of the coefficients of ``f`` viewed as a polynomial in ``x_v``."""
    coeffs = sorted(f.coefficients_in(v).values(), key=lambda q: (q.degree, len(q)))
    c = coeffs[0]
    for q in coeffs[1:]:
        if c.is_constant:
            break
        c = _gcd(c, q)
    return c.monic() if not c.is_constant else Polynomial.one(f.field, f.nvars)


def primitive_part_in(f: Polynomial, v: int) -> Polynomial:
    c = content_in(f, v)
    q = f if c.is_constant else f.exact_div(c)
    return q.monic()


def _divide_monomial(f: Polynomial, exps) -> Polynomial:
    n = f.nvars
    k0 = pack(tuple(exps), n)
    return Polynomial._raw(f.field, n, {k - k0: c for k, c in f._t.items()})


def _gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """A gcd of two nonzero polynomials (not normalised)."""
    one = Polynomial.one(f.field, f.nvars)
    if f.is_constant or g.is_constant:
        return one
    mf, mg = f.min_exponents(), g.min_exponents()
    m = tuple(min(a, b) for a, b in zip(mf, mg))
    if any(mf):
        f = _divide_monomial(f, mf)
    if any(mg):
        g = _divide_monomial(g, mg)
    core = _gcd_core(f, g)
    if any(m):
        return core * Polynomial.monomial(f.field, m)
    return core


def _gcd_core(f: Polynomial, g: Polynomial) -> Polynomial:
    one = Polynomial.one(f.field, f.nvars)
    if f.is_constant or g.is_constant:
        return one
    vf, vg = f.variables(), g.variables()
    only_f, only_g = vf - vg, vg - vf
    if only_f:
        return _gcd(content_in(f, min(only_f)), g)
    if only_g:
        return _gcd(f, content_in(g, min(only_g)))
    if _coprime_by_evaluation(f, g, sorted(vf)):
        return one
    v = min(vf, key=lambda i: (max(f.degree_in(i), g.degree_in(i)), i))
    cf, cg = content_in(f, v), content_in(g, v)
    pf = f if cf.is_constant else f.exact_div(cf)
    pg = g if cg.is_constant else g.exact_div(cg)
    c = _gcd(cf, cg)
    a, b = (pf, pg) if pf.degree_in(v) >= pg.degree_in(v) else (pg, pf)
    while True:
        r = _prem(a, b, v)
        if r.is_zero:
            break
        if r.degree_in(v) == 0:
            return c
        a, b = b, primitive_part_in(r, v)
    return c * primitive_part_in(b, v)


def _prem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    """Sparse pseudo-remainder of ``a`` by ``b`` in ``x_v``.

    Omits the trailing power of ``lc(b)`` of the textbook definition; it only
    changes the content, which callers strip.
    """
    db = b.degree_in(v)
    lcb = b.coefficients_in(v)[db]
    xv = Polynomial.var(a.field, a.nvars, v)
    r = a
    dr = r.degree_in(v)
    while r and dr >= db:
        lcr = r.coefficients_in(v)[dr]
        r = r * lcb - lcr * xv ** (dr - db) * b
        dr = r.degree_in(v)
    return r


def _univariate_image(f: Polynomial, v: int, values) -> list:
    """Coefficient list in ``x_v`` after substituting ``values`` for the rest."""
    n = f.nvars
    P = f.field.p
    out: dict = {}
    for k, c in f._t.items():
        e = unpack(k, n)
        term = c
        for i, ei in enumerate(e):
            if ei and i != v:
                term = term * (pow(values[i], ei, P) if P else values[i] ** ei)
        out[e[v]] = out.get(e[v], 0) + term
    d = max(out)
    coeffs = [out.get(i, 0) for i in range(d + 1)]
    if P:
        coeffs = [x % P for x in coeffs]
    return uni.trim(coeffs)


def _coprime_by_evaluation(f: Polynomial, g: Polynomial, variables) -> bool:
    field = f.field
    rng = random.Random(0xC0FFEE)
    for v in variables:
        df = f.degree_in(v)
        proven = False
        for _ in range(_EVAL_ATTEMPTS):
            if field.p:
                vals = [rng.randrange(field.p) for _ in range(f.nvars)]
            else:
                vals = [rng.randint(-40, 40) for _ in range(f.nvars)]
            fu = _univariate_image(f, v, vals)
            if len(fu) - 1 != df:
                continue
            gu = _univariate_image(g, v, vals)
            if not gu:
                continue
            if len(uni.gcd(fu, gu, field)) == 1:
                proven = True
            break
        if not proven:
            return False
    return True
