"""Explicit rational and birational maps, each shipped with its certificate.

Every constructor returns the maps together with the report produced by
:func:`birational.ratmap.verify_birational` (or the involution / restriction
certificates that apply).  Pass ``certify=False`` to skip the check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import factorial
from typing import Sequence

from . import linalg
from . import univariate as uni
from .errors import (
    CharacteristicError,
    DimensionMismatchError,
    FieldError,
    NotHomogeneousError,
    PointNotOnHypersurfaceError,
    PreconditionError,
    SingularPointError,
)
from .fields import QQ, FieldSpec
from .gcd import gcd
from .geom import (
    AFFINE,
    PROJECTIVE,
    AmbientSpace,
    Hypersurface,
    LinearSubspace,
    Point,
    contains_subspace,
    is_smooth_at,
)
from .poly import Polynomial
from .ratmap import (
    BirationalReport,
    RationalMap,
    RestrictionCertificate,
    RoundTrip,
    check_restriction,
    check_round_trip,
    verify_birational,
)


def _need_odd_characteristic(field: FieldSpec, what: str):
    if field.p == 2:
        raise CharacteristicError(f"{what} is not available in characteristic 2")


# -- quadrics ------------------------------------------------------------------


@dataclass
class Stereographic:
    forward: RationalMap
    inverse: RationalMap
    source: Hypersurface
    target: AmbientSpace
    certificate: BirationalReport | None


def sphere_stereographic(n: int, a: Sequence | None = None, field: FieldSpec = QQ,
                         certify: bool = True) -> Stereographic:
    """Projection of ``a_1 x_1^2 + ... + a_n x_n^2 + x_{n+1}^2 = 1`` from the south pole.

    Variables are ``x0..xn`` with ``x_n`` the distinguished last one, so
    ``forward(x) = (x_i / (1 + x_n))`` and
    ``inverse(y) = (2 y_i / (1 + S), (1 - S) / (1 + S))`` with
    ``S = sum a_i y_i^2``.
    """
    if n < 1:
        raise PreconditionError("need n >= 1")
    a = [1] * n if a is None else list(a)
    if len(a) != n:
        raise DimensionMismatchError(f"need {n} coefficients, got {len(a)}")
    a = [field.coerce(c) for c in a]
    if any(c == 0 for c in a):
        raise PreconditionError("sphere coefficients must be nonzero")
    _need_odd_characteristic(field, "stereographic projection")
    x = Polynomial.gens(field, n + 1)
    h = sum((x[i] ** 2).scale(a[i]) for i in range(n)) + x[n] ** 2 - 1
    X = Hypersurface(h, AFFINE)
    one_x = Polynomial.one(field, n + 1)
    forward = RationalMap.from_fractions([(x[i], one_x + x[n]) for i in range(n)])
    y = Polynomial.gens(field, n)
    one_y = Polynomial.one(field, n)
    S = sum((y[i] ** 2).scale(a[i]) for i in range(n))
    inverse = RationalMap.from_fractions(
        [(y[i].scale(2), one_y + S) for i in range(n)] + [(one_y - S, one_y + S)])
    Y = AmbientSpace.affine(field, n)
    cert = verify_birational(forward, inverse, X, Y) if certify else None
    return Stereographic(forward, inverse, X, Y, cert)


def polarization(G: Polynomial, p: Sequence, h: Sequence[Polynomial]) -> Polynomial:
    """``B(p, h) = sum_i h_i dG/dx_i(p)``; for a quadric this is ``G(p+h) - G(p) - G(h)``."""
    grad = [d.evaluate(p) for d in G.gradient()]
    out = Polynomial.zero(h[0].field, h[0].nvars)
    for g, hi in zip(grad, h):
        if g:
            out = out + hi.scale(g)
    return out


@dataclass
class QuadricProjection:
    forward: RationalMap
    inverse: RationalMap
    source: Hypersurface
    target: AmbientSpace
    certificate: BirationalReport | None


def quadric_projection(Q: Hypersurface, p: Point, H: LinearSubspace,
                       certify: bool = True) -> QuadricProjection:
    """Projection of a quadric from a smooth point onto a hyperplane, and its inverse.

    ``H`` is given by a basis ``M`` (its parametrisation).  Writing
    ``x = alpha p + M s``, the projection is ``x -> s`` (linear), and the
    inverse sends ``s`` to the second point of ``Q`` on the line through ``p``
    and ``M s``::

        inverse(s) = G(M s) p - B(p, M s) M s

    whose coordinates are quadrics in ``s``.
    """
    if Q.chart != PROJECTIVE or Q.degree != 2:
        raise PreconditionError("quadric_projection needs a projective quadric")
    field = Q.field
    _need_odd_characteristic(field, "quadric projection")
    N = Q.nvars
    if H.ambient_nvars != N or H.nparams != N - 1:
        raise DimensionMismatchError("H must be a hyperplane in the ambient space of Q")
    if H.field != field or p.field != field:
        raise FieldError("Q, p and H must share a field")
    if not is_smooth_at(Q, p):
        raise SingularPointError(f"{p} is a singular point of the quadric")
    if H.contains_point(p):
        raise PreconditionError("the centre of projection lies on the target hyperplane")
    M = [list(r) for r in H.matrix]
    A = [[p.coords[i]] + M[i] for i in range(N)]
    Ainv = linalg.inverse(A, field)
    forward = RationalMap.projective([Polynomial.linear_form(field, row) for row in Ainv[1:]])
    Ms = [Polynomial.linear_form(field, row) for row in M]
    G = Q.defining
    g_of_h = G.substitute(Ms)
    B = polarization(G, p.coords, Ms)
    inverse = RationalMap.projective([g_of_h.scale(p.coords[i]) - B * Ms[i] for i in range(N)])
    target = AmbientSpace(field, N - 1, PROJECTIVE)
    cert = verify_birational(forward, inverse, Q, target) if certify else None
    return QuadricProjection(forward, inverse, Q, target, cert)


def sphere_projective_data(n: int, field: FieldSpec = QQ):
    """The unit sphere homogenized with ``w`` last, its south pole, and ``(x_n = 0)``."""
    N = n + 2
    xs = Polynomial.gens(field, N)
    G = sum(v ** 2 for v in xs[:n + 1]) - xs[n + 1] ** 2
    pole = Point.projective(field, [0] * n + [-1, 1])
    cols = [[int(i == j) for i in range(N)] for j in list(range(n)) + [n + 1]]
    return Hypersurface(G, PROJECTIVE), pole, LinearSubspace.from_columns(field, cols)


# -- monoids -------------------------------------------------------------------


@dataclass
class Monoid:
    forward: RationalMap
    inverse: RationalMap
    X: Hypersurface
    target: AmbientSpace
    certificate: BirationalReport | None


def monoid_param(n: int, H_low: Polynomial, H_high: Polynomial, certify: bool = True) -> Monoid:
    """``X = (H_low x_{n+1} + H_high = 0)`` projected from ``(0 : ... : 0 : 1)``.

    The inverse is ``(x_0 : ... : x_n) -> (H_low x_0 : ... : H_low x_n : -H_high)``.
    """
    if H_low.nvars != n + 1 or H_high.nvars != n + 1:
        raise DimensionMismatchError(f"H_low and H_high must use {n + 1} variables")
    if H_low.is_zero:
        raise PreconditionError("H_low must be nonzero")
    if not (H_low.is_homogeneous and H_high.is_homogeneous):
        raise NotHomogeneousError("H_low and H_high must be homogeneous")
    if not H_high.is_zero and H_high.degree != H_low.degree + 1:
        raise PreconditionError("need deg H_high = deg H_low + 1")
    if H_high.is_zero or not gcd(H_low, H_high).is_constant:
        raise PreconditionError("H_low and H_high must be coprime")
    N = n + 2
    field = H_low.field
    pos = list(range(n + 1))
    lo, hi = H_low.embed(N, pos), H_high.embed(N, pos)
    X = Hypersurface(lo * Polynomial.var(field, N, n + 1) + hi, PROJECTIVE)
    xs = Polynomial.gens(field, N)
    forward = RationalMap.projective(xs[:n + 1])
    ys = Polynomial.gens(field, n + 1)
    inverse = RationalMap.projective([H_low * y for y in ys] + [-H_high])
    target = AmbientSpace(field, n + 1, PROJECTIVE)
    cert = verify_birational(forward, inverse, X, target) if certify else None
    return Monoid(forward, inverse, X, target, cert)


# -- hypersurfaces through two coordinate planes --------------------------------


def _blocks(n: int):
    return list(range(n + 1)), list(range(n + 1, 2 * n + 2))


def _check_two_planes(X: Hypersurface, n: int | None = None) -> int:
    if X.chart != PROJECTIVE:
        raise PreconditionError("expected a projective hypersurface")
    N = X.nvars
    if N % 2:
        raise DimensionMismatchError("two-plane constructions need an even number of coordinates")
    n = N // 2 - 1 if n is None else n
    if N != 2 * n + 2:
        raise DimensionMismatchError(f"expected {2 * n + 2} coordinates, got {N}")
    for plane in coordinate_planes(X.field, n):
        if not contains_subspace(X, plane):
            raise PreconditionError(f"the hypersurface does not contain the plane {plane}")
    return n


def coordinate_planes(field: FieldSpec, n: int):
    """``L1 = (x_0 = ... = x_n = 0)`` and ``L2 = (x_{n+1} = ... = x_{2n+1} = 0)``."""
    N = 2 * n + 2
    A, B = _blocks(n)
    L1 = LinearSubspace.from_columns(field, [[int(i == j) for i in range(N)] for j in B])
    L2 = LinearSubspace.from_columns(field, [[int(i == j) for i in range(N)] for j in A])
    return L1, L2


def bidegree_parts(F: Polynomial, n: int) -> dict:
    """Split ``F`` by degree in the first block ``x_0..x_n`` and in the rest."""
    out: dict = {}
    for e, c in F.terms:
        k = sum(e[:n + 1])
        out.setdefault((k, sum(e) - k), []).append((e, c))
    return {key: Polynomial.from_terms(F.field, F.nvars, terms) for key, terms in out.items()}


def random_form_through_planes(field: FieldSpec, n: int, degree: int, rng,
                               density: float = 1.0) -> Polynomial:
    """Random form of ``degree`` in ``2n+2`` variables vanishing on both coordinate planes.

    Only monomials with a variable from each block appear.
    """
    if not field.p:
        raise FieldError("random forms are drawn over a prime field")
    N = 2 * n + 2
    terms = []
    for combo in itertools.combinations_with_replacement(range(N), degree):
        if not any(i <= n for i in combo) or not any(i > n for i in combo):
            continue
        if density < 1.0 and rng.random() > density:
            continue
        e = [0] * N
        for i in combo:
            e[i] += 1
        terms.append((tuple(e), rng.randrange(field.p)))
    return Polynomial.from_terms(field, N, terms)


def decompose_two_planes(F: Polynomial, n: int) -> dict:
    """Linear forms ``l_ij`` with ``F = sum_{i <= n < j} l_ij x_i x_j`` for a cubic ``F``.

    Each monomial is routed to the pair ``(i, j)`` made of its smallest
    first-block index and its smallest second-block index; the remaining
    variable is the linear factor.
    """
    N = 2 * n + 2
    if F.nvars != N:
        raise DimensionMismatchError(f"expected {N} variables, got {F.nvars}")
    if F.degree != 3 or not F.is_homogeneous:
        raise PreconditionError("decompose_two_planes handles homogeneous cubics only")
    table: dict = {}
    for e, c in F.terms:
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        first = [i for i in idx if i <= n]
        second = [i for i in idx if i > n]
        if not first:
            raise PreconditionError(f"monomial {_mono(e)} does not vanish on (x_0 = ... = x_{n} = 0)")
        if not second:
            raise PreconditionError(f"monomial {_mono(e)} does not vanish on (x_{n + 1} = ... = x_{N - 1} = 0)")
        i, j = first[0], second[0]
        rest = list(idx)
        rest.remove(i)
        rest.remove(j)
        k = rest[0]
        term = Polynomial.var(F.field, N, k).scale(c)
        table[(i, j)] = table.get((i, j), Polynomial.zero(F.field, N)) + term
    return {key: v for key, v in sorted(table.items()) if v}


def _mono(e) -> str:
    return "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k) or "1"


def recompose_two_planes(table: dict, field: FieldSpec, N: int) -> Polynomial:
    xs = Polynomial.gens(field, N)
    out = Polynomial.zero(field, N)
    for (i, j), l in table.items():
        out = out + l * xs[i] * xs[j]
    return out


def two_plane_substitution(F: Polynomial, n: int) -> Polynomial:
    """``F(s a, t b)`` in the variables ``a_0..a_n, b_{n+1}..b_{2n+1}, s, t``."""
    N = 2 * n + 2
    field = F.field
    v = Polynomial.gens(field, N + 2)
    s, t = v[N], v[N + 1]
    return F.substitute([v[i] * (s if i <= n else t) for i in range(N)])


@dataclass
class CubicTwoPlanes:
    """Third-point parametrisation of a cubic through two disjoint n-planes.

    Parameter space: the affine chart ``a_0 = 1, b_{n+1} = 1`` of
    ``L1 x L2``, with variables ``a_1..a_n, b_{n+2}..b_{2n+1}``.  Target: the
    affine chart ``x_0 = 1`` of ``X``.  ``third_point`` is ``None`` when the
    formula's ``s`` vanishes identically (no affine chart representation).
    """

    third_point: RationalMap | None
    inverse: RationalMap
    source: AmbientSpace
    target: Hypersurface
    certificate: BirationalReport | None
    third_point_projective: RationalMap
    s: Polynomial
    t: Polynomial
    dominant: bool
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.certificate is not None and self.certificate.ok


def cubic_two_planes_param(X: Hypersurface, certify: bool = True) -> CubicTwoPlanes:
    """Birational map ``L1 x L2 -> X`` sending a pair of points to the third point of ``X`` on their line.

    With ``F(s a, t b) = s t (s f21(a, b) + t f12(a, b))`` the third point is
    ``(s : t) = (-f12 : f21)``.  The inverse reads the two coordinate blocks.
    """
    if X.degree != 3:
        raise PreconditionError("expected a cubic")
    n = _check_two_planes(X)
    field = X.field
    N = 2 * n + 2
    parts = bidegree_parts(X.defining, n)
    zero = Polynomial.zero(field, N)
    f21, f12 = parts.get((2, 1), zero), parts.get((1, 2), zero)
    # chart a_0 = b_{n+1} = 1: parameters u_1..u_n (a-block), v_1..v_n (b-block)
    P = 2 * n
    par = Polynomial.gens(field, P)
    one = Polynomial.one(field, P)
    a = [one] + par[:n]
    b = [one] + par[n:]
    point = a + b
    s = -f12.substitute(point)
    t = f21.substitute(point)
    src = AmbientSpace.affine(field, P)
    X_aff = X.affine_chart(0)
    proj = RationalMap.projective([s * ai for ai in a] + [t * bj for bj in b], AFFINE)
    xs = Polynomial.gens(field, N - 1)
    # affine chart coordinates: x_1..x_{N-1}; x_{n+1} is the b-block anchor
    anchor = xs[n]
    inverse = RationalMap.from_fractions(
        [xs[i] for i in range(n)] + [(xs[n + 1 + k], anchor) for k in range(n)])
    third = None
    if not s.is_zero:
        third = RationalMap.from_fractions(par[:n] + [(t, s)] + [(t * v, s) for v in par[n:]])
    if s.is_zero or t.is_zero:
        which = "s" if s.is_zero else "t"
        reason = (f"map not dominant: {which} vanishes identically, so every third point "
                  f"lies on a coordinate plane")
        cert = BirationalReport(False, reason)
        return CubicTwoPlanes(third, inverse, src, X_aff, cert, proj, s, t, False, reason)
    cert = verify_birational(third, inverse, src, X_aff) if certify else None
    return CubicTwoPlanes(third, inverse, src, X_aff, cert, proj, s, t, True,
                          cert.reason if cert else "")


# -- plane cubics --------------------------------------------------------------


def _check_plane_cubic(C: Hypersurface):
    if C.chart != PROJECTIVE or C.nvars != 3 or C.degree != 3:
        raise PreconditionError("expected a projective plane cubic")


def chord_third_point(C: Hypersurface, p0: Point, p: Point) -> Point:
    """Third intersection of the line through ``p0`` and ``p`` with ``C``.

    The restriction of ``C`` to the line ``u p0 + v p`` is a binary cubic
    divisible by ``u v``; the remaining linear factor gives the third point.
    Tangency shows up as a repeated root, so the answer may equal ``p`` or ``p0``.
    """
    _check_plane_cubic(C)
    for q in (p0, p):
        if not C.contains(q):
            raise PointNotOnHypersurfaceError(f"{q} is not on the cubic")
    if p == p0:
        raise PreconditionError("p and p0 must be distinct")
    field = C.field
    u, v = Polynomial.gens(field, 2)
    binary = C.defining.substitute([u.scale(a) + v.scale(b) for a, b in zip(p0.coords, p.coords)])
    if binary.is_zero:
        raise PreconditionError("the line through p0 and p lies in the cubic")
    lin, rem = binary.divmod(u * v)
    if rem:
        raise AssertionError("binary cubic not divisible by u*v")
    alpha, beta = lin.coefficient((1, 0)), lin.coefficient((0, 1))
    coords = [field.reduce(beta * a - alpha * b) for a, b in zip(p0.coords, p.coords)]
    return Point.projective(field, coords)


def chord_coefficients(C: Polynomial, p0: Sequence) -> tuple:
    """``(c1, c2)`` with ``C(u p0 + v x) - v^3 C(x) = u v (c1 u + c2 v)``."""
    field = C.field
    g = Polynomial.gens(field, 5)
    xs, u, v = g[:3], g[3], g[4]
    line = C.substitute([u.scale(a) + v * x for a, x in zip(p0, xs)])
    Cx = C.embed(5, [0, 1, 2])
    E = line - v ** 3 * Cx
    c1 = Polynomial.zero(field, 5)
    c2 = Polynomial.zero(field, 5)
    terms1, terms2 = [], []
    for e, c in E.terms:
        eu, ev = e[3], e[4]
        if (eu, ev) == (2, 1):
            terms1.append((e[:3] + (0, 0), c))
        elif (eu, ev) == (1, 2):
            terms2.append((e[:3] + (0, 0), c))
        elif c:
            raise PreconditionError("p0 is not on the cubic")
    c1 = Polynomial.from_terms(field, 3, [(e[:3], c) for e, c in terms1])
    c2 = Polynomial.from_terms(field, 3, [(e[:3], c) for e, c in terms2])
    return c1, c2


@dataclass
class ChordInvolution:
    involution: RationalMap
    curve: Hypersurface
    base_point: Point
    certificate: BirationalReport | None


def chord_involution(C: Hypersurface, p0: Point, certify: bool = True) -> ChordInvolution:
    """``tau(x) = c2(x) p0 - c1(x) x``, the symbolic third-point map."""
    _check_plane_cubic(C)
    if not C.contains(p0):
        raise PointNotOnHypersurfaceError(f"{p0} is not on the cubic")
    c1, c2 = chord_coefficients(C.defining, p0.coords)
    if c1.is_zero and c2.is_zero:
        raise PreconditionError("every line through p0 lies in the cubic")
    xs = Polynomial.gens(C.field, 3)
    tau = RationalMap.projective([c2.scale(a) - c1 * x for a, x in zip(p0.coords, xs)])
    cert = verify_birational(tau, tau, C, C) if certify else None
    return ChordInvolution(tau, C, p0, cert)


# -- Fermat hypersurfaces ------------------------------------------------------


def fermat_line_count(d: int, n: int) -> int:
    """``d^(n+1) (2n+2)! / (2^(n+1) (n+1)!)``."""
    return d ** (n + 1) * factorial(2 * n + 2) // (2 ** (n + 1) * factorial(n + 1))


def pairings(m: int):
    """Perfect matchings of ``range(m)`` as tuples of ``(min, max)`` pairs, first elements increasing."""
    def rec(rest):
        if not rest:
            yield ()
            return
        first = rest[0]
        for k in range(1, len(rest)):
            pair = (first, rest[k])
            for tail in rec(rest[1:k] + rest[k + 1:]):
                yield (pair,) + tail
    if m % 2:
        raise PreconditionError("need an even number of indices")
    yield from rec(tuple(range(m)))


def roots_of_minus_one(d: int, field: FieldSpec) -> list:
    """All ``e`` in the field with ``e^d = -1``."""
    if field.p:
        return uni.roots_mod_p([1] + [0] * (d - 1) + [1], field, _FixedRng())
    return [QQ.coerce(-1)] if d % 2 else []


class _FixedRng:
    """Deterministic stand-in for root splitting in large fields."""

    def __init__(self):
        import random
        self._r = random.Random(1)

    def randrange(self, *a):
        return self._r.randrange(*a)


def fermat_polynomial(d: int, nvars: int, field: FieldSpec = QQ) -> Polynomial:
    return sum(v ** d for v in Polynomial.gens(field, nvars))


@dataclass
class FermatLines:
    d: int
    n: int
    field: FieldSpec
    roots: list
    lines: list
    partial: bool
    expected: int = dc_field(default=0)
    labels: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]


def fermat_lines(d: int, n: int, field: FieldSpec) -> FermatLines:
    """The n-planes ``x_min = e x_max`` (one root ``e`` of -1 per pair) on ``sum x_i^d = 0``.

    Over F_p this needs ``2d | p - 1`` and then returns all
    ``fermat_line_count(d, n)`` planes.  Over Q only ``e = -1`` exists
    (``d`` odd); the family is then flagged as partial.
    """
    if d < 1 or n < 0:
        raise PreconditionError("need d >= 1 and n >= 0")
    if field.p:
        if (field.p - 1) % (2 * d):
            raise FieldError(f"F_{field.p} lacks the {d} d-th roots of -1: need 2d | p - 1, "
                             f"i.e. p = 1 mod {2 * d}")
        partial = False
    else:
        if d % 2 == 0:
            raise FieldError(f"-1 has no rational {d}-th root for even d")
        partial = d > 1
    roots = sorted(roots_of_minus_one(d, field))
    N = 2 * n + 2
    lines, labels = [], []
    for match in pairings(N):
        for eps in itertools.product(roots, repeat=n + 1):
            cols = []
            for (lo, hi), e in zip(match, eps):
                col = [0] * N
                col[lo] = e
                col[hi] = 1
                cols.append(col)
            lines.append(LinearSubspace.from_columns(field, cols))
            labels.append((tuple(match), eps))
    return FermatLines(d, n, field, roots, lines, partial, fermat_line_count(d, n), labels)


# -- determinantal quartics ----------------------------------------------------


@dataclass
class DeterminantalPair:
    XB: Hypersurface
    XC: Hypersurface
    cramer: RationalMap
    cramer_back: RationalMap
    cramer_raw: list
    cramer_back_raw: list
    forward_restriction: RestrictionCertificate | None
    backward_restriction: RestrictionCertificate | None
    certificate: BirationalReport | None

    @property
    def ok(self) -> bool:
        return bool(self.forward_restriction and self.backward_restriction
                    and self.certificate and self.certificate.ok)


def determinantal_matrices(a, field: FieldSpec):
    """``B_kj = sum_i a[k][i][j] x_i`` and ``C_ki = sum_j a[k][i][j] y_j``."""
    m = len(a)
    B = [[Polynomial.linear_form(field, [a[k][i][j] for i in range(m)]) for j in range(m)]
         for k in range(m)]
    C = [[Polynomial.linear_form(field, [a[k][i][j] for j in range(m)]) for i in range(m)]
         for k in range(m)]
    return B, C


def _cofactor_row(M) -> list:
    """``(-1)^j det M_{last, j}``: the signed minors along the last row."""
    last = len(M) - 1
    return [linalg.poly_det(linalg.poly_submatrix(M, last, j)).scale(-1 if j % 2 else 1)
            for j in range(len(M))]


def determinantal_pair(a, field: FieldSpec, certify: bool = True) -> DeterminantalPair:
    """The two determinantal quartics of a 4x4x4 tensor and the Cramer maps between them."""
    if len(a) != 4 or any(len(s) != 4 or any(len(r) != 4 for r in s) for s in a):
        raise DimensionMismatchError("expected a 4x4x4 tensor")
    a = [[[field.coerce(x) for x in r] for r in s] for s in a]
    B, C = determinantal_matrices(a, field)
    dB, dC = linalg.poly_det(B), linalg.poly_det(C)
    if dB.is_zero or dC.is_zero:
        raise PreconditionError("degenerate tensor: a determinant vanishes identically")
    XB, XC = Hypersurface(dB, PROJECTIVE), Hypersurface(dC, PROJECTIVE)
    phi, psi = _cofactor_row(B), _cofactor_row(C)
    if all(q.is_zero for q in phi) or all(q.is_zero for q in psi):
        raise PreconditionError("degenerate tensor: the Cramer cofactors vanish identically")
    cramer, back = RationalMap.projective(phi), RationalMap.projective(psi)
    fr = br = cert = None
    if certify:
        fr = check_restriction(cramer, XB, XC)
        br = check_restriction(back, XC, XB)
        cert = verify_birational(cramer, back, XB, XC)
    return DeterminantalPair(XB, XC, cramer, back, phi, psi, fr, br, cert)


def random_tensor(field: FieldSpec, rng, size: int = 4) -> list:
    return [[[rng.randrange(field.p) for _ in range(size)] for _ in range(size)] for _ in range(size)]


# -- quartic involution --------------------------------------------------------


@dataclass
class QuarticInvolution:
    involution: RationalMap
    X: Hypersurface
    restriction: RestrictionCertificate | None
    round_trip: RoundTrip | None

    @property
    def ok(self) -> bool:
        return bool(self.restriction and self.round_trip and self.round_trip.ok)


def quartic_two_planes_involution(X: Hypersurface, certify: bool = True) -> QuarticInvolution:
    """The fourth-point involution of a quartic through two disjoint coordinate n-planes.

    ``F(s a, t b) = s t (c20 s^2 + c11 s t + c02 t^2)`` and the fourth point of
    the transversal through ``(a ; b)`` is ``(c02 a : c20 b)``.
    """
    if X.degree != 4:
        raise PreconditionError("expected a quartic")
    n = _check_two_planes(X)
    parts = bidegree_parts(X.defining, n)
    zero = Polynomial.zero(X.field, X.nvars)
    c20, c02 = parts.get((3, 1), zero), parts.get((1, 3), zero)
    if c20.is_zero or c02.is_zero:
        raise PreconditionError("the quartic has no (3,1) or no (1,3) part; the involution degenerates")
    xs = Polynomial.gens(X.field, X.nvars)
    phi = RationalMap.projective([c02 * x for x in xs[:n + 1]] + [c20 * x for x in xs[n + 1:]])
    rc = rt = None
    if certify:
        rc = check_restriction(phi, X, X)
        rt = check_round_trip(phi, phi, X)
    return QuarticInvolution(phi, X, rc, rt)


def planes_to_coordinates(X: Hypersurface, L1: LinearSubspace, L2: LinearSubspace):
    """Linear change of coordinates moving two disjoint n-planes to the coordinate planes.

    Returns ``(X', A)`` with ``X' = (F(A y) = 0)``; the columns of ``A`` are the
    bases of ``L1`` then ``L2``, so ``L1`` becomes ``(y_{n+1} = ... = 0)`` and
    ``L2`` becomes ``(y_0 = ... = y_n = 0)``.
    """
    N = X.nvars
    if L1.nparams + L2.nparams != N:
        raise DimensionMismatchError("the planes must have complementary dimensions")
    cols = L1.columns() + L2.columns()
    if linalg.rank(cols, X.field) != N:
        raise PreconditionError("the planes are not disjoint")
    A = [list(r) for r in zip(*cols)]
    ys = [Polynomial.linear_form(X.field, row) for row in A]
    return Hypersurface(X.defining.substitute(ys), PROJECTIVE), A
