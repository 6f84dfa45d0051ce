"""Numerical invariants of hypersurfaces and the criteria built on them.

Everything here is either pure arithmetic on ``(degree, dimension)`` or an
exact evaluation.  None of these functions ever asserts that a hypersurface
*is* rational: the degree criterion and the Segre test are one-sided.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import linalg
from .errors import ChartError, DimensionMismatchError, NotHomogeneousError, PointNotOnHypersurfaceError, PreconditionError, SingularPointError
from .geom import AFFINE, Point
from .poly import Polynomial
from .ratmap import RationalFunction


class TypeClass(str, Enum):
    GENERAL_TYPE = "GeneralType"
    CALABI_YAU = "CalabiYau"
    FANO = "Fano"


def _check_dn(d: int, n: int):
    if d < 1 or n < 1:
        raise PreconditionError("need degree d >= 1 and dimension n >= 1")


def volume_form_dim(d: int, n: int) -> int:
    """Dimension of the space of global volume forms on a smooth degree-d hypersurface of dimension n.

    Equal to the number of degree ``d - n - 2`` monomials in ``n + 2``
    variables, i.e. ``binomial(d - 1, n + 1)``.
    """
    _check_dn(d, n)
    return comb(d - 1, n + 1) if d >= n + 2 else 0


def classify_type(d: int, n: int) -> TypeClass:
    _check_dn(d, n)
    if d >= n + 3:
        return TypeClass.GENERAL_TYPE
    if d == n + 2:
        return TypeClass.CALABI_YAU
    return TypeClass.FANO


def not_rational_by_degree(d: int, n: int) -> bool:
    """True certifies non-rationality of a smooth hypersurface; False means no conclusion."""
    _check_dn(d, n)
    return d >= n + 2


@dataclass(frozen=True)
class LinearityClass:
    must_be_linear: bool
    case: str | None = None

    def __str__(self):
        return "MustBeLinear" if self.must_be_linear else f"ExceptionalCase({self.case})"


def isomorphism_linearity_class(n: int, d1: int, d2: int | None = None) -> LinearityClass:
    """Must every isomorphism between irreducible hypersurfaces of these degrees be linear?

    The exceptions are conic/line (n = 1), plane cubics and quartic surfaces.
    """
    d2 = d1 if d2 is None else d2
    if n < 1 or d1 < 1 or d2 < 1:
        raise PreconditionError("need n >= 1 and positive degrees")
    if n == 1 and {d1, d2} == {1, 2}:
        return LinearityClass(False, "conic and line")
    if n == 1 and d1 == d2 == 3:
        return LinearityClass(False, "plane cubic")
    if n == 2 and d1 == d2 == 4:
        return LinearityClass(False, "quartic surface")
    return LinearityClass(True)


# -- Segre's criterion ---------------------------------------------------------


class SegreVerdict(str, Enum):
    NOT_RATIONAL_OVER_Q = "NotRationalOverQ"
    INCONCLUSIVE = "Inconclusive"


def integer_cube_root(m: int) -> int:
    """Floor of the real cube root of ``m >= 0``."""
    if m < 0:
        raise ValueError("negative input")
    if m < 2:
        return m
    x = 1 << -(-m.bit_length() // 3)
    while True:
        y = (2 * x + m // (x * x)) // 3
        if y >= x:
            return x
        x = y


def is_rational_cube(q) -> bool:
    """A reduced fraction is a cube iff |numerator| and denominator are integer cubes."""
    q = Fraction(q)
    num, den = abs(q.numerator), q.denominator
    r, s = integer_cube_root(num), integer_cube_root(den)
    return r ** 3 == num and s ** 3 == den


def segre_quotients(a: Sequence) -> list:
    """``(a_i a_j) / (a_k a_l)`` for the three splittings of ``{0,1,2,3}`` into pairs.

    The remaining permutations only invert these quotients, which does not
    change whether they are cubes.
    """
    a = [Fraction(x) for x in a]
    out = []
    for j in (1, 2, 3):
        k, l = [m for m in (1, 2, 3) if m != j]
        out.append(a[0] * a[j] / (a[k] * a[l]))
    return out


def segre_criterion(a0, a1, a2, a3) -> SegreVerdict:
    """Diagonal cubic surface ``sum a_i x_i^3 = 0`` over Q.

    Not rational over Q when no pairing quotient is a cube; otherwise the
    criterion says nothing.
    """
    a = [Fraction(x) for x in (a0, a1, a2, a3)]
    if any(x == 0 for x in a):
        raise PreconditionError("Segre's criterion needs nonzero coefficients")
    if any(is_rational_cube(q) for q in segre_quotients(a)):
        return SegreVerdict.INCONCLUSIVE
    return SegreVerdict.NOT_RATIONAL_OVER_Q


def diagonal_cubic_coefficients(F: Polynomial):
    """``(a_0, .., a_3)`` if ``F = sum a_i x_i^3`` in four variables, else ``None``."""
    if F.nvars != 4 or len(F) != 4:
        return None
    coeffs = [F.coefficient(tuple(3 * int(i == j) for j in range(4))) for i in range(4)]
    return coeffs if all(c != 0 for c in coeffs) else None


# -- volume forms ------------------------------------------------------------


@dataclass(frozen=True)
class VolumeFormChart:
    """The form ``(-1)^i / (dh/dz_i) dz_1 ^ ... (omit dz_i) ... ^ dz_{n+1}``.

    ``chart_index`` is 1-based, matching the coordinates ``z_1..z_{n+1}``.
    """

    chart_index: int
    sign: int
    denominator: Polynomial

    @property
    def coefficient(self) -> RationalFunction:
        one = Polynomial.constant(self.denominator.field, self.denominator.nvars, self.sign)
        return RationalFunction(one, self.denominator)


def affine_volume_chart(h: Polynomial, i: int) -> VolumeFormChart:
    if not 1 <= i <= h.nvars:
        raise DimensionMismatchError(f"chart index {i} outside 1..{h.nvars}")
    d = h.derivative(i - 1)
    if d.is_zero:
        raise ChartError(f"dh/dz_{i} vanishes identically; use another chart")
    return VolumeFormChart(i, -1 if i % 2 else 1, d)


def usable_charts(h: Polynomial, p: Sequence) -> list:
    """1-based indices ``i`` with ``dh/dz_i(p) != 0``."""
    return [i + 1 for i, g in enumerate(h.gradient()) if g.evaluate(p) != 0]


def tangent_basis(h: Polynomial, p: Sequence) -> list:
    """A basis of the tangent space ``{v : grad h(p) . v = 0}`` at a smooth point."""
    grad = [g.evaluate(p) for g in h.gradient()]
    if all(c == 0 for c in grad):
        raise SingularPointError("no tangent hyperplane at a singular point")
    return linalg.nullspace([grad], h.field)


def evaluate_volume_form(h: Polynomial, chart: VolumeFormChart, p, basis: Sequence[Sequence]):
    """Value of the chart form on a tangent frame at ``p``.

    ``(-1)^i / (dh/dz_i)(p)`` times the determinant of the frame matrix
    (one column per basis vector) with row ``i`` deleted.
    """
    field = h.field
    coords = list(p.coords) if isinstance(p, Point) else [field.coerce(c) for c in p]
    if isinstance(p, Point) and p.chart != AFFINE:
        raise ChartError("volume forms are evaluated at affine points")
    N = h.nvars
    if len(coords) != N:
        raise DimensionMismatchError(f"point has {len(coords)} coordinates, need {N}")
    if h.evaluate(coords) != 0:
        raise PointNotOnHypersurfaceError("point is not on the hypersurface")
    grad = [g.evaluate(coords) for g in h.gradient()]
    if all(c == 0 for c in grad):
        raise SingularPointError("volume form evaluation needs a smooth point")
    basis = [[field.coerce(c) for c in v] for v in basis]
    if len(basis) != N - 1 or any(len(v) != N for v in basis):
        raise DimensionMismatchError(f"need {N - 1} tangent vectors of length {N}")
    for v in basis:
        if field.reduce(sum(g * c for g, c in zip(grad, v))) != 0:
            raise PreconditionError("basis vector is not tangent at p")
    if linalg.rank(basis, field) != N - 1:
        raise PreconditionError("tangent vectors are linearly dependent")
    i = chart.chart_index
    di = chart.denominator.evaluate(coords)
    if di == 0:
        raise ChartError(f"dh/dz_{i} vanishes at p; use another chart")
    frame = [[v[r] for v in basis] for r in range(N) if r != i - 1]
    det = linalg.det(frame, field) if frame else field.one
    return field.reduce(chart.sign * det * field.inv(di))


def projective_volume_form_chart_coefficient(H: Polynomial, G: Polynomial) -> RationalFunction:
    """Density of the global form attached to ``G`` in the chart ``x_0 = 1``.

    ``G(1, x_1..x_{n+1}) / (dH/dx_{n+1})(1, x_1..x_{n+1})``, as a function of
    the affine coordinates ``x_1..x_{n+1}``.  Scaling all coordinates by
    ``lambda`` multiplies the form by ``lambda^(deg G + n + 2 - d)``, so it is
    well defined only when ``deg G = d - n - 2``.
    """
    if not H.is_homogeneous or H.is_zero:
        raise NotHomogeneousError("H must be a nonzero homogeneous polynomial")
    if G.nvars != H.nvars:
        raise DimensionMismatchError("G and H must use the same variables")
    d = H.degree
    n = H.nvars - 2
    target = d - n - 2
    if target < 0:
        raise PreconditionError(f"no global volume forms: deg G would be d - n - 2 = {target} < 0")
    if G.is_zero or not G.is_homogeneous or G.degree != target:
        raise PreconditionError(
            f"G must be homogeneous of degree d - n - 2 = {target}; the form scales by "
            f"lambda^(deg G + n + 2 - d) and is only well defined when that exponent is 0")
    num = G.dehomogenize(0)
    den = H.derivative(n + 1).dehomogenize(0)
    if den.is_zero:
        raise ChartError("dH/dx_{n+1} vanishes identically")
    return RationalFunction(num, den)


def count_monomials(d: int, nvars: int) -> int:
    """Brute-force count of exponent vectors of total degree ``d`` (for cross-checks)."""
    if d < 0:
        return 0
    return sum(1 for _ in combinations(range(d + nvars - 1), nvars - 1))
