"""Hypersurfaces, points and linear subspaces.

Conventions: an affine hypersurface ``(h = 0)`` of dimension n lives in
A^{n+1} and its polynomial has ``n + 1`` variables; a projective one lives in
P^{n+1} with a homogeneous polynomial in ``n + 2`` variables.  Whole spaces
(A^N or P^N) are represented by :class:`AmbientSpace`, which has no defining
polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import linalg
from . import univariate as uni
from .errors import (
    CharacteristicError,
    ChartError,
    DimensionMismatchError,
    FieldError,
    FieldMismatchError,
    NotHomogeneousError,
    PointNotOnHypersurfaceError,
    PreconditionError,
    SingularPointError,
)
from .fields import FieldSpec
from .poly import Polynomial


class Chart(str, Enum):
    AFFINE = "affine"
    PROJECTIVE = "projective"

    @classmethod
    def parse(cls, text: str) -> "Chart":
        t = text.strip().lower()
        if t in ("a", "affine"):
            return cls.AFFINE
        if t in ("p", "proj", "projective"):
            return cls.PROJECTIVE
        raise ChartError(f"unknown chart {text!r}")


AFFINE = Chart.AFFINE
PROJECTIVE = Chart.PROJECTIVE


@dataclass(frozen=True)
class Point:
    """A point with exact coordinates.

    Projective points are stored in canonical form (first nonzero coordinate
    equal to 1), so equality up to scaling is plain tuple equality.
    """

    field: FieldSpec
    coords: tuple
    chart: Chart = AFFINE

    def __post_init__(self):
        coords = tuple(self.field.coerce(c) for c in self.coords)
        if self.chart == PROJECTIVE:
            lead = next((c for c in coords if c != 0), None)
            if lead is None:
                raise PreconditionError("(0 : ... : 0) is not a projective point")
            inv = self.field.inv(lead)
            P = self.field.p
            coords = tuple((c * inv) % P if P else c * inv for c in coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def affine(cls, field: FieldSpec, coords: Sequence) -> "Point":
        return cls(field, tuple(coords), AFFINE)

    @classmethod
    def projective(cls, field: FieldSpec, coords: Sequence) -> "Point":
        return cls(field, tuple(coords), PROJECTIVE)

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Point":
        """``"3/5, 4/5"`` is affine, ``"1 : -1 : 0 : 0"`` projective."""
        t = text.strip().strip("()")
        if ":" in t:
            return cls.projective(field, [field.parse_element(s) for s in t.split(":")])
        return cls.affine(field, [field.parse_element(s) for s in t.split(",")])

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        sep = " : " if self.chart == PROJECTIVE else ", "
        return "(" + sep.join(str(c) for c in self.coords) + ")"


class _Space:
    field: FieldSpec
    nvars: int
    chart: Chart

    @property
    def ambient_dim(self) -> int:
        return self.nvars if self.chart == AFFINE else self.nvars - 1

    def _check_point(self, p: Point):
        if p.field != self.field:
            raise FieldMismatchError(f"point over {p.field}, space over {self.field}")
        if p.chart != self.chart:
            raise ChartError(f"{p.chart.value} point used with a {self.chart.value} space")
        if len(p.coords) != self.nvars:
            raise DimensionMismatchError(
                f"point has {len(p.coords)} coordinates, space needs {self.nvars}")


@dataclass(frozen=True)
class AmbientSpace(_Space):
    """The whole of A^nvars or P^(nvars-1)."""

    field: FieldSpec
    nvars: int
    chart: Chart = AFFINE

    defining = None

    @classmethod
    def affine(cls, field: FieldSpec, n: int) -> "AmbientSpace":
        return cls(field, n, AFFINE)

    @classmethod
    def projective(cls, field: FieldSpec, n: int) -> "AmbientSpace":
        """P^n, with n + 1 homogeneous coordinates."""
        return cls(field, n + 1, PROJECTIVE)

    @property
    def dim(self) -> int:
        return self.ambient_dim

    def contains(self, p: Point) -> bool:
        self._check_point(p)
        return True

    def __str__(self):
        return f"{'A' if self.chart == AFFINE else 'P'}^{self.ambient_dim} over {self.field}"


@dataclass(frozen=True)
class Hypersurface(_Space):
    defining: Polynomial
    chart: Chart = AFFINE

    def __post_init__(self):
        if self.defining.degree < 1:
            raise PreconditionError("a hypersurface needs a defining polynomial of degree >= 1")
        if self.chart == PROJECTIVE and not self.defining.is_homogeneous:
            raise NotHomogeneousError("a projective hypersurface needs a homogeneous equation")

    @classmethod
    def affine(cls, h: Polynomial) -> "Hypersurface":
        return cls(h, AFFINE)

    @classmethod
    def projective(cls, h: Polynomial) -> "Hypersurface":
        return cls(h, PROJECTIVE)

    @property
    def field(self) -> FieldSpec:
        return self.defining.field

    @property
    def nvars(self) -> int:
        return self.defining.nvars

    @property
    def degree(self) -> int:
        return self.defining.degree

    @property
    def dim(self) -> int:
        return self.ambient_dim - 1

    def contains(self, p: Point) -> bool:
        return point_on(self, p)

    def projective_closure(self, slot: int | None = None) -> "Hypersurface":
        if self.chart != AFFINE:
            raise ChartError("already projective")
        slot = self.nvars if slot is None else slot
        return Hypersurface(self.defining.homogenize(slot), PROJECTIVE)

    def affine_chart(self, slot: int = 0) -> "Hypersurface":
        if self.chart != PROJECTIVE:
            raise ChartError("already affine")
        return Hypersurface(self.defining.dehomogenize(slot), AFFINE)

    def reduce_to(self, field: FieldSpec) -> "Hypersurface":
        return Hypersurface(self.defining.reduce_to(field), self.chart)

    def __str__(self):
        return f"({self.defining} = 0) in {'A' if self.chart == AFFINE else 'P'}^{self.ambient_dim}"


Space = (AmbientSpace, Hypersurface)


# -- pointwise questions -----------------------------------------------------


def point_on(X: Hypersurface, p: Point) -> bool:
    """Exact membership; for projective X any representative gives the same answer."""
    X._check_point(p)
    return X.defining.evaluate(p.coords) == 0


def singular_locus_equations(X: Hypersurface) -> list:
    """The partial derivatives whose common zeros are the singular points."""
    if X.chart != PROJECTIVE:
        raise ChartError("singular_locus_equations expects a projective hypersurface; "
                         "use affine_singular_locus_equations")
    return X.defining.gradient()


def affine_singular_locus_equations(X: Hypersurface) -> list:
    if X.chart != AFFINE:
        raise ChartError("expected an affine hypersurface")
    return [X.defining] + X.defining.gradient()


def gradient_at(X: Hypersurface, p: Point) -> list:
    X._check_point(p)
    return [d.evaluate(p.coords) for d in X.defining.gradient()]


def is_smooth_at(X: Hypersurface, p: Point) -> bool:
    if not point_on(X, p):
        raise PointNotOnHypersurfaceError(f"{p} is not on {X}")
    return any(c != 0 for c in gradient_at(X, p))


def tangent_hyperplane(X: Hypersurface, p: Point) -> Polynomial:
    """Linear form cutting out the tangent hyperplane at a smooth point.

    Projective: ``sum dG/dx_i(p) x_i``.  Affine: ``sum dh/dx_i(p) (x_i - p_i)``.
    """
    if not point_on(X, p):
        raise PointNotOnHypersurfaceError(f"{p} is not on {X}")
    grad = gradient_at(X, p)
    if all(c == 0 for c in grad):
        raise SingularPointError(f"{p} is a singular point of {X}")
    field = X.field
    if X.chart == PROJECTIVE:
        return Polynomial.linear_form(field, grad)
    P = field.p
    const = -sum(g * c for g, c in zip(grad, p.coords))
    return Polynomial.linear_form(field, grad, const % P if P else const)


# -- linear subspaces --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearSubspace:
    """A projective linear subspace given by a parametrisation.

    ``matrix`` has one row per ambient coordinate and one column per
    parameter: the point with parameters ``(s_0 : ... : s_m)`` is
    ``matrix @ s``.  Columns must be linearly independent.  Equality compares
    the spanned subspace, not the chosen basis.
    """

    field: FieldSpec
    matrix: tuple
    _key: tuple = dc_field(default=(), repr=False)

    def __post_init__(self):
        m = tuple(tuple(self.field.coerce(x) for x in row) for row in self.matrix)
        if not m or not m[0]:
            raise DimensionMismatchError("empty parametrisation")
        if len({len(r) for r in m}) != 1:
            raise DimensionMismatchError("ragged parametrisation matrix")
        k = len(m[0])
        cols = [list(c) for c in zip(*m)]
        rref, piv = linalg.row_echelon(cols, self.field)
        if len(piv) != k:
            raise PreconditionError("parametrisation matrix must have full column rank")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_key", tuple(tuple(r) for r in rref))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence]) -> "LinearSubspace":
        return cls(field, tuple(zip(*columns)))

    @classmethod
    def from_equations(cls, field: FieldSpec, forms: Sequence[Polynomial]) -> "LinearSubspace":
        """The common zero set of homogeneous linear forms."""
        if not forms:
            raise PreconditionError("need at least one equation")
        n = forms[0].nvars
        rows = []
        for f in forms:
            if f.degree > 1 or not f.is_homogeneous:
                raise NotHomogeneousError("equations must be homogeneous linear forms")
            rows.append([f.coefficient(tuple(int(i == j) for j in range(n))) for i in range(n)])
        basis = linalg.nullspace(rows, field)
        if not basis:
            raise PreconditionError("the equations have no common projective zero")
        return cls.from_columns(field, basis)

    @property
    def ambient_nvars(self) -> int:
        return len(self.matrix)

    @property
    def nparams(self) -> int:
        return len(self.matrix[0])

    @property
    def dim(self) -> int:
        return self.nparams - 1

    def columns(self) -> list:
        return [list(c) for c in zip(*self.matrix)]

    def param_forms(self) -> list:
        """Ambient coordinates as linear forms in the parameters."""
        return [Polynomial.linear_form(self.field, row) for row in self.matrix]

    def point(self, params: Sequence) -> Point:
        P = self.field.p
        vals = [self.field.coerce(s) for s in params]
        coords = []
        for row in self.matrix:
            v = sum(a * s for a, s in zip(row, vals))
            coords.append(v % P if P else v)
        return Point.projective(self.field, coords)

    def equations(self) -> list:
        """Linear forms cutting out the subspace (exact null space)."""
        basis = linalg.nullspace(self.columns(), self.field)
        return [Polynomial.linear_form(self.field, v) for v in basis]

    def contains_point(self, p: Point) -> bool:
        return linalg.rank(self.columns() + [list(p.coords)], self.field) == self.nparams

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.field == other.field and self._key == other._key

    def __hash__(self):
        return hash((self.field, self._key))

    def __str__(self):
        eqs = self.equations()
        return "(" + ", ".join(f"{e} = 0" for e in eqs) + ")"


def contains_subspace(X: Hypersurface, L: LinearSubspace) -> bool:
    """Symbolic test: the equation of X vanishes identically on L."""
    if X.chart != PROJECTIVE:
        raise ChartError("contains_subspace expects a projective hypersurface")
    if L.ambient_nvars != X.nvars:
        raise DimensionMismatchError(
            f"subspace lives in {L.ambient_nvars} coordinates, hypersurface in {X.nvars}")
    if L.field != X.field:
        raise FieldMismatchError("subspace and hypersurface over different fields")
    return X.defining.substitute(L.param_forms()).is_zero


def subspaces_disjoint(L1: LinearSubspace, L2: LinearSubspace) -> bool:
    """True iff the two projective subspaces share no point."""
    if L1.ambient_nvars != L2.ambient_nvars:
        raise DimensionMismatchError("subspaces live in different ambient spaces")
    if L1.field != L2.field:
        raise FieldMismatchError("subspaces over different fields")
    return linalg.rank(L1.columns() + L2.columns(), L1.field) == L1.nparams + L2.nparams


# -- finite-field points -----------------------------------------------------


def _sampling_field(X: Hypersurface, field: FieldSpec | None) -> tuple:
    target = field or X.field
    if not target.is_prime_field:
        raise FieldError("point sampling needs a prime field; the rationals cannot be enumerated")
    if target.p <= 3:
        raise CharacteristicError("point sampling requires p > 3")
    if X.field != target:
        if X.field.is_prime_field:
            raise FieldMismatchError(f"hypersurface over {X.field}, sampling over {target}")
        X = X.reduce_to(target)
    return X, target


def random_point_on(X: Hypersurface, rng, max_tries: int = 100,
                    field: FieldSpec | None = None) -> Point | None:
    """A random F_p-point of X, or ``None`` if none is found in ``max_tries``.

    Each try fixes all but one coordinate at random and solves the remaining
    univariate equation for its roots.  A rational X is reduced modulo p.
    """
    X, F = _sampling_field(X, field)
    n = X.nvars
    h = X.defining
    for _ in range(max_tries):
        free = rng.randrange(n)
        vals = [rng.randrange(F.p) for _ in range(n)]
        if X.chart == PROJECTIVE and all(v == 0 for i, v in enumerate(vals) if i != free):
            continue
        coeffs = _restrict_to_line(h, free, vals)
        if not coeffs:
            vals[free] = rng.randrange(F.p)
        else:
            roots = uni.roots_mod_p(coeffs, F, rng)
            if not roots:
                continue
            vals[free] = rng.choice(roots)
        return Point(F, tuple(vals), X.chart)
    return None


def _restrict_to_line(h: Polynomial, free: int, vals) -> list:
    """Coefficients in x_free of h with the other coordinates fixed."""
    P = h.field.p
    out: dict = {}
    for e, c in h.terms:
        term = c
        for i, ei in enumerate(e):
            if ei and i != free:
                term = term * pow(vals[i], ei, P) % P
        out[e[free]] = (out.get(e[free], 0) + term) % P
    if not out:
        return []
    return uni.trim([out.get(i, 0) for i in range(max(out) + 1)])


def iter_space_points(field: FieldSpec, nvars: int, chart: Chart):
    """Every F_p-point of A^nvars, or every canonical point of P^(nvars-1)."""
    p = field.p
    if not p:
        raise FieldError("the rationals cannot be enumerated")
    if chart == AFFINE:
        for coords in itertools.product(range(p), repeat=nvars):
            yield Point(field, coords, AFFINE)
        return
    for lead in range(nvars):
        for tail in itertools.product(range(p), repeat=nvars - lead - 1):
            yield Point(field, (0,) * lead + (1,) + tail, PROJECTIVE)


def enumerate_points(X: Hypersurface, field: FieldSpec | None = None) -> list:
    """All F_p-points of X by brute force (small p and dimension only)."""
    target = field or X.field
    if X.field != target:
        X = X.reduce_to(target)
    h = X.defining
    return [pt for pt in iter_space_points(target, X.nvars, X.chart) if h.evaluate(pt.coords) == 0]


def singular_points(X: Hypersurface, field: FieldSpec | None = None) -> list:
    """Exhaustive list of F_p-points where every partial derivative vanishes."""
    target = field or X.field
    if X.field != target:
        X = X.reduce_to(target)
    grads = X.defining.gradient()
    return [pt for pt in enumerate_points(X)
            if all(g.evaluate(pt.coords) == 0 for g in grads)]


@dataclass
class SmoothnessScan:
    tries: int
    points_checked: int
    singular: list

    @property
    def found_singular(self) -> bool:
        return bool(self.singular)


def scan_for_singular_points(X: Hypersurface, rng, tries: int = 200,
                             field: FieldSpec | None = None) -> SmoothnessScan:
    """Probabilistic report: sample points and test smoothness at each.

    Finding none is evidence, not proof, that X is smooth.
    """
    X, F = _sampling_field(X, field)
    grads = X.defining.gradient()
    checked, bad = 0, []
    for _ in range(tries):
        pt = random_point_on(X, rng, max_tries=20)
        if pt is None:
            continue
        checked += 1
        if all(g.evaluate(pt.coords) == 0 for g in grads):
            if pt not in bad:
                bad.append(pt)
    return SmoothnessScan(tries, checked, bad)


def to_fraction_point(p: Point) -> tuple:
    return tuple(Fraction(c) for c in p.coords)
