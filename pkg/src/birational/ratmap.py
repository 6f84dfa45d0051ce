"""Rational functions, rational maps, and the birationality verifier.

Every :class:`RationalMap` is stored in one canonical projective form
``polys``:

* projective target: ``(p_0 : ... : p_m)`` with the tuple gcd divided out and
  the leading coefficient of the first nonzero coordinate equal to 1;
* affine target: ``(p_1, ..., p_m, D)`` meaning ``x_i -> p_i / D``, where
  ``D`` is the least common denominator of the reduced coordinates (so the
  tuple gcd is 1) and ``D`` is monic.  The denominator always goes last.

A projective source requires homogeneous coordinates of one common degree.
Definedness (``evaluate``) is decided for this canonical form only.  Another
representation of the same map may be defined at more points; no search for
such representations is attempted.

Membership in a hypersurface is tested by exact division by its (principal)
equation, without assuming irreducibility.  For reducible equations this is
stricter than vanishing on the zero set.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce
from itertools import combinations
from typing import Sequence

from .errors import (
    ChartError,
    CompositionUndefinedError,
    DimensionMismatchError,
    FieldError,
    FieldMismatchError,
    MapUndefinedAlongError,
    NotHomogeneousError,
    ZeroPolynomialError,
)
from .fields import FieldSpec
from .gcd import gcd, gcd_list, lcm
from .geom import AFFINE, PROJECTIVE, AmbientSpace, Chart, Point, _Space
from .poly import Polynomial, check_same_ring


# -- rational functions ------------------------------------------------------


class RationalFunction:
    """A reduced quotient ``numerator / denominator`` with monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Polynomial | None = None):
        if denominator is None:
            denominator = Polynomial.one(numerator.field, numerator.nvars)
        check_same_ring([numerator, denominator])
        if denominator.is_zero:
            raise ZeroPolynomialError("rational function with zero denominator")
        if numerator.is_zero:
            numerator, denominator = numerator, Polynomial.one(numerator.field, numerator.nvars)
        elif not denominator.is_constant:
            g = gcd(numerator, denominator)
            if not g.is_constant:
                numerator = numerator.exact_div(g)
                denominator = denominator.exact_div(g)
        lc = denominator.leading_coefficient()
        if lc != 1:
            inv = numerator.field.inv(lc)
            numerator, denominator = numerator.scale(inv), denominator.scale(inv)
        self.numerator = numerator
        self.denominator = denominator

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return cls(x)
        num, den = x
        return cls(num, den)

    @property
    def field(self) -> FieldSpec:
        return self.numerator.field

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.is_constant

    def __add__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.numerator * o.denominator + o.numerator * self.denominator,
                                self.denominator * o.denominator)

    def __sub__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.numerator * o.denominator - o.numerator * self.denominator,
                                self.denominator * o.denominator)

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __mul__(self, other):
        o = RationalFunction.coerce(other)
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    def __truediv__(self, other):
        o = RationalFunction.coerce(other)
        if o.is_zero:
            raise ZeroPolynomialError("division by the zero rational function")
        return RationalFunction(self.numerator * o.denominator, self.denominator * o.numerator)

    def __eq__(self, other):
        if isinstance(other, (Polynomial, tuple)):
            other = RationalFunction.coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def evaluate(self, values):
        """Value at a point, or ``None`` where the denominator vanishes."""
        d = self.denominator.evaluate(values)
        if d == 0:
            return None
        n = self.numerator.evaluate(values)
        f = self.field
        return f.reduce(n * f.inv(d))

    def __str__(self):
        if self.denominator.is_constant:
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"

    __repr__ = __str__


def _coerce_all(items) -> list:
    """Coerce coordinates; bare scalars take the ring of the other coordinates."""
    items = list(items)
    if not items:
        raise DimensionMismatchError("a rational map needs at least one coordinate")
    ring = next((x for x in items if isinstance(x, (Polynomial, RationalFunction, tuple, list))), None)
    if ring is None:
        raise DimensionMismatchError("cannot infer the variable count from constants alone")
    ring = RationalFunction.coerce(ring)
    return [RationalFunction(Polynomial.constant(ring.field, ring.nvars, x))
            if not isinstance(x, (Polynomial, RationalFunction, tuple, list))
            else RationalFunction.coerce(x) for x in items]


# -- rational maps -------------------------------------------------------------


class Undefined:
    """Result of evaluating a map where its canonical form is not defined.

    Falsy, so ``if F.evaluate(p): ...`` reads naturally.  The canonical form
    only is consulted; other representations might be defined here.
    """

    __slots__ = ("reason",)

    def __init__(self, reason: str):
        self.reason = reason

    def __bool__(self):
        return False

    def __eq__(self, other):
        return isinstance(other, Undefined)

    def __hash__(self):
        return hash(Undefined)

    def __repr__(self):
        return f"Undefined({self.reason!r})"


def _first_nonzero(polys):
    return next(q for q in polys if q)


class RationalMap:
    __slots__ = ("field", "nvars", "source_chart", "target_chart", "polys")

    def __init__(self, polys: Sequence[Polynomial], source_chart: Chart = AFFINE,
                 target_chart: Chart = PROJECTIVE, _normalized: bool = False):
        polys = list(polys)
        if not polys:
            raise DimensionMismatchError("a rational map needs at least one coordinate")
        check_same_ring(polys)
        source_chart, target_chart = Chart(source_chart), Chart(target_chart)
        if target_chart == AFFINE and len(polys) < 2:
            raise DimensionMismatchError("an affine-target map needs coordinates and a denominator")
        if not _normalized:
            polys = _normalize(polys, target_chart)
        if source_chart == PROJECTIVE:
            degs = {q.degree for q in polys if q}
            if len(degs) != 1 or not all(q.is_homogeneous for q in polys):
                raise NotHomogeneousError(
                    "a map from projective space needs homogeneous coordinates of equal degree")
        self.field = polys[0].field
        self.nvars = polys[0].nvars
        self.source_chart = source_chart
        self.target_chart = target_chart
        self.polys = tuple(polys)

    # -- constructors ------------------------------------------------------

    @classmethod
    def projective(cls, polys: Sequence[Polynomial], source_chart: Chart = PROJECTIVE) -> "RationalMap":
        """``(p_0 : ... : p_m)`` from polynomial coordinates."""
        return cls(polys, source_chart, PROJECTIVE)

    @classmethod
    def from_fractions(cls, fractions, source_chart: Chart = AFFINE) -> "RationalMap":
        """Affine target ``(f_1, ..., f_m)`` from rational functions or (num, den) pairs."""
        fr = _coerce_all(fractions)
        D = reduce(lcm, (f.denominator for f in fr))
        polys = [f.numerator * D.exact_div(f.denominator) for f in fr] + [D]
        return cls(polys, source_chart, AFFINE)

    @classmethod
    def from_projective_fractions(cls, fractions, source_chart: Chart = AFFINE) -> "RationalMap":
        """Projective target ``(f_0 : ... : f_m)``: clear denominators, then normalize."""
        fr = _coerce_all(fractions)
        D = reduce(lcm, (f.denominator for f in fr))
        return cls([f.numerator * D.exact_div(f.denominator) for f in fr], source_chart, PROJECTIVE)

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], source_chart: Chart = AFFINE) -> "RationalMap":
        """Affine target with polynomial coordinates (denominator 1)."""
        polys = list(polys)
        return cls(polys + [Polynomial.one(polys[0].field, polys[0].nvars)], source_chart, AFFINE)

    @classmethod
    def identity(cls, field: FieldSpec, nvars: int, chart: Chart = AFFINE) -> "RationalMap":
        xs = Polynomial.gens(field, nvars)
        if Chart(chart) == PROJECTIVE:
            return cls(xs, PROJECTIVE, PROJECTIVE)
        return cls.from_polynomials(xs, AFFINE)

    @classmethod
    def linear(cls, field: FieldSpec, matrix, chart: Chart = PROJECTIVE,
               translation: Sequence | None = None) -> "RationalMap":
        """``x -> M x`` on projective space, or ``x -> M x + b`` on affine space."""
        ncols = len(matrix[0])
        rows = [list(r) for r in matrix]
        if Chart(chart) == PROJECTIVE:
            if translation is not None:
                raise ChartError("projective linear maps have no translation part")
            return cls([Polynomial.linear_form(field, r) for r in rows], PROJECTIVE, PROJECTIVE)
        b = list(translation) if translation is not None else [0] * len(rows)
        forms = [Polynomial.linear_form(field, r, c) for r, c in zip(rows, b)]
        if any(f.nvars != ncols for f in forms):
            raise DimensionMismatchError("ragged matrix")
        return cls.from_polynomials(forms, AFFINE)

    # -- inspection --------------------------------------------------------

    @property
    def target_count(self) -> int:
        """Number of target coordinates (homogeneous ones for a projective target)."""
        return len(self.polys) - (self.target_chart == AFFINE)

    @property
    def denominator(self) -> Polynomial:
        if self.target_chart != AFFINE:
            raise ChartError("projective-target maps have no distinguished denominator")
        return self.polys[-1]

    @property
    def numerators(self) -> tuple:
        return self.polys[:-1] if self.target_chart == AFFINE else self.polys

    @property
    def degree(self) -> int:
        return max(q.degree for q in self.polys)

    def coordinates(self) -> list:
        """Reduced coordinate functions of an affine-target map."""
        D = self.denominator
        return [RationalFunction(p, D) for p in self.polys[:-1]]

    def coordinate_strings(self) -> list:
        if self.target_chart == AFFINE:
            return [str(c) for c in self.coordinates()]
        return [str(q) for q in self.polys]

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return (self.source_chart == other.source_chart and self.target_chart == other.target_chart
                and self.polys == other.polys)

    def __hash__(self):
        return hash((self.source_chart, self.target_chart, self.polys))

    def __repr__(self):
        if self.target_chart == AFFINE:
            body = ", ".join(self.coordinate_strings())
            return f"RationalMap(({body}), {self.source_chart.value} -> affine)"
        body = " : ".join(self.coordinate_strings())
        return f"RationalMap(({body}), {self.source_chart.value} -> projective)"

    __str__ = __repr__

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "source": {"chart": self.source_chart.value, "nvars": self.nvars},
            "target": {"chart": self.target_chart.value, "count": self.target_count},
            "coordinates": self.coordinate_strings(),
        }

    # -- evaluation --------------------------------------------------------

    def evaluate(self, p: Point):
        """Image of ``p`` as a :class:`Point`, or :class:`Undefined`."""
        if p.field != self.field:
            raise FieldMismatchError(f"point over {p.field}, map over {self.field}")
        if p.chart != self.source_chart:
            raise ChartError(f"{p.chart.value} point given to a map from {self.source_chart.value} space")
        if len(p.coords) != self.nvars:
            raise DimensionMismatchError(f"point has {len(p.coords)} coordinates, map needs {self.nvars}")
        vals = [q.evaluate(p.coords) for q in self.polys]
        if self.target_chart == PROJECTIVE:
            if all(v == 0 for v in vals):
                return Undefined("all coordinates of the canonical form vanish")
            return Point(self.field, tuple(vals), PROJECTIVE)
        d = vals[-1]
        if d == 0:
            return Undefined("the common denominator vanishes")
        inv = self.field.inv(d)
        return Point(self.field, tuple(self.field.reduce(v * inv) for v in vals[:-1]), AFFINE)

    __call__ = evaluate

    # -- chart changes -----------------------------------------------------

    def projectivize(self, slot: int | None = None) -> "RationalMap":
        """Extend an affine-source map to projective space.

        The new homogenizing variable is inserted at ``slot`` (default: last);
        an affine target becomes projective with the denominator last.
        """
        if self.source_chart != AFFINE:
            raise ChartError("map already has a projective source")
        slot = self.nvars if slot is None else slot
        e = self.degree
        return RationalMap([q.homogenize(slot, e) for q in self.polys], PROJECTIVE, PROJECTIVE)

    def with_projective_target(self) -> "RationalMap":
        """Same map with an affine target viewed inside projective space (denominator last)."""
        if self.target_chart == PROJECTIVE:
            return self
        return RationalMap(self.polys, self.source_chart, PROJECTIVE)

    def with_affine_target(self, slot: int = -1) -> "RationalMap":
        """Projective target read in the chart where coordinate ``slot`` is 1."""
        if self.target_chart == AFFINE:
            return self
        slot %= len(self.polys)
        others = [q for i, q in enumerate(self.polys) if i != slot]
        return RationalMap(others + [self.polys[slot]], self.source_chart, AFFINE)

    def restrict_source_chart(self, slot: int) -> "RationalMap":
        """Dehomogenize a projective-source map at source coordinate ``slot``."""
        if self.source_chart != PROJECTIVE:
            raise ChartError("map already has an affine source")
        return RationalMap([q.set_variable(slot, 1, drop=True) for q in self.polys],
                           AFFINE, self.target_chart)


def _normalize(polys: list, target_chart: Chart) -> list:
    if all(q.is_zero for q in polys):
        raise ZeroPolynomialError("the all-zero tuple is not a rational map")
    if target_chart == AFFINE and polys[-1].is_zero:
        raise ZeroPolynomialError("zero denominator")
    g = gcd_list(polys)
    if not g.is_constant:
        polys = [q.exact_div(g) for q in polys]
    lead = polys[-1] if target_chart == AFFINE else _first_nonzero(polys)
    lc = lead.leading_coefficient()
    if lc != 1:
        inv = lead.field.inv(lc)
        polys = [q.scale(inv) for q in polys]
    return polys


def normalize(coords, source_chart: Chart = AFFINE, target_chart: Chart = PROJECTIVE) -> RationalMap:
    """Canonical map from raw coordinates (polynomials, RationalFunctions or pairs).

    For an affine target the coordinates are the affine functions; for a
    projective target they are homogeneous coordinates, possibly fractional.
    """
    if Chart(target_chart) == AFFINE:
        return RationalMap.from_fractions(coords, source_chart)
    return RationalMap.from_projective_fractions(coords, source_chart)


# -- composition ---------------------------------------------------------------


def _check_composable(F: RationalMap, G: RationalMap):
    if F.field != G.field:
        raise FieldMismatchError(f"maps over {F.field} and {G.field}")
    if G.target_chart != F.source_chart:
        raise ChartError(f"inner map lands in {G.target_chart.value} space, outer map starts "
                         f"from {F.source_chart.value} space")
    if G.target_count != F.nvars:
        raise DimensionMismatchError(
            f"inner map has {G.target_count} target coordinates, outer map takes {F.nvars}")


def substitute_into(polys: Sequence[Polynomial], G: RationalMap, homogeneous: bool) -> list:
    """Substitute the canonical form of ``G`` into polynomials on G's target.

    For an affine target of ``G`` the polynomials are first homogenized to a
    common degree with the new variable last, so ``(P_1, ..., P_m, D)`` can be
    substituted directly; this multiplies everything by ``D^e``.
    """
    if G.target_chart == PROJECTIVE or homogeneous:
        return [q.substitute(G.polys) for q in polys]
    e = max(q.degree for q in polys)
    m = G.target_count
    return [q.homogenize(m, max(e, 0)).substitute(G.polys) for q in polys]


def compose_raw(F: RationalMap, G: RationalMap) -> list:
    """``F o G`` by plain substitution, before any gcd cancellation."""
    _check_composable(F, G)
    return substitute_into(F.polys, G, homogeneous=False)


def compose(F: RationalMap, G: RationalMap) -> RationalMap:
    """The canonical form of ``F o G`` (apply ``G`` first)."""
    raw = compose_raw(F, G)
    if all(q.is_zero for q in raw):
        raise CompositionUndefinedError(
            "composition undefined as rational map: the inner map lands where the outer "
            "map's canonical form vanishes identically")
    if F.target_chart == AFFINE and raw[-1].is_zero:
        raise CompositionUndefinedError(
            "composition undefined as rational map: the outer denominator vanishes "
            "identically on the image of the inner map")
    return RationalMap(raw, G.source_chart, F.target_chart)


# -- certificates --------------------------------------------------------------


@dataclass
class DivisibilityCertificate:
    """``residual = quotient * h`` (``h`` the source equation), or a failure."""

    label: str
    residual: Polynomial
    quotient: Polynomial | None
    remainder: Polynomial | None
    ok: bool

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ok": self.ok,
            "residual_terms": len(self.residual),
            "quotient": None if self.quotient is None else str(self.quotient),
            "remainder": None if self.remainder is None else str(self.remainder),
        }


def _space_equation(S) -> Polynomial | None:
    return None if isinstance(S, AmbientSpace) else S.defining


def _check_space(F: RationalMap, X, Y):
    for S, chart, n, what in ((X, F.source_chart, F.nvars, "source"),
                              (Y, F.target_chart, F.target_count, "target")):
        if not isinstance(S, _Space):
            raise TypeError(f"{what} must be a Hypersurface or AmbientSpace")
        if S.chart != chart:
            raise ChartError(f"map {what} is {chart.value}, space is {S.chart.value}")
        if S.nvars != n:
            raise DimensionMismatchError(f"map {what} has {n} coordinates, space has {S.nvars}")
        if S.field != F.field:
            raise FieldMismatchError(f"map over {F.field}, {what} space over {S.field}")


def _reduced_numerator(N: Polynomial, den: Polynomial, h: Polynomial) -> Polynomial:
    """Numerator of ``N / den`` in lowest terms, as far as divisibility by ``h`` goes.

    If ``h`` and ``den`` are coprime, cancelling common factors of ``N`` and
    ``den`` cannot change whether ``h`` divides the numerator, so the
    (possibly expensive) reduction is skipped.
    """
    if N.is_zero or den.is_constant or gcd(h, den).is_constant:
        return N
    g = gcd(N, den)
    return N if g.is_constant else N.exact_div(g)


def _divide_certificate(label: str, residual: Polynomial, h: Polynomial | None) -> DivisibilityCertificate:
    if h is None:
        return DivisibilityCertificate(label, residual, None, residual, residual.is_zero)
    q, r = residual.divmod(h)
    return DivisibilityCertificate(label, residual, q, r, r.is_zero)


@dataclass
class RestrictionCertificate:
    """Outcome of substituting a map into the target equation."""

    ok: bool
    reason: str
    certificate: DivisibilityCertificate | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason,
                "certificate": None if self.certificate is None else self.certificate.to_dict()}


def _undefined_along(F: RationalMap, h: Polynomial) -> bool:
    if F.target_chart == AFFINE:
        return h.divides(F.polys[-1])
    return all(h.divides(q) for q in F.polys)


def check_restriction(F: RationalMap, X, Y) -> RestrictionCertificate:
    """Does ``F`` map ``X`` into ``Y``?  Returns the divisibility certificate.

    The target equation is pulled back through ``F`` and written as one
    fraction; its numerator must be divisible by the source equation (or be
    exactly zero when the source is a whole space).  Raises
    :class:`MapUndefinedAlongError` when the canonical form of ``F`` is
    undefined along all of ``X``.
    """
    _check_space(F, X, Y)
    hy, hx = _space_equation(Y), _space_equation(X)
    if hy is None:
        return RestrictionCertificate(True, "target is the whole space")
    if hx is not None and _undefined_along(F, hx):
        raise MapUndefinedAlongError(f"map undefined along X: ({hx}) divides the denominator")
    if F.target_chart == PROJECTIVE:
        N = hy.substitute(F.polys)
    else:
        e = hy.degree
        N = hy.homogenize(F.target_count, e).substitute(F.polys)
        if hx is not None:
            N = _reduced_numerator(N, F.polys[-1] ** e, hx)
    cert = _divide_certificate("pullback of target equation", N, hx)
    reason = "pullback divisible by source equation" if hx is not None else "pullback vanishes identically"
    if not cert.ok:
        reason = "pullback leaves a nonzero remainder" if hx is not None else "pullback is not identically zero"
    return RestrictionCertificate(cert.ok, reason, cert)


def restricts_to(F: RationalMap, X, Y) -> bool:
    return check_restriction(F, X, Y).ok


@dataclass
class RoundTrip:
    """Certificates that ``G o F`` is the identity on the source space."""

    ok: bool
    reason: str
    certificates: list = dc_field(default_factory=list)

    def first_failure(self):
        return next((c for c in self.certificates if not c.ok), None)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason,
                "certificates": [c.to_dict() for c in self.certificates]}


def check_round_trip(F: RationalMap, G: RationalMap, X) -> RoundTrip:
    """Verify ``G o F = id`` on ``X`` by divisibility of every residual.

    Uses the raw substitution ``G(F(x))``.  Affine: ``x_i R_D - R_i`` must be
    divisible by ``h`` and ``R_D`` must not be.  Projective: every minor
    ``x_i R_j - x_j R_i`` must be divisible by ``h`` and some ``R_k`` must not.
    """
    R = compose_raw(G, F)
    h = _space_equation(X)
    xs = Polynomial.gens(F.field, F.nvars)
    certs = []

    def nonvanishing(q: Polynomial) -> bool:
        return not q.is_zero if h is None else not h.divides(q)

    if G.target_chart == AFFINE:
        D = R[-1]
        if not nonvanishing(D):
            return RoundTrip(False, "composite denominator vanishes along the source")
        for i, (x, Ri) in enumerate(zip(xs, R[:-1])):
            N = x * D - Ri
            if h is not None:
                N = _reduced_numerator(N, D, h)
            cert = _divide_certificate(f"x{i} - (G o F)_{i}", N, h)
            certs.append(cert)
            if not cert.ok:
                return RoundTrip(False, f"residual of coordinate {i} is not divisible", certs)
        return RoundTrip(True, "all coordinate residuals divisible", certs)

    if not any(nonvanishing(q) for q in R):
        return RoundTrip(False, "composite vanishes identically along the source")
    for i, j in combinations(range(len(R)), 2):
        N = xs[i] * R[j] - xs[j] * R[i]
        cert = _divide_certificate(f"x{i}*(G o F)_{j} - x{j}*(G o F)_{i}", N, h)
        certs.append(cert)
        if not cert.ok:
            return RoundTrip(False, f"minor ({i}, {j}) is not divisible", certs)
    return RoundTrip(True, "all 2x2 minors divisible", certs)


@dataclass
class BirationalReport:
    ok: bool
    reason: str
    forward: RestrictionCertificate | None = None
    backward: RestrictionCertificate | None = None
    source_round_trip: RoundTrip | None = None
    target_round_trip: RoundTrip | None = None

    def __bool__(self):
        return self.ok

    def certificates(self) -> dict:
        out = {}
        for name in ("forward", "backward", "source_round_trip", "target_round_trip"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v.ok
        return out

    def first_failing_residual(self):
        for rt in (self.source_round_trip, self.target_round_trip):
            if rt is not None and rt.first_failure() is not None:
                return rt.first_failure()
        for rc in (self.forward, self.backward):
            if rc is not None and rc.certificate is not None and not rc.certificate.ok:
                return rc.certificate
        return None

    def to_dict(self) -> dict:
        def d(x):
            return None if x is None else x.to_dict()
        return {
            "ok": self.ok,
            "reason": self.reason,
            "forward_restriction": d(self.forward),
            "backward_restriction": d(self.backward),
            "source_round_trip": d(self.source_round_trip),
            "target_round_trip": d(self.target_round_trip),
        }


def verify_birational(F: RationalMap, G: RationalMap, X, Y) -> BirationalReport:
    """Certify that ``F: X -> Y`` and ``G: Y -> X`` are mutually inverse.

    Checks both restrictions, then ``G o F = id`` on ``X`` and ``F o G = id``
    on ``Y``, each by exact division.  A failure is reported, not raised.
    """
    try:
        fwd = check_restriction(F, X, Y)
        bwd = check_restriction(G, Y, X)
    except MapUndefinedAlongError as exc:
        return BirationalReport(False, str(exc))
    report = BirationalReport(False, "", fwd, bwd)
    if not fwd.ok:
        report.reason = "forward map does not restrict: " + fwd.reason
        return report
    if not bwd.ok:
        report.reason = "inverse map does not restrict: " + bwd.reason
        return report
    report.source_round_trip = check_round_trip(F, G, X)
    if not report.source_round_trip.ok:
        report.reason = "G o F is not the identity on X: " + report.source_round_trip.reason
        return report
    report.target_round_trip = check_round_trip(G, F, Y)
    if not report.target_round_trip.ok:
        report.reason = "F o G is not the identity on Y: " + report.target_round_trip.reason
        return report
    report.ok = True
    report.reason = "birational: restrictions and both round trips certified"
    return report


def indeterminacy_equations(F: RationalMap) -> list:
    """Pairs ``(p_i, p_j)`` of canonical coordinates.

    The union of their common zero sets contains the indeterminacy locus of
    the canonical form (for an affine target the denominator is included as
    the last coordinate).  It is a superset; no decomposition is attempted.
    """
    return [(a, b) for a, b in combinations(F.polys, 2)]


def is_indeterminate(F: RationalMap, p: Point) -> bool:
    """Does ``p`` lie on the common zero set of all canonical coordinates?"""
    return all(q.evaluate(p.coords) == 0 for q in F.polys)


@dataclass
class SampledRoundTrips:
    checked: int
    skipped: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def random_space_point(S, rng):
    """A random F_p-point of a hypersurface or a whole space, or ``None``."""
    from .geom import random_point_on

    if isinstance(S, AmbientSpace):
        p = S.field.p
        while True:
            coords = tuple(rng.randrange(p) for _ in range(S.nvars))
            if S.chart == AFFINE or any(coords):
                return Point(S.field, coords, S.chart)
    return random_point_on(S, rng, max_tries=50)


def sample_round_trips(F: RationalMap, G: RationalMap, X, rng, count: int = 100,
                       max_attempts: int | None = None) -> SampledRoundTrips:
    """Check ``G(F(p)) = p`` at ``count`` random F_p-points of ``X`` where both are defined."""
    if not F.field.p:
        raise FieldError("sampling needs a prime field")
    max_attempts = max_attempts or 20 * count
    checked = skipped = 0
    failures = []
    for _ in range(max_attempts):
        if checked >= count:
            break
        p = random_space_point(X, rng)
        if p is None:
            skipped += 1
            continue
        q = F.evaluate(p)
        r = G.evaluate(q) if q else q
        if not r:
            skipped += 1
            continue
        checked += 1
        if r != p:
            failures.append((p, q, r))
    return SampledRoundTrips(checked, skipped, failures)
