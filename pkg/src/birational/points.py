"""Rational points of ``a_1 x_1^2 + ... + a_n x_n^2 + x_{n+1}^2 = 1`` via the inverse projection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .errors import FieldError, PreconditionError
from .fields import QQ, FieldSpec
from .geom import AFFINE, Point


def _check_coefficients(a: Sequence, field: FieldSpec) -> list:
    a = [field.coerce(c) for c in a]
    if not a:
        raise PreconditionError("need at least one coefficient")
    if any(c == 0 for c in a):
        raise PreconditionError("coefficients must be nonzero")
    return a


def height_values(height: int) -> list:
    """Rationals ``u/v`` in lowest terms with ``|u| <= height``, ``1 <= v <= height``, sorted."""
    if height < 1:
        raise PreconditionError("height must be at least 1")
    vals = {Fraction(u, v) for v in range(1, height + 1)
            for u in range(-height, height + 1) if gcd(u, v) == 1}
    return sorted(vals)


def inverse_projection(a: Sequence, y: Sequence, field: FieldSpec = QQ):
    """``(2 y_i / (1 + S), (1 - S) / (1 + S))`` with ``S = sum a_i y_i^2``; ``None`` if ``1 + S = 0``."""
    S = field.reduce(sum(ai * yi * yi for ai, yi in zip(a, y)))
    den = field.reduce(1 + S)
    if den == 0:
        return None
    inv = field.inv(den)
    return tuple(field.reduce(2 * yi * inv) for yi in y) + (field.reduce((1 - S) * inv),)


def on_quadric(a: Sequence, x: Sequence, field: FieldSpec = QQ) -> bool:
    n = len(a)
    return field.reduce(sum(ai * xi * xi for ai, xi in zip(a, x)) + x[n] * x[n] - 1) == 0


def enum_rational_points(a: Sequence, height: int) -> Iterator[Point]:
    """Rational solutions from parameters of bounded height, then the south pole.

    Parameters run over ``y`` in lexicographic order of the sorted height
    values; parameters with ``1 + S = 0`` are skipped and repeated images are
    dropped.  The last point yielded is always ``(0, ..., 0, -1)``, the known
    solution missed by the parametrisation.
    """
    a = _check_coefficients(a, QQ)
    n = len(a)
    vals = height_values(height)
    seen = set()
    for y in itertools.product(vals, repeat=n):
        x = inverse_projection(a, y)
        if x is None or x in seen:
            continue
        seen.add(x)
        yield Point(QQ, x, AFFINE)
    yield south_pole(n)


def south_pole(n: int, field: FieldSpec = QQ) -> Point:
    return Point(field, (0,) * n + (-1,), AFFINE)


@dataclass
class ShadowCheck:
    """Finite-field comparison of the parametrised and brute-force solution sets."""

    field: FieldSpec
    a: tuple
    parametrized: frozenset
    excluded: frozenset
    brute_force: frozenset

    @property
    def ok(self) -> bool:
        return self.parametrized | self.excluded == self.brute_force

    @property
    def missing(self) -> frozenset:
        return self.brute_force - (self.parametrized | self.excluded)

    @property
    def extra(self) -> frozenset:
        return (self.parametrized | self.excluded) - self.brute_force


def diophantine_shadow(a: Sequence, field: FieldSpec) -> ShadowCheck:
    """Parametrise over all of F_p^n, add the locus ``x_{n+1} = -1``, compare with brute force."""
    if not field.p:
        raise FieldError("the shadow check runs over a prime field")
    a = tuple(_check_coefficients(a, field))
    n = len(a)
    p = field.p
    param = set()
    for y in itertools.product(range(p), repeat=n):
        x = inverse_projection(a, y, field)
        if x is not None:
            param.add(x)
    minus_one = p - 1
    excluded = {x + (minus_one,) for x in itertools.product(range(p), repeat=n)
                if on_quadric(a, x + (minus_one,), field)}
    brute = {x for x in itertools.product(range(p), repeat=n + 1) if on_quadric(a, x, field)}
    return ShadowCheck(field, a, frozenset(param), frozenset(excluded), frozenset(brute))
