import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birational.constructions import fermat_lines, fermat_polynomial
from birational.errors import (
    CharacteristicError,
    ChartError,
    DimensionMismatchError,
    FieldError,
    NotHomogeneousError,
    PreconditionError,
    SingularPointError,
)
from birational.fields import GF, QQ
from birational.geom import (
    Hypersurface,
    LinearSubspace,
    Point,
    contains_subspace,
    enumerate_points,
    gradient_at,
    is_smooth_at,
    point_on,
    random_point_on,
    scan_for_singular_points,
    singular_locus_equations,
    singular_points,
    subspaces_disjoint,
    tangent_hyperplane,
)
from birational.parse import parse_polynomial

from .conftest import F101, random_homogeneous


def P(text, n=None, field=QQ):
    return parse_polynomial(text, n, field)


CIRCLE = Hypersurface.affine(P("x0^2 + x1^2 - 1"))
FERMAT3 = Hypersurface.projective(P("x0^3 + x1^3 + x2^3 + x3^3"))
SPHERE = Hypersurface.affine(P("x0^2 + x1^2 + x2^2 - 1"))


def test_projective_points_are_canonical():
    p = Point.projective(QQ, [0, 2, -4])
    assert p.coords == (0, 1, -2)
    assert p == Point.projective(QQ, [0, Fraction(-1, 3), Fraction(2, 3)])
    with pytest.raises(PreconditionError):
        Point.projective(QQ, [0, 0])


def test_hypersurface_invariants():
    with pytest.raises(NotHomogeneousError):
        Hypersurface.projective(P("x0^2 + x1"))
    with pytest.raises(PreconditionError):
        Hypersurface.affine(P("3", 2))
    assert FERMAT3.dim == 2 and CIRCLE.dim == 1 and FERMAT3.degree == 3


def test_point_on_examples():
    assert point_on(CIRCLE, Point.affine(QQ, [Fraction(3, 5), Fraction(4, 5)]))
    assert point_on(FERMAT3, Point.projective(QQ, [1, -1, 0, 0]))
    assert not point_on(CIRCLE, Point.affine(QQ, [1, 1]))
    with pytest.raises(DimensionMismatchError):
        point_on(CIRCLE, Point.affine(QQ, [1, 1, 1]))
    with pytest.raises(ChartError):
        point_on(CIRCLE, Point.projective(QQ, [1, 0]))


@given(st.integers(1, 100), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_point_on_is_scale_invariant(lam, coords):
    if not any(coords):
        return
    raw = [lam * c for c in coords]
    X = FERMAT3.reduce_to(F101)
    assert point_on(X, Point.projective(F101, coords)) == point_on(X, Point.projective(F101, raw))


def test_singular_locus_equations():
    eqs = singular_locus_equations(Hypersurface.projective(P("x0^4 + x1^4 + x2^4")))
    assert eqs == [P("4*x0^3", 3), P("4*x1^3", 3), P("4*x2^3", 3)]
    with pytest.raises(ChartError):
        singular_locus_equations(CIRCLE)


@pytest.mark.parametrize("p,d,n", [(5, 3, 2), (7, 3, 2), (7, 4, 2), (11, 3, 1), (5, 2, 3)])
def test_fermat_has_no_singular_point_mod_p(p, d, n):
    X = Hypersurface.projective(fermat_polynomial(d, n + 2)).reduce_to(GF(p))
    assert singular_points(X) == []


def test_singular_points_found_when_char_divides_degree():
    X = Hypersurface.projective(fermat_polynomial(5, 3)).reduce_to(GF(5))
    assert singular_points(X)


def test_tangent_plane_of_sphere_at_pole():
    T = tangent_hyperplane(SPHERE, Point.affine(QQ, [0, 0, 1]))
    assert T == P("2*x2 - 2", 3)
    assert gradient_at(SPHERE, Point.affine(QQ, [0, 0, 1])) == [0, 0, 2]


def test_cone_vertex_is_singular():
    cone = Hypersurface.affine(P("x0^2 + x1^2 - x2^2"))
    origin = Point.affine(QQ, [0, 0, 0])
    assert not is_smooth_at(cone, origin)
    with pytest.raises(SingularPointError):
        tangent_hyperplane(cone, origin)
    assert is_smooth_at(cone, Point.affine(QQ, [3, 4, 5]))


def test_fermat_cubic_smooth_point():
    p = Point.projective(QQ, [1, -1, 0, 0])
    assert gradient_at(FERMAT3, p) == [3, 3, 0, 0]
    assert is_smooth_at(FERMAT3, p)


def test_tangent_hyperplane_vanishes_at_its_point():
    rng = random.Random(8)
    checked = 0
    for _ in range(30):
        X = Hypersurface.projective(random_homogeneous(rng, F101, 4, rng.randint(2, 4), 8))
        p = random_point_on(X, rng)
        if p is None or not is_smooth_at(X, p):
            continue
        assert tangent_hyperplane(X, p).evaluate(p.coords) == 0
        checked += 1
    assert checked >= 20


def test_contains_subspace_examples():
    L = LinearSubspace.from_equations(QQ, [P("x0 + x1", 4), P("x2 + x3", 4)])
    assert contains_subspace(FERMAT3, L)
    cubic = Hypersurface.projective(P("x0*x2*x3 + x1*x2^2 + x0^2*x3 + x1*x0*x2", 4))
    L1 = LinearSubspace.from_equations(QQ, [P("x0", 4), P("x1", 4)])
    assert contains_subspace(cubic, L1)
    quadric = Hypersurface.projective(P("x0^2 + 2*x1^2 + 3*x2^2 - 5*x3^2 + x0*x3"))
    line = LinearSubspace.from_columns(QQ, [[1, 2, 0, 1], [0, 1, 1, 3]])
    assert not contains_subspace(quadric, line)


def test_contains_subspace_agrees_with_points():
    for L in fermat_lines(3, 1, GF(7)):
        assert contains_subspace(FERMAT3.reduce_to(GF(7)), L)
        X = FERMAT3.reduce_to(GF(7))
        for s in itertools.product(range(7), repeat=2):
            if any(s):
                assert point_on(X, L.point(s))


def test_subspaces_disjoint_examples():
    L1 = LinearSubspace.from_equations(QQ, [P("x0", 4), P("x1", 4)])
    L2 = LinearSubspace.from_equations(QQ, [P("x2", 4), P("x3", 4)])
    assert subspaces_disjoint(L1, L2)
    assert not subspaces_disjoint(L1, L1)


def test_subspace_equality_is_span_equality():
    A = LinearSubspace.from_columns(QQ, [[1, 0, 1], [0, 1, 1]])
    B = LinearSubspace.from_columns(QQ, [[1, 1, 2], [1, -1, 0]])
    assert A == B
    assert LinearSubspace.from_equations(QQ, A.equations()) == A
    with pytest.raises(PreconditionError):
        LinearSubspace.from_columns(QQ, [[1, 0, 1], [2, 0, 2]])


def test_random_point_on_sphere_mod_5():
    rng = random.Random(0)
    S = SPHERE.reduce_to(GF(5))
    p = random_point_on(S, rng)
    assert p is not None and point_on(S, p)
    assert random_point_on(SPHERE, rng, field=GF(5)) is not None


def test_random_point_guards():
    rng = random.Random(0)
    with pytest.raises(FieldError):
        random_point_on(SPHERE, rng)
    with pytest.raises(CharacteristicError):
        random_point_on(CIRCLE, rng, field=GF(3))


def test_brute_force_points_over_f3():
    X = Hypersurface.affine(P("x0^2 + x1^2 + 1", 2, GF(3)))
    pts = {p.coords for p in enumerate_points(X)}
    expected = {(a, b) for a in range(3) for b in range(3) if (a * a + b * b + 1) % 3 == 0}
    assert pts == expected and (1, 1) in pts


def test_singularity_scan_reports_evidence_only():
    rng = random.Random(2)
    smooth = FERMAT3.reduce_to(GF(7))
    assert not scan_for_singular_points(smooth, rng, tries=50).found_singular
    nodal = Hypersurface.projective(P("x0*x1*x2 + x1^3 + x2^3", 3, GF(7)))
    scan = scan_for_singular_points(nodal, rng, tries=400)
    assert scan.found_singular
    assert Point.projective(GF(7), [1, 0, 0]) in scan.singular
