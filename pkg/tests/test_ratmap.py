import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birational.constructions import sphere_stereographic
from birational.errors import (
    ChartError,
    CompositionUndefinedError,
    FieldMismatchError,
    MapUndefinedAlongError,
    NotHomogeneousError,
    ZeroPolynomialError,
)
from birational.fields import GF, QQ
from birational.geom import AFFINE, PROJECTIVE, AmbientSpace, Hypersurface, Point
from birational.parse import parse_polynomial
from birational.poly import Polynomial
from birational.ratmap import (
    RationalFunction,
    RationalMap,
    Undefined,
    check_restriction,
    check_round_trip,
    compose,
    indeterminacy_equations,
    is_indeterminate,
    normalize,
    restricts_to,
    sample_round_trips,
    verify_birational,
)

from .conftest import F101, homogeneous_polynomials


def P(text, n=None, field=QQ):
    return parse_polynomial(text, n, field)


def pt(*coords, field=QQ):
    return Point.affine(field, coords)


# -- rational functions and normal forms ---------------------------------------


def test_rational_function_is_reduced():
    x0, x1 = Polynomial.gens(QQ, 2)
    f = RationalFunction((x0 ** 2 - x1 ** 2) * 3, (x0 - x1) * 6)
    assert f.numerator == (x0 + x1) * Fraction(1, 2)
    assert f.denominator == Polynomial.one(QQ, 2)
    assert f.is_polynomial
    with pytest.raises(ZeroPolynomialError):
        RationalFunction(x0, Polynomial.zero(QQ, 2))


def test_rational_function_arithmetic():
    x0, x1 = Polynomial.gens(QQ, 2)
    a = RationalFunction(x0, x1)
    b = RationalFunction(x1, x0)
    assert a * b == RationalFunction(Polynomial.one(QQ, 2))
    assert (a + b).evaluate([1, 2]) == Fraction(5, 2)
    assert a.evaluate([1, 0]) is None


def test_normalize_clears_one_denominator():
    x0, x1 = Polynomial.gens(QQ, 2)
    F = normalize([RationalFunction(x0, x1), 1], PROJECTIVE, PROJECTIVE)
    assert F.polys == (x0, x1)


def test_normalize_removes_common_factor():
    rng = random.Random(4)
    x0, x1, x2 = Polynomial.gens(F101, 3)
    for _ in range(10):
        f = x0 * rng.randrange(1, 101) + x1 * x2 * rng.randrange(101) + x2 ** 2 * rng.randrange(101)
        F = RationalMap.projective([x0 * f, x1 * f])
        assert F.polys == (x0, x1)


def test_stereographic_projective_form():
    pi = sphere_stereographic(2).forward
    x0, x1, x2 = Polynomial.gens(QQ, 3)
    assert pi.with_projective_target().polys == (x0, x1, x2 + 1)
    y = Polynomial.gens(QQ, 4)
    assert pi.projectivize().polys == (y[0], y[1], y[2] + y[3])


def test_affine_target_denominator_is_last_and_monic():
    x0, x1 = Polynomial.gens(QQ, 2)
    F = RationalMap.from_fractions([RationalFunction(x0, 2 * x1 + 2), RationalFunction(x1, x0 * 3)])
    assert F.denominator.leading_coefficient() == 1
    assert F.polys[-1] == F.denominator
    assert F(pt(1, 1)).coords == (Fraction(1, 4), Fraction(1, 3))


def test_zero_maps_rejected():
    with pytest.raises(ZeroPolynomialError):
        RationalMap.projective([Polynomial.zero(QQ, 2), Polynomial.zero(QQ, 2)])


def test_projective_source_needs_equal_degree_forms():
    x0, x1 = Polynomial.gens(QQ, 2)
    with pytest.raises(NotHomogeneousError):
        RationalMap.projective([x0 ** 2, x1])


@st.composite
def projective_maps(draw, field=F101, nvars=3, targets=3, degree=None):
    d = degree if degree is not None else draw(st.integers(1, 2))
    while True:
        polys = [draw(homogeneous_polynomials(field, nvars, d, max_terms=4)) for _ in range(targets)]
        if not all(q.is_zero for q in polys):
            return RationalMap.projective(polys)


@given(projective_maps(), homogeneous_polynomials(F101, 3, max_terms=3), homogeneous_polynomials(F101, 3, max_terms=3))
def test_normalize_is_representation_independent(F, num, den):
    if num.is_zero or den.is_zero:
        return
    scaled = [RationalFunction(q * num, den) for q in F.polys]
    assert normalize(scaled, PROJECTIVE, PROJECTIVE) == F
    assert RationalMap.projective(F.polys) == F


@given(projective_maps(), st.lists(st.integers(0, 100), min_size=3, max_size=3))
def test_evaluate_commutes_with_normalize(F, coords):
    if not any(coords):
        return
    p = Point.projective(F101, coords)
    raw = [q.evaluate(p.coords) for q in F.polys]
    value = F(p)
    if isinstance(value, Undefined):
        assert not any(raw)
    elif any(raw):
        assert value == Point.projective(F101, raw)


# -- evaluation ---------------------------------------------------------------


def test_stereographic_evaluation():
    pi = sphere_stereographic(1).forward
    assert isinstance(pi(pt(0, -1)), Undefined)
    assert not pi(pt(0, -1))
    assert pi(pt(Fraction(3, 5), Fraction(4, 5))).coords == (Fraction(1, 3),)


def test_identity_evaluation():
    I = RationalMap.identity(QQ, 3)
    p = pt(1, Fraction(2, 3), -5)
    assert I(p) == p
    J = RationalMap.identity(QQ, 3, PROJECTIVE)
    q = Point.projective(QQ, [0, 2, 3])
    assert J(q) == q


# -- composition --------------------------------------------------------------


def test_compose_with_identity():
    F = sphere_stereographic(2).forward
    assert compose(F, RationalMap.identity(QQ, 3)) == F
    assert compose(RationalMap.identity(QQ, 2), F) == F


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def test_compose_linear_maps_is_matrix_product():
    rng = random.Random(11)
    for _ in range(10):
        A = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        B = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        C = matmul(A, B)
        if not any(any(r) for r in C):
            continue
        assert compose(RationalMap.linear(QQ, A), RationalMap.linear(QQ, B)) == RationalMap.linear(QQ, C)


def test_compose_affine_linear_maps():
    A, a = [[1, 2], [0, 1]], [3, -1]
    B, b = [[2, 0], [1, 1]], [0, 5]
    FA = RationalMap.linear(QQ, A, AFFINE, a)
    FB = RationalMap.linear(QQ, B, AFFINE, b)
    C = matmul(A, B)
    c = [sum(A[i][k] * b[k] for k in range(2)) + a[i] for i in range(2)]
    assert compose(FA, FB) == RationalMap.linear(QQ, C, AFFINE, c)


def test_compose_undefined():
    x0, x1, x2 = Polynomial.gens(QQ, 3)
    B = RationalMap.projective([x0, x0, x0 * 0])
    assert B.polys[2].is_zero and B.polys[0] == B.polys[1] == Polynomial.one(QQ, 3)
    A = RationalMap.projective([x0 - x1, x2, x2])
    with pytest.raises(CompositionUndefinedError):
        compose(A, B)


def test_compose_checks_charts_and_fields():
    F = sphere_stereographic(2).forward
    with pytest.raises(ChartError):
        compose(F, RationalMap.identity(QQ, 3, PROJECTIVE))
    with pytest.raises(FieldMismatchError):
        compose(F, RationalMap.identity(GF(7), 3))


@given(projective_maps(degree=1), projective_maps(), projective_maps())
def test_composition_is_associative(F, G, H):
    try:
        left = compose(F, compose(G, H))
    except CompositionUndefinedError:
        left = None
    try:
        right = compose(compose(F, G), H)
    except CompositionUndefinedError:
        right = None
    if left is not None and right is not None:
        assert left == right


# -- restriction ----------------------------------------------------------------


def test_inverse_projection_lands_on_sphere_exactly():
    for n in range(1, 5):
        s = sphere_stereographic(n)
        cert = check_restriction(s.inverse, s.target, s.source)
        assert cert.ok and cert.certificate.residual.is_zero


def test_restriction_to_a_generic_cubic_fails():
    S = sphere_stereographic(2).source
    x0, x1, x2 = Polynomial.gens(QQ, 3)
    proj = RationalMap.from_polynomials([x0, x1, x2])
    cubic = Hypersurface.affine(P("x0^3 + 2*x1^3 - x2^3 + x0*x1 + 7", 3))
    cert = check_restriction(proj, S, cubic)
    assert not cert.ok and not cert.certificate.remainder.is_zero


def test_restriction_certificates_recheck():
    s = sphere_stereographic(3, [2, Fraction(1, 3), 5])
    cert = check_restriction(s.forward, s.source, s.target)
    assert cert.ok
    s2 = sphere_stereographic(2)
    X = s2.source
    rep = verify_birational(s2.forward, s2.inverse, X, s2.target)
    for c in rep.source_round_trip.certificates:
        assert c.quotient * X.defining == c.residual


def test_map_undefined_along_source():
    X = Hypersurface.affine(P("x0", 2))
    x0, x1 = Polynomial.gens(QQ, 2)
    F = RationalMap.from_fractions([RationalFunction(x1, x0)])
    with pytest.raises(MapUndefinedAlongError):
        check_restriction(F, X, Hypersurface.affine(P("x0", 1)))


# -- the verifier ---------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sphere_pairs_verify(n):
    s = sphere_stereographic(n, certify=False)
    rep = verify_birational(s.forward, s.inverse, s.source, s.target)
    assert rep.ok and all(rep.certificates().values())


def test_non_involutive_linear_map_fails_with_residual():
    F = RationalMap.linear(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    P2 = AmbientSpace.projective(QQ, 2)
    rep = verify_birational(F, F, P2, P2)
    assert not rep.ok
    assert not rep.first_failing_residual().residual.is_zero


def test_inverse_linear_maps_verify():
    F = RationalMap.linear(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    G = RationalMap.linear(QQ, [[1, -1, 0], [0, 1, 0], [0, 0, 1]])
    P2 = AmbientSpace.projective(QQ, 2)
    assert verify_birational(F, G, P2, P2).ok


def test_round_trip_rejects_map_collapsing_source():
    # (x0 : x1 : x2) -> (x0 : x0 : x0) composed with anything is constant on P^2
    x0, x1, x2 = Polynomial.gens(QQ, 3)
    F = RationalMap.projective([x0, x0, x0])
    I = RationalMap.identity(QQ, 3, PROJECTIVE)
    assert not check_round_trip(F, I, AmbientSpace.projective(QQ, 2)).ok


def symmetric_cases():
    s = sphere_stereographic(2, [2, 3])
    t = sphere_stereographic(2)
    F = RationalMap.linear(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    P2 = AmbientSpace.projective(QQ, 2)
    return [
        (s.forward, s.inverse, s.source, s.target),
        (t.forward, s.inverse, t.source, t.target),
        (F, F, P2, P2),
        (F, RationalMap.linear(QQ, [[1, -1, 0], [0, 1, 0], [0, 0, 1]]), P2, P2),
    ]


@pytest.mark.parametrize("case", range(4))
def test_verify_is_symmetric(case):
    F, G, X, Y = symmetric_cases()[case]
    assert verify_birational(F, G, X, Y).ok == verify_birational(G, F, Y, X).ok


def test_verified_pairs_round_trip_on_finite_field_points():
    rng = random.Random(17)
    for n, a in [(1, [3]), (2, [1, 5]), (3, [2, 7, 9])]:
        s = sphere_stereographic(n, a, field=F101)
        assert s.certificate.ok
        res = sample_round_trips(s.forward, s.inverse, s.source, rng, count=100)
        assert res.checked >= 100 and not res.failures
        back = sample_round_trips(s.inverse, s.forward, s.target, rng, count=100)
        assert back.checked >= 100 and not back.failures


# -- indeterminacy ---------------------------------------------------------------


def common_zeros(F, field):
    pairs = indeterminacy_equations(F)
    pts = []
    for c in itertools.product(range(field.p), repeat=F.nvars):
        if any(c) and all(a.evaluate(c) == 0 and b.evaluate(c) == 0 for a, b in pairs):
            pts.append(Point.projective(field, c))
    return set(pts)


def test_indeterminacy_of_identity_on_p1():
    x0, x1 = Polynomial.gens(GF(7), 2)
    F = RationalMap.projective([x0, x1])
    assert indeterminacy_equations(F) == [(x0, x1)]
    assert common_zeros(F, GF(7)) == set()


def test_indeterminacy_of_constant_map():
    F = RationalMap.projective([Polynomial.one(GF(7), 2), Polynomial.zero(GF(7), 2)])
    assert common_zeros(F, GF(7)) == set()


def test_indeterminacy_of_projectivized_stereographic():
    field = GF(13)
    pi = sphere_stereographic(2, field=field).forward.projectivize()
    S = Hypersurface.projective(P("x0^2 + x1^2 + x2^2 - x3^2", 4, field))
    bad = {p for p in common_zeros(pi, field) if S.contains(p)}
    expected = set()
    for c in itertools.product(range(13), repeat=4):
        if any(c) and c[0] == 0 and c[1] == 0 and (c[2] + c[3]) % 13 == 0 and S.contains(Point.projective(field, c)):
            expected.add(Point.projective(field, c))
    assert bad == expected == {Point.projective(field, [0, 0, 1, 12])}
    assert is_indeterminate(pi, Point.projective(field, [0, 0, 1, 12]))
    assert not is_indeterminate(pi, Point.projective(field, [0, 0, 1, 1]))


def test_restricts_to_shortcut():
    s = sphere_stereographic(1)
    assert restricts_to(s.forward, s.source, s.target)
