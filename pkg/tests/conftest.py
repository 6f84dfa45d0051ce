import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from birational.fields import GF, QQ
from birational.poly import Polynomial

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large,
                           HealthCheck.large_base_example])
settings.load_profile("default")

F101 = GF(101)
FIELDS = [QQ, GF(5), GF(7), F101]

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def coefficients(field):
    if field.p:
        return st.integers(0, field.p - 1)
    return rationals


@st.composite
def polynomials(draw, field=QQ, nvars=None, max_terms=20, max_degree=4):
    n = nvars if nvars is not None else draw(st.integers(1, 6))
    terms = draw(st.lists(
        st.tuples(st.lists(st.integers(0, max_degree), min_size=n, max_size=n), coefficients(field)),
        max_size=max_terms))
    return Polynomial.from_terms(field, n, [(tuple(e), c) for e, c in terms])


@st.composite
def homogeneous_polynomials(draw, field=QQ, nvars=None, degree=None, max_terms=12):
    n = nvars if nvars is not None else draw(st.integers(1, 5))
    d = degree if degree is not None else draw(st.integers(0, 6))
    out = Polynomial.zero(field, n)
    for _ in range(draw(st.integers(1, max_terms))):
        cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
        exps = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        out = out + Polynomial.monomial(field, exps, draw(coefficients(field)))
    return out


def random_poly(rng, field, nvars, degree, terms):
    pairs = []
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(nvars)] += 1
        c = rng.randrange(field.p) if field.p else Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        pairs.append((tuple(exps), c))
    return Polynomial.from_terms(field, nvars, pairs)


def random_homogeneous(rng, field, nvars, degree, terms):
    out = Polynomial.zero(field, nvars)
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.randrange(nvars)] += 1
        c = rng.randrange(1, field.p) if field.p else Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
        out = out + Polynomial.monomial(field, exps, c)
    return out


@pytest.fixture
def rng():
    return random.Random(20261019)
