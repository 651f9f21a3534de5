"""Shared builders for the test suite."""

import random
from fractions import Fraction

import pytest

from cxpoisson import (
    Chart,
    ComplexBivector,
    Lagrangian,
    MultiField,
    Poly,
    bivector_from_brackets,
    graph,
    parse_poly,
    transform,
)
from cxpoisson.scalars import GS_ONE, GaussScalar

XYZ = Chart(("x", "y", "z"))


def nb_bivector(a: int, b: int) -> ComplexBivector:
    """The running three-variable example family: {x,y} = 1 + i a,
    {x,z} = i b, {y,z} = y + i(-a y + ((1+a^2)/b) z)."""
    c = Fraction(1 + a * a, b)
    return bivector_from_brackets(
        XYZ,
        {
            (0, 1): parse_poly(f"1 + {a}*i", XYZ),
            (0, 2): parse_poly(f"{b}*i", XYZ),
            (1, 2): parse_poly(
                f"y + i*(-{a}*y + ({c.numerator}/{c.denominator})*z)", XYZ
            ),
        },
    )


def random_fraction(rng: random.Random, num: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_gauss(rng: random.Random, real_only: bool = False) -> GaussScalar:
    return GaussScalar.of(
        random_fraction(rng), 0 if real_only else random_fraction(rng)
    )


def random_skew(rng: random.Random, n: int, real_only: bool = False):
    """n x n skew matrix of GaussScalar entries."""
    M = [[GaussScalar.of(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = random_gauss(rng, real_only)
            M[i][j], M[j][i] = v, -v
    return M


def random_constant_bivector(rng: random.Random, n: int) -> ComplexBivector:
    chart = Chart(tuple(f"x{k}" for k in range(n)))
    comps = {}
    for i in range(n):
        for j in range(i + 1, n):
            comps[(i, j)] = Poly.const(chart, random_gauss(rng))
    return bivector_from_brackets(chart, comps)


def random_lagrangian(rng: random.Random, n: int) -> Lagrangian:
    """Random complex lagrangian via graphs, splits, and transforms."""
    kind = rng.choice(("bivector", "twoform", "split"))
    if kind == "split":
        picked = set(rng.sample(range(n), rng.randint(0, n)))
        rows = []
        for k in range(n):
            r = [GaussScalar.of(0)] * (2 * n)
            r[k if k in picked else n + k] = GS_ONE
            rows.append(r)
        L = Lagrangian.from_generators(n, rows)
    else:
        L = graph(random_skew(rng, n), kind)
    L = transform("b_field", random_skew(rng, n), L)
    if rng.random() < 0.5:
        L = transform("beta", random_skew(rng, n), L)
    if rng.random() < 0.5:
        z = GaussScalar.of(Fraction(rng.randint(1, 3)), Fraction(rng.randint(-2, 2)))
        L = transform("scalar_dot", z, L)
    return L


def random_real_lagrangian(rng: random.Random, n: int) -> Lagrangian:
    """Lagrangian with purely real (Fraction) entries."""
    kind = rng.choice(("bivector", "twoform"))
    L = graph(random_skew(rng, n, real_only=True), kind)
    return transform("b_field", random_skew(rng, n, real_only=True), L)


def random_poly(rng: random.Random, chart: Chart, max_deg: int = 2) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        exp = [0] * chart.dim
        for _ in range(rng.randint(0, max_deg)):
            exp[rng.randrange(chart.dim)] += 1
        c = random_gauss(rng)
        if c:
            terms[tuple(exp)] = c
    p = Poly.zero(chart)
    for exp, c in terms.items():
        mono = Poly.const(chart, c)
        for j, e in enumerate(exp):
            for _ in range(e):
                mono = mono * Poly.var(chart, chart.vars[j])
        p = p + mono
    return p


def random_multifield(rng: random.Random, chart: Chart, degree: int) -> MultiField:
    import itertools

    comps = {}
    for idx in itertools.combinations(range(chart.dim), degree):
        p = random_poly(rng, chart)
        if not p.is_zero():
            comps[idx] = p
    return MultiField(chart, degree, comps)


@pytest.fixture
def rng():
    return random.Random(20260823)
