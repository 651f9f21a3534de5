"""Complex bivectors: integrability residuals, brackets, constructors."""

import random
from fractions import Fraction

import pytest

from cxpoisson import (
    Chart,
    ComplexBivector,
    FormField,
    MultiField,
    Poly,
    bivector_from_brackets,
    parse_poly,
)
from cxpoisson.bivector import (
    apply_vector,
    bracket_of_functions,
    casimir_residual,
    construct,
    cotangent_bracket,
    hamiltonian,
    jacobi_pde_residuals,
    jacobi_residual,
    nijenhuis_residuals,
    pair_conditions,
)
from cxpoisson.fields import complex_differential, decompose, schouten
from cxpoisson.scalars import GS_I, GaussScalar

from conftest import (
    XYZ,
    nb_bivector,
    random_constant_bivector,
    random_poly,
)

NB_PARAMS = [(0, 1), (1, 2), (3, 5)]


def one_form(chart, comps):
    return FormField(chart, 1, comps)


def random_one_form(rng, chart):
    return FormField(
        chart, 1, {(i,): random_poly(rng, chart) for i in range(chart.dim)}
    )


# -- integrability residuals -------------------------------------------------


@pytest.mark.parametrize("a,b", NB_PARAMS)
def test_nb_family_is_poisson_all_routes(a, b):
    pi = nb_bivector(a, b)
    assert jacobi_residual(pi).is_zero()
    first, second = pair_conditions(pi)
    assert first.is_zero() and second.is_zero()
    assert all(r.is_zero() for _, _, r in jacobi_pde_residuals(pi))


def test_pde_residuals_match_schouten_with_factor_two(rng):
    for _ in range(6):
        comps = {
            (i, j): random_poly(rng, XYZ)
            for i in range(3)
            for j in range(i + 1, 3)
        }
        pi = bivector_from_brackets(XYZ, comps)
        res = jacobi_residual(pi)
        by_triple = {}
        for (idx, s, r) in jacobi_pde_residuals(pi):
            by_triple.setdefault(idx, {})[s] = r
        for idx, parts in by_triple.items():
            expected = (parts[1] + parts[2].scale(GS_I)).scale(2)
            assert res.component(idx) == expected


def test_perturbed_bracket_fails_jacobi():
    # {x,y} = 1, {x,z} = i y, {y,z} = y + i z: a witness triple survives
    pi = bivector_from_brackets(
        XYZ,
        {
            (0, 1): parse_poly("1", XYZ),
            (0, 2): parse_poly("i*y", XYZ),
            (1, 2): parse_poly("y + i*z", XYZ),
        },
    )
    res = jacobi_residual(pi)
    assert res.component((0, 1, 2)) == parse_poly("2 - 2*y", XYZ)
    assert any(not r.is_zero() for _, _, r in jacobi_pde_residuals(pi))
    first, second = pair_conditions(pi)
    assert not (first.is_zero() and second.is_zero())


# -- function brackets and Hamiltonian fields --------------------------------


def test_hamiltonian_fields_on_canonical_pair():
    ch = Chart(("q", "p"))
    pi = bivector_from_brackets(ch, {(0, 1): Poly.const(ch, 1)})
    Xp = hamiltonian(pi, MultiField.function(ch, Poly.var(ch, "p")))
    # X_p(q) = {q, p} = 1 and X_p(p) = 0, so X_p = d/dq
    assert Xp == MultiField(ch, 1, {(0,): Poly.const(ch, 1)})
    Xq = hamiltonian(pi, MultiField.function(ch, Poly.var(ch, "q")))
    assert Xq == MultiField(ch, 1, {(1,): Poly.const(ch, -1)})


def test_hamiltonian_applies_as_bracket(rng):
    pi = nb_bivector(1, 2)
    for _ in range(6):
        f = MultiField.function(XYZ, random_poly(rng, XYZ))
        h = MultiField.function(XYZ, random_poly(rng, XYZ))
        assert apply_vector(hamiltonian(pi, h), f) == bracket_of_functions(
            pi, f, h
        )


def test_casimir_of_rank_two_bracket():
    pi = bivector_from_brackets(XYZ, {(0, 1): Poly.const(XYZ, 1)})
    z = MultiField.function(XYZ, Poly.var(XYZ, "z"))
    assert casimir_residual(pi, z).is_zero()
    x = MultiField.function(XYZ, Poly.var(XYZ, "x"))
    assert not casimir_residual(pi, x).is_zero()


def test_bracket_antisymmetry_and_leibniz(rng):
    pi = nb_bivector(1, 2)
    for _ in range(6):
        f = MultiField.function(XYZ, random_poly(rng, XYZ))
        g = MultiField.function(XYZ, random_poly(rng, XYZ))
        h = MultiField.function(XYZ, random_poly(rng, XYZ))
        assert bracket_of_functions(pi, f, g) == -bracket_of_functions(pi, g, f)
        fg = MultiField.function(
            XYZ, f.component(()) * g.component(())
        )
        lhs = bracket_of_functions(pi, fg, h)
        rhs = MultiField.function(
            XYZ,
            f.component(()) * bracket_of_functions(pi, g, h).component(())
            + g.component(()) * bracket_of_functions(pi, f, h).component(()),
        )
        assert lhs == rhs


def test_bracket_jacobi_for_poisson_bivector(rng):
    pi = nb_bivector(3, 5)
    for _ in range(4):
        f = MultiField.function(XYZ, random_poly(rng, XYZ))
        g = MultiField.function(XYZ, random_poly(rng, XYZ))
        h = MultiField.function(XYZ, random_poly(rng, XYZ))
        cyc = (
            bracket_of_functions(pi, bracket_of_functions(pi, f, g), h)
            + bracket_of_functions(pi, bracket_of_functions(pi, g, h), f)
            + bracket_of_functions(pi, bracket_of_functions(pi, h, f), g)
        )
        assert cyc.is_zero()


def test_hamiltonian_splits_into_real_pair_brackets(rng):
    # with pi = pi1 + i pi2, h = h1 + i h2, X_h = X1 + i X2:
    # X1(f) = {f,h1}_1 - {f,h2}_2 and X2(f) = {f,h2}_1 + {f,h1}_2
    pi = nb_bivector(1, 2)
    P1 = ComplexBivector(pi.pi1)
    P2 = ComplexBivector(pi.pi2)
    for _ in range(5):
        h = MultiField.function(XYZ, random_poly(rng, XYZ))
        h1 = MultiField.function(XYZ, h.component(()).real_part())
        h2 = MultiField.function(XYZ, h.component(()).imag_part())
        f = MultiField.function(XYZ, random_poly(rng, XYZ).real_part())
        X1, X2 = decompose(hamiltonian(pi, h))
        assert apply_vector(X1, f) == bracket_of_functions(
            P1, f, h1
        ) - bracket_of_functions(P2, f, h2)
        assert apply_vector(X2, f) == bracket_of_functions(
            P1, f, h2
        ) + bracket_of_functions(P2, f, h1)


# -- one-form bracket ---------------------------------------------------------


def test_cotangent_bracket_on_exact_forms(rng):
    pi = nb_bivector(1, 2)
    for _ in range(5):
        f = MultiField.function(XYZ, random_poly(rng, XYZ))
        g = MultiField.function(XYZ, random_poly(rng, XYZ))
        lhs = cotangent_bracket(
            pi, complex_differential(f), complex_differential(g)
        )
        assert lhs == complex_differential(bracket_of_functions(pi, f, g))


def test_cotangent_bracket_anchor_is_anti_morphism(rng):
    pi = nb_bivector(0, 1)
    for _ in range(5):
        a = random_one_form(rng, XYZ)
        b = random_one_form(rng, XYZ)
        assert pi.sharp(cotangent_bracket(pi, a, b)) == -schouten(
            pi.sharp(a), pi.sharp(b)
        )


def test_cotangent_bracket_jacobi(rng):
    pi = nb_bivector(1, 2)
    for _ in range(3):
        a = random_one_form(rng, XYZ)
        b = random_one_form(rng, XYZ)
        c = random_one_form(rng, XYZ)
        cyc = (
            cotangent_bracket(pi, a, cotangent_bracket(pi, b, c))
            + cotangent_bracket(pi, b, cotangent_bracket(pi, c, a))
            + cotangent_bracket(pi, c, cotangent_bracket(pi, a, b))
        )
        assert cyc.is_zero()


def test_cotangent_bracket_leibniz(rng):
    pi = nb_bivector(1, 2)
    for _ in range(4):
        a = random_one_form(rng, XYZ)
        b = random_one_form(rng, XYZ)
        f = random_poly(rng, XYZ)
        fb = FormField(
            XYZ, 1, {(i,): f * b.component((i,)) for i in range(3)}
        )
        br = cotangent_bracket(pi, a, b)
        scaled = FormField(
            XYZ, 1, {(i,): f * br.component((i,)) for i in range(3)}
        )
        Xaf = apply_vector(
            pi.sharp(a), MultiField.function(XYZ, f)
        ).component(())
        corr = FormField(
            XYZ, 1, {(i,): Xaf * b.component((i,)) for i in range(3)}
        )
        assert cotangent_bracket(pi, a, fb) == scaled - corr


def test_cotangent_bracket_rejects_wrong_degree():
    pi = nb_bivector(0, 1)
    two = FormField(XYZ, 2, {(0, 1): Poly.const(XYZ, 1)})
    a = one_form(XYZ, {(0,): Poly.const(XYZ, 1)})
    with pytest.raises(ValueError):
        cotangent_bracket(pi, two, a)


# -- constructors -------------------------------------------------------------


def real_symplectic(n2):
    chart = Chart(tuple(f"x{k}" for k in range(n2)))
    comps = {
        (2 * k, 2 * k + 1): Poly.const(chart, 1) for k in range(n2 // 2)
    }
    return MultiField(chart, 2, comps)


def test_construct_complexify_and_twist():
    sigma = real_symplectic(4)
    pc = construct("complexify", sigma)
    assert pc.pi2.is_zero() and pc.pi1 == sigma
    pt = construct("twist", sigma)
    assert pt.pi1.is_zero() and pt.pi2 == sigma
    assert jacobi_residual(pc).is_zero() and jacobi_residual(pt).is_zero()


def test_construct_diagonal_and_conjugate():
    sigma = real_symplectic(4)
    pd = construct("diagonal", sigma)
    assert pd.pi1 == sigma and pd.pi2 == sigma
    assert jacobi_residual(pd).is_zero()
    back = construct("conjugate", pd)
    assert back.pi1 == sigma and back.pi2 == -sigma


def test_construct_two_param_pair_conditions(rng):
    chart = Chart(("a", "b", "c", "d"))
    one = Poly.const(chart, 1)
    s1 = MultiField(chart, 2, {(0, 1): one, (2, 3): one})
    s2 = MultiField(chart, 2, {(0, 2): one})
    pi = construct("two_param", s1, s2, Fraction(2), Fraction(3, 2))
    assert pi.pi1 == s1.scale(Fraction(2))
    assert pi.pi2 == s2.scale(Fraction(3, 2))
    first, second = pair_conditions(pi)
    assert first.is_zero()
    assert second.is_zero()
    assert jacobi_residual(pi).is_zero()


def test_construct_rejects_complex_input():
    with pytest.raises(ValueError):
        construct("complexify", nb_bivector(1, 2).body)
    with pytest.raises(ValueError):
        construct("unknown", real_symplectic(2))


def test_nijenhuis_constructor_and_residuals():
    chart = Chart(("q1", "p1", "q2", "p2"))
    one = Poly.const(chart, 1)
    sigma = MultiField(chart, 2, {(0, 1): one, (2, 3): one})
    N = [
        [
            Poly.const(chart, 2 if i < 2 else 5) if i == j else Poly.zero(chart)
            for j in range(4)
        ]
        for i in range(4)
    ]
    first, second = nijenhuis_residuals(sigma, N)
    assert all(p.is_zero() for row in first for p in row)
    assert all(s.is_zero() for s in second)
    pi = construct("nijenhuis", sigma, N)
    assert jacobi_residual(pi).is_zero()
    assert pi.pi1 == sigma


def test_nijenhuis_rejects_non_skew_composition():
    chart = Chart(("q", "p"))
    sigma = MultiField(chart, 2, {(0, 1): Poly.const(chart, 1)})
    N = [
        [Poly.const(chart, 1), Poly.zero(chart)],
        [Poly.zero(chart), Poly.const(chart, 2)],
    ]
    with pytest.raises(ValueError):
        construct("nijenhuis", sigma, N)


def test_nijenhuis_residuals_detect_incompatible_tensor():
    chart = Chart(("q", "p"))
    sigma = MultiField(chart, 2, {(0, 1): Poly.const(chart, 1)})
    # off-diagonal variable entries break the compatibility equations
    q = Poly.var(chart, "q")
    p = Poly.var(chart, "p")
    z = Poly.zero(chart)
    N = [[z, q], [p, z]]
    first, second = nijenhuis_residuals(sigma, N)
    assert any(not x.is_zero() for row in first for x in row)
    assert any(not s.is_zero() for s in second)


def test_constant_bivectors_are_poisson(rng):
    for n in (2, 3, 4):
        pi = random_constant_bivector(rng, n)
        assert jacobi_residual(pi).is_zero()


def test_coeff_matrix_skew_and_sharp_consistency(rng):
    pi = nb_bivector(1, 2)
    A = pi.coeff_matrix()
    for i in range(3):
        for j in range(3):
            assert A[i][j] == -A[j][i]
    for _ in range(4):
        a = random_one_form(rng, XYZ)
        b = random_one_form(rng, XYZ)
        # a(pi#b) = pi(a, b)
        contracted = Poly.zero(XYZ)
        sb = pi.sharp(b)
        for i in range(3):
            contracted = contracted + a.component((i,)) * sb.component((i,))
        assert contracted == pi.pairing(a, b).component(())
